#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toolkit/exactmath.hpp"

namespace toolkit {

struct Root {
  std::vector<int> coeffs;     // in the simple roots
  std::vector<Rational> eps;   // Bourbaki epsilon coordinates
  bool positive() const;
};

using RootSet = std::vector<size_t>;  // sorted indices into RootSystem::roots

struct RootSystem {
  std::string type_label;  // A, B, C, D, E6, E7
  int rank = 0;
  size_t ambient = 0;
  std::vector<Root> roots;
  std::vector<size_t> simple;  // simple[i] = index of alpha_{i+1}

  std::optional<size_t> find(const std::vector<int>& coeffs) const;
  RootSet positive_roots() const;
  RootSet all() const;
  std::string format(size_t idx) const;  // "e1-e2", "1/2e1-1/2e2+..."

 private:
  std::map<std::vector<int>, size_t> index_;
  friend RootSystem build_root_system(const std::string& type_label, int rank);
};

RootSystem build_root_system(const std::string& type_label, int rank);

// roots that are integer combinations of the generators
RootSet lattice_closure(const RootSystem& sys, const std::vector<std::vector<int>>& generators);
bool is_symmetric(const RootSystem& sys, const RootSet& s);
bool is_closed(const RootSystem& sys, const RootSet& s);
bool is_parabolic(const RootSystem& sys, const RootSet& s);

struct DomainLabel {
  enum Kind { I, II, IV, V, VI } kind;
  int p = 0, q = 0, n = 0;
  std::string variant;  // V: I24xSU2 | II5 | IV8 ; VI: I33 | II6
  std::string to_string() const;
};
// "I_4_1", "II_6", "IV_7", "V:II5", "VI:I33"
DomainLabel parse_domain_label(const std::string& s);

struct NamedGenerator {
  std::string name;  // "a2", "b1", "-a2", ...
  std::vector<int> coeffs;
};

struct SymRootSet {
  DomainLabel domain;
  std::string system_type;
  int system_rank = 0;
  std::vector<NamedGenerator> generators;
  RootSet closure;
};

// the ambient root system used for a domain label
RootSystem system_for(const DomainLabel& d);
SymRootSet psi_sym(const DomainLabel& d);

struct ParabolicRootSet {
  std::vector<int> tau;  // 1-based simple-root labels
  RootSet closure;
};
ParabolicRootSet psi_par(const RootSystem& sys, const std::vector<int>& tau);

struct IncidenceComplement {
  RootSet roots;
  size_t cardinality = 0;
  std::optional<int> expected_effective;
};
IncidenceComplement incidence_complement(const RootSystem& sys, const SymRootSet& sym, const ParabolicRootSet& par);

struct IncidencePreset {
  std::string name;
  std::string domain;
  std::vector<int> tau;
  int effective_parameters;
};
// only "su41" ships
IncidencePreset incidence_preset(const std::string& name);

struct IncidenceRun {
  RootSystem system;
  SymRootSet sym;
  ParabolicRootSet par;
  IncidenceComplement complement;
};
IncidenceRun run_incidence(const std::string& domain, const std::vector<int>& tau,
                           std::optional<int> effective = std::nullopt);
IncidenceRun run_preset(const std::string& name);

}  // namespace toolkit
