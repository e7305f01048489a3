#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toolkit/exactmath.hpp"

namespace toolkit {

enum class Family { O1, O2, S1, S2, U1, U2, E6_16, E6_35, E6_78, E7_28, E7_31, E7_133 };
std::string to_string(Family f);  // "O.1", ..., "E6_16"
Family parse_family(const std::string& s);

// unused parameters stay 0; s = -1 on input means "fixed by the family" (S.1 and the exceptional ones)
struct FamilyDescriptor {
  Family family;
  int n = 0, d = 0, s = -1, p = 0, q = 0;
};
// fills fixed s and checks the ranges; InvalidArgument otherwise
FamilyDescriptor validate(FamilyDescriptor desc);

struct DomainFactor {
  enum Sym { I, II, III, IV, V, VI, Pt } sym = Pt;
  int p = 0, q = 0, n = 0;
  int power = 1;  // (III_2)^m
  std::string to_string() const;
  int dim() const;   // complex dimension of one copy
  int rank() const;  // real rank of one copy
  friend bool operator==(const DomainFactor&, const DomainFactor&) = default;
};

struct DomainType {
  std::vector<DomainFactor> factors;
  std::string to_string() const;  // "I_{2,1} x I_{1,1}", "(III_2)^2", "pt"
  int dim() const;
  int rank() const;
  bool is_point() const { return dim() == 0; }
  friend bool operator==(const DomainType&, const DomainType&) = default;
};
DomainType I(int p, int q);
DomainType II(int n);
DomainType III(int n);
DomainType IV(int n);
DomainType point();
DomainType product(const DomainType& a, const DomainType& b);
DomainType power(const DomainType& a, int k);

DomainType domain_of(const FamilyDescriptor& desc);
std::string tits_index(const FamilyDescriptor& desc);
// largest boundary component first; length s
std::vector<DomainType> boundary_chain(const FamilyDescriptor& desc);

struct IncidentType {
  DomainType type;
  bool point_boundary = false;
  bool exception = false;               // S.2 with n = 2s at the point
  std::vector<DomainType> alternatives;  // V and VI point cases list every option, type is the first
};
// 1 <= b <= s
IncidentType incident_symmetric_type(const FamilyDescriptor& desc, int b);

bool is_ed_domain(const DomainType& t);
bool is_tube_domain(const DomainType& t);

struct ParabolicShape {
  std::string domain;
  bool point_boundary = false;
  std::string M, L, R, Z;  // symbolic
  std::optional<int> dim_V;
  std::vector<int> dim_DN;  // one entry per incident type at the point
  bool tabulated = false;
};
ParabolicShape parabolic_shape(const DomainType& t, bool point_boundary);

struct ExceptionalIndex {
  std::string label;
  std::optional<Family> family;
  bool excluded = false;
  std::string reason;
  std::string algebraic_source;  // which algebraic construction is expected to give it
  bool conjectural = false;
};
std::vector<ExceptionalIndex> exceptional_indices();

struct CatalogueEntry {
  FamilyDescriptor desc;
  std::string index;
  DomainType domain;
  std::vector<DomainType> chain;
  std::vector<IncidentType> incident;  // b = 1..s
  bool ed = false;
  ParabolicShape shape;  // point-boundary shape of the domain
};
CatalogueEntry catalogue_entry(const FamilyDescriptor& desc);
std::string describe(const FamilyDescriptor& desc);  // "S.2(n=4,s=2)"
// one line: descriptor | index | chain | incident types | ed | dim V
std::string snapshot_line(const CatalogueEntry& e);

// every valid descriptor whose domain has rank <= max_rank, plus all exceptional families
std::vector<FamilyDescriptor> snapshot_corpus(int max_rank);

}  // namespace toolkit
