#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>

#include "toolkit/jordan.hpp"
#include "toolkit/rng.hpp"

namespace toolkit {

enum class TitsModel { E6, E7 };
std::string to_string(TitsModel m);
TitsModel parse_tits_model(const std::string& s);  // "e6" | "e7"
GammaVector default_gamma(TitsModel m);             // (1,-1,1) for E6, (1,1,1) for E7

// Shared read-only data for one model: Jordan table and a Der(J) basis.
struct TitsContext {
  TitsModel model;
  GammaVector gamma;
  std::shared_ptr<const StructureConstantAlgebra> table;
  std::shared_ptr<const std::vector<DerivationMap>> derivations;
};

// Der(J) is solved once per gamma and cached
std::shared_ptr<const std::vector<DerivationMap>> jordan_derivations(const GammaVector& gamma,
                                                                     const ProgressFn& progress = {});
TitsContext make_context(TitsModel model, const GammaVector& gamma, const ProgressFn& progress = {});

// y -> A o y in Jordan coordinates
RationalMatrix left_mult_operator(const StructureConstantAlgebra& table, const Vec& a);
RationalMatrix left_mult_operator(const JordanElement& a);

struct E6ModelElement {
  Vec a;             // traceless Jordan element, 27 coordinates
  RationalMatrix d;  // derivation of J, 27x27

  static E6ModelElement zero();
  bool is_zero() const;
  E6ModelElement operator-() const;
  friend E6ModelElement operator+(const E6ModelElement& x, const E6ModelElement& y);
  friend E6ModelElement operator-(const E6ModelElement& x, const E6ModelElement& y);
  friend bool operator==(const E6ModelElement& x, const E6ModelElement& y) { return x.a == y.a && x.d == y.d; }
};

// tensor block t[0], t[1], t[2] multiplies H = diag(1,-1), E = e12, F = e21
struct E7ModelElement {
  std::array<Vec, 3> t;
  RationalMatrix d;

  static E7ModelElement zero();
  bool is_zero() const;
  E7ModelElement operator-() const;
  friend E7ModelElement operator+(const E7ModelElement& x, const E7ModelElement& y);
  friend E7ModelElement operator-(const E7ModelElement& x, const E7ModelElement& y);
  friend bool operator==(const E7ModelElement& x, const E7ModelElement& y) { return x.t == y.t && x.d == y.d; }
};

// validate: re-check tracelessness and the Leibniz rule on the result
E6ModelElement e6_bracket(const TitsContext& ctx, const E6ModelElement& x, const E6ModelElement& y,
                          bool validate = true);
E7ModelElement e7_bracket(const TitsContext& ctx, const E7ModelElement& x, const E7ModelElement& y,
                          bool validate = true);

// 2x2 traceless basis H, E, F as plain matrices, for the structure constants
RationalMatrix sl2_basis(size_t i);

size_t traceless_jordan_dim();   // kernel of the trace functional on J
size_t traceless_2x2_dim();      // kernel of the trace functional on 2x2 matrices
size_t model_dimension(const TitsContext& ctx);

struct JacobiOptions {
  bool exhaustive_basis = false;
  unsigned threads = 1;
  size_t validate_first = 16;  // full Leibniz re-check on this many leading triples
  ProgressFn progress;         // called with (triples done, total); may run on worker threads
};

struct JacobiReport {
  TitsModel model;
  std::string gamma;
  size_t samples = 0;
  uint64_t seed = 0;
  size_t jacobi_defects = 0;
  size_t anticommutativity_failures = 0;
  size_t alternating_failures = 0;
  size_t validated_triples = 0;
  size_t basis_triples = 0;  // only with exhaustive_basis
};

JacobiReport jacobi_report(const TitsContext& ctx, size_t sample_count, uint64_t seed,
                           const JacobiOptions& opts = {});

// seeded sample elements, exposed for tests
E6ModelElement random_e6_element(const TitsContext& ctx, Engine& g);
E7ModelElement random_e7_element(const TitsContext& ctx, Engine& g);

}  // namespace toolkit
