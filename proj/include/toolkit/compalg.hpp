#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "toolkit/exactmath.hpp"

namespace toolkit {

using Vec = std::vector<Rational>;

// Finite-dimensional algebra given by e_i * e_j expansions.
struct StructureConstantAlgebra {
  std::string name;
  size_t dim = 0;
  std::vector<SparseRow> table;   // table[i*dim + j] = e_i e_j
  std::vector<int> involution_signs;  // empty when the algebra carries no involution
  int unit_index = -1;            // -1: unit is not a basis vector (or absent)

  const SparseRow& product(size_t i, size_t j) const { return table[i * dim + j]; }
  Vec mul(const Vec& x, const Vec& y) const;
  bool is_commutative() const;
  // unit and involution axioms on all basis pairs; throws InvalidArgument on failure
  void validate() const;
};

StructureConstantAlgebra octonion_table();
// span of e0, e1, e2, e4 inside the octonions, relabelled 0..3
StructureConstantAlgebra quaternion_subtable();
StructureConstantAlgebra rational_field();

class OctonionElement {
 public:
  OctonionElement() = default;
  explicit OctonionElement(std::array<Rational, 8> c) : c_(std::move(c)) {}
  static OctonionElement basis(size_t i);
  static OctonionElement scalar(const Rational& s);

  const Rational& operator[](size_t i) const { return c_[i]; }
  Rational& operator[](size_t i) { return c_[i]; }
  const std::array<Rational, 8>& coords() const { return c_; }
  bool is_zero() const;

  friend OctonionElement operator+(const OctonionElement& x, const OctonionElement& y);
  friend OctonionElement operator-(const OctonionElement& x, const OctonionElement& y);
  friend OctonionElement operator*(const OctonionElement& x, const OctonionElement& y);
  friend OctonionElement operator*(const Rational& s, const OctonionElement& x);
  OctonionElement operator-() const;
  friend bool operator==(const OctonionElement& x, const OctonionElement& y) { return x.c_ == y.c_; }
  friend bool operator!=(const OctonionElement& x, const OctonionElement& y) { return !(x == y); }

 private:
  std::array<Rational, 8> c_{};
};

// e_i e_j = sign * e_index under the Fano lines {i, i+1, i+3} (labels mod 7)
struct OctonionProduct {
  int sign;
  int index;
};
OctonionProduct octonion_basis_product(int i, int j);

OctonionElement conj(const OctonionElement& x);
Rational norm(const OctonionElement& x);
Rational trace(const OctonionElement& x);
bool in_maximal_order(const OctonionElement& x);
// e0 + e_i (i = 1..7) and (1/2) sum e_i
std::vector<OctonionElement> maximal_order_generators();

struct DerivationMap {
  RationalMatrix matrix;  // column l holds D(e_l)
};

bool is_derivation(const StructureConstantAlgebra& alg, const RationalMatrix& d);

using ProgressFn = std::function<void(size_t done, size_t total)>;

// Basis of Der(alg), solved as the nullspace of the Leibniz system.
std::vector<DerivationMap> derivation_algebra(const StructureConstantAlgebra& alg,
                                              const ProgressFn& progress = {});

// commutators of all basis pairs stay in the span of the basis
bool commutator_closed(const std::vector<DerivationMap>& basis);

}  // namespace toolkit
