#pragma once

#include <array>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "toolkit/compalg.hpp"

namespace toolkit {

struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

struct GammaVector {
  std::array<Rational, 3> g{1, 1, 1};
  GammaVector() = default;
  GammaVector(Rational a, Rational b, Rational c);
  static GammaVector parse(const std::string& csv);  // "1,-1,1"
  const Rational& operator[](size_t i) const { return g[i]; }
  std::string to_string() const;
  friend bool operator==(const GammaVector& a, const GammaVector& b) { return a.g == b.g; }
};

// Coordinates: xi_1..xi_3 at 0..2, then coordinate c of x_i at 3 + 8(i-1) + c.
inline constexpr size_t kJordanDim = 27;

class JordanElement {
 public:
  explicit JordanElement(GammaVector gamma = {}) : gamma_(std::move(gamma)) {}
  JordanElement(std::array<Rational, 3> xi, std::array<OctonionElement, 3> x, GammaVector gamma)
      : xi_(std::move(xi)), x_(std::move(x)), gamma_(std::move(gamma)) {}

  static JordanElement identity(const GammaVector& gamma);
  static JordanElement diag(const Rational& a, const Rational& b, const Rational& c, const GammaVector& gamma);
  static JordanElement basis(size_t index, const GammaVector& gamma);
  static JordanElement from_coords(const Vec& v, const GammaVector& gamma);
  Vec coords() const;

  const Rational& xi(size_t i) const { return xi_[i]; }
  Rational& xi(size_t i) { return xi_[i]; }
  const OctonionElement& x(size_t i) const { return x_[i]; }
  OctonionElement& x(size_t i) { return x_[i]; }
  const GammaVector& gamma() const { return gamma_; }

  bool is_zero() const;
  JordanElement operator-() const;
  friend JordanElement operator+(const JordanElement& a, const JordanElement& b);
  friend JordanElement operator-(const JordanElement& a, const JordanElement& b);
  friend JordanElement operator*(const Rational& s, const JordanElement& a);
  friend bool operator==(const JordanElement& a, const JordanElement& b) {
    return a.gamma_ == b.gamma_ && a.xi_ == b.xi_ && a.x_ == b.x_;
  }
  friend bool operator!=(const JordanElement& a, const JordanElement& b) { return !(a == b); }

 private:
  std::array<Rational, 3> xi_{};
  std::array<OctonionElement, 3> x_{};
  GammaVector gamma_;
};

using OctMatrix = std::array<std::array<OctonionElement, 3>, 3>;

// x = sum xi_i e_ii + sum x_i[j,k],  x_i[j,k] = gamma_k x_i e_jk + gamma_j conj(x_i) e_kj
OctMatrix realize(const JordanElement& x);
// inverse of realize; InternalError when m is not twisted-hermitian
JordanElement extract(const OctMatrix& m, const GammaVector& gamma);
OctMatrix matmul(const OctMatrix& a, const OctMatrix& b);

JordanElement jmul(const JordanElement& x, const JordanElement& y);
Rational jtrace(const JordanElement& x);
JordanElement jsharp(const JordanElement& x);
// scalar of x o x#; InternalError if that product is not scalar
Rational jnorm(const JordanElement& x);
// the displayed cubic with plus signs and no x1x2x3 term, kept for diagnostics
Rational jnorm_printed(const JordanElement& x);
Rational jquadratic(const JordanElement& x);  // Q(x) = T(x#)
JordanElement jinverse(const JordanElement& x);

bool is_integral(const JordanElement& x);

struct JordanOrderDescriptor {
  std::string name;
  std::function<bool(const OctonionElement&)> coordinate_order;
  GammaVector gamma;
};
JordanOrderDescriptor maximal_jordan_order(const GammaVector& gamma);  // J(M, gamma)
bool in_jordan_order(const JordanElement& x, const JordanOrderDescriptor& o);

// 27-dim structure constants of jmul; cached per gamma, shared read-only
std::shared_ptr<const StructureConstantAlgebra> jordan_table(const GammaVector& gamma);

}  // namespace toolkit
