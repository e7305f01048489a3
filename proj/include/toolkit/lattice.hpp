#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "toolkit/exactmath.hpp"
#include "toolkit/rng.hpp"

namespace toolkit {

// Row lattice inside Z^m; rows must be independent.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  explicit IntegerLattice(IntMatrix basis);  // InvalidArgument on dependent rows
  static IntegerLattice from_rows(const std::vector<std::vector<long>>& rows, size_t ambient);
  static IntegerLattice parse(const std::string& rows, size_t ambient);  // "2,0,0;0,3,0"

  size_t ambient() const { return basis_.cols(); }
  size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  const IntMatrix& hnf() const { return hnf_; }
  bool contains(const std::vector<mpz_class>& v) const;
  std::string to_string() const;  // HNF rows
  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) { return a.hnf_ == b.hnf_; }

 private:
  IntMatrix basis_, hnf_;
};

std::vector<mpz_class> elementary_divisors(const IntegerLattice& w);
bool is_pure(const IntegerLattice& w);
IntegerLattice saturate(const IntegerLattice& w);
mpz_class saturation_index(const IntegerLattice& w);  // [saturate(w) : w]
// brute force: some x = v/k, 2 <= k <= kmax, with kx in w and x not in w
bool is_pure_oracle(const IntegerLattice& w, int kmax);

// J = [[0, I], [-I, 0]]; symplectic pairs (e_i, e_{i+n})
RationalMatrix standard_symplectic_form(size_t n);
bool is_symplectic(const RationalMatrix& g);

struct GroupElementQ {
  RationalMatrix matrix;
  bool symplectic_check = true;
  // InvalidArgument if g is singular or, with the check on, not symplectic
  static GroupElementQ make(RationalMatrix g, bool symplectic_check = true);
};

// w must be pure; true iff g(w) is an integral pure sublattice of Z^m
bool is_gamma_integral(const GroupElementQ& g, const IntegerLattice& w);

// Sp4(Z) from symmetric-block transvections and diag(A, A^-T), A in GL2(Z)
RationalMatrix random_sp4z(Engine& g, int steps = 4);
// rational symplectic: random_sp4z mixed with diag(A, A^-T) for A in GL2(Q)
RationalMatrix random_sp4q(Engine& g);

// ---- lattices in M_n(Q) ----

class MatrixLattice {
 public:
  MatrixLattice(size_t n, std::vector<RationalMatrix> basis);  // InvalidArgument unless full rank n^2
  static MatrixLattice standard(size_t n);                    // M_n(Z)

  size_t n() const { return n_; }
  const std::vector<RationalMatrix>& basis() const { return basis_; }
  bool contains(const RationalMatrix& x) const;
  MatrixLattice scaled(const Rational& s) const;
  friend bool operator==(const MatrixLattice& a, const MatrixLattice& b);

 private:
  std::vector<Rational> coords(const RationalMatrix& x) const;
  size_t n_;
  std::vector<RationalMatrix> basis_;
  RationalMatrix to_basis_;  // n^2 x n^2, flattened matrix -> coordinates
};

bool is_order(const MatrixLattice& l);
MatrixLattice right_order(const MatrixLattice& l);  // {x : l x in l}
MatrixLattice left_order(const MatrixLattice& l);   // {x : x l in l}
// block shape with Z, J^-1 = (1/j)Z in the last column, J = jZ in the last row
MatrixLattice oj_shape(size_t n, long j);

// ---- Humbert surfaces ----

struct HumbertTuple {
  long long a = 0, b = 0, c = 0, d = 0, e = 0;
  // primitive, first nonzero entry positive; InvalidArgument for the zero tuple
  static HumbertTuple normalized(long long a, long long b, long long c, long long d, long long e);
  std::string to_string() const;
  friend bool operator==(const HumbertTuple&, const HumbertTuple&) = default;
};

long long humbert_discriminant(const HumbertTuple& t);  // b^2 - 4ac - 4de

struct HumbertClass {
  enum Kind { Split, RealQuadratic, Degenerate } kind;
  long long field = 0;  // squarefree part for RealQuadratic
  std::string to_string() const;  // "split", "real_quadratic(5)", "degenerate"
};
HumbertClass classify_humbert(const HumbertTuple& t);

struct Gaussian {
  Rational re, im;
  friend Gaussian operator+(const Gaussian& x, const Gaussian& y) { return {x.re + y.re, x.im + y.im}; }
  friend Gaussian operator-(const Gaussian& x, const Gaussian& y) { return {x.re - y.re, x.im - y.im}; }
  friend Gaussian operator*(const Gaussian& x, const Gaussian& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

struct HumbertMembership {
  bool on_locus = false;
  bool outside_upper_half = false;  // Im(tau) not positive definite
};
using Tau = std::array<std::array<Gaussian, 2>, 2>;
// InvalidArgument if tau is not symmetric
HumbertMembership humbert_membership(const HumbertTuple& t, const Tau& tau);

struct DeltaBucket {
  long long count = 0;
  bool split = false;
  bool degenerate = false;
  bool residue_ok = true;  // delta = 0 or 1 mod 4
};

struct OrbitReport {
  int height = 0;
  long long tuples = 0;
  std::map<long long, DeltaBucket> classes;
  std::vector<long long> integral_classes;  // positive square discriminants present
  long long mu_estimate = 0;                // height-bounded estimate: number of integral classes
};
OrbitReport enumerate_integral_orbits(int height, unsigned threads = 1);

}  // namespace toolkit
