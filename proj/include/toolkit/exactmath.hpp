#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toolkit {

// raised when a post-condition that can only fail through a bug is violated
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact rational. Small values live in two int64 words; anything that would
// overflow moves to an mpq_class and moves back once it fits again.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : n_(static_cast<int64_t>(v)) {  // NOLINT: implicit from integers is intended
    if (n_ == INT64_MIN) assign(mpq_class(mpz_class(std::to_string(v))));
  }
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q) { assign(q); }
  explicit Rational(const mpz_class& z) { assign(mpq_class(z)); }

  Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // "a/b", "a", "-a/b"; whitespace not allowed
  static Rational parse(std::string_view s);

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
  int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
  bool is_small() const { return !big_; }

  mpz_class num() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
  mpz_class den() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }
  mpq_class to_mpq() const;
  mpz_class floor() const;

  std::string to_string() const;

  Rational operator-() const;
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // a demoted value never equals one that needed promotion
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend int compare(const Rational& a, const Rational& b);
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  // a += b*c, the hot loop of every elimination and matrix product
  friend void fma_into(Rational& acc, const Rational& b, const Rational& c);

 private:
  void assign(const mpq_class& q);
  static Rational from_wide(__int128 n, __int128 d);

  int64_t n_ = 0;
  int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

// a + b*sqrt(D), D squarefree and > 1
class QuadraticElement {
 public:
  QuadraticElement(Rational a, Rational b, long long disc);
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long long disc() const { return disc_; }

  QuadraticElement conj() const { return {a_, -b_, disc_}; }
  Rational norm() const { return a_ * a_ - Rational(disc_) * b_ * b_; }

  friend QuadraticElement operator+(const QuadraticElement& x, const QuadraticElement& y);
  friend QuadraticElement operator-(const QuadraticElement& x, const QuadraticElement& y);
  friend QuadraticElement operator*(const QuadraticElement& x, const QuadraticElement& y);
  friend QuadraticElement operator/(const QuadraticElement& x, const QuadraticElement& y);
  friend bool operator==(const QuadraticElement& x, const QuadraticElement& y) {
    return x.disc_ == y.disc_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  std::string to_string() const;

 private:
  Rational a_, b_;
  long long disc_;
};

bool is_squarefree(long long n);
// largest-square-free reduction: n = f^2 * core, core squarefree, sign kept
long long squarefree_part(long long n);
bool is_perfect_square(long long n);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RationalMatrix identity(size_t n);
  static RationalMatrix column(const std::vector<Rational>& v);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Rational& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  const std::vector<Rational>& data() const { return a_; }
  std::vector<Rational>& data() { return a_; }

  bool is_zero() const;
  RationalMatrix transpose() const;
  std::vector<Rational> row(size_t i) const;
  std::vector<Rational> col(size_t j) const;

  friend RationalMatrix operator+(const RationalMatrix& x, const RationalMatrix& y);
  friend RationalMatrix operator-(const RationalMatrix& x, const RationalMatrix& y);
  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& x);
  friend std::vector<Rational> operator*(const RationalMatrix& x, const std::vector<Rational>& v);
  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const RationalMatrix& x, const RationalMatrix& y) { return !(x == y); }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

// commutator xy - yx
RationalMatrix commutator(const RationalMatrix& x, const RationalMatrix& y);

struct RrefResult {
  RationalMatrix form;
  size_t rank = 0;
  std::vector<size_t> pivots;
};
RrefResult rref_full(const RationalMatrix& m);
inline std::pair<RationalMatrix, size_t> rref(const RationalMatrix& m) {
  auto r = rref_full(m);
  return {std::move(r.form), r.rank};
}
size_t rank(const RationalMatrix& m);
std::vector<RationalMatrix> nullspace(const RationalMatrix& m);
// throws InvalidArgument when singular
RationalMatrix inverse(const RationalMatrix& m);
Rational det(const RationalMatrix& m);

using SparseRow = std::vector<std::pair<uint32_t, Rational>>;

// Incremental sparse echelon form for tall constraint systems.
class SparseEliminator {
 public:
  explicit SparseEliminator(size_t cols) : cols_(cols), pivot_of_col_(cols, -1) {}
  // returns true if the row was independent of the rows seen so far
  bool add_row(SparseRow row);
  size_t rank() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  // basis of the solution space of all rows added so far
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  void reduce(SparseRow& row) const;
  size_t cols_;
  std::vector<long> pivot_of_col_;
  std::vector<SparseRow> rows_;
};

// Incrementally tracks the span of dense vectors; membership is exact.
class SpanTracker {
 public:
  explicit SpanTracker(size_t dim) : dim_(dim), pivot_of_col_(dim, -1) {}
  bool add(std::vector<Rational> v);  // true if v enlarged the span
  bool contains(std::vector<Rational> v) const;
  size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::vector<Rational>& v) const;
  size_t dim_;
  std::vector<long> pivot_of_col_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<size_t> lead_;
};

// ---- integer matrices ----

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(size_t n);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  mpz_class& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const mpz_class& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  IntMatrix transpose() const;
  RationalMatrix to_rational() const;
  void swap_rows(size_t i, size_t j);
  void swap_cols(size_t i, size_t j);
  // row_i += f * row_j
  void add_row_multiple(size_t i, size_t j, const mpz_class& f);
  void add_col_multiple(size_t i, size_t j, const mpz_class& f);

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const IntMatrix& x, const IntMatrix& y) { return !(x == y); }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<mpz_class> a_;
};

mpz_class det(const IntMatrix& m);  // square only, exact via rationals

struct SmithForm {
  IntMatrix U, D, V;
  std::vector<mpz_class> divisors;  // nonzero diagonal entries of D
};
// U * m * V = D
SmithForm smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice; zero rows are dropped.
// Pivots are positive and entries above a pivot lie in [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// scale a rational matrix by the lcm of its denominators
std::pair<IntMatrix, mpz_class> clear_denominators(const RationalMatrix& m);

}  // namespace toolkit
