#include "toolkit/exactmath.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

namespace toolkit {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) return std::gcd(uint64_t(a), uint64_t(b));
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(uint64_t(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(uint64_t(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits_small(i128 v) { return v > i128(INT64_MIN) && v <= i128(INT64_MAX); }

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), u128(d));
  if (g > 1) {
    n /= i128(g);
    d /= i128(g);
  }
  Rational r;
  if (fits_small(n) && fits_small(d)) {
    r.n_ = int64_t(n);
    r.d_ = int64_t(d);
    return r;
  }
  r.big_ = std::make_unique<mpq_class>(mpz_from_i128(n), mpz_from_i128(d));
  r.big_->canonicalize();
  return r;
}

void Rational::assign(const mpq_class& q0) {
  mpq_class q = q0;
  q.canonicalize();
  const auto& n = q.get_num();
  const auto& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n != INT64_MIN) {
    n_ = n.get_si();
    d_ = d.get_si();
    big_.reset();
    return;
  }
  n_ = 0;
  d_ = 1;
  big_ = std::make_unique<mpq_class>(q);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

mpz_class Rational::floor() const {
  if (!big_) {
    int64_t q = n_ / d_;
    if ((n_ % d_) != 0 && n_ < 0) --q;
    return mpz_class(static_cast<long>(q));
  }
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

Rational Rational::parse(std::string_view s) {
  auto bad = [&] { return InvalidArgument("not a rational: '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view ns = s.substr(0, slash);
  std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!digits_ok(ns) || !digits_ok(ds)) throw bad();
  std::string nstr(ns), dstr(ds);
  if (nstr[0] == '+') nstr.erase(0, 1);
  if (dstr[0] == '+') dstr.erase(0, 1);
  mpz_class n(nstr), d(dstr);
  if (d == 0) throw InvalidArgument("rational with zero denominator");
  return Rational(mpq_class(n, d));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_den() == 1 ? big_->get_num().get_str() : big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

Rational Rational::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  if (!big_) return from_wide(d_, n_);
  return Rational(mpq_class(1 / *big_));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.d_ == 1 && b.d_ == 1) {
      int64_t s;
      if (!__builtin_add_overflow(a.n_, b.n_, &s) && s != INT64_MIN) {
        Rational r;
        r.n_ = s;
        return r;
      }
      return Rational::from_wide(i128(a.n_) + b.n_, 1);
    }
    if (a.d_ == b.d_) return Rational::from_wide(i128(a.n_) + b.n_, a.d_);
    return Rational::from_wide(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.n_ == 0 || b.n_ == 0) return Rational();
    if (a.d_ == 1 && b.d_ == 1) {
      int64_t p;
      if (!__builtin_mul_overflow(a.n_, b.n_, &p) && p != INT64_MIN) {
        Rational r;
        r.n_ = p;
        return r;
      }
      return Rational::from_wide(i128(a.n_) * b.n_, 1);
    }
    // cross-cancel first so the products stay small
    int64_t g1 = std::gcd(a.n_, b.d_), g2 = std::gcd(b.n_, a.d_);
    i128 n = i128(a.n_ / g1) * (b.n_ / g2);
    i128 d = i128(a.d_ / g2) * (b.d_ / g1);
    if (fits_small(n) && fits_small(d)) {
      Rational r;
      r.n_ = int64_t(n);
      r.d_ = int64_t(d);
      return r;
    }
    return Rational::from_wide(n, d);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

void fma_into(Rational& acc, const Rational& b, const Rational& c) {
  if (b.is_zero() || c.is_zero()) return;
  acc = acc + b * c;
}

int compare(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.n_) * b.d_, r = i128(b.n_) * a.d_;
    return (l > r) - (l < r);
  }
  return cmp(a.to_mpq(), b.to_mpq());
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

// ---- quadratic ----

bool is_squarefree(long long n) {
  if (n == 0) return false;
  unsigned long long m = std::llabs(n);
  for (unsigned long long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

long long squarefree_part(long long n) {
  if (n == 0) return 0;
  long long sign = n < 0 ? -1 : 1;
  unsigned long long m = std::llabs(n), core = 1;
  for (unsigned long long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) core *= p;
  }
  return sign * static_cast<long long>(core * m);
}

bool is_perfect_square(long long n) {
  if (n < 0) return false;
  mpz_class z(static_cast<long>(n));
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

QuadraticElement::QuadraticElement(Rational a, Rational b, long long disc)
    : a_(std::move(a)), b_(std::move(b)), disc_(disc) {
  if (disc <= 1 || !is_squarefree(disc))
    throw InvalidArgument("quadratic discriminant must be squarefree and > 1, got " + std::to_string(disc));
}

namespace {
void same_field(const QuadraticElement& x, const QuadraticElement& y) {
  if (x.disc() != y.disc()) throw InvalidArgument("quadratic elements over different fields");
}
}  // namespace

QuadraticElement operator+(const QuadraticElement& x, const QuadraticElement& y) {
  same_field(x, y);
  return {x.a_ + y.a_, x.b_ + y.b_, x.disc_};
}
QuadraticElement operator-(const QuadraticElement& x, const QuadraticElement& y) {
  same_field(x, y);
  return {x.a_ - y.a_, x.b_ - y.b_, x.disc_};
}
QuadraticElement operator*(const QuadraticElement& x, const QuadraticElement& y) {
  same_field(x, y);
  return {x.a_ * y.a_ + Rational(x.disc_) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.disc_};
}
QuadraticElement operator/(const QuadraticElement& x, const QuadraticElement& y) {
  same_field(x, y);
  Rational n = y.norm();
  if (n.is_zero()) throw InvalidArgument("division by zero in quadratic field");
  QuadraticElement p = x * y.conj();
  return {p.a_ / n, p.b_ / n, x.disc_};
}
std::string QuadraticElement::to_string() const {
  return a_.to_string() + " + " + b_.to_string() + "*sqrt(" + std::to_string(disc_) + ")";
}

// ---- rational matrices ----

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (auto& row : rows) {
    if (row.size() != c_) throw InvalidArgument("ragged matrix literal");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

RationalMatrix RationalMatrix::identity(size_t n) {
  RationalMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::column(const std::vector<Rational>& v) {
  RationalMatrix m(v.size(), 1);
  m.a_ = v;
  return m;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.is_zero(); });
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Rational> RationalMatrix::row(size_t i) const {
  return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_};
}

std::vector<Rational> RationalMatrix::col(size_t j) const {
  std::vector<Rational> v(r_);
  for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

RationalMatrix operator+(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.r_ != y.r_ || x.c_ != y.c_) throw InvalidArgument("matrix shape mismatch in +");
  RationalMatrix s = x;
  for (size_t i = 0; i < s.a_.size(); ++i)
    if (!y.a_[i].is_zero()) s.a_[i] += y.a_[i];
  return s;
}

RationalMatrix operator-(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.r_ != y.r_ || x.c_ != y.c_) throw InvalidArgument("matrix shape mismatch in -");
  RationalMatrix s = x;
  for (size_t i = 0; i < s.a_.size(); ++i)
    if (!y.a_[i].is_zero()) s.a_[i] -= y.a_[i];
  return s;
}

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.c_ != y.r_) throw InvalidArgument("matrix shape mismatch in *");
  RationalMatrix p(x.r_, y.c_);
  for (size_t i = 0; i < x.r_; ++i)
    for (size_t k = 0; k < x.c_; ++k) {
      const Rational& a = x(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < y.c_; ++j) fma_into(p(i, j), a, y(k, j));
    }
  return p;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& x) {
  RationalMatrix p = x;
  if (s.is_one()) return p;
  for (auto& v : p.a_)
    if (!v.is_zero()) v *= s;
  return p;
}

std::vector<Rational> operator*(const RationalMatrix& x, const std::vector<Rational>& v) {
  if (x.c_ != v.size()) throw InvalidArgument("matrix-vector shape mismatch");
  std::vector<Rational> out(x.r_);
  for (size_t i = 0; i < x.r_; ++i)
    for (size_t k = 0; k < x.c_; ++k) fma_into(out[i], x(i, k), v[k]);
  return out;
}

RationalMatrix commutator(const RationalMatrix& x, const RationalMatrix& y) { return x * y - y * x; }

RrefResult rref_full(const RationalMatrix& m) {
  RrefResult res{m, 0, {}};
  RationalMatrix& a = res.form;
  const size_t R = a.rows(), C = a.cols();
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t p = r;
    while (p < R && a(p, c).is_zero()) ++p;
    if (p == R) continue;
    if (p != r)
      for (size_t j = 0; j < C; ++j) std::swap(a(p, j), a(r, j));
    Rational inv = a(r, c).inverse();
    for (size_t j = c; j < C; ++j)
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rational f = -a(i, c);
      for (size_t j = c; j < C; ++j) fma_into(a(i, j), f, a(r, j));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

size_t rank(const RationalMatrix& m) { return rref_full(m).rank; }

std::vector<RationalMatrix> nullspace(const RationalMatrix& m) {
  auto rr = rref_full(m);
  const size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<RationalMatrix> basis;
  for (size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    RationalMatrix v(C, 1);
    v(f, 0) = 1;
    for (size_t i = 0; i < rr.pivots.size(); ++i) v(rr.pivots[i], 0) = -rr.form(i, f);
    if (!(m * v).is_zero()) throw InternalError("nullspace vector failed back-substitution");
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("inverse of a non-square matrix");
  RationalMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto rr = rref_full(aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) throw InvalidArgument("matrix is singular");
  RationalMatrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = rr.form(i, n + j);
  return inv;
}

Rational det(const RationalMatrix& m) {
  const size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("det of a non-square matrix");
  RationalMatrix a = m;
  Rational d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    Rational inv = a(c, c).inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Rational f = -a(i, c) * inv;
      for (size_t j = c; j < n; ++j) fma_into(a(i, j), f, a(c, j));
    }
  }
  return d;
}

// ---- sparse elimination ----

namespace {

// out = x + f*y, both sorted by column
SparseRow axpy(const SparseRow& x, const Rational& f, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, f * y[j].second);
      ++j;
    } else {
      Rational v = x[i].second;
      fma_into(v, f, y[j].second);
      if (!v.is_zero()) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void normalize_row(SparseRow& row) {
  std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
  SparseRow merged;
  for (auto& e : row) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](auto& e) { return e.second.is_zero(); });
  row = std::move(merged);
}

}  // namespace

void SparseEliminator::reduce(SparseRow& row) const {
  while (!row.empty()) {
    long p = pivot_of_col_[row.front().first];
    if (p < 0) return;
    Rational f = -row.front().second;
    row = axpy(row, f, rows_[p]);
  }
}

bool SparseEliminator::add_row(SparseRow row) {
  normalize_row(row);
  for (auto& e : row)
    if (e.first >= cols_) throw InvalidArgument("sparse row column out of range");
  reduce(row);
  if (row.empty()) return false;
  Rational inv = row.front().second.inverse();
  for (auto& e : row) e.second *= inv;
  pivot_of_col_[row.front().first] = long(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

std::vector<std::vector<Rational>> SparseEliminator::nullspace() const {
  // back-substitute into reduced form, rightmost pivots first
  std::vector<size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return rows_[a].front().first > rows_[b].front().first; });
  std::vector<SparseRow> reduced(rows_.size());
  for (size_t idx : order) {
    const SparseRow& row = rows_[idx];
    SparseRow out = row;
    for (size_t k = 1; k < row.size(); ++k) {
      long p = pivot_of_col_[row[k].first];
      if (p < 0) continue;
      out = axpy(out, -row[k].second, reduced[p]);
    }
    reduced[idx] = std::move(out);
  }
  std::vector<std::vector<Rational>> basis;
  for (size_t f = 0; f < cols_; ++f) {
    if (pivot_of_col_[f] >= 0) continue;
    std::vector<Rational> v(cols_);
    v[f] = 1;
    for (const auto& row : reduced) {
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const auto& e, size_t c) { return e.first < c; });
      if (it != row.end() && it->first == f) v[row.front().first] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

void SpanTracker::reduce(std::vector<Rational>& v) const {
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rational& lead = v[lead_[k]];
    if (lead.is_zero()) continue;
    Rational f = -lead;
    const auto& row = rows_[k];
    for (size_t j = 0; j < dim_; ++j) fma_into(v[j], f, row[j]);
  }
}

bool SpanTracker::add(std::vector<Rational> v) {
  if (v.size() != dim_) throw InvalidArgument("span vector of wrong length");
  reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
  if (it == v.end()) return false;
  size_t c = size_t(it - v.begin());
  Rational inv = it->inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  // keep rows fully reduced against each other so reduce() is a single pass
  for (auto& row : rows_) {
    if (row[c].is_zero()) continue;
    Rational f = -row[c];
    for (size_t j = 0; j < dim_; ++j) fma_into(row[j], f, v[j]);
  }
  pivot_of_col_[c] = long(rows_.size());
  rows_.push_back(std::move(v));
  lead_.push_back(c);
  return true;
}

bool SpanTracker::contains(std::vector<Rational> v) const {
  if (v.size() != dim_) throw InvalidArgument("span vector of wrong length");
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

// ---- integer matrices ----

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (auto& row : rows) {
    if (row.size() != c_) throw InvalidArgument("ragged matrix literal");
    for (long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix IntMatrix::to_rational() const {
  RationalMatrix m(r_, c_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m(i, j) = Rational((*this)(i, j));
  return m;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row_multiple(size_t i, size_t j, const mpz_class& f) {
  if (f == 0) return;
  for (size_t k = 0; k < c_; ++k) (*this)(i, k) += f * (*this)(j, k);
}

void IntMatrix::add_col_multiple(size_t i, size_t j, const mpz_class& f) {
  if (f == 0) return;
  for (size_t k = 0; k < r_; ++k) (*this)(k, i) += f * (*this)(k, j);
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.c_ != y.r_) throw InvalidArgument("matrix shape mismatch in *");
  IntMatrix p(x.r_, y.c_);
  for (size_t i = 0; i < x.r_; ++i)
    for (size_t k = 0; k < x.c_; ++k) {
      if (x(i, k) == 0) continue;
      for (size_t j = 0; j < y.c_; ++j) p(i, j) += x(i, k) * y(k, j);
    }
  return p;
}

mpz_class det(const IntMatrix& m) {
  Rational d = det(m.to_rational());
  return d.num();
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const size_t R = m.rows(), C = m.cols();
  IntMatrix A = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  const size_t steps = std::min(R, C);
  for (size_t t = 0; t < steps; ++t) {
    for (;;) {
      // pivot: smallest nonzero |a| in the trailing block, ties to lowest (row, col)
      bool found = false;
      size_t pr = 0, pc = 0;
      mpz_class best;
      for (size_t i = t; i < R; ++i)
        for (size_t j = t; j < C; ++j) {
          if (A(i, j) == 0) continue;
          mpz_class v = ::abs(A(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (!found) goto done;
      A.swap_rows(t, pr);
      U.swap_rows(t, pr);
      A.swap_cols(t, pc);
      V.swap_cols(t, pc);

      bool dirty = false;
      for (size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        A.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (A(i, t) != 0) dirty = true;
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        A.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility chain: fold an offending row into the pivot row
      bool chained = true;
      for (size_t i = t + 1; i < R && chained; ++i)
        for (size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            A.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            chained = false;
            break;
          }
      if (chained) break;
    }
    if (A(t, t) < 0) {
      for (size_t j = 0; j < C; ++j) A(t, j) = -A(t, j);
      for (size_t j = 0; j < R; ++j) U(t, j) = -U(t, j);
    }
  }
done:
  SmithForm out{U, A, V, {}};
  for (size_t t = 0; t < steps; ++t)
    if (A(t, t) != 0) out.divisors.push_back(A(t, t));
  if (U * m * V != A) throw InternalError("smith form does not reproduce U*m*V = D");
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix A = m;
  const size_t R = A.rows(), C = A.cols();
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    for (;;) {
      size_t best = R;
      for (size_t i = r; i < R; ++i)
        if (A(i, c) != 0 && (best == R || ::abs(A(i, c)) < ::abs(A(best, c)))) best = i;
      if (best == R) break;
      A.swap_rows(r, best);
      bool clean = true;
      for (size_t i = r + 1; i < R; ++i) {
        if (A(i, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, c).get_mpz_t(), A(r, c).get_mpz_t());
        A.add_row_multiple(i, r, -q);
        if (A(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0)
      for (size_t j = 0; j < C; ++j) A(r, j) = -A(r, j);
    for (size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), A(i, c).get_mpz_t(), A(r, c).get_mpz_t());
      A.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, C);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < C; ++j) out(i, j) = A(i, j);
  return out;
}

std::pair<IntMatrix, mpz_class> clear_denominators(const RationalMatrix& m) {
  mpz_class l = 1;
  for (const auto& v : m.data()) {
    mpz_class d = v.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  IntMatrix out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      Rational s = m(i, j) * Rational(l);
      out(i, j) = s.num();
    }
  return {out, l};
}

}  // namespace toolkit
