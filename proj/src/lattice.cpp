#include "toolkit/lattice.hpp"

#include <atomic>
#include <numeric>
#include <sstream>
#include <thread>

namespace toolkit {

// ---- integer lattices ----

IntegerLattice::IntegerLattice(IntMatrix basis) : basis_(std::move(basis)) {
  hnf_ = hermite_normal_form(basis_);
  if (hnf_.rows() != basis_.rows()) throw InvalidArgument("lattice basis rows are linearly dependent");
}

IntegerLattice IntegerLattice::from_rows(const std::vector<std::vector<long>>& rows, size_t ambient) {
  IntMatrix m(rows.size(), ambient);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ambient) throw InvalidArgument("lattice row has the wrong length");
    for (size_t j = 0; j < ambient; ++j) m(i, j) = rows[i][j];
  }
  return IntegerLattice(m);
}

IntegerLattice IntegerLattice::parse(const std::string& text, size_t ambient) {
  std::vector<std::vector<long>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<long> v;
    std::stringstream es(row);
    std::string item;
    while (std::getline(es, item, ',')) {
      try {
        size_t used = 0;
        v.push_back(std::stol(item, &used));
        if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InvalidArgument("bad lattice entry '" + item + "'");
      }
    }
    rows.push_back(v);
  }
  return from_rows(rows, ambient);
}

bool IntegerLattice::contains(const std::vector<mpz_class>& v0) const {
  if (v0.size() != ambient()) throw InvalidArgument("vector length does not match the ambient rank");
  std::vector<mpz_class> v = v0;
  size_t col = 0;
  for (size_t r = 0; r < hnf_.rows(); ++r) {
    while (hnf_(r, col) == 0) {
      if (v[col] != 0) return false;
      ++col;
    }
    if (!mpz_divisible_p(v[col].get_mpz_t(), hnf_(r, col).get_mpz_t())) return false;
    mpz_class q = v[col] / hnf_(r, col);
    for (size_t j = col; j < ambient(); ++j) v[j] -= q * hnf_(r, j);
    ++col;
  }
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

std::string IntegerLattice::to_string() const {
  std::string s;
  for (size_t i = 0; i < hnf_.rows(); ++i) {
    if (i) s += ";";
    for (size_t j = 0; j < hnf_.cols(); ++j) s += (j ? "," : "") + hnf_(i, j).get_str();
  }
  return s;
}

std::vector<mpz_class> elementary_divisors(const IntegerLattice& w) { return smith_normal_form(w.basis()).divisors; }

bool is_pure(const IntegerLattice& w) {
  for (auto& d : elementary_divisors(w))
    if (d != 1) return false;
  return true;
}

mpz_class saturation_index(const IntegerLattice& w) {
  mpz_class p = 1;
  for (auto& d : elementary_divisors(w)) p *= d;
  return p;
}

// U B V = D with D = [diag(d) | 0]; the first r rows of V^-1 span (w (x) Q) cap Z^m
IntegerLattice saturate(const IntegerLattice& w) {
  if (w.rank() == 0) return w;
  SmithForm s = smith_normal_form(w.basis());
  RationalMatrix vinv = inverse(s.V.to_rational());
  IntMatrix out(w.rank(), w.ambient());
  for (size_t i = 0; i < w.rank(); ++i)
    for (size_t j = 0; j < w.ambient(); ++j) {
      if (!vinv(i, j).is_integer()) throw InternalError("V^-1 is not integral");
      out(i, j) = vinv(i, j).num();
    }
  IntegerLattice sat(out);
  for (size_t i = 0; i < w.rank(); ++i) {
    std::vector<mpz_class> row(w.ambient());
    for (size_t j = 0; j < w.ambient(); ++j) row[j] = w.basis()(i, j);
    if (!sat.contains(row)) throw InternalError("saturation does not contain the lattice");
  }
  return sat;
}

bool is_pure_oracle(const IntegerLattice& w, int kmax) {
  const size_t r = w.rank(), m = w.ambient();
  for (int k = 2; k <= kmax; ++k) {
    std::vector<int> c(r, 0);
    for (;;) {
      size_t i = 0;
      while (i < r && ++c[i] == k) c[i++] = 0;
      if (i == r) break;
      bool divisible = true;
      for (size_t j = 0; j < m && divisible; ++j) {
        mpz_class s = 0;
        for (size_t t = 0; t < r; ++t) s += c[t] * w.basis()(t, j);
        divisible = mpz_divisible_ui_p(s.get_mpz_t(), unsigned(k)) != 0;
      }
      // v/k is integral while its coordinates c/k are not
      if (divisible) return false;
    }
  }
  return true;
}

// ---- symplectic group elements ----

RationalMatrix standard_symplectic_form(size_t n) {
  RationalMatrix j(2 * n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

bool is_symplectic(const RationalMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2) return false;
  RationalMatrix j = standard_symplectic_form(g.rows() / 2);
  return g.transpose() * j * g == j;
}

GroupElementQ GroupElementQ::make(RationalMatrix g, bool symplectic_check) {
  if (g.rows() != g.cols() || det(g).is_zero()) throw InvalidArgument("group element must be invertible");
  if (symplectic_check && !is_symplectic(g)) throw InvalidArgument("group element is not symplectic");
  return {std::move(g), symplectic_check};
}

bool is_gamma_integral(const GroupElementQ& g, const IntegerLattice& w) {
  if (g.matrix.rows() != w.ambient()) throw InvalidArgument("group element and lattice have different ranks");
  if (!is_pure(w)) throw InvalidArgument("is_gamma_integral needs a pure lattice; saturate first");
  IntMatrix img(w.rank(), w.ambient());
  for (size_t i = 0; i < w.rank(); ++i) {
    std::vector<Rational> v(w.ambient());
    for (size_t j = 0; j < w.ambient(); ++j) v[j] = Rational(w.basis()(i, j));
    std::vector<Rational> gv = g.matrix * v;
    for (size_t j = 0; j < w.ambient(); ++j) {
      if (!gv[j].is_integer()) return false;
      img(i, j) = gv[j].num();
    }
  }
  return is_pure(IntegerLattice(img));
}

namespace {

RationalMatrix block(const RationalMatrix& a, const RationalMatrix& b, const RationalMatrix& c, const RationalMatrix& d) {
  size_t n = a.rows();
  RationalMatrix m(2 * n, 2 * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, n + j) = b(i, j);
      m(n + i, j) = c(i, j);
      m(n + i, n + j) = d(i, j);
    }
  return m;
}

RationalMatrix levi(const RationalMatrix& a) {
  RationalMatrix z(2, 2);
  return block(a, z, z, inverse(a).transpose());
}

RationalMatrix random_gl2z(Engine& g) {
  // product of elementary matrices and a sign
  RationalMatrix a = RationalMatrix::identity(2);
  for (int t = 0; t < 3; ++t) {
    size_t i = size_t(draw(g, 0, 1));
    RationalMatrix e = RationalMatrix::identity(2);
    e(i, 1 - i) = draw(g, -2, 2);
    a = a * e;
  }
  if (draw(g, 0, 1)) a(0, 0) = -a(0, 0), a(0, 1) = -a(0, 1);
  return a;
}

}  // namespace

RationalMatrix random_sp4z(Engine& g, int steps) {
  RationalMatrix m = RationalMatrix::identity(4);
  RationalMatrix one = RationalMatrix::identity(2), z(2, 2);
  for (int t = 0; t < steps; ++t) {
    RationalMatrix s(2, 2);
    s(0, 0) = draw(g, -2, 2);
    s(1, 1) = draw(g, -2, 2);
    s(0, 1) = s(1, 0) = draw(g, -2, 2);
    switch (draw(g, 0, 2)) {
      case 0: m = m * block(one, s, z, one); break;
      case 1: m = m * block(one, z, s, one); break;
      default: m = m * levi(random_gl2z(g)); break;
    }
  }
  if (!is_symplectic(m)) throw InternalError("random_sp4z produced a non-symplectic matrix");
  return m;
}

RationalMatrix random_sp4q(Engine& g) {
  RationalMatrix a(2, 2);
  do {
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) a(i, j) = Rational(draw(g, -3, 3), draw(g, 1, 3));
  } while (det(a).is_zero());
  RationalMatrix m = random_sp4z(g, 2) * levi(a) * random_sp4z(g, 2);
  if (!is_symplectic(m)) throw InternalError("random_sp4q produced a non-symplectic matrix");
  return m;
}

// ---- matrix lattices ----

namespace {

std::vector<Rational> flatten(const RationalMatrix& x) { return x.data(); }

RationalMatrix unflatten(const std::vector<Rational>& v, size_t n) {
  RationalMatrix x(n, n);
  x.data() = v;
  return x;
}

}  // namespace

MatrixLattice::MatrixLattice(size_t n, std::vector<RationalMatrix> basis) : n_(n), basis_(std::move(basis)) {
  const size_t nn = n * n;
  if (basis_.size() != nn) throw InvalidArgument("matrix lattice needs n^2 basis matrices");
  RationalMatrix cols(nn, nn);
  for (size_t k = 0; k < nn; ++k) {
    if (basis_[k].rows() != n || basis_[k].cols() != n) throw InvalidArgument("basis matrix has the wrong size");
    auto f = flatten(basis_[k]);
    for (size_t i = 0; i < nn; ++i) cols(i, k) = f[i];
  }
  if (rank(cols) != nn) throw InvalidArgument("matrix lattice is not full rank");
  to_basis_ = inverse(cols);
}

MatrixLattice MatrixLattice::standard(size_t n) {
  std::vector<RationalMatrix> b;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      RationalMatrix e(n, n);
      e(i, j) = 1;
      b.push_back(e);
    }
  return MatrixLattice(n, b);
}

std::vector<Rational> MatrixLattice::coords(const RationalMatrix& x) const { return to_basis_ * flatten(x); }

bool MatrixLattice::contains(const RationalMatrix& x) const {
  for (auto& c : coords(x))
    if (!c.is_integer()) return false;
  return true;
}

MatrixLattice MatrixLattice::scaled(const Rational& s) const {
  std::vector<RationalMatrix> b;
  for (auto& m : basis_) b.push_back(s * m);
  return MatrixLattice(n_, b);
}

bool operator==(const MatrixLattice& a, const MatrixLattice& b) {
  if (a.n_ != b.n_) return false;
  for (auto& m : a.basis_)
    if (!b.contains(m)) return false;
  for (auto& m : b.basis_)
    if (!a.contains(m)) return false;
  return true;
}

bool is_order(const MatrixLattice& l) {
  if (!l.contains(RationalMatrix::identity(l.n()))) return false;
  for (auto& x : l.basis())
    for (auto& y : l.basis())
      if (!l.contains(x * y)) return false;
  return true;
}

namespace {

// {x : coords(side(b, x)) integral for all basis b}, via SNF of the stacked coordinate maps
MatrixLattice multiplier_lattice(const MatrixLattice& l, bool right) {
  const size_t n = l.n(), nn = n * n;
  const auto std_basis = MatrixLattice::standard(n).basis();
  RationalMatrix cols(nn, nn);
  for (size_t c = 0; c < nn; ++c) {
    auto f = flatten(l.basis()[c]);
    for (size_t i = 0; i < nn; ++i) cols(i, c) = f[i];
  }
  const RationalMatrix to_coords = inverse(cols);
  RationalMatrix M(nn * nn, nn);
  for (size_t bi = 0; bi < nn; ++bi)
    for (size_t k = 0; k < nn; ++k) {
      const auto& b = l.basis()[bi];
      RationalMatrix prod = right ? b * std_basis[k] : std_basis[k] * b;
      std::vector<Rational> c = to_coords * flatten(prod);
      for (size_t i = 0; i < nn; ++i) M(bi * nn + i, k) = c[i];
    }
  auto [A, D] = clear_denominators(M);
  SmithForm s = smith_normal_form(A);
  if (s.divisors.size() != nn) throw InternalError("multiplier map is not injective");
  std::vector<RationalMatrix> basis;
  RationalMatrix V = s.V.to_rational();
  for (size_t i = 0; i < nn; ++i) {
    Rational scale = Rational(D) / Rational(s.divisors[i]);
    std::vector<Rational> y(nn);
    for (size_t r = 0; r < nn; ++r) y[r] = scale * V(r, i);
    basis.push_back(unflatten(y, n));
  }
  return MatrixLattice(n, basis);
}

}  // namespace

MatrixLattice right_order(const MatrixLattice& l) { return multiplier_lattice(l, true); }
MatrixLattice left_order(const MatrixLattice& l) { return multiplier_lattice(l, false); }

MatrixLattice oj_shape(size_t n, long j) {
  if (n < 1 || j < 1) throw InvalidArgument("oj_shape needs n >= 1 and j >= 1");
  std::vector<RationalMatrix> b;
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      RationalMatrix e(n, n);
      Rational v = 1;
      if (n > 1 && c == n - 1 && r < n - 1) v = Rational(1, j);
      if (n > 1 && r == n - 1 && c < n - 1) v = j;
      e(r, c) = v;
      b.push_back(e);
    }
  return MatrixLattice(n, b);
}

// ---- Humbert ----

HumbertTuple HumbertTuple::normalized(long long a, long long b, long long c, long long d, long long e) {
  long long g = std::gcd(std::gcd(std::gcd(a, b), std::gcd(c, d)), e);
  if (g == 0) throw InvalidArgument("Humbert tuple is all zero");
  HumbertTuple t{a / g, b / g, c / g, d / g, e / g};
  for (long long v : {t.a, t.b, t.c, t.d, t.e})
    if (v != 0) {
      if (v < 0) t = {-t.a, -t.b, -t.c, -t.d, -t.e};
      break;
    }
  return t;
}

std::string HumbertTuple::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + "," +
         std::to_string(e) + ")";
}

long long humbert_discriminant(const HumbertTuple& t) {
  __int128 v = __int128(t.b) * t.b - 4 * __int128(t.a) * t.c - 4 * __int128(t.d) * t.e;
  if (v > INT64_MAX || v < INT64_MIN) throw InvalidArgument("Humbert discriminant overflows 64 bits");
  return static_cast<long long>(v);
}

std::string HumbertClass::to_string() const {
  switch (kind) {
    case Split: return "split";
    case RealQuadratic: return "real_quadratic(" + std::to_string(field) + ")";
    case Degenerate: return "degenerate";
  }
  return "?";
}

HumbertClass classify_humbert(const HumbertTuple& t) {
  long long delta = humbert_discriminant(t);
  if (delta <= 0) return {HumbertClass::Degenerate, 0};
  if (is_perfect_square(delta)) return {HumbertClass::Split, 1};
  return {HumbertClass::RealQuadratic, squarefree_part(delta)};
}

HumbertMembership humbert_membership(const HumbertTuple& t, const Tau& tau) {
  if (!(tau[0][1] == tau[1][0])) throw InvalidArgument("tau must be symmetric");
  const Gaussian& t11 = tau[0][0];
  const Gaussian& t12 = tau[0][1];
  const Gaussian& t22 = tau[1][1];
  auto k = [](long long v) { return Gaussian{Rational(v), Rational(0)}; };
  Gaussian v = k(t.a) * t11 + k(t.b) * t12 + k(t.c) * t22 + k(t.d) * (t12 * t12 - t11 * t22) + k(t.e);
  HumbertMembership out;
  out.on_locus = v.re.is_zero() && v.im.is_zero();
  Rational det_im = t11.im * t22.im - t12.im * t12.im;
  out.outside_upper_half = !(t11.im.sign() > 0 && det_im.sign() > 0);
  return out;
}

OrbitReport enumerate_integral_orbits(int height, unsigned threads) {
  if (height < 1) throw InvalidArgument("height must be >= 1");
  const long long h = height;
  // partition by the leading coefficient a
  std::vector<long long> keys;
  for (long long a = -h; a <= h; ++a) keys.push_back(a);
  std::vector<std::map<long long, DeltaBucket>> parts(keys.size());
  std::vector<long long> counts(keys.size(), 0);
  auto work = [&](size_t idx) {
    long long a = keys[idx];
    auto& bucket = parts[idx];
    for (long long b = -h; b <= h; ++b)
      for (long long c = -h; c <= h; ++c)
        for (long long d = -h; d <= h; ++d)
          for (long long e = -h; e <= h; ++e) {
            if (!a && !b && !c && !d && !e) continue;
            if (std::gcd(std::gcd(std::gcd(a, b), std::gcd(c, d)), e) != 1) continue;
            HumbertTuple t{a, b, c, d, e};
            if (!(HumbertTuple::normalized(a, b, c, d, e) == t)) continue;
            long long delta = humbert_discriminant(t);
            auto cls = classify_humbert(t);
            auto& bk = bucket[delta];
            ++bk.count;
            bk.split = cls.kind == HumbertClass::Split;
            bk.degenerate = cls.kind == HumbertClass::Degenerate;
            long long r = ((delta % 4) + 4) % 4;
            bk.residue_ok = r == 0 || r == 1;
            ++counts[idx];
          }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    for (size_t i = 0; i < keys.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (size_t i; (i = next.fetch_add(1)) < keys.size();) work(i);
      });
    for (auto& th : pool) th.join();
  }
  OrbitReport rep;
  rep.height = height;
  for (size_t i = 0; i < keys.size(); ++i) {
    rep.tuples += counts[i];
    for (auto& [delta, bk] : parts[i]) {
      auto& out = rep.classes[delta];
      out.count += bk.count;
      out.split = bk.split;
      out.degenerate = bk.degenerate;
      out.residue_ok = bk.residue_ok;
    }
  }
  for (auto& [delta, bk] : rep.classes)
    if (bk.split) rep.integral_classes.push_back(delta);
  rep.mu_estimate = static_cast<long long>(rep.integral_classes.size());
  return rep;
}

}  // namespace toolkit
