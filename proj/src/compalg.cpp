#include "toolkit/compalg.hpp"

#include <algorithm>

namespace toolkit {

namespace {

struct OctTable {
  std::array<std::array<int, 8>, 8> sign{};
  std::array<std::array<int, 8>, 8> index{};
};

// lines {i, i+1, i+3} on labels 1..7; cyclic order along a line multiplies
// forward, reversed order flips the sign
OctTable build_octonion_table() {
  OctTable t;
  for (int j = 0; j < 8; ++j) {
    t.sign[0][j] = 1;
    t.index[0][j] = j;
    t.sign[j][0] = 1;
    t.index[j][0] = j;
  }
  for (int i = 1; i < 8; ++i) {
    t.sign[i][i] = -1;
    t.index[i][i] = 0;
  }
  auto lab = [](int k) { return (k - 1) % 7 + 1; };
  for (int i = 1; i <= 7; ++i) {
    int a = lab(i), b = lab(i + 1), c = lab(i + 3);
    int line[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) {
      int x = line[k], y = line[(k + 1) % 3], z = line[(k + 2) % 3];
      t.sign[x][y] = 1;
      t.index[x][y] = z;
      t.sign[y][x] = -1;
      t.index[y][x] = z;
    }
  }
  return t;
}

const OctTable& oct() {
  static const OctTable t = build_octonion_table();
  return t;
}

StructureConstantAlgebra from_octonion_labels(const std::vector<int>& labels, std::string name) {
  StructureConstantAlgebra a;
  a.name = std::move(name);
  a.dim = labels.size();
  a.table.resize(a.dim * a.dim);
  for (size_t i = 0; i < a.dim; ++i)
    for (size_t j = 0; j < a.dim; ++j) {
      auto p = octonion_basis_product(labels[i], labels[j]);
      auto pos = std::find(labels.begin(), labels.end(), p.index);
      if (pos == labels.end()) throw InternalError("label set is not a subalgebra");
      a.table[i * a.dim + j] = {{uint32_t(pos - labels.begin()), Rational(p.sign)}};
    }
  a.involution_signs.assign(a.dim, -1);
  a.involution_signs[0] = 1;
  a.unit_index = 0;
  a.validate();
  return a;
}

}  // namespace

OctonionProduct octonion_basis_product(int i, int j) { return {oct().sign[i][j], oct().index[i][j]}; }

Vec StructureConstantAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out(dim);
  for (size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      Rational xy = x[i] * y[j];
      for (const auto& [k, c] : product(i, j)) fma_into(out[k], xy, c);
    }
  }
  return out;
}

bool StructureConstantAlgebra::is_commutative() const {
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = i + 1; j < dim; ++j)
      if (product(i, j) != product(j, i)) return false;
  return true;
}

void StructureConstantAlgebra::validate() const {
  if (table.size() != dim * dim) throw InvalidArgument(name + ": table has wrong size");
  auto basis = [&](size_t i) {
    Vec v(dim);
    v[i] = 1;
    return v;
  };
  if (unit_index >= 0) {
    for (size_t i = 0; i < dim; ++i) {
      Vec e = basis(i);
      if (mul(basis(size_t(unit_index)), e) != e || mul(e, basis(size_t(unit_index))) != e)
        throw InvalidArgument(name + ": unit index is not a two-sided identity");
    }
  }
  if (involution_signs.empty()) return;
  if (involution_signs.size() != dim) throw InvalidArgument(name + ": involution has wrong length");
  auto inv = [&](Vec v) {
    for (size_t i = 0; i < dim; ++i)
      if (involution_signs[i] < 0) v[i] = -v[i];
    return v;
  };
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j)
      if (inv(mul(basis(i), basis(j))) != mul(inv(basis(j)), inv(basis(i))))
        throw InvalidArgument(name + ": involution is not an anti-automorphism");
}

StructureConstantAlgebra octonion_table() { return from_octonion_labels({0, 1, 2, 3, 4, 5, 6, 7}, "octonion"); }

StructureConstantAlgebra quaternion_subtable() { return from_octonion_labels({0, 1, 2, 4}, "quaternion"); }

StructureConstantAlgebra rational_field() {
  StructureConstantAlgebra a;
  a.name = "rational";
  a.dim = 1;
  a.table = {{{0, Rational(1)}}};
  a.involution_signs = {1};
  a.unit_index = 0;
  return a;
}

// ---- octonion elements ----

OctonionElement OctonionElement::basis(size_t i) {
  OctonionElement x;
  x.c_[i] = 1;
  return x;
}

OctonionElement OctonionElement::scalar(const Rational& s) {
  OctonionElement x;
  x.c_[0] = s;
  return x;
}

bool OctonionElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

OctonionElement operator+(const OctonionElement& x, const OctonionElement& y) {
  OctonionElement s = x;
  for (size_t i = 0; i < 8; ++i)
    if (!y.c_[i].is_zero()) s.c_[i] += y.c_[i];
  return s;
}

OctonionElement operator-(const OctonionElement& x, const OctonionElement& y) {
  OctonionElement s = x;
  for (size_t i = 0; i < 8; ++i)
    if (!y.c_[i].is_zero()) s.c_[i] -= y.c_[i];
  return s;
}

OctonionElement OctonionElement::operator-() const {
  OctonionElement s;
  for (size_t i = 0; i < 8; ++i) s.c_[i] = -c_[i];
  return s;
}

OctonionElement operator*(const Rational& s, const OctonionElement& x) {
  OctonionElement r;
  if (s.is_zero()) return r;
  for (size_t i = 0; i < 8; ++i)
    if (!x.c_[i].is_zero()) r.c_[i] = s * x.c_[i];
  return r;
}

OctonionElement operator*(const OctonionElement& x, const OctonionElement& y) {
  const OctTable& t = oct();
  OctonionElement r;
  for (int i = 0; i < 8; ++i) {
    if (x.c_[i].is_zero()) continue;
    for (int j = 0; j < 8; ++j) {
      if (y.c_[j].is_zero()) continue;
      Rational p = x.c_[i] * y.c_[j];
      if (t.sign[i][j] > 0)
        r.c_[t.index[i][j]] += p;
      else
        r.c_[t.index[i][j]] -= p;
    }
  }
  return r;
}

OctonionElement conj(const OctonionElement& x) {
  OctonionElement r = -x;
  r[0] = x[0];
  return r;
}

Rational norm(const OctonionElement& x) {
  OctonionElement p = x * conj(x);
  for (size_t i = 1; i < 8; ++i)
    if (!p[i].is_zero()) throw InternalError("x * conj(x) is not a multiple of e0");
  return p[0];
}

Rational trace(const OctonionElement& x) { return x[0] + x[0]; }

bool in_maximal_order(const OctonionElement& x) {
  Rational sum;
  for (size_t i = 0; i < 8; ++i) {
    if (!(x[i] + x[i]).is_integer()) return false;
    if (!(x[i] - x[0]).is_integer()) return false;  // differences against x_0 cover every pair
    sum += x[i];
  }
  if (!sum.is_integer()) return false;
  mpz_class s = sum.num();
  return mpz_even_p(s.get_mpz_t()) != 0;
}

std::vector<OctonionElement> maximal_order_generators() {
  std::vector<OctonionElement> g;
  for (size_t i = 1; i < 8; ++i) g.push_back(OctonionElement::basis(0) + OctonionElement::basis(i));
  OctonionElement h;
  for (size_t i = 0; i < 8; ++i) h[i] = Rational(1, 2);
  g.push_back(h);
  return g;
}

// ---- derivations ----

bool is_derivation(const StructureConstantAlgebra& alg, const RationalMatrix& d) {
  const size_t n = alg.dim;
  if (d.rows() != n || d.cols() != n) return false;
  // D(e_i) e_j and e_i D(e_j) via the sparse table
  auto left = [&](size_t i, size_t j, Vec& acc, const Rational& sgn) {
    for (size_t m = 0; m < n; ++m) {
      if (d(m, i).is_zero()) continue;
      Rational f = sgn * d(m, i);
      for (const auto& [k, c] : alg.product(m, j)) fma_into(acc[k], f, c);
    }
  };
  auto right = [&](size_t i, size_t j, Vec& acc, const Rational& sgn) {
    for (size_t m = 0; m < n; ++m) {
      if (d(m, j).is_zero()) continue;
      Rational f = sgn * d(m, j);
      for (const auto& [k, c] : alg.product(i, m)) fma_into(acc[k], f, c);
    }
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec acc(n);
      for (const auto& [l, c] : alg.product(i, j))
        for (size_t k = 0; k < n; ++k) fma_into(acc[k], c, d(k, l));
      left(i, j, acc, Rational(-1));
      right(i, j, acc, Rational(-1));
      for (const auto& v : acc)
        if (!v.is_zero()) return false;
    }
  return true;
}

std::vector<DerivationMap> derivation_algebra(const StructureConstantAlgebra& alg, const ProgressFn& progress) {
  const size_t n = alg.dim;
  const bool comm = alg.is_commutative();
  // unknown D[k][l] sits at column k*n + l
  auto var = [n](size_t k, size_t l) { return uint32_t(k * n + l); };
  SparseEliminator se(n * n);
  const size_t total = comm ? n * (n + 1) / 2 : n * n;
  size_t done = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = comm ? i : 0; j < n; ++j) {
      // coordinate k of D(e_i e_j) - D(e_i) e_j - e_i D(e_j)
      std::vector<SparseRow> eq(n);
      for (const auto& [l, c] : alg.product(i, j))
        for (size_t k = 0; k < n; ++k) eq[k].emplace_back(var(k, l), c);
      for (size_t m = 0; m < n; ++m) {
        for (const auto& [k, c] : alg.product(m, j)) eq[k].emplace_back(var(m, i), -c);
        for (const auto& [k, c] : alg.product(i, m)) eq[k].emplace_back(var(m, j), -c);
      }
      for (auto& row : eq) se.add_row(std::move(row));
      ++done;
      if (progress && (done % 32 == 0 || done == total)) progress(done, total);
    }
  std::vector<DerivationMap> out;
  for (auto& v : se.nullspace()) {
    RationalMatrix m(n, n);
    m.data() = std::move(v);
    if (!is_derivation(alg, m)) throw InternalError(alg.name + ": nullspace vector fails the Leibniz rule");
    if (alg.unit_index >= 0)
      for (size_t k = 0; k < n; ++k)
        if (!m(k, size_t(alg.unit_index)).is_zero()) throw InternalError(alg.name + ": derivation moves the unit");
    out.push_back({std::move(m)});
  }
  return out;
}

bool commutator_closed(const std::vector<DerivationMap>& basis) {
  if (basis.empty()) return true;
  size_t n = basis[0].matrix.rows();
  SpanTracker span(n * n);
  for (const auto& d : basis) span.add(d.matrix.data());
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a + 1; b < basis.size(); ++b)
      if (!span.contains(commutator(basis[a].matrix, basis[b].matrix).data())) return false;
  return true;
}

}  // namespace toolkit
