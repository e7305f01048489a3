#include "toolkit/jordan.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace toolkit {

GammaVector::GammaVector(Rational a, Rational b, Rational c) : g{std::move(a), std::move(b), std::move(c)} {
  for (auto& v : g)
    if (v.is_zero()) throw InvalidArgument("gamma entries must be nonzero");
}

GammaVector GammaVector::parse(const std::string& csv) {
  std::vector<Rational> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(Rational::parse(item));
  if (parts.size() != 3) throw InvalidArgument("gamma needs three entries, got '" + csv + "'");
  return {parts[0], parts[1], parts[2]};
}

std::string GammaVector::to_string() const { return g[0].to_string() + "," + g[1].to_string() + "," + g[2].to_string(); }

// ---- elements ----

JordanElement JordanElement::identity(const GammaVector& gamma) { return diag(1, 1, 1, gamma); }

JordanElement JordanElement::diag(const Rational& a, const Rational& b, const Rational& c, const GammaVector& gamma) {
  JordanElement x(gamma);
  x.xi_ = {a, b, c};
  return x;
}

JordanElement JordanElement::basis(size_t index, const GammaVector& gamma) {
  Vec v(kJordanDim);
  v.at(index) = 1;
  return from_coords(v, gamma);
}

JordanElement JordanElement::from_coords(const Vec& v, const GammaVector& gamma) {
  if (v.size() != kJordanDim) throw InvalidArgument("jordan coordinate vector must have 27 entries");
  JordanElement x(gamma);
  for (size_t i = 0; i < 3; ++i) x.xi_[i] = v[i];
  for (size_t i = 0; i < 3; ++i)
    for (size_t c = 0; c < 8; ++c) x.x_[i][c] = v[3 + 8 * i + c];
  return x;
}

Vec JordanElement::coords() const {
  Vec v(kJordanDim);
  for (size_t i = 0; i < 3; ++i) v[i] = xi_[i];
  for (size_t i = 0; i < 3; ++i)
    for (size_t c = 0; c < 8; ++c) v[3 + 8 * i + c] = x_[i][c];
  return v;
}

bool JordanElement::is_zero() const {
  for (auto& v : xi_)
    if (!v.is_zero()) return false;
  for (auto& o : x_)
    if (!o.is_zero()) return false;
  return true;
}

JordanElement JordanElement::operator-() const {
  JordanElement r(gamma_);
  for (size_t i = 0; i < 3; ++i) {
    r.xi_[i] = -xi_[i];
    r.x_[i] = -x_[i];
  }
  return r;
}

namespace {
void same_gamma(const JordanElement& a, const JordanElement& b) {
  if (!(a.gamma() == b.gamma())) throw InvalidArgument("jordan elements with different gamma");
}
}  // namespace

JordanElement operator+(const JordanElement& a, const JordanElement& b) {
  same_gamma(a, b);
  JordanElement r = a;
  for (size_t i = 0; i < 3; ++i) {
    r.xi_[i] += b.xi_[i];
    r.x_[i] = r.x_[i] + b.x_[i];
  }
  return r;
}

JordanElement operator-(const JordanElement& a, const JordanElement& b) { return a + (-b); }

JordanElement operator*(const Rational& s, const JordanElement& a) {
  JordanElement r(a.gamma_);
  for (size_t i = 0; i < 3; ++i) {
    r.xi_[i] = s * a.xi_[i];
    r.x_[i] = s * a.x_[i];
  }
  return r;
}

// ---- matrix realization ----

OctMatrix realize(const JordanElement& x) {
  const auto& g = x.gamma();
  OctMatrix m;
  for (size_t i = 0; i < 3; ++i) m[i][i] = OctonionElement::scalar(x.xi(i));
  for (size_t i = 0; i < 3; ++i) {
    size_t j = (i + 1) % 3, k = (i + 2) % 3;
    m[j][k] = g[k] * x.x(i);
    m[k][j] = g[j] * conj(x.x(i));
  }
  return m;
}

JordanElement extract(const OctMatrix& m, const GammaVector& gamma) {
  JordanElement x(gamma);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t c = 1; c < 8; ++c)
      if (!m[i][i][c].is_zero()) throw InternalError("diagonal entry is not a scalar");
    x.xi(i) = m[i][i][0];
  }
  for (size_t i = 0; i < 3; ++i) {
    size_t j = (i + 1) % 3, k = (i + 2) % 3;
    x.x(i) = gamma[k].inverse() * m[j][k];
  }
  if (realize(x) != m) throw InternalError("matrix is not twisted-hermitian");
  return x;
}

OctMatrix matmul(const OctMatrix& a, const OctMatrix& b) {
  OctMatrix p;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      for (size_t k = 0; k < 3; ++k) p[i][j] = p[i][j] + a[i][k] * b[k][j];
  return p;
}

JordanElement jmul(const JordanElement& x, const JordanElement& y) {
  same_gamma(x, y);
  OctMatrix X = realize(x), Y = realize(y);
  OctMatrix P = matmul(X, Y), Q = matmul(Y, X);
  const Rational half(1, 2);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) P[i][j] = half * (P[i][j] + Q[i][j]);
  return extract(P, x.gamma());
}

Rational jtrace(const JordanElement& x) { return x.xi(0) + x.xi(1) + x.xi(2); }

JordanElement jsharp(const JordanElement& x) {
  const auto& g = x.gamma();
  JordanElement s(g);
  for (size_t i = 0; i < 3; ++i) {
    size_t j = (i + 1) % 3, k = (i + 2) % 3;
    s.xi(i) = x.xi(j) * x.xi(k) - g[j] * g[k] * norm(x.x(i));
    s.x(i) = g[i] * conj(x.x(j) * x.x(k)) - x.xi(i) * x.x(i);
  }
  return s;
}

Rational jnorm(const JordanElement& x) {
  JordanElement p = jmul(x, jsharp(x));
  if (!(p == JordanElement::diag(p.xi(0), p.xi(0), p.xi(0), x.gamma())))
    throw InternalError("x o x# is not a scalar matrix");
  return p.xi(0);
}

Rational jnorm_printed(const JordanElement& x) {
  const auto& g = x.gamma();
  return x.xi(0) * x.xi(1) * x.xi(2) + x.xi(0) * g[1] * g[2] * norm(x.x(0)) + g[0] * x.xi(1) * g[2] * norm(x.x(1)) +
         g[0] * g[1] * x.xi(2) * norm(x.x(2));
}

Rational jquadratic(const JordanElement& x) { return jtrace(jsharp(x)); }

JordanElement jinverse(const JordanElement& x) {
  Rational n = jnorm(x);
  if (n.is_zero()) throw NotInvertible("N(x) = 0");
  JordanElement y = n.inverse() * jsharp(x);
  JordanElement one = JordanElement::identity(x.gamma());
  if (jmul(x, y) != one || jmul(jmul(x, x), y) != x) throw InternalError("inverse contract violated");
  return y;
}

bool is_integral(const JordanElement& x) {
  return jnorm(x).is_integer() && jtrace(x).is_integer() && jquadratic(x).is_integer();
}

JordanOrderDescriptor maximal_jordan_order(const GammaVector& gamma) {
  return {"J(M," + gamma.to_string() + ")", [](const OctonionElement& o) { return in_maximal_order(o); }, gamma};
}

bool in_jordan_order(const JordanElement& x, const JordanOrderDescriptor& o) {
  if (!(x.gamma() == o.gamma)) return false;
  for (size_t i = 0; i < 3; ++i)
    if (!x.xi(i).is_integer()) return false;
  for (size_t i = 0; i < 3; ++i)
    if (!o.coordinate_order(x.x(i))) return false;
  return true;
}

std::shared_ptr<const StructureConstantAlgebra> jordan_table(const GammaVector& gamma) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const StructureConstantAlgebra>> cache;
  std::lock_guard lock(mu);
  auto key = gamma.to_string();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto alg = std::make_shared<StructureConstantAlgebra>();
  alg->name = "J(O," + key + ")";
  alg->dim = kJordanDim;
  alg->table.resize(kJordanDim * kJordanDim);
  std::vector<JordanElement> basis;
  for (size_t a = 0; a < kJordanDim; ++a) basis.push_back(JordanElement::basis(a, gamma));
  for (size_t a = 0; a < kJordanDim; ++a)
    for (size_t b = a; b < kJordanDim; ++b) {
      Vec p = jmul(basis[a], basis[b]).coords();
      SparseRow row;
      for (size_t k = 0; k < kJordanDim; ++k)
        if (!p[k].is_zero()) row.emplace_back(uint32_t(k), p[k]);
      alg->table[a * kJordanDim + b] = row;
      alg->table[b * kJordanDim + a] = row;
    }
  cache[key] = alg;
  return alg;
}

}  // namespace toolkit
