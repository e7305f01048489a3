#include "toolkit/titslie.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace toolkit {

std::string to_string(TitsModel m) { return m == TitsModel::E6 ? "e6" : "e7"; }

TitsModel parse_tits_model(const std::string& s) {
  if (s == "e6" || s == "E6") return TitsModel::E6;
  if (s == "e7" || s == "E7") return TitsModel::E7;
  throw InvalidArgument("unknown model '" + s + "' (expected e6 or e7)");
}

GammaVector default_gamma(TitsModel m) { return m == TitsModel::E6 ? GammaVector(1, -1, 1) : GammaVector(1, 1, 1); }

std::shared_ptr<const std::vector<DerivationMap>> jordan_derivations(const GammaVector& gamma,
                                                                     const ProgressFn& progress) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const std::vector<DerivationMap>>> cache;
  std::lock_guard lock(mu);
  auto key = gamma.to_string();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto der = std::make_shared<const std::vector<DerivationMap>>(derivation_algebra(*jordan_table(gamma), progress));
  cache[key] = der;
  return der;
}

TitsContext make_context(TitsModel model, const GammaVector& gamma, const ProgressFn& progress) {
  return {model, gamma, jordan_table(gamma), jordan_derivations(gamma, progress)};
}

RationalMatrix left_mult_operator(const StructureConstantAlgebra& table, const Vec& a) {
  const size_t n = table.dim;
  RationalMatrix L(n, n);
  for (size_t s = 0; s < n; ++s) {
    if (a[s].is_zero()) continue;
    for (size_t l = 0; l < n; ++l)
      for (const auto& [k, c] : table.product(s, l)) fma_into(L(k, l), a[s], c);
  }
  return L;
}

RationalMatrix left_mult_operator(const JordanElement& a) {
  return left_mult_operator(*jordan_table(a.gamma()), a.coords());
}

namespace {

Vec vadd(const Vec& x, const Vec& y) {
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i)
    if (!y[i].is_zero()) r[i] += y[i];
  return r;
}

Vec vneg(const Vec& x) {
  Vec r(x.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = -x[i];
  return r;
}

bool vzero(const Vec& x) {
  for (auto& v : x)
    if (!v.is_zero()) return false;
  return true;
}

Rational jtrace_coords(const Vec& a) { return a[0] + a[1] + a[2]; }

}  // namespace

// ---- E6 ----

E6ModelElement E6ModelElement::zero() { return {Vec(kJordanDim), RationalMatrix(kJordanDim, kJordanDim)}; }
bool E6ModelElement::is_zero() const { return vzero(a) && d.is_zero(); }
E6ModelElement E6ModelElement::operator-() const { return {vneg(a), Rational(-1) * d}; }
E6ModelElement operator+(const E6ModelElement& x, const E6ModelElement& y) { return {vadd(x.a, y.a), x.d + y.d}; }
E6ModelElement operator-(const E6ModelElement& x, const E6ModelElement& y) { return x + (-y); }

E6ModelElement e6_bracket(const TitsContext& ctx, const E6ModelElement& x, const E6ModelElement& y, bool validate) {
  E6ModelElement r;
  r.a = vadd(x.d * y.a, vneg(y.d * x.a));
  r.d = commutator(x.d, y.d) - commutator(left_mult_operator(*ctx.table, x.a), left_mult_operator(*ctx.table, y.a));
  if (validate) {
    if (!jtrace_coords(r.a).is_zero()) throw InternalError("e6 bracket left J0");
    if (!is_derivation(*ctx.table, r.d)) throw InternalError("e6 bracket derivation part fails Leibniz");
  }
  return r;
}

// ---- E7 ----

RationalMatrix sl2_basis(size_t i) {
  switch (i) {
    case 0: return RationalMatrix{{1, 0}, {0, -1}};
    case 1: return RationalMatrix{{0, 1}, {0, 0}};
    case 2: return RationalMatrix{{0, 0}, {1, 0}};
  }
  throw InvalidArgument("sl2 basis index out of range");
}

namespace {

struct Sl2Constants {
  Rational bracket[3][3][3];  // [a_i, a_j] = sum_k bracket[i][j][k] a_k
  Rational trace[3][3];       // Tr(a_i a_j)
};

// coordinates of a traceless 2x2 matrix [[p, q], [r, -p]] are (p, q, r)
Sl2Constants build_sl2() {
  Sl2Constants s;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      RationalMatrix a = sl2_basis(i), b = sl2_basis(j);
      RationalMatrix c = commutator(a, b), p = a * b;
      if (!(c(0, 0) + c(1, 1)).is_zero()) throw InternalError("sl2 commutator not traceless");
      s.bracket[i][j][0] = c(0, 0);
      s.bracket[i][j][1] = c(0, 1);
      s.bracket[i][j][2] = c(1, 0);
      s.trace[i][j] = p(0, 0) + p(1, 1);
    }
  return s;
}

const Sl2Constants& sl2() {
  static const Sl2Constants s = build_sl2();
  return s;
}

}  // namespace

E7ModelElement E7ModelElement::zero() {
  return {{Vec(kJordanDim), Vec(kJordanDim), Vec(kJordanDim)}, RationalMatrix(kJordanDim, kJordanDim)};
}
bool E7ModelElement::is_zero() const { return vzero(t[0]) && vzero(t[1]) && vzero(t[2]) && d.is_zero(); }
E7ModelElement E7ModelElement::operator-() const {
  return {{vneg(t[0]), vneg(t[1]), vneg(t[2])}, Rational(-1) * d};
}
E7ModelElement operator+(const E7ModelElement& x, const E7ModelElement& y) {
  return {{vadd(x.t[0], y.t[0]), vadd(x.t[1], y.t[1]), vadd(x.t[2], y.t[2])}, x.d + y.d};
}
E7ModelElement operator-(const E7ModelElement& x, const E7ModelElement& y) { return x + (-y); }

E7ModelElement e7_bracket(const TitsContext& ctx, const E7ModelElement& x, const E7ModelElement& y, bool validate) {
  const auto& s = sl2();
  const auto& J = *ctx.table;
  const Rational half(1, 2);
  E7ModelElement r = E7ModelElement::zero();
  std::array<RationalMatrix, 3> Lx, Ly;
  for (size_t i = 0; i < 3; ++i) {
    Lx[i] = left_mult_operator(J, x.t[i]);
    Ly[i] = left_mult_operator(J, y.t[i]);
  }
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      // rule (i): 1/2 [a,b] (x) AoB + 1/2 Tr(ab) [L(A), L(B)]
      bool any = false;
      for (size_t k = 0; k < 3; ++k) any = any || !s.bracket[i][j][k].is_zero();
      if (any) {
        Vec ab = J.mul(x.t[i], y.t[j]);
        for (size_t k = 0; k < 3; ++k) {
          if (s.bracket[i][j][k].is_zero()) continue;
          Rational f = half * s.bracket[i][j][k];
          for (size_t c = 0; c < kJordanDim; ++c) fma_into(r.t[k][c], f, ab[c]);
        }
      }
      if (!s.trace[i][j].is_zero()) r.d = r.d + (half * s.trace[i][j]) * commutator(Lx[i], Ly[j]);
    }
  // rule (ii): [D, b (x) B] = b (x) D(B), and its mirror
  for (size_t k = 0; k < 3; ++k) {
    r.t[k] = vadd(r.t[k], x.d * y.t[k]);
    r.t[k] = vadd(r.t[k], vneg(y.d * x.t[k]));
  }
  // rule (iii)
  r.d = r.d + commutator(x.d, y.d);
  if (validate && !is_derivation(J, r.d)) throw InternalError("e7 bracket derivation part fails Leibniz");
  return r;
}

// ---- dimensions ----

size_t traceless_jordan_dim() {
  RationalMatrix tr(1, kJordanDim);
  for (size_t i = 0; i < 3; ++i) tr(0, i) = 1;
  return nullspace(tr).size();
}

size_t traceless_2x2_dim() {
  // entries (m11, m12, m21, m22); trace = m11 + m22
  return nullspace(RationalMatrix{{1, 0, 0, 1}}).size();
}

size_t model_dimension(const TitsContext& ctx) {
  size_t der = ctx.derivations->size();
  if (ctx.model == TitsModel::E6) return traceless_jordan_dim() + der;
  return traceless_2x2_dim() * kJordanDim + der;
}

// ---- sampling ----

namespace {

RationalMatrix random_derivation(const TitsContext& ctx, Engine& g) {
  RationalMatrix d(kJordanDim, kJordanDim);
  for (const auto& b : *ctx.derivations) {
    if (draw(g, 0, 3) != 0) continue;
    Rational c = draw(g, -2, 2);
    if (c.is_zero()) continue;
    d = d + c * b.matrix;
  }
  return d;
}

Vec random_jordan_coords(Engine& g) {
  Vec v(kJordanDim);
  for (auto& x : v) x = draw(g, -2, 2);
  return v;
}

}  // namespace

E6ModelElement random_e6_element(const TitsContext& ctx, Engine& g) {
  E6ModelElement x;
  x.a = random_jordan_coords(g);
  x.a[2] = -(x.a[0] + x.a[1]);
  x.d = random_derivation(ctx, g);
  return x;
}

E7ModelElement random_e7_element(const TitsContext& ctx, Engine& g) {
  E7ModelElement x;
  for (auto& t : x.t) t = random_jordan_coords(g);
  x.d = random_derivation(ctx, g);
  return x;
}

// ---- Jacobi ----

namespace {

struct TripleOutcome {
  bool jacobi = true, anti = true, alt = true;
};

template <class Elem, class Bracket>
TripleOutcome check_triple(const Elem& x, const Elem& y, const Elem& z, Bracket br, bool validate) {
  TripleOutcome o;
  Elem xy = br(x, y, validate), yz = br(y, z, validate), zx = br(z, x, validate);
  Elem jac = br(xy, z, validate) + br(yz, x, validate) + br(zx, y, validate);
  o.jacobi = jac.is_zero();
  o.anti = (br(y, x, false) + xy).is_zero() && (br(z, y, false) + yz).is_zero() && (br(x, z, false) + zx).is_zero();
  o.alt = br(x, x, false).is_zero();
  return o;
}

template <class Fn>
void parallel_for(size_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(n ? n : 1)));
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      try {
        for (size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

JacobiReport jacobi_report(const TitsContext& ctx, size_t sample_count, uint64_t seed, const JacobiOptions& opts) {
  if (sample_count < 1) throw InvalidArgument("sample_count must be at least 1");
  JacobiReport rep;
  rep.model = ctx.model;
  rep.gamma = ctx.gamma.to_string();
  rep.samples = sample_count;
  rep.seed = seed;
  std::vector<TripleOutcome> out(sample_count);
  const uint64_t tag = ctx.model == TitsModel::E6 ? 6 : 7;
  std::atomic<size_t> done{0};
  std::mutex progress_mu;
  parallel_for(sample_count, opts.threads, [&](size_t s) {
    Engine g = substream(seed, tag, s);
    bool validate = s < opts.validate_first;
    if (ctx.model == TitsModel::E6) {
      auto br = [&](const E6ModelElement& a, const E6ModelElement& b, bool v) { return e6_bracket(ctx, a, b, v); };
      auto x = random_e6_element(ctx, g), y = random_e6_element(ctx, g), z = random_e6_element(ctx, g);
      out[s] = check_triple(x, y, z, br, validate);
    } else {
      auto br = [&](const E7ModelElement& a, const E7ModelElement& b, bool v) { return e7_bracket(ctx, a, b, v); };
      auto x = random_e7_element(ctx, g), y = random_e7_element(ctx, g), z = random_e7_element(ctx, g);
      out[s] = check_triple(x, y, z, br, validate);
    }
    size_t d = ++done;
    if (opts.progress) {
      std::lock_guard lock(progress_mu);
      opts.progress(d, sample_count);
    }
  });
  for (auto& o : out) {
    rep.jacobi_defects += !o.jacobi;
    rep.anticommutativity_failures += !o.anti;
    rep.alternating_failures += !o.alt;
  }
  rep.validated_triples = std::min(sample_count, opts.validate_first);

  if (opts.exhaustive_basis) {
    // all basis triples i < j < k
    std::vector<E6ModelElement> b6;
    std::vector<E7ModelElement> b7;
    if (ctx.model == TitsModel::E6) {
      for (size_t i = 0; i < 2; ++i) {
        auto e = E6ModelElement::zero();
        e.a[i] = 1;
        e.a[i + 1] = -1;
        b6.push_back(e);
      }
      for (size_t c = 3; c < kJordanDim; ++c) {
        auto e = E6ModelElement::zero();
        e.a[c] = 1;
        b6.push_back(e);
      }
      for (auto& d : *ctx.derivations) b6.push_back({Vec(kJordanDim), d.matrix});
    } else {
      for (size_t k = 0; k < 3; ++k)
        for (size_t c = 0; c < kJordanDim; ++c) {
          auto e = E7ModelElement::zero();
          e.t[k][c] = 1;
          b7.push_back(e);
        }
      for (auto& d : *ctx.derivations) {
        auto e = E7ModelElement::zero();
        e.d = d.matrix;
        b7.push_back(e);
      }
    }
    const size_t n = ctx.model == TitsModel::E6 ? b6.size() : b7.size();
    std::vector<std::array<uint32_t, 3>> triples;
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = i + 1; j < n; ++j)
        for (uint32_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
    std::vector<char> bad(triples.size(), 0);
    parallel_for(triples.size(), opts.threads, [&](size_t t) {
      auto [i, j, k] = triples[t];
      if (ctx.model == TitsModel::E6) {
        auto br = [&](const E6ModelElement& a, const E6ModelElement& b) { return e6_bracket(ctx, a, b, false); };
        auto jac = br(br(b6[i], b6[j]), b6[k]) + br(br(b6[j], b6[k]), b6[i]) + br(br(b6[k], b6[i]), b6[j]);
        bad[t] = !jac.is_zero();
      } else {
        auto br = [&](const E7ModelElement& a, const E7ModelElement& b) { return e7_bracket(ctx, a, b, false); };
        auto jac = br(br(b7[i], b7[j]), b7[k]) + br(br(b7[j], b7[k]), b7[i]) + br(br(b7[k], b7[i]), b7[j]);
        bad[t] = !jac.is_zero();
      }
    });
    rep.basis_triples = triples.size();
    for (char c : bad) rep.jacobi_defects += c;
  }
  return rep;
}

}  // namespace toolkit
