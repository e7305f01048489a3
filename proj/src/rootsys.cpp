#include "toolkit/rootsys.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace toolkit {

bool Root::positive() const {
  for (int c : coeffs)
    if (c != 0) return c > 0;
  return false;
}

std::optional<size_t> RootSystem::find(const std::vector<int>& coeffs) const {
  auto it = index_.find(coeffs);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RootSet RootSystem::positive_roots() const {
  RootSet s;
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i].positive()) s.push_back(i);
  return s;
}

RootSet RootSystem::all() const {
  RootSet s(roots.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

std::string RootSystem::format(size_t idx) const {
  std::string out;
  const auto& e = roots[idx].eps;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i].is_zero()) continue;
    Rational a = abs(e[i]);
    if (e[i].sign() < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (!a.is_one()) out += a.to_string();
    out += "e" + std::to_string(i + 1);
  }
  return out;
}

namespace {

using EpsVec = std::vector<Rational>;

EpsVec unit(size_t m, size_t i, int s = 1) {
  EpsVec v(m);
  v[i] = s;
  return v;
}

EpsVec plus(EpsVec a, const EpsVec& b, int s = 1) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += Rational(s) * b[i];
  return a;
}

void pm_pairs(std::vector<EpsVec>& out, size_t m, size_t upto) {
  for (size_t i = 0; i < upto; ++i)
    for (size_t j = i + 1; j < upto; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) out.push_back(plus(unit(m, i, si), unit(m, j, sj)));
}

size_t classical_count(const std::string& t, int n) {
  if (t == "A") return size_t(n) * (n + 1);
  if (t == "B" || t == "C") return 2 * size_t(n) * n;
  if (t == "D") return 2 * size_t(n) * (n - 1);
  if (t == "E6") return 72;
  if (t == "E7") return 126;
  return 0;
}

}  // namespace

RootSystem build_root_system(const std::string& type_label, int rank) {
  RootSystem sys;
  sys.type_label = type_label;
  sys.rank = rank;
  std::vector<EpsVec> eps, simple;
  const Rational half(1, 2);
  auto bad = [&] { return InvalidArgument("unsupported root system " + type_label + std::to_string(rank)); };

  if (type_label == "A") {
    if (rank < 1) throw bad();
    size_t m = size_t(rank) + 1;
    sys.ambient = m;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        if (i != j) eps.push_back(plus(unit(m, i), unit(m, j), -1));
    for (size_t i = 0; i + 1 < m; ++i) simple.push_back(plus(unit(m, i), unit(m, i + 1), -1));
  } else if (type_label == "B" || type_label == "C" || type_label == "D") {
    int lo = type_label == "D" ? 2 : 1;
    if (rank < lo) throw bad();
    size_t m = size_t(rank);
    sys.ambient = m;
    pm_pairs(eps, m, m);
    for (size_t i = 0; i < m; ++i)
      for (int s : {1, -1}) {
        if (type_label == "B") eps.push_back(unit(m, i, s));
        if (type_label == "C") eps.push_back(unit(m, i, 2 * s));
      }
    for (size_t i = 0; i + 1 < m; ++i) simple.push_back(plus(unit(m, i), unit(m, i + 1), -1));
    if (type_label == "B") simple.push_back(unit(m, m - 1));
    if (type_label == "C") simple.push_back(unit(m, m - 1, 2));
    if (type_label == "D") simple.push_back(plus(unit(m, m - 2), unit(m, m - 1)));
  } else if ((type_label == "E6" && rank == 6) || (type_label == "E7" && rank == 7)) {
    const size_t m = 8;
    sys.ambient = m;
    const bool e6 = type_label == "E6";
    const size_t free = e6 ? 5 : 6;
    pm_pairs(eps, m, free);
    if (!e6) {
      eps.push_back(plus(unit(m, 6), unit(m, 7), -1));
      eps.push_back(plus(unit(m, 7), unit(m, 6), -1));
    }
    for (unsigned mask = 0; mask < (1u << free); ++mask) {
      int odd = __builtin_popcount(mask) % 2;
      if (e6 ? odd != 0 : odd != 1) continue;
      EpsVec v(m);
      for (size_t i = 0; i < free; ++i) v[i] = (mask >> i) & 1 ? -half : half;
      if (e6) {
        v[5] = -half;
        v[6] = -half;
        v[7] = half;
      } else {
        v[6] = half;
        v[7] = -half;
      }
      eps.push_back(v);
      EpsVec w(m);
      for (size_t i = 0; i < m; ++i) w[i] = -v[i];
      eps.push_back(w);
    }
    EpsVec a1(m);
    for (size_t i = 0; i < m; ++i) a1[i] = (i == 0 || i == 7) ? half : -half;
    simple.push_back(a1);
    simple.push_back(plus(unit(m, 0), unit(m, 1)));
    for (size_t i = 1; i < size_t(rank) - 1; ++i) simple.push_back(plus(unit(m, i), unit(m, i - 1), -1));
  } else {
    throw bad();
  }

  // coefficients c with c * S = v, via the Gram matrix of the simple roots
  const size_t r = simple.size();
  RationalMatrix S(r, sys.ambient);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < sys.ambient; ++j) S(i, j) = simple[i][j];
  RationalMatrix ginv = inverse(S * S.transpose());
  for (auto& v : eps) {
    RationalMatrix vm(1, sys.ambient);
    vm.data() = v;
    RationalMatrix c = vm * S.transpose() * ginv;
    Root root;
    root.eps = v;
    int sign = 0;
    for (size_t i = 0; i < r; ++i) {
      if (!c(0, i).is_integer()) throw InternalError("root is not an integer combination of simple roots");
      int ci = int(c(0, i).num().get_si());
      if (ci != 0) {
        int s = ci > 0 ? 1 : -1;
        if (sign != 0 && s != sign) throw InternalError("root has mixed-sign simple coefficients");
        sign = s;
      }
      root.coeffs.push_back(ci);
    }
    if (!(c * S == vm)) throw InternalError("root outside the span of the simple roots");
    sys.index_[root.coeffs] = sys.roots.size();
    sys.roots.push_back(std::move(root));
  }
  if (sys.roots.size() != classical_count(type_label, rank) || sys.index_.size() != sys.roots.size())
    throw InternalError("root count mismatch for " + type_label + std::to_string(rank));
  for (size_t i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    auto idx = sys.find(e);
    if (!idx) throw InternalError("simple root missing");
    sys.simple.push_back(*idx);
  }
  for (const auto& root : sys.roots) {
    std::vector<int> neg(root.coeffs);
    for (auto& c : neg) c = -c;
    if (!sys.find(neg)) throw InternalError("root system not closed under negation");
  }
  return sys;
}

RootSet lattice_closure(const RootSystem& sys, const std::vector<std::vector<int>>& generators) {
  RootSet out;
  if (generators.empty()) return out;
  const size_t r = size_t(sys.rank);
  IntMatrix g(generators.size(), r);
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = 0; j < r; ++j) g(i, j) = generators[i].at(j);
  IntMatrix h = hermite_normal_form(g);
  for (size_t idx = 0; idx < sys.roots.size(); ++idx) {
    std::vector<mpz_class> v(r);
    for (size_t j = 0; j < r; ++j) v[j] = sys.roots[idx].coeffs[j];
    size_t col = 0;
    bool member = true;
    for (size_t row = 0; row < h.rows() && member; ++row) {
      while (h(row, col) == 0) {
        if (v[col] != 0) member = false;
        ++col;
      }
      if (!member) break;
      if (!mpz_divisible_p(v[col].get_mpz_t(), h(row, col).get_mpz_t())) {
        member = false;
        break;
      }
      mpz_class q = v[col] / h(row, col);
      for (size_t j = col; j < r; ++j) v[j] -= q * h(row, j);
      ++col;
    }
    if (member)
      for (size_t j = 0; j < r; ++j)
        if (v[j] != 0) member = false;
    if (member) out.push_back(idx);
  }
  return out;
}

bool is_symmetric(const RootSystem& sys, const RootSet& s) {
  std::set<size_t> in(s.begin(), s.end());
  for (size_t i : s) {
    auto neg = sys.roots[i].coeffs;
    for (auto& c : neg) c = -c;
    if (!in.count(*sys.find(neg))) return false;
  }
  return true;
}

bool is_closed(const RootSystem& sys, const RootSet& s) {
  std::set<size_t> in(s.begin(), s.end());
  const size_t r = size_t(sys.rank);
  for (size_t i : s)
    for (size_t j : s) {
      std::vector<int> sum(r);
      for (size_t k = 0; k < r; ++k) sum[k] = sys.roots[i].coeffs[k] + sys.roots[j].coeffs[k];
      auto idx = sys.find(sum);
      if (idx && !in.count(*idx)) return false;
    }
  return true;
}

bool is_parabolic(const RootSystem& sys, const RootSet& s) {
  if (!is_closed(sys, s)) return false;
  std::set<size_t> in(s.begin(), s.end());
  for (size_t i = 0; i < sys.roots.size(); ++i) {
    if (in.count(i)) continue;
    auto neg = sys.roots[i].coeffs;
    for (auto& c : neg) c = -c;
    if (!in.count(*sys.find(neg))) return false;
  }
  return true;
}

// ---- domain labels ----

std::string DomainLabel::to_string() const {
  switch (kind) {
    case I: return "I_{" + std::to_string(p) + "," + std::to_string(q) + "}";
    case II: return "II_" + std::to_string(n);
    case IV: return "IV_" + std::to_string(n);
    case V: return "V(" + variant + ")";
    case VI: return "VI(" + variant + ")";
  }
  return "?";
}

DomainLabel parse_domain_label(const std::string& s) {
  std::smatch m;
  DomainLabel d{DomainLabel::I, 0, 0, 0, {}};
  if (std::regex_match(s, m, std::regex(R"(I_\{?(\d+)[_,](\d+)\}?)"))) {
    d.kind = DomainLabel::I;
    d.p = std::stoi(m[1]);
    d.q = std::stoi(m[2]);
    if (d.p < 1 || d.q < 1) throw InvalidArgument("I_{p,q} needs p, q >= 1");
    return d;
  }
  if (std::regex_match(s, m, std::regex(R"(II_\{?(\d+)\}?)"))) {
    d.kind = DomainLabel::II;
    d.n = std::stoi(m[1]);
    if (d.n < 2 || d.n % 2) throw InvalidArgument("II_n is tabulated for even n >= 2 only");
    return d;
  }
  if (std::regex_match(s, m, std::regex(R"(IV_\{?(\d+)\}?)"))) {
    d.kind = DomainLabel::IV;
    d.n = std::stoi(m[1]);
    if (d.n % 2 == 0) throw InvalidArgument("IV_n with n even is not regular and is unsupported");
    if (d.n < 5) throw InvalidArgument("IV_n needs n = 2l+1 with l >= 2");
    return d;
  }
  if (std::regex_match(s, m, std::regex(R"((VI|V)[:(]([A-Za-z0-9]+)\)?)"))) {
    d.kind = m[1] == "V" ? DomainLabel::V : DomainLabel::VI;
    d.variant = m[2];
    static const std::set<std::string> v5{"I24xSU2", "II5", "IV8"}, v6{"I33", "II6"};
    if ((d.kind == DomainLabel::V && !v5.count(d.variant)) || (d.kind == DomainLabel::VI && !v6.count(d.variant)))
      throw InvalidArgument("unknown variant '" + d.variant + "' for " + std::string(m[1]));
    return d;
  }
  throw InvalidArgument("unsupported domain label '" + s + "'");
}

RootSystem system_for(const DomainLabel& d) {
  switch (d.kind) {
    case DomainLabel::I: return build_root_system("A", d.p + d.q - 1);
    case DomainLabel::II: return build_root_system("C", d.n / 2);
    case DomainLabel::IV: return build_root_system("B", (d.n - 1) / 2);
    case DomainLabel::V: return build_root_system("E6", 6);
    case DomainLabel::VI: return build_root_system("E7", 7);
  }
  throw InvalidArgument("bad domain label");
}

namespace {

NamedGenerator alpha(int rank, int i, int sign = 1) {
  std::vector<int> c(size_t(rank), 0);
  c[size_t(i - 1)] = sign;
  return {(sign < 0 ? "-a" : "a") + std::to_string(i), c};
}

// coefficients listed as (label, multiplicity)
NamedGenerator combo(int rank, const std::string& name, std::initializer_list<std::pair<int, int>> terms) {
  std::vector<int> c(size_t(rank), 0);
  for (auto [i, k] : terms) c[size_t(i - 1)] += k;
  return {name, c};
}

}  // namespace

SymRootSet psi_sym(const DomainLabel& d) {
  RootSystem sys = system_for(d);
  SymRootSet out;
  out.domain = d;
  out.system_type = sys.type_label;
  out.system_rank = sys.rank;
  const int r = sys.rank;
  auto& g = out.generators;
  switch (d.kind) {
    case DomainLabel::I:
      for (int i = 2; i <= d.p + d.q - 1; ++i) g.push_back(alpha(r, i));
      break;
    case DomainLabel::II:
      for (int i = 2; i <= d.n / 2; ++i) g.push_back(alpha(r, i));
      break;
    case DomainLabel::IV: {
      int l = (d.n - 1) / 2;
      for (int i = 1; i <= l - 1; ++i) g.push_back(alpha(r, i));
      g.push_back(combo(r, "b", {{l - 1, 1}, {l, 2}}));
      break;
    }
    case DomainLabel::V: {
      auto b1 = combo(r, "b1", {{2, 1}, {3, 1}, {4, 2}, {5, 1}, {6, 1}});
      auto b2 = combo(r, "b2", {{2, 1}, {4, 1}, {5, 1}, {6, 1}});
      if (d.variant == "I24xSU2") g = {b1, alpha(r, 1), alpha(r, 3), alpha(r, 4), alpha(r, 2), alpha(r, 6)};
      if (d.variant == "II5") g = {alpha(r, 1), alpha(r, 3), alpha(r, 4), alpha(r, 5), b2};
      if (d.variant == "IV8") g = {alpha(r, 1), alpha(r, 3), alpha(r, 4), alpha(r, 5), alpha(r, 2)};
      break;
    }
    case DomainLabel::VI: {
      auto b1 = combo(r, "b1", {{6, 1}, {5, 2}, {4, 3}, {3, 2}, {1, 1}, {2, 2}});
      auto b2 = combo(r, "b2", {{5, 1}, {4, 2}, {3, 2}, {1, 1}, {2, 1}});
      if (d.variant == "I33") g = {alpha(r, 2, -1), b1, alpha(r, 7), alpha(r, 6), alpha(r, 5)};
      if (d.variant == "II6") g = {alpha(r, 7), alpha(r, 6), alpha(r, 5), alpha(r, 4), alpha(r, 2), b2};
      break;
    }
  }
  std::vector<std::vector<int>> coeffs;
  for (auto& gen : g) {
    if (!sys.find(gen.coeffs)) throw InternalError("generator " + gen.name + " is not a root");
    coeffs.push_back(gen.coeffs);
  }
  out.closure = lattice_closure(sys, coeffs);
  if (!is_symmetric(sys, out.closure) || !is_closed(sys, out.closure))
    throw InternalError("psi_sym closure is not symmetric and closed");
  return out;
}

ParabolicRootSet psi_par(const RootSystem& sys, const std::vector<int>& tau) {
  std::set<int> t(tau.begin(), tau.end());
  for (int i : t)
    if (i < 1 || i > sys.rank) throw InvalidArgument("tau is not a subset of the simple roots");
  std::vector<std::vector<int>> levi;
  for (int i = 1; i <= sys.rank; ++i)
    if (!t.count(i)) {
      std::vector<int> c(size_t(sys.rank), 0);
      c[size_t(i - 1)] = 1;
      levi.push_back(c);
    }
  std::set<size_t> s;
  for (size_t i : sys.positive_roots()) s.insert(i);
  for (size_t i : lattice_closure(sys, levi)) s.insert(i);
  ParabolicRootSet out{std::vector<int>(t.begin(), t.end()), RootSet(s.begin(), s.end())};
  if (!is_parabolic(sys, out.closure)) throw InternalError("psi_par is not parabolic");
  return out;
}

IncidenceComplement incidence_complement(const RootSystem& sys, const SymRootSet& sym, const ParabolicRootSet& par) {
  if (sym.system_type != sys.type_label || sym.system_rank != sys.rank)
    throw InvalidArgument("sym and par live in different root systems");
  std::set<size_t> in_sym(sym.closure.begin(), sym.closure.end());
  IncidenceComplement out;
  size_t both = 0;
  for (size_t i : par.closure) {
    if (in_sym.count(i))
      ++both;
    else
      out.roots.push_back(i);
  }
  out.cardinality = out.roots.size();
  if (both + out.cardinality != par.closure.size()) throw InternalError("complement does not partition psi_par");
  return out;
}

IncidencePreset incidence_preset(const std::string& name) {
  if (name == "su41") return {"su41", "I_4_1", {1, 4}, 3};
  throw InvalidArgument("unknown incidence preset '" + name + "'");
}

IncidenceRun run_incidence(const std::string& domain, const std::vector<int>& tau, std::optional<int> effective) {
  DomainLabel d = parse_domain_label(domain);
  IncidenceRun run{system_for(d), psi_sym(d), {}, {}};
  run.par = psi_par(run.system, tau);
  run.complement = incidence_complement(run.system, run.sym, run.par);
  run.complement.expected_effective = effective;
  return run;
}

IncidenceRun run_preset(const std::string& name) {
  auto p = incidence_preset(name);
  return run_incidence(p.domain, p.tau, p.effective_parameters);
}

}  // namespace toolkit
