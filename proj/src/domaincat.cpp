#include "toolkit/domaincat.hpp"

#include <algorithm>
#include <map>

namespace toolkit {

namespace {

const std::map<Family, std::string>& family_names() {
  static const std::map<Family, std::string> m{
      {Family::O1, "O.1"},       {Family::O2, "O.2"},       {Family::S1, "S.1"},     {Family::S2, "S.2"},
      {Family::U1, "U.1"},       {Family::U2, "U.2"},       {Family::E6_16, "E6_16"}, {Family::E6_35, "E6_35"},
      {Family::E6_78, "E6_78"},  {Family::E7_28, "E7_28"},  {Family::E7_31, "E7_31"}, {Family::E7_133, "E7_133"}};
  return m;
}

std::string sub(int n) { return std::to_string(n); }

[[noreturn]] void bad(const FamilyDescriptor& d, const std::string& why) {
  throw InvalidArgument(to_string(d.family) + ": " + why);
}

bool is_exceptional(Family f) { return f >= Family::E6_16; }

int binom2(int n) { return n < 2 ? 0 : n * (n - 1) / 2; }

DomainType single(DomainFactor f) { return DomainType{{f}}; }

}  // namespace

std::string to_string(Family f) { return family_names().at(f); }

Family parse_family(const std::string& s) {
  for (auto& [f, name] : family_names()) {
    std::string alt = name;
    alt.erase(std::remove(alt.begin(), alt.end(), '.'), alt.end());
    if (s == name || s == alt) return f;
  }
  throw InvalidArgument("unknown family '" + s + "'");
}

FamilyDescriptor validate(FamilyDescriptor d) {
  auto fixed = [&](int s) {
    if (d.s != -1 && d.s != s) bad(d, "s is fixed to " + sub(s));
    d.s = s;
  };
  switch (d.family) {
    case Family::O1:
      if (d.n < 1) bad(d, "needs n >= 1");
      if (d.s < 0 || d.s > 2 || d.s > d.n) bad(d, "needs 0 <= s <= min(n, 2)");
      break;
    case Family::O2:
      if (d.n < 2) bad(d, "needs n >= 2");
      if (d.s < 0 || d.s > d.n / 2) bad(d, "needs 0 <= s <= [n/2]");
      break;
    case Family::S1:
      if (d.n < 1) bad(d, "needs n >= 1");
      fixed(d.n);
      break;
    case Family::S2:
      if (d.n < 2) bad(d, "needs n >= 2");
      if (d.s < 0 || d.s > d.n / 2) bad(d, "needs 0 <= s <= [n/2]");
      break;
    case Family::U1:
      if (d.q < 1 || d.p < d.q) bad(d, "needs p >= q >= 1");
      if (d.s < 0 || d.s > d.q) bad(d, "needs 0 <= s <= q");
      break;
    case Family::U2:
      if (d.d < 2) bad(d, "needs d >= 2 (d = 1 is U.1)");
      if (d.q < 1 || d.p < d.q) bad(d, "needs p >= q >= 1");
      if ((d.p + d.q) % d.d != 0) bad(d, "needs d | p+q");
      if (d.s < 0 || d.s * d.d > d.q) bad(d, "needs s >= 0 and sd <= q");
      break;
    case Family::E6_16: fixed(2); break;
    case Family::E6_35: fixed(1); break;
    case Family::E6_78: fixed(0); break;
    case Family::E7_28: fixed(3); break;
    case Family::E7_31: fixed(2); break;
    case Family::E7_133: fixed(0); break;
  }
  return d;
}

// ---- domain types ----

std::string DomainFactor::to_string() const {
  std::string s;
  switch (sym) {
    case I: s = "I_{" + sub(p) + "," + sub(q) + "}"; break;
    case II: s = "II_" + sub(n); break;
    case III: s = "III_" + sub(n); break;
    case IV: s = "IV_" + sub(n); break;
    case V: s = "V"; break;
    case VI: s = "VI"; break;
    case Pt: s = "pt"; break;
  }
  return power == 1 ? s : "(" + s + ")^" + sub(power);
}

int DomainFactor::dim() const {
  switch (sym) {
    case I: return p * q;
    case II: return binom2(n);
    case III: return n * (n + 1) / 2;
    case IV: return n;
    case V: return 16;
    case VI: return 27;
    case Pt: return 0;
  }
  return 0;
}

int DomainFactor::rank() const {
  switch (sym) {
    case I: return std::min(p, q);
    case II: return n / 2;
    case III: return n;
    case IV: return std::min(n, 2);
    case V: return 2;
    case VI: return 3;
    case Pt: return 0;
  }
  return 0;
}

std::string DomainType::to_string() const {
  if (factors.empty()) return "pt";
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) s += (i ? " x " : "") + factors[i].to_string();
  return s;
}

int DomainType::dim() const {
  int d = 0;
  for (auto& f : factors) d += f.power * f.dim();
  return d;
}

int DomainType::rank() const {
  int r = 0;
  for (auto& f : factors) r += f.power * f.rank();
  return r;
}

DomainType I(int p, int q) { return single({DomainFactor::I, p, q, 0, 1}); }
DomainType II(int n) { return single({DomainFactor::II, 0, 0, n, 1}); }
DomainType III(int n) { return single({DomainFactor::III, 0, 0, n, 1}); }
DomainType IV(int n) { return single({DomainFactor::IV, 0, 0, n, 1}); }
DomainType point() { return single({DomainFactor::Pt, 0, 0, 0, 1}); }

DomainType product(const DomainType& a, const DomainType& b) {
  DomainType r = a;
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

DomainType power(const DomainType& a, int k) {
  if (a.factors.size() != 1) throw InvalidArgument("power of a product type");
  DomainType r = a;
  r.factors[0].power *= k;
  return r;
}

DomainType domain_of(const FamilyDescriptor& desc) {
  auto d = validate(desc);
  switch (d.family) {
    case Family::O1: return IV(d.n);
    case Family::O2: return II(d.n);
    case Family::S1:
    case Family::S2: return III(d.n);
    case Family::U1:
    case Family::U2: return I(d.p, d.q);
    case Family::E6_16:
    case Family::E6_35:
    case Family::E6_78: return single({DomainFactor::V, 0, 0, 0, 1});
    default: return single({DomainFactor::VI, 0, 0, 0, 1});
  }
}

std::string tits_index(const FamilyDescriptor& desc) {
  auto d = validate(desc);
  const std::string ns = "{" + sub(d.n) + "," + sub(d.s) + "}";
  switch (d.family) {
    case Family::O1:
      if (d.n % 2) return "B_" + ns;
      return (d.n % 4 == 2 ? "D_" : "2D_") + ns;
    case Family::O2:
      if (d.n % 2 == 0) return "D^(2)_{" + sub(d.n / 2) + "," + sub(d.s) + "}";
      return "2D^(2)_{" + sub((d.n - 1) / 2) + "," + sub(d.s) + "}";
    case Family::S1: return "C_{" + sub(d.n) + "," + sub(d.n) + "}";
    case Family::S2: return "C^(2)_" + ns;
    case Family::U1: return "2A_{" + sub(d.p + d.q - 1) + "," + sub(d.s) + "}";
    case Family::U2: return "2A^(" + sub(d.d) + ")_{" + sub(d.p + d.q - 1) + "," + sub(d.s) + "}";
    case Family::E6_16: return "2E^16'_{6,2}";
    case Family::E6_35: return "2E^35_{6,1}";
    case Family::E6_78: return "2E^78_{6,0}";
    case Family::E7_28: return "E^28_{7,3}";
    case Family::E7_31: return "E^31_{7,2}";
    case Family::E7_133: return "E^133_{7,0}";
  }
  return {};
}

std::vector<DomainType> boundary_chain(const FamilyDescriptor& desc) {
  auto d = validate(desc);
  std::vector<DomainType> c;
  switch (d.family) {
    case Family::O1:
      if (d.s == 2) c.push_back(IV(1));  // the 1-disc
      if (d.s >= 1) c.push_back(point());
      break;
    case Family::O2:
      for (int b = 1; b <= d.s; ++b) c.push_back(II(d.n - 2 * b));
      break;
    case Family::S1:
      for (int b = 1; b < d.n; ++b) c.push_back(III(d.n - b));
      c.push_back(point());
      break;
    case Family::S2:
      for (int b = 1; b <= d.s; ++b) c.push_back(III(d.n - 2 * b));
      break;
    case Family::U1:
      for (int b = 1; b <= d.s; ++b) c.push_back(I(d.p - b, d.q - b));
      break;
    case Family::U2:
      for (int b = 1; b <= d.s; ++b) c.push_back(I(d.p - b * d.d, d.q - b * d.d));
      break;
    case Family::E6_16: c = {I(5, 1), point()}; break;
    case Family::E6_35: c = {I(5, 1)}; break;
    case Family::E7_28: c = {IV(10), IV(1), point()}; break;
    case Family::E7_31: c = {IV(10), IV(1)}; break;
    case Family::E6_78:
    case Family::E7_133: break;
  }
  return c;
}

IncidentType incident_symmetric_type(const FamilyDescriptor& desc, int b) {
  auto d = validate(desc);
  if (b < 1 || b > d.s) throw InvalidArgument("boundary index b=" + sub(b) + " outside 1.." + sub(d.s));
  const DomainType fb = boundary_chain(d)[size_t(b - 1)];
  IncidentType out;
  out.point_boundary = fb.is_point();
  const bool ed = is_ed_domain(domain_of(d));

  if (!out.point_boundary) {
    DomainType second;
    switch (d.family) {
      case Family::O1: second = IV(1); break;
      case Family::O2: second = II(2 * b); break;
      case Family::S1: second = III(b); break;
      case Family::S2: second = III(2 * b); break;
      case Family::U1: second = I(b, b); break;
      case Family::U2: second = I(d.d * b, d.d * b); break;
      case Family::E6_16:
      case Family::E6_35: second = I(1, 1); break;
      case Family::E7_28:
      case Family::E7_31: second = b == 1 ? I(1, 1) : IV(10); break;
      default: throw InternalError("no boundary components");
    }
    out.type = product(fb, second);
    return out;
  }

  switch (d.family) {
    case Family::O1: out.type = IV(d.n - 1); break;
    case Family::O2: out.type = ed ? power(II(2), d.n / 2) : II(d.n - 1); break;
    case Family::S1: out.type = power(III(1), d.n); break;
    case Family::S2:
      out.type = power(III(2), d.n / 2);
      out.exception = true;
      break;
    case Family::U1: out.type = ed ? power(I(1, 1), d.q) : I(d.p - 1, d.q); break;
    case Family::U2: out.type = ed ? power(I(d.d, d.d), d.q / d.d) : I(d.q, d.q); break;
    case Family::E6_16: out.alternatives = {I(4, 2), II(5), IV(8)}; break;
    case Family::E7_28: out.alternatives = {I(3, 3), II(6)}; break;
    default: throw InternalError("unexpected point boundary");
  }
  if (!out.alternatives.empty()) out.type = out.alternatives.front();
  return out;
}

bool is_ed_domain(const DomainType& t) {
  if (t.factors.size() != 1 || t.factors[0].power != 1) return false;
  const auto& f = t.factors[0];
  switch (f.sym) {
    case DomainFactor::I: return f.p == f.q && f.p > 0;
    case DomainFactor::II: return f.n % 2 == 0 && f.n > 0;
    case DomainFactor::III: return f.n > 0;
    default: return false;
  }
}

bool is_tube_domain(const DomainType& t) {
  if (t.factors.empty()) return false;
  for (auto& f : t.factors) {
    bool tube = f.sym == DomainFactor::IV || f.sym == DomainFactor::VI || f.sym == DomainFactor::III ||
                (f.sym == DomainFactor::I && f.p == f.q) || (f.sym == DomainFactor::II && f.n % 2 == 0);
    if (!tube || f.dim() == 0) return false;
  }
  return true;
}

ParabolicShape parabolic_shape(const DomainType& t, bool point_boundary) {
  ParabolicShape s;
  s.domain = t.to_string();
  s.point_boundary = point_boundary;
  s.M = "compact";
  if (!point_boundary) {
    s.L = "Aut(F_b)";
    s.R = "A_{b-1}";
    s.Z = "self-dual cone of Z_b";
    return s;
  }
  const int rk = t.rank();
  s.L = "trivial";
  s.R = "A_" + sub(rk - 1);
  s.Z = "self-dual cone, rank " + sub(rk);
  if (is_tube_domain(t)) {
    s.dim_V = 0;
    s.tabulated = true;
  }
  if (t.factors.size() != 1 || t.factors[0].power != 1) return s;
  const auto& f = t.factors[0];
  if (f.sym == DomainFactor::I) {
    s.dim_V = f.q * (f.p - f.q);
    s.dim_DN = {f.q * (f.p - 1)};
    s.tabulated = true;
  } else if (f.sym == DomainFactor::II) {
    if (f.n % 2) s.dim_V = f.n - 1;
    s.dim_DN = {binom2(f.n - 2)};
    s.tabulated = true;
  } else if (f.sym == DomainFactor::V) {
    s.dim_V = 16;
    s.dim_DN = {8, 10, 8};
    s.tabulated = true;
  }
  return s;
}

std::vector<ExceptionalIndex> exceptional_indices() {
  return {
      {"2E^16'_{6,2}", Family::E6_16, false, "", "one of the three E6 constructions", true},
      {"2E^35_{6,1}", Family::E6_35, false, "", "one of the three E6 constructions", true},
      {"2E^29_{6,1}", std::nullopt, true,
       "real index is 1E^28_{6,2}; the symmetric space is E IV, not hermitian", "", false},
      {"2E^78_{6,0}", Family::E6_78, false, "", "one of the three E6 constructions", true},
      {"E^28_{7,3}", Family::E7_28, false, "", "split quaternion algebra, form of J^b", false},
      {"E^31_{7,2}", Family::E7_31, false, "", "split/J^c or division/J^b", true},
      {"E^133_{7,0}", Family::E7_133, false, "", "division quaternion algebra, form of J^c", false},
  };
}

std::string describe(const FamilyDescriptor& desc) {
  auto d = validate(desc);
  std::string out = to_string(d.family);
  if (is_exceptional(d.family)) return out;
  std::vector<std::string> parts;
  if (d.family == Family::U1 || d.family == Family::U2) {
    parts.push_back("p=" + sub(d.p));
    parts.push_back("q=" + sub(d.q));
    if (d.family == Family::U2) parts.push_back("d=" + sub(d.d));
  } else {
    parts.push_back("n=" + sub(d.n));
  }
  parts.push_back("s=" + sub(d.s));
  out += "(";
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out + ")";
}

CatalogueEntry catalogue_entry(const FamilyDescriptor& desc) {
  CatalogueEntry e;
  e.desc = validate(desc);
  e.index = tits_index(e.desc);
  e.domain = domain_of(e.desc);
  e.chain = boundary_chain(e.desc);
  for (int b = 1; b <= e.desc.s; ++b) e.incident.push_back(incident_symmetric_type(e.desc, b));
  e.ed = is_ed_domain(e.domain);
  e.shape = parabolic_shape(e.domain, true);
  return e;
}

std::string snapshot_line(const CatalogueEntry& e) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + "]";
  };
  std::vector<std::string> chain, inc;
  for (auto& c : e.chain) chain.push_back(c.to_string());
  for (auto& t : e.incident) {
    std::string s = t.type.to_string();
    for (size_t i = 1; i < t.alternatives.size(); ++i) s += " | " + t.alternatives[i].to_string();
    if (t.exception) s += " (exception)";
    inc.push_back(s);
  }
  return describe(e.desc) + " | " + e.index + " | " + e.domain.to_string() + " | " + join(chain) + " | " + join(inc) +
         " | ed=" + (e.ed ? "1" : "0") + " | dimV=" + (e.shape.dim_V ? sub(*e.shape.dim_V) : "-");
}

std::vector<FamilyDescriptor> snapshot_corpus(int max_rank) {
  std::vector<FamilyDescriptor> out;
  auto try_add = [&](FamilyDescriptor d) {
    try {
      d = validate(d);
    } catch (const InvalidArgument&) {
      return;
    }
    if (domain_of(d).rank() <= max_rank) out.push_back(d);
  };
  const int lim = 2 * max_rank + 2;
  for (int n = 1; n <= lim; ++n)
    for (int s = 0; s <= 2; ++s) try_add({Family::O1, n, 0, s});
  for (int n = 2; n <= lim; ++n)
    for (int s = 0; s <= n / 2; ++s) try_add({Family::O2, n, 0, s});
  for (int n = 1; n <= max_rank; ++n) try_add({Family::S1, n});
  for (int n = 2; n <= max_rank; ++n)
    for (int s = 0; s <= n / 2; ++s) try_add({Family::S2, n, 0, s});
  for (int q = 1; q <= max_rank; ++q)
    for (int p = q; p <= q + 3; ++p)
      for (int s = 0; s <= q; ++s) try_add({Family::U1, 0, 0, s, p, q});
  for (int dd = 2; dd <= max_rank; ++dd)
    for (int q = 1; q <= max_rank; ++q)
      for (int p = q; p <= q + 2 * dd; ++p)
        for (int s = 0; s * dd <= q; ++s) try_add({Family::U2, 0, dd, s, p, q});
  for (Family f : {Family::E6_16, Family::E6_35, Family::E6_78, Family::E7_28, Family::E7_31, Family::E7_133})
    out.push_back(validate({f}));
  return out;
}

}  // namespace toolkit
