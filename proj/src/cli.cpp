#include "toolkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "toolkit/compalg.hpp"
#include "toolkit/domaincat.hpp"
#include "toolkit/jordan.hpp"
#include "toolkit/lattice.hpp"
#include "toolkit/rootsys.hpp"
#include "toolkit/suite.hpp"
#include "toolkit/titslie.hpp"

namespace toolkit {
namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  json payload = json::object();
  std::vector<CheckResult> checks;
};

struct Context {
  uint64_t seed = 0;
  unsigned threads = 1;
  std::ostream* err = nullptr;
  json flags = json::object();
  void progress(const std::string& line) const { *err << line << std::endl; }
};

// ---- serialization ----

json rat(const Rational& r) { return r.to_string(); }

json vec(const std::vector<Rational>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(rat(x));
  return a;
}

json mat(const RationalMatrix& m) {
  json a = json::array();
  for (size_t i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i)));
  return a;
}

json intmat(const IntMatrix& m) {
  json a = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    a.push_back(row);
  }
  return a;
}

json element(const JordanElement& x) {
  json xi = json::array(), oct = json::array();
  for (size_t i = 0; i < 3; ++i) {
    xi.push_back(rat(x.xi(i)));
    json c = json::array();
    for (auto& v : x.x(i).coords()) c.push_back(rat(v));
    oct.push_back(c);
  }
  return {{"xi", xi}, {"x", oct}};
}

json strings(const std::vector<DomainType>& v) {
  json a = json::array();
  for (auto& t : v) a.push_back(t.to_string());
  return a;
}

// ---- parsing ----

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\n"), e = s.find_last_not_of(" \t\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

Rational rational_from(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  throw InvalidArgument("expected an integer or a \"num/den\" string, got " + v.dump());
}

// "1,0;0,1/2" or [["1","0"],["0","1/2"]]
RationalMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::string t = trim(text);
  if (!t.empty() && t[0] == '[') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("matrix JSON: ") + e.what());
    }
    for (auto& r : j) {
      rows.emplace_back();
      for (auto& v : r) rows.back().push_back(rational_from(v));
    }
  } else {
    for (auto& r : split(t, ';')) {
      rows.emplace_back();
      for (auto& v : split(r, ',')) rows.back().push_back(Rational::parse(v));
    }
  }
  if (rows.empty() || rows[0].empty()) throw InvalidArgument("empty matrix");
  RationalMatrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw InvalidArgument("ragged matrix rows");
    for (size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<long long> parse_ints(const std::string& s) {
  std::vector<long long> out;
  for (auto& t : split(s, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoll(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::logic_error&) {
      throw InvalidArgument("not an integer: '" + t + "'");
    }
  }
  return out;
}

JordanElement parse_element(const std::string& text, const GammaVector& gamma) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("element JSON: ") + e.what());
  }
  if (!j.contains("xi") || !j.contains("x") || j["xi"].size() != 3 || j["x"].size() != 3)
    throw InvalidArgument("element needs \"xi\" with 3 entries and \"x\" with 3 octonions");
  JordanElement x(gamma);
  for (size_t i = 0; i < 3; ++i) {
    x.xi(i) = rational_from(j["xi"][i]);
    if (j["x"][i].size() != 8) throw InvalidArgument("octonion coordinates come in groups of 8");
    for (size_t c = 0; c < 8; ++c) x.x(i)[c] = rational_from(j["x"][i][c]);
  }
  return x;
}

CheckResult check(std::string name, bool pass, std::string detail = {}) {
  return {std::move(name), pass, std::move(detail)};
}

// ---- subcommands ----

struct TablesArgs {
  std::string family;
  int n = 0, d = 0, s = -1, p = 0, q = 0;
  bool all = false, exceptional = false;
  int max_rank = 3;
};

json entry_row(const CatalogueEntry& e) {
  std::string chain, incident;
  for (auto& t : e.chain) chain += (chain.empty() ? "" : "; ") + t.to_string();
  for (auto& t : e.incident) incident += (incident.empty() ? "" : "; ") + t.type.to_string();
  return {{"descriptor", describe(e.desc)},
          {"index", e.index},
          {"domain", e.domain.to_string()},
          {"boundary_chain", chain},
          {"incident_types", incident},
          {"ed_flag", e.ed},
          {"dim_V", e.shape.dim_V ? json(*e.shape.dim_V) : json(nullptr)}};
}

Outcome cmd_tables(const TablesArgs& a, Context& ctx) {
  ctx.flags = {{"family", a.family}, {"n", a.n},     {"d", a.d},
               {"s", a.s},           {"p", a.p},     {"q", a.q},
               {"all", a.all},       {"exceptional", a.exceptional}, {"max_rank", a.max_rank}};
  Outcome o;
  if (a.exceptional) {
    json rows = json::array();
    for (auto& x : exceptional_indices())
      rows.push_back({{"label", x.label},
                      {"family", x.family ? to_string(*x.family) : ""},
                      {"excluded", x.excluded},
                      {"reason", x.reason},
                      {"algebraic_source", x.algebraic_source},
                      {"conjectural", x.conjectural}});
    o.payload["exceptional_indices"] = rows;
    return o;
  }
  if (a.all) {
    json rows = json::array();
    for (auto& d : snapshot_corpus(a.max_rank)) rows.push_back(entry_row(catalogue_entry(d)));
    o.payload["max_rank"] = a.max_rank;
    o.payload["entries"] = rows;
    return o;
  }
  if (a.family.empty()) throw InvalidArgument("tables needs --family, --all or --exceptional");
  FamilyDescriptor desc{parse_family(a.family), a.n, a.d, a.s, a.p, a.q};
  CatalogueEntry e = catalogue_entry(validate(desc));
  json incident = json::array();
  for (size_t b = 0; b < e.incident.size(); ++b) {
    auto& t = e.incident[b];
    incident.push_back({{"b", b + 1},
                        {"type", t.type.to_string()},
                        {"point_boundary", t.point_boundary},
                        {"exception", t.exception},
                        {"alternatives", strings(t.alternatives)}});
  }
  auto& sh = e.shape;
  o.payload = {{"descriptor", describe(e.desc)},
               {"index", e.index},
               {"domain", e.domain.to_string()},
               {"boundary_chain", strings(e.chain)},
               {"incident_types", incident},
               {"ed_flag", e.ed},
               {"tube", is_tube_domain(e.domain)},
               {"parabolic_shape",
                {{"domain", sh.domain},
                 {"point_boundary", sh.point_boundary},
                 {"M", sh.M},
                 {"L", sh.L},
                 {"R", sh.R},
                 {"Z", sh.Z},
                 {"dim_V", sh.dim_V ? json(*sh.dim_V) : json(nullptr)},
                 {"dim_DN", sh.dim_DN},
                 {"tabulated", sh.tabulated}}}};
  return o;
}

struct IncidenceArgs {
  std::string domain, preset, tau;
  std::optional<int> effective;
};

Outcome cmd_incidence(const IncidenceArgs& a, Context& ctx) {
  ctx.flags = {{"domain", a.domain}, {"preset", a.preset}, {"tau", a.tau}};
  IncidenceRun run;
  if (!a.preset.empty()) {
    IncidencePreset p = incidence_preset(a.preset);
    if (!a.domain.empty() && parse_domain_label(a.domain).to_string() != parse_domain_label(p.domain).to_string())
      throw InvalidArgument("preset " + a.preset + " is for domain " + p.domain);
    if (!a.tau.empty()) throw InvalidArgument("--tau conflicts with --preset");
    run = run_preset(a.preset);
  } else {
    if (a.domain.empty() || a.tau.empty()) throw InvalidArgument("incidence needs --preset or --domain with --tau");
    std::vector<int> tau;
    for (long long t : parse_ints(a.tau)) tau.push_back(int(t));
    run = run_incidence(a.domain, tau, a.effective);
  }
  json gens = json::array(), roots = json::array();
  for (auto& g : run.sym.generators) gens.push_back(g.name);
  for (size_t i : run.complement.roots) roots.push_back(run.system.format(i));
  auto& eff = run.complement.expected_effective;
  Outcome o;
  o.payload = {{"domain", run.sym.domain.to_string()},
               {"root_system", run.system.type_label + std::to_string(run.system.rank)},
               {"tau", run.par.tau},
               {"generators", gens},
               {"psi_sym_size", run.sym.closure.size()},
               {"psi_par_size", run.par.closure.size()},
               {"complement_roots", roots},
               {"cardinality", run.complement.cardinality},
               {"effective_parameters", eff ? json(*eff) : json(nullptr)}};
  return o;
}

struct LieArgs {
  std::string model = "e6", gamma;
  size_t samples = 0;
  bool exhaustive = false;
};

Outcome cmd_lie(const LieArgs& a, Context& ctx) {
  TitsModel m = parse_tits_model(a.model);
  GammaVector gamma = a.gamma.empty() ? default_gamma(m) : GammaVector::parse(a.gamma);
  size_t samples = a.samples ? a.samples : (m == TitsModel::E6 ? 1000 : 500);
  ctx.flags = {{"model", a.model}, {"gamma", gamma.to_string()}, {"samples", samples}, {"exhaustive_basis", a.exhaustive}};
  ctx.progress("Der(J) for gamma=" + gamma.to_string());
  auto ctxm = make_context(m, gamma, [&](size_t done, size_t total) {
    if (done == total || done % 100 == 0) ctx.progress("  Der(J) rows " + std::to_string(done) + "/" + std::to_string(total));
  });
  JacobiOptions jo;
  jo.exhaustive_basis = a.exhaustive;
  jo.threads = ctx.threads;
  jo.progress = [&](size_t done, size_t total) {
    if (done == total || done % 100 == 0) ctx.progress("  triples " + std::to_string(done) + "/" + std::to_string(total));
  };
  auto rep = jacobi_report(ctxm, samples, ctx.seed, jo);
  size_t dim = model_dimension(ctxm);
  size_t want = m == TitsModel::E6 ? 78 : 133;
  Outcome o;
  o.payload = {{"model", to_string(m)},
               {"gamma", rep.gamma},
               {"dimension", dim},
               {"der_dim", ctxm.derivations->size()},
               {"samples", rep.samples},
               {"seed", rep.seed},
               {"jacobi_defects", rep.jacobi_defects},
               {"anticommutativity_failures", rep.anticommutativity_failures},
               {"alternating_failures", rep.alternating_failures},
               {"validated_triples", rep.validated_triples},
               {"basis_triples", rep.basis_triples}};
  o.checks.push_back(check("dimension", dim == want, std::to_string(dim)));
  o.checks.push_back(check("jacobi", rep.jacobi_defects == 0, std::to_string(rep.jacobi_defects) + " defects"));
  o.checks.push_back(check("anticommutativity", rep.anticommutativity_failures == 0,
                           std::to_string(rep.anticommutativity_failures) + " failures"));
  o.checks.push_back(
      check("alternating", rep.alternating_failures == 0, std::to_string(rep.alternating_failures) + " failures"));
  return o;
}

struct JordanArgs {
  std::string gamma = "1,1,1", element;
};

Outcome cmd_jordan(const JordanArgs& a, Context& ctx) {
  GammaVector gamma = GammaVector::parse(a.gamma);
  ctx.flags = {{"gamma", gamma.to_string()}, {"element", a.element}};
  JordanElement x = parse_element(a.element, gamma);
  JordanElement sharp = jsharp(x);
  JordanElement p = jmul(x, sharp);
  JordanElement one = JordanElement::identity(gamma);
  Rational n = p.xi(0);
  Outcome o;
  o.payload = {{"gamma", gamma.to_string()},
               {"N", rat(n)},
               {"T", rat(jtrace(x))},
               {"Q", rat(jquadratic(x))},
               {"sharp", element(sharp)},
               {"inverse", nullptr},
               {"integral", is_integral(x)},
               {"in_maximal_order", in_jordan_order(x, maximal_jordan_order(gamma))}};
  o.checks.push_back(check("adjoint_scalar", p == n * one));
  if (!n.is_zero()) {
    JordanElement y = n.inverse() * sharp;
    o.payload["inverse"] = element(y);
    o.checks.push_back(check("inverse_contract", jmul(x, y) == one && jmul(jmul(x, x), y) == x));
  }
  return o;
}

Outcome cmd_compalg(const std::string& algebra, Context& ctx) {
  ctx.flags = {{"algebra", algebra}};
  StructureConstantAlgebra alg;
  if (algebra == "octonion")
    alg = octonion_table();
  else if (algebra == "quaternion")
    alg = quaternion_subtable();
  else
    throw InvalidArgument("--algebra must be octonion or quaternion");
  auto der = derivation_algebra(alg);
  json mats = json::array();
  bool leibniz = true;
  for (auto& d : der) {
    mats.push_back(mat(d.matrix));
    leibniz = leibniz && is_derivation(alg, d.matrix);
  }
  Outcome o;
  o.payload = {{"algebra", alg.name}, {"algebra_dim", alg.dim}, {"dimension", der.size()}, {"basis_matrices", mats}};
  o.checks.push_back(check("leibniz", leibniz));
  o.checks.push_back(check("commutator_closed", commutator_closed(der)));
  return o;
}

IntegerLattice lattice_from(const std::string& basis, size_t ambient) {
  RationalMatrix m = parse_matrix(basis);
  if (ambient && m.cols() != ambient)
    throw InvalidArgument("basis rows have " + std::to_string(m.cols()) + " entries, ambient is " +
                          std::to_string(ambient));
  IntMatrix im(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer()) throw InvalidArgument("lattice basis entries must be integers");
      im(i, j) = m(i, j).num();
    }
  return IntegerLattice(im);
}

struct LatticeArgs {
  size_t ambient = 0;
  std::string basis, g, w;
  bool no_symplectic_check = false;
};

Outcome cmd_purity(const LatticeArgs& a, Context& ctx) {
  ctx.flags = {{"ambient", a.ambient}, {"basis", a.basis}};
  IntegerLattice w = lattice_from(a.basis, a.ambient);
  json divs = json::array();
  for (auto& d : elementary_divisors(w)) divs.push_back(d.get_str());
  Outcome o;
  o.payload = {{"ambient", w.ambient()},
               {"rank", w.rank()},
               {"hnf", intmat(w.hnf())},
               {"elementary_divisors", divs},
               {"pure", is_pure(w)},
               {"saturation", intmat(saturate(w).hnf())},
               {"saturation_index", saturation_index(w).get_str()}};
  return o;
}

Outcome cmd_gamma(const LatticeArgs& a, Context& ctx) {
  ctx.flags = {{"g", a.g}, {"w", a.w}, {"symplectic_check", !a.no_symplectic_check}};
  RationalMatrix g = parse_matrix(a.g);
  IntegerLattice w = lattice_from(a.w, g.cols());
  auto elem = GroupElementQ::make(g, !a.no_symplectic_check);
  Outcome o;
  o.payload = {{"g", mat(g)},
               {"w", intmat(w.hnf())},
               {"symplectic", is_symplectic(g)},
               {"gamma_integral", is_gamma_integral(elem, w)}};
  return o;
}

struct OrderArgs {
  std::string basis;
  size_t n = 2;
  long j = 0;
};

json lattice_json(const MatrixLattice& l) {
  json a = json::array();
  for (auto& b : l.basis()) a.push_back(mat(b));
  return a;
}

Outcome cmd_order(const OrderArgs& a, Context& ctx) {
  ctx.flags = {{"basis", a.basis}, {"n", a.n}, {"j", a.j}};
  std::optional<MatrixLattice> l;
  if (a.j) {
    if (!a.basis.empty()) throw InvalidArgument("--j conflicts with --basis");
    l = oj_shape(a.n, a.j);
  } else {
    if (a.basis.empty()) throw InvalidArgument("order check needs --basis or --j");
    std::vector<RationalMatrix> mats;
    for (auto& part : split(a.basis, '|')) mats.push_back(parse_matrix(part));
    size_t n = mats[0].rows();
    for (auto& m : mats)
      if (m.rows() != n || m.cols() != n) throw InvalidArgument("basis matrices must all be n x n");
    l = MatrixLattice(n, mats);
  }
  MatrixLattice r = right_order(*l), left = left_order(*l);
  Outcome o;
  o.payload = {{"n", l->n()},
               {"basis", lattice_json(*l)},
               {"is_order", is_order(*l)},
               {"right_order", lattice_json(r)},
               {"left_order", lattice_json(left)}};
  o.checks.push_back(check("right_order_is_order", is_order(r)));
  o.checks.push_back(check("left_order_is_order", is_order(left)));
  return o;
}

Outcome cmd_humbert_enum(int height, Context& ctx) {
  ctx.flags = {{"height", height}};
  if (height < 1) throw InvalidArgument("--height must be positive");
  ctx.progress("enumerating primitive tuples of height " + std::to_string(height));
  OrbitReport rep = enumerate_integral_orbits(height, ctx.threads);
  json classes = json::array();
  bool flagged = true, residues = true;
  for (auto& [delta, b] : rep.classes) {
    classes.push_back({{"delta", delta},
                       {"count", b.count},
                       {"split", b.split},
                       {"degenerate", b.degenerate},
                       {"residue_ok", b.residue_ok}});
    flagged = flagged && b.split == (delta > 0 && is_perfect_square(delta));
    residues = residues && b.residue_ok;
  }
  Outcome o;
  o.payload = {{"height", rep.height},
               {"tuples", rep.tuples},
               {"classes", classes},
               {"integral_classes", rep.integral_classes},
               {"mu_estimate", rep.mu_estimate}};
  o.checks.push_back(check("nonempty", rep.tuples > 0, std::to_string(rep.tuples) + " tuples"));
  o.checks.push_back(check("square_buckets_split", flagged));
  o.checks.push_back(check("delta_residues", residues, "delta = 0 or 1 mod 4"));
  return o;
}

Outcome cmd_humbert_classify(const std::string& tuple, Context& ctx) {
  ctx.flags = {{"tuple", tuple}};
  auto v = parse_ints(tuple);
  if (v.size() != 5) throw InvalidArgument("--tuple takes five integers a,b,c,d,e");
  HumbertTuple t = HumbertTuple::normalized(v[0], v[1], v[2], v[3], v[4]);
  Outcome o;
  o.payload = {{"tuple", t.to_string()},
               {"delta", humbert_discriminant(t)},
               {"class", classify_humbert(t).to_string()}};
  return o;
}

Outcome cmd_verify_all(Context& ctx) {
  SuiteOptions so;
  so.seed = ctx.seed;
  so.threads = ctx.threads;
  so.log = [&ctx](const std::string& s) { ctx.progress(s); };
  Outcome o;
  json crit = json::array();
  for (auto& r : run_suite(so)) {
    ctx.progress("criterion " + std::to_string(r.id) + " " + (r.pass() ? "pass" : "FAIL"));
    crit.push_back({{"id", r.id}, {"title", r.title}, {"status", r.pass() ? "pass" : "fail"}, {"checks", r.checks.size()}});
    for (auto& c : r.checks) o.checks.push_back(check("c" + std::to_string(r.id) + "." + c.name, c.pass, c.detail));
  }
  o.payload["criteria"] = crit;
  return o;
}

// ---- rendering ----

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](auto& x) { return x.is_primitive(); })) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : ", ") + scalar_text(x);
    return "[" + s + "]";
  }
  return v.dump();
}

bool is_table(const json& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](auto& x) { return x.is_object(); });
}

void text_table(std::ostream& os, const json& rows, const std::string& indent) {
  std::vector<std::string> cols;
  for (auto& [k, _] : rows[0].items()) cols.push_back(k);
  std::vector<size_t> w(cols.size());
  for (size_t c = 0; c < cols.size(); ++c) w[c] = cols[c].size();
  for (auto& r : rows)
    for (size_t c = 0; c < cols.size(); ++c) w[c] = std::max(w[c], scalar_text(r.value(cols[c], json())).size());
  auto line = [&](auto cell) {
    std::string s = indent;
    for (size_t c = 0; c < cols.size(); ++c) {
      std::string v = cell(c);
      s += v + (c + 1 < cols.size() ? std::string(w[c] - v.size() + 2, ' ') : "");
    }
    os << s << "\n";
  };
  line([&](size_t c) { return cols[c]; });
  for (auto& r : rows) line([&](size_t c) { return scalar_text(r.value(cols[c], json())); });
}

void text_object(std::ostream& os, const json& obj, const std::string& indent) {
  size_t w = 0;
  for (auto& [k, v] : obj.items())
    if (!v.is_object() && !is_table(v)) w = std::max(w, k.size());
  for (auto& [k, v] : obj.items()) {
    if (v.is_object()) {
      os << indent << k << ":\n";
      text_object(os, v, indent + "  ");
    } else if (is_table(v)) {
      os << indent << k << ":\n";
      text_table(os, v, indent + "  ");
    } else {
      os << indent << k << std::string(w - k.size() + 2, ' ') << scalar_text(v) << "\n";
    }
  }
}

std::string render_text(const json& report) {
  std::ostringstream os;
  os << "toolkit " << report["tool_version"].get<std::string>() << "  " << report["config"]["subcommand"].get<std::string>()
     << "  seed=" << report["config"]["seed"] << "\n\n";
  text_object(os, report["payload"], "");
  if (!report["checks"].empty()) {
    os << "\nchecks:\n";
    json rows = json::array();
    for (auto& c : report["checks"]) rows.push_back({{"status", c["status"]}, {"name", c["name"]}, {"detail", c["detail"]}});
    text_table(os, rows, "  ");
  }
  os << "\nruntime_ms " << report["runtime_ms"] << "\n";
  return os.str();
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// the first array of records in the payload becomes the table; otherwise key,value rows
std::string render_csv(const json& report) {
  std::ostringstream os;
  const json& p = report["payload"];
  const json* table = nullptr;
  for (auto& [k, v] : p.items())
    if (is_table(v)) {
      table = &v;
      break;
    }
  if (table) {
    std::string head;
    for (auto& [k, _] : (*table)[0].items()) head += (head.empty() ? "" : ",") + csv_cell(k);
    os << head << "\n";
    for (auto& r : *table) {
      std::string line;
      bool first = true;
      for (auto& [k, _] : (*table)[0].items()) {
        line += (first ? "" : ",") + csv_cell(r.value(k, json()));
        first = false;
      }
      os << line << "\n";
    }
  } else {
    os << "key,value\n";
    for (auto& [k, v] : p.items()) os << csv_cell(k) << "," << csv_cell(v) << "\n";
  }
  if (!report["checks"].empty()) {
    os << "\ncheck,status,detail\n";
    for (auto& c : report["checks"]) os << csv_cell(c["name"]) << "," << csv_cell(c["status"]) << "," << csv_cell(c["detail"]) << "\n";
  }
  return os.str();
}

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("TOOLKIT_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end || v < 1) throw InvalidArgument(std::string("TOOLKIT_THREADS must be a positive integer, got '") + env + "'");
  return unsigned(v);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic toolkit: algebras, root systems, boundary catalogue, lattices", "toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  uint64_t seed = 0;
  std::string format = "json", output, json_path;
  app.add_option("--seed", seed, "random seed, default 0");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", output, "write the report to this file instead of stdout");

  Context ctx;
  ctx.err = &err;
  std::function<Outcome()> action;
  std::string subcommand;

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "Tits index, boundary chain and incident types of a family");
  tables->add_option("--family", ta.family, "O.1 O.2 S.1 S.2 U.1 U.2 E6_16 E6_35 E6_78 E7_28 E7_31 E7_133");
  tables->add_option("--n", ta.n);
  tables->add_option("--d", ta.d);
  tables->add_option("--s", ta.s);
  tables->add_option("--p", ta.p);
  tables->add_option("--q", ta.q);
  tables->add_flag("--all", ta.all, "every descriptor up to --max-rank");
  tables->add_option("--max-rank", ta.max_rank)->check(CLI::Range(1, 8));
  tables->add_flag("--exceptional", ta.exceptional, "list the exceptional indices");
  tables->callback([&] {
    subcommand = "tables";
    action = [&] { return cmd_tables(ta, ctx); };
  });

  IncidenceArgs ia;
  auto* inc = app.add_subcommand("incidence", "symmetric and parabolic root sets and their complement");
  inc->add_option("--domain", ia.domain, "I_4_1, II_6, IV_7, V:II5, VI:I33, ...");
  inc->add_option("--preset", ia.preset, "su41");
  inc->add_option("--tau", ia.tau, "simple roots omitted from the Levi, e.g. 1,4");
  inc->add_option("--effective", ia.effective, "expected count of effective parameters, echoed");
  inc->callback([&] {
    subcommand = "incidence";
    action = [&] { return cmd_incidence(ia, ctx); };
  });

  LieArgs la;
  auto* lie = app.add_subcommand("lie", "Tits models of E6 and E7");
  auto* lie_verify = lie->add_subcommand("verify", "bracket identities on seeded random triples");
  lie->require_subcommand(1);
  lie_verify->add_option("--model", la.model)->check(CLI::IsMember({"e6", "e7"}));
  lie_verify->add_option("--samples", la.samples, "default 1000 for e6, 500 for e7");
  lie_verify->add_option("--gamma", la.gamma, "default 1,-1,1 for e6, 1,1,1 for e7");
  lie_verify->add_flag("--exhaustive-basis", la.exhaustive, "also run every basis triple of the Jordan part");
  lie_verify->callback([&] {
    subcommand = "lie verify";
    action = [&] { return cmd_lie(la, ctx); };
  });

  JordanArgs ja;
  auto* jordan = app.add_subcommand("jordan", "exceptional Jordan algebra");
  auto* jordan_eval = jordan->add_subcommand("eval", "norm, trace, adjoint and inverse of one element");
  jordan->require_subcommand(1);
  jordan_eval->add_option("--gamma", ja.gamma);
  jordan_eval->add_option("--element", ja.element, R"({"xi":[3 values],"x":[[8],[8],[8]]})")->required();
  jordan_eval->callback([&] {
    subcommand = "jordan eval";
    action = [&] { return cmd_jordan(ja, ctx); };
  });

  std::string algebra = "octonion";
  auto* compalg = app.add_subcommand("compalg", "composition algebras");
  auto* derive = compalg->add_subcommand("derive", "basis of the derivation algebra");
  compalg->require_subcommand(1);
  derive->add_option("--algebra", algebra)->check(CLI::IsMember({"octonion", "quaternion"}));
  derive->callback([&] {
    subcommand = "compalg derive";
    action = [&] { return cmd_compalg(algebra, ctx); };
  });

  LatticeArgs lat;
  auto* lattice = app.add_subcommand("lattice", "sublattices of Z^m");
  lattice->require_subcommand(1);
  auto* purity = lattice->add_subcommand("purity", "elementary divisors and saturation");
  purity->add_option("--ambient", lat.ambient);
  purity->add_option("--basis", lat.basis, "rows separated by ';'")->required();
  purity->callback([&] {
    subcommand = "lattice purity";
    action = [&] { return cmd_purity(lat, ctx); };
  });
  auto* gint = lattice->add_subcommand("gamma-integral", "is g(W) an integral pure sublattice");
  gint->add_option("--g", lat.g, "rational matrix, rows separated by ';'")->required();
  gint->add_option("--w", lat.w, "pure sublattice basis")->required();
  gint->add_flag("--no-symplectic-check", lat.no_symplectic_check);
  gint->callback([&] {
    subcommand = "lattice gamma-integral";
    action = [&] { return cmd_gamma(lat, ctx); };
  });

  OrderArgs oa;
  auto* order = app.add_subcommand("order", "lattices in M_n(Q)");
  order->require_subcommand(1);
  auto* ocheck = order->add_subcommand("check", "order test with right and left orders");
  ocheck->add_option("--basis", oa.basis, "n^2 matrices separated by '|'");
  ocheck->add_option("--n", oa.n)->check(CLI::Range(1, 6));
  ocheck->add_option("--j", oa.j, "use the O_J block shape with J = jZ");
  ocheck->callback([&] {
    subcommand = "order check";
    action = [&] { return cmd_order(oa, ctx); };
  });

  int height = 3;
  std::string tuple;
  auto* humbert = app.add_subcommand("humbert", "singular relations on the Siegel upper half space");
  humbert->require_subcommand(1);
  auto* henum = humbert->add_subcommand("enum", "discriminant classes of primitive tuples up to a height");
  henum->add_option("--height", height);
  henum->add_option("--json", json_path, "also write the JSON report here");
  henum->callback([&] {
    subcommand = "humbert enum";
    action = [&] { return cmd_humbert_enum(height, ctx); };
  });
  auto* hclass = humbert->add_subcommand("classify", "discriminant and class of one tuple");
  hclass->add_option("--tuple", tuple, "a,b,c,d,e")->required();
  hclass->callback([&] {
    subcommand = "humbert classify";
    action = [&] { return cmd_humbert_classify(tuple, ctx); };
  });

  auto* verify_all = app.add_subcommand("verify-all", "every acceptance check");
  verify_all->callback([&] {
    subcommand = "verify-all";
    action = [&] { return cmd_verify_all(ctx); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    auto rest = app.remaining();
    if (app.get_subcommands().empty() && !rest.empty() && rest[0].rfind("-", 0) != 0)
      err << "toolkit: unknown subcommand '" << rest[0] << "'\n";
    else
      err << "toolkit: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "toolkit: nothing to run\n";
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  Outcome result;
  try {
    ctx.seed = seed;
    ctx.threads = thread_cap();
    result = action();
  } catch (const InvalidArgument& e) {
    err << "toolkit: " << e.what() << "\n";
    return 2;
  } catch (const NotInvertible& e) {
    err << "toolkit: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "toolkit: " << e.what() << "\n";
    return 2;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  bool ok = true;
  json checks = json::array();
  for (auto& c : result.checks) {
    ok = ok && c.pass;
    checks.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  }
  json report = {{"tool_version", kToolVersion},
                 {"config",
                  {{"subcommand", subcommand},
                   {"seed", seed},
                   {"format", format},
                   {"output", output.empty() ? json(nullptr) : json(output)},
                   {"flags", ctx.flags}}},
                 {"payload", result.payload},
                 {"checks", checks},
                 {"runtime_ms", ms}};

  std::string text = format == "json" ? report.dump(2) + "\n" : format == "csv" ? render_csv(report) : render_text(report);
  auto write_file = [&](const std::string& path, const std::string& body) {
    std::ofstream f(path);
    f << body;
    if (!f) {
      err << "toolkit: cannot write " << path << "\n";
      return false;
    }
    return true;
  };
  if (!json_path.empty() && !write_file(json_path, report.dump(2) + "\n")) return 2;
  if (output.empty())
    out << text;
  else if (!write_file(output, text))
    return 2;
  if (!ok) err << "toolkit: some checks failed\n";
  return ok ? 0 : 1;
}

}  // namespace toolkit
