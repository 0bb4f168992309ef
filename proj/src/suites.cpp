#include "gr2/suites.hpp"

#include "gr2/birman_craggs.hpp"
#include "gr2/bracket.hpp"
#include "gr2/errors.hpp"
#include "gr2/invariants.hpp"
#include "gr2/relations.hpp"

#include <chrono>
#include <functional>
#include <map>

namespace gr2 {

namespace {

std::string str(const Int& x) { return to_string(x); }

Json ints(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

Json generation_json(const GenerationCertificate& c) {
  Json j;
  j["theorem"] = c.theorem;
  j["generator_count"] = c.generator_count;
  j["closure_iterations"] = c.closure_iterations;
  j["closure_rank"] = c.closure_rank;
  j["target_rank"] = c.target_rank;
  j["hnf_digest_lhs"] = c.hnf_digest_lhs;
  j["hnf_digest_rhs"] = c.hnf_digest_rhs;
  j["equal"] = c.equal;
  j["index"] = c.index;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

using Body = std::function<Json(const SuiteOptions&)>;

Json suite_theorem_k(const SuiteOptions& o) {
  GenerationCertificate c = theorem_K_certificate(o.genus);
  Json j = generation_json(c);
  if (!c.equal) throw GenerationFailure(j.dump());
  return j;
}

Json suite_lemma_k(const SuiteOptions& o) {
  DecompositionReport r = check_K_decomposition(o.genus);
  Json j;
  j["rank_K"] = r.rank_K;
  for (int i = 0; i < 4; ++i) {
    j["basis_count"].push_back(r.basis_count[i]);
    j["rank_K_cap_U"].push_back(r.rank_KU[i]);
  }
  j["u0_in_K"] = r.u0_in_K;
  j["sum_equals_K"] = r.sum_equals_K;
  return j;
}

Json suite_relations(const SuiteOptions& o) {
  SweepReport r = verify_relation_sweep(o.genus);
  Json j;
  for (const auto& [f, n] : r.checked) {
    j["checked"][family_name(f)] = n;
    j["nonzero"][family_name(f)] = r.nonzero.at(f);
  }
  j["total"] = r.total();
  j["failures"] = 0;
  return j;
}

Json suite_components(const SuiteOptions& o) {
  Json j;
  for (int i = 0; i < 4; ++i) {
    GenerationCertificate c = component_certificate(o.genus, i);
    Json cj = generation_json(c);
    if (!c.equal) throw GenerationFailure("component " + std::to_string(i) + ": " + cj.dump());
    j["U" + std::to_string(i)] = cj;
  }
  OrbitReport orb = orbit_classification_U0(o.genus);
  j["u0_orbits"]["u0_size"] = orb.u0_size;
  j["u0_orbits"]["covered"] = orb.covered;
  for (const auto& [pattern, size] : orb.orbits) j["u0_orbits"]["patterns"][pattern] = size;
  return j;
}

Json suite_exact_rows(const SuiteOptions& o) {
  ExactRowsReport r = verify_exact_rows(o.genus);
  Json j;
  j["d2prime_rank"] = r.d2prime_rank;
  j["im_b0_rank"] = r.im_b0_rank;
  j["im_b0_equals_ker_trace_S"] = r.im_b0_equals_ker;
  j["trace_S_image_rank"] = r.trace_S_image_rank;
  j["ker_omega_S_dim"] = r.ker_omega_S_dim;
  j["trace_Lambda_image_rank"] = r.trace_Lambda_image_rank;
  j["ker_omega_Lambda_dim"] = r.ker_omega_Lambda_dim;
  return j;
}

Json suite_theta_mod4(const SuiteOptions& o) {
  TrialReport d = verify_theta_discrepancy(o.genus, o.trials, o.seed);
  // basis changes are far costlier than sextuples; a tenth of the trials, at least 100
  const long changes = std::max(100L, o.trials / 10);
  TrialReport m = verify_theta_mod4(o.genus, changes, o.seed);
  Json j;
  j["discrepancy_trials"] = d.trials;
  j["basis_change_trials"] = m.trials;
  j["basis_change_checks"] = m.checks;
  return j;
}

Json suite_d_identity(const SuiteOptions& o) {
  TrialReport d = verify_d_identity(o.genus, o.trials, o.seed);
  TrialReport b = verify_bscc_values(5);
  Json j;
  j["trials"] = d.trials;
  j["bscc_h_checked"] = b.checks;
  for (int h = 1; h <= 5; ++h) {
    auto [dv, d2] = bscc_values(h);
    j["bscc"].push_back({{"h", h}, {"d", str(dv)}, {"d2", to_string(d2)}});
  }
  return j;
}

Json suite_uprime(const SuiteOptions& o) {
  UprimeReport r = verify_uprime(o.genus);
  Json j;
  j["rank"] = r.rank;
  j["image_equals_uprime"] = r.image_equal;
  j["uprime_in_U"] = r.uprime_in_U;
  j["z8_in_uprime"] = r.z8_in_Uprime;
  j["z4_in_uprime"] = r.z4_in_Uprime;
  j["z4_in_U"] = r.z4_in_U;
  j["hnf_digest_image"] = r.digest_image;
  j["hnf_digest_uprime"] = r.digest_uprime;
  return j;
}

Json suite_cocycle(const SuiteOptions& o) {
  TrialReport r = verify_cocycle(o.genus);
  Json j;
  j["pairs_checked"] = r.checks;
  return j;
}

Json suite_b_form(const SuiteOptions& o) {
  Int det = b_gram_determinant(o.genus);
  Json j;
  j["size"] = int(tables(o.genus).lambda3.size());
  j["determinant"] = str(det);
  if (abs(det) != 1) throw RankMismatch("Gram determinant of b is " + str(det));
  return j;
}

Json suite_lemma_sp(const SuiteOptions& o) {
  LemmaSpReport r = verify_lemma_Sp(o.genus);
  Json j;
  for (int k = 0; k <= 3; ++k) j["dim_B"].push_back(dim_B(o.genus, k));
  j["closure_dim"] = r.closure_dim;
  j["target_dim"] = r.target_dim;
  j["rounds"] = r.rounds;
  return j;
}

Json abelianization_json(int genus) {
  AbelianizationReport r = abelianization_structure(genus);
  Json j;
  j["free_rank"] = r.free_rank;
  j["torsion_count"] = r.torsion.size();
  j["torsion_factors"] = ints(r.torsion);
  j["dim_B2"] = r.dim_B2;
  j["dim_B3"] = r.dim_B3;
  const int expected_free = int(tables(genus).lambda3.size());
  bool exponent2 = true;
  for (const auto& f : r.torsion) exponent2 = exponent2 && f == 2;
  j["exponent_two"] = exponent2;
  if (r.free_rank != expected_free)
    throw RankMismatch("free rank " + std::to_string(r.free_rank) + ", expected " + std::to_string(expected_free));
  if (int(r.torsion.size()) != r.dim_B2 || !exponent2)
    throw RankMismatch("torsion is not (Z/2)^" + std::to_string(r.dim_B2));
  return j;
}

Json suite_abelianization(const SuiteOptions& o) { return abelianization_json(o.genus); }

Json suite_torsion_free(const SuiteOptions& o) {
  const auto& model = build_D2prime(o.genus);
  Json j;
  const auto& factors = model.quotient.invariant_factors();
  bool units = true;
  for (const auto& f : factors) units = units && f == 1;
  j["lambda4_relation_rank"] = factors.size();
  j["lambda4_factors_all_one"] = units;
  if (!units) throw RankMismatch("the Lambda^4 relation matrix has a non-unit invariant factor");
  const LatticeBasis& K = compute_K(o.genus);
  std::vector<Int> kf = invariant_factors(K);
  bool saturated = true;
  for (const auto& f : kf) saturated = saturated && f == 1;
  j["K_rank"] = K.rank();
  j["K_saturated"] = saturated;
  if (!saturated) throw RankMismatch("pairs modulo K has torsion");
  return j;
}

const std::vector<std::pair<std::string, Body>>& suites() {
  static const std::vector<std::pair<std::string, Body>> table{
      {"theorem-k", suite_theorem_k},       {"lemma-k", suite_lemma_k},
      {"relations", suite_relations},       {"components", suite_components},
      {"exact-rows", suite_exact_rows},     {"theta-mod4", suite_theta_mod4},
      {"d-identity", suite_d_identity},     {"uprime", suite_uprime},
      {"cocycle", suite_cocycle},           {"b-form", suite_b_form},
      {"lemma-sp", suite_lemma_sp},         {"abelianization", suite_abelianization},
      {"torsion-free", suite_torsion_free},
  };
  return table;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
Certificate guarded(Certificate c, F&& body) {
  auto start = std::chrono::steady_clock::now();
  try {
    c.details = body();
    c.result = Outcome::Pass;
  } catch (const MathFailure& e) {
    c.result = Outcome::Fail;
    c.details = Json::object();
    c.details["witness"] = e.what();
  }
  c.timing_ms = elapsed_ms(start);
  return c;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, body] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

Certificate run_suite(const std::string& name, const SuiteOptions& opt) {
  require_genus(opt.genus);
  if (opt.trials < 1) throw UsageError("--trials must be positive");
  Certificate c;
  c.command = "verify " + name;
  c.genus = opt.genus;
  c.seed = opt.seed;
  c.parameters["suite"] = name;
  c.parameters["trials"] = opt.trials;

  if (name == "all") {
    auto start = std::chrono::steady_clock::now();
    c.result = Outcome::Pass;
    for (const auto& [sub, body] : suites()) {
      Certificate s = run_suite(sub, opt);
      c.details[sub] = {{"result", outcome_name(s.result)}, {"details", s.details}};
      if (s.result != Outcome::Pass) c.result = Outcome::Fail;
    }
    c.timing_ms = elapsed_ms(start);
    return c;
  }
  for (const auto& [sub, body] : suites())
    if (sub == name) return guarded(std::move(c), [&] { return body(opt); });
  throw UsageError("unknown suite '" + name + "'");
}

Certificate rank_command(int genus) {
  require_genus(genus);
  Certificate c;
  c.command = "rank";
  c.genus = genus;
  return guarded(std::move(c), [&] {
    RankReport r = rank_certificate(genus);
    Json j;
    j["Lambda3H"] = r.lambda3;
    j["Lambda2Lambda3H"] = r.pairs;
    j["D2prime"] = r.d2prime;
    j["K"] = r.K;
    j["imB"] = r.imB;
    return j;
  });
}

Certificate kernel_command(int genus) {
  require_genus(genus);
  Certificate c;
  c.command = "kernel";
  c.genus = genus;
  return guarded(std::move(c), [&] {
    const LatticeBasis& K = compute_K(genus);
    Json j;
    j["rank"] = K.rank();
    j["hnf_digest"] = K.digest();
    Json basis = Json::array();
    for (const auto& row : K.rows()) {
      Json v = Json::object();
      for (const auto& [p, x] : row) v[pair_label(genus, p)] = str(x);
      basis.push_back(v);
    }
    j["basis"] = basis;
    return j;
  });
}

Certificate abelianization_command(int genus) {
  require_genus(genus);
  Certificate c;
  c.command = "abelianization";
  c.genus = genus;
  return guarded(std::move(c), [&] { return abelianization_json(genus); });
}

// ---------------------------------------------------------------------------
// invariants

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  auto a = s.find_first_not_of(" \t");
  auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

/// "(u1,v1),(u2,v2)"
HandleBasis parse_handles(int genus, const std::string& text) {
  HandleBasis out;
  for (auto part : split_top(text, ',')) {
    part = trim(part);
    if (part.size() < 2 || part.front() != '(' || part.back() != ')')
      throw ParseError("expected (u,v) handle, got '" + part + "'");
    auto uv = split_top(part.substr(1, part.size() - 2), ',');
    if (uv.size() != 2) throw ParseError("handle needs two classes: '" + part + "'");
    out.emplace_back(SymVector::parse(genus, trim(uv[0])), SymVector::parse(genus, trim(uv[1])));
  }
  return out;
}

Triple parse_triple(int genus, const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  auto parts = split_top(t, ',');
  if (parts.size() != 3) throw ParseError("expected three classes in '" + text + "'");
  return {SymVector::parse(genus, trim(parts[0])), SymVector::parse(genus, trim(parts[1])),
          SymVector::parse(genus, trim(parts[2]))};
}

void need(const std::vector<std::string>& args, std::size_t n, const std::string& usage) {
  if (args.size() != n) throw UsageError("expected: " + usage);
}

std::string rational_coeff(const Rational& c, bool first) {
  std::string sign = c < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
  Rational a = abs(c);
  return sign + (a == 1 ? "" : to_string(a) + " ");
}

std::string bivector_str(int genus, int e) {
  const auto& l = tables(genus).lambda2[e];
  return "(" + Symbol(l[0]).str() + "^" + Symbol(l[1]).str() + ")";
}

/// ½·lift(X) written as rational multiples of products (e)(f).
std::string format_doubled(const D2Vector& x) {
  if (x.is_zero()) return "0";
  const auto& model = build_D2prime(x.genus());
  const auto& t = tables(x.genus());
  std::string s;
  for (const auto& [k, c] : x.coords()) {
    const auto& ef = t.s2l2[model.columns[k]];
    s += rational_coeff(Rational(c) / 2, s.empty()) + bivector_str(x.genus(), ef[0]) + bivector_str(x.genus(), ef[1]);
  }
  return s;
}

std::string format_d2prime(const D2PrimeVector& v) { return format_doubled(to_doubled(v)); }

Json doubled_coords(const D2Vector& x) {
  Json j = Json::object();
  const auto& model = build_D2prime(x.genus());
  const auto& t = tables(x.genus());
  for (const auto& [k, c] : x.coords()) {
    const auto& ef = t.s2l2[model.columns[k]];
    j[bivector_str(x.genus(), ef[0]) + bivector_str(x.genus(), ef[1])] = str(c);
  }
  return j;
}

}  // namespace

Certificate invariant_command(const std::string& kind, const std::vector<std::string>& args, int genus) {
  require_genus(genus);
  Certificate c;
  c.command = "invariants " + kind;
  c.genus = genus;
  c.parameters["args"] = args;
  // parsing happens outside guarded() so ParseError keeps its usage exit code
  if (kind == "tau1-pb") {
    need(args, 3, "tau1-pb X Y Z");
    SymVector x = SymVector::parse(genus, args[0]), y = SymVector::parse(genus, args[1]),
              z = SymVector::parse(genus, args[2]);
    return guarded(std::move(c), [&] { return Json{{"value", format(tau1_pb(x, y, z))}}; });
  }
  if (kind == "tau1-bp" || kind == "beta-bp") {
    need(args, 2, kind + " \"(u1,v1),...\" E");
    BPData d{parse_handles(genus, args[0]), SymVector::parse(genus, args[1])};
    if (kind == "tau1-bp") return guarded(std::move(c), [&] { return Json{{"value", format(tau1_bp(d))}}; });
    return guarded(std::move(c), [&] { return Json{{"value", beta_bp(d).str()}}; });
  }
  if (kind == "tau2-bscc" || kind == "beta-bscc") {
    need(args, 1, kind + " \"(u1,v1),...\"");
    BSCCData d{parse_handles(genus, args[0])};
    if (kind == "beta-bscc") return guarded(std::move(c), [&] { return Json{{"value", beta_bscc(d).str()}}; });
    return guarded(std::move(c), [&] {
      D2Vector x = tau2_bscc(d);
      return Json{{"value", format_doubled(x)}, {"doubled_coordinates", doubled_coords(x)}};
    });
  }
  if (kind == "cocycle") {
    need(args, 2, "cocycle \"x1,x2,x3\" \"y1,y2,y3\"");
    Triple x = parse_triple(genus, args[0]), y = parse_triple(genus, args[1]);
    return guarded(std::move(c), [&] {
      UPoint p = cocycle_C(x, y);
      BracketValue b = bracket_value(x, y);
      return Json{{"tree", format_d2prime(b.tree)}, {"z", str(p.z)}, {"b2_x4", str(b.theta_x4)}};
    });
  }
  throw UsageError("unknown invariant kind '" + kind + "'");
}

}  // namespace gr2
