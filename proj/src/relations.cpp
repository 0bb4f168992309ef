#include "gr2/relations.hpp"

#include "gr2/errors.hpp"

#include <algorithm>
#include <climits>
#include <memory>
#include <mutex>
#include <numeric>

namespace gr2 {

const char* family_name(Family f) {
  switch (f) {
    case Family::D: return "D";
    case Family::Sq: return "Sq";
    case Family::T: return "T";
    case Family::IHX1: return "IHX1";
    case Family::IHX2: return "IHX2";
    case Family::IHX3: return "IHX3";
    case Family::IHX3p: return "IHX3p";
  }
  return "?";
}

int family_arity(Family f) {
  switch (f) {
    case Family::D:
    case Family::Sq: return 6;
    case Family::IHX1: return 5;
    case Family::T:
    case Family::IHX2:
    case Family::IHX3p: return 4;
    case Family::IHX3: return 3;
  }
  return 0;
}

namespace {

constexpr Family kFamilies[] = {Family::D,    Family::Sq,   Family::T,    Family::IHX1,
                                Family::IHX2, Family::IHX3, Family::IHX3p};

std::string join(const std::vector<Symbol>& s, std::initializer_list<int> groups) {
  std::string out;
  std::size_t k = 0;
  bool first_group = true;
  for (int g : groups) {
    if (!first_group) out += ";";
    first_group = false;
    for (int i = 0; i < g; ++i, ++k) {
      if (i) out += ",";
      out += s[k].str();
    }
  }
  return out;
}

// Coincidence check over named symbols; returns "" or e.g. "x = c1 = a1".
std::string first_coincidence(const std::vector<std::pair<std::string, Symbol>>& named) {
  for (std::size_t i = 0; i < named.size(); ++i)
    for (std::size_t j = i + 1; j < named.size(); ++j)
      if (named[i].second == named[j].second)
        return named[i].first + " = " + named[j].first + " = " + named[i].second.str();
  return "";
}

std::string membership(const std::pair<std::string, Symbol>& item,
                       const std::vector<std::pair<std::string, Symbol>>& set) {
  for (const auto& s : set)
    if (s.second == item.second) return item.first + " = " + s.first + " = " + item.second.str();
  return "";
}

}  // namespace

std::string describe(Family f, const std::vector<Symbol>& p) {
  std::string body;
  switch (f) {
    case Family::D:
    case Family::Sq: body = join(p, {2, 2, 2}); break;
    case Family::T: body = join(p, {1, 3}); break;
    default: body = join(p, {int(p.size())});
  }
  return std::string(family_name(f)) + "(" + body + ")";
}

std::string clause_violation(Family f, const std::vector<Symbol>& p) {
  if (int(p.size()) != family_arity(f))
    throw UsageError(std::string(family_name(f)) + " takes " + std::to_string(family_arity(f)) + " symbols");
  auto nb = [](const char* name, Symbol s) { return std::pair<std::string, Symbol>(std::string("bar ") + name, bar(s)); };
  auto n = [](const char* name, Symbol s) { return std::pair<std::string, Symbol>(name, s); };
  switch (f) {
    case Family::D:
      return first_coincidence({n("x", p[0]), n("y", p[1]), n("c1", p[2]), n("c2", p[3]), nb("x'", p[4]), nb("y'", p[5])});
    case Family::Sq:
      return first_coincidence({n("p", p[2]), n("q", p[3]), n("r", p[4]), n("s", p[5]), n("x", p[0]), nb("y", p[1])});
    case Family::T:
      return first_coincidence(
          {n("p", p[1]), nb("p", p[1]), n("q", p[2]), nb("q", p[2]), n("r", p[3]), nb("r", p[3]), n("x", p[0])});
    case Family::IHX1: {
      std::vector<std::pair<std::string, Symbol>> set = {n("c", p[4]),  n("s2", p[1]), nb("s2", p[1]), n("s3", p[2]),
                                                         nb("s3", p[2]), n("s4", p[3]), nb("s4", p[3])};
      std::string v = first_coincidence(set);
      return v.empty() ? membership(n("s1", p[0]), set) : v;
    }
    case Family::IHX2: {
      std::string v = first_coincidence(
          {n("x", p[0]), nb("x", p[0]), n("y", p[1]), nb("y", p[1]), n("p", p[2]), nb("p", p[2])});
      return v.empty() ? membership(n("c", p[3]), {n("x", p[0]), n("y", p[1]), n("p", p[2]), nb("p", p[2])}) : v;
    }
    case Family::IHX3:
      return first_coincidence({n("p", p[0]), nb("p", p[0]), n("q", p[1]), nb("q", p[1]), n("r", p[2]), nb("r", p[2])});
    case Family::IHX3p:
      return first_coincidence({n("p", p[0]), nb("p", p[0]), n("q", p[1]), nb("q", p[1]), n("r", p[2]),
                                nb("r", p[2]), n("s", p[3]), nb("s", p[3])});
  }
  return "";
}

PairVector relation_value(int g, Family f, const std::vector<Symbol>& p) {
  if (int(p.size()) != family_arity(f))
    throw UsageError(std::string(family_name(f)) + " takes " + std::to_string(family_arity(f)) + " symbols");
  for (Symbol s : p)
    if (s.index() > g) throw AmbientMismatch("symbol " + s.str() + " exceeds genus " + std::to_string(g));
  PairVector v(g);
  auto add = [&](int coeff, Symbol x1, Symbol x2, Symbol x3, Symbol y1, Symbol y2, Symbol y3) {
    v.axpy(coeff, bracket({x1, x2, x3}, {y1, y2, y3}, g));
  };
  auto e = [](Symbol s) { return epsilon(s); };
  switch (f) {
    case Family::D: {
      Symbol x = p[0], y = p[1], c1 = p[2], c2 = p[3], xp = p[4], yp = p[5];
      add(e(c1), x, y, c1, bar(c1), xp, yp);
      add(-e(c2), x, y, c2, bar(c2), xp, yp);
      break;
    }
    case Family::Sq: {
      Symbol x = p[0], y = p[1], P = p[2], q = p[3], r = p[4], s = p[5];
      add(e(r) * e(s), x, P, q, y, bar(P), bar(q));
      add(-e(P) * e(r), x, q, s, y, bar(q), bar(s));
      add(e(P) * e(q), x, r, s, y, bar(r), bar(s));
      add(-e(q) * e(s), x, P, r, y, bar(P), bar(r));
      break;
    }
    case Family::T: {
      Symbol x = p[0], P = p[1], q = p[2], r = p[3];
      add(e(r), x, P, q, x, bar(P), bar(q));
      add(-e(q), x, P, r, x, bar(P), bar(r));
      add(e(P), x, q, bar(r), x, bar(q), r);
      break;
    }
    case Family::IHX1: {
      Symbol s1 = p[0], s2 = p[1], s3 = p[2], s4 = p[3], c = p[4];
      add(1, s1, s2, c, bar(c), s3, s4);
      add(1, s1, s3, c, bar(c), s4, s2);
      add(1, s1, s4, c, bar(c), s2, s3);
      break;
    }
    case Family::IHX2: {
      Symbol x = p[0], y = p[1], P = p[2], c = p[3];
      add(e(P), x, P, bar(P), y, P, bar(P));
      add(-e(c), x, y, c, P, bar(P), bar(c));
      break;
    }
    case Family::IHX3: {
      Symbol P = p[0], q = p[1], r = p[2];
      add(e(r), P, bar(P), q, bar(q), r, bar(r));
      add(-e(q), r, bar(r), P, bar(P), r, bar(r));
      add(-e(r), q, bar(q), P, bar(P), r, bar(r));
      add(e(P), r, bar(r), q, bar(q), r, bar(r));
      break;
    }
    case Family::IHX3p: {
      Symbol P = p[0], q = p[1], r = p[2], s = p[3];
      add(e(q), P, r, s, bar(P), bar(r), bar(s));
      add(-e(P), q, r, s, bar(q), bar(r), bar(s));
      add(-e(s), bar(r), bar(P), q, r, P, bar(q));
      add(-e(r), s, bar(P), q, bar(s), P, bar(q));
      add(-e(r), s, bar(s), q, bar(q), P, bar(P));
      add(e(s), q, bar(q), P, bar(P), r, bar(r));
      break;
    }
  }
  return v;
}

namespace {

bool in_K(const PairVector& v) { return assemble_B_matrix(v.genus()).apply(v.coords()).empty(); }

}  // namespace

RelationElement make_relation(int genus, Family f, const std::vector<Symbol>& params) {
  std::string clash = clause_violation(f, params);
  if (!clash.empty()) throw ClauseViolation(describe(f, params) + ": " + clash);
  RelationElement r{f, params, relation_value(genus, f, params)};
  if (!in_K(r.value)) throw MembershipFailure(describe(f, params) + " has B != 0");
  return r;
}

RelationElement rel_D(int g, Symbol x, Symbol y, Symbol c1, Symbol c2, Symbol xp, Symbol yp) {
  return make_relation(g, Family::D, {x, y, c1, c2, xp, yp});
}
RelationElement rel_Sq(int g, Symbol x, Symbol y, Symbol p, Symbol q, Symbol r, Symbol s) {
  return make_relation(g, Family::Sq, {x, y, p, q, r, s});
}
RelationElement rel_T(int g, Symbol x, Symbol p, Symbol q, Symbol r) { return make_relation(g, Family::T, {x, p, q, r}); }
RelationElement rel_IHX1(int g, Symbol s1, Symbol s2, Symbol s3, Symbol s4, Symbol c) {
  return make_relation(g, Family::IHX1, {s1, s2, s3, s4, c});
}
RelationElement rel_IHX2(int g, Symbol x, Symbol y, Symbol p, Symbol c) {
  return make_relation(g, Family::IHX2, {x, y, p, c});
}
RelationElement rel_IHX3(int g, Symbol p, Symbol q, Symbol r) { return make_relation(g, Family::IHX3, {p, q, r}); }
RelationElement rel_IHX3p(int g, Symbol p, Symbol q, Symbol r, Symbol s) {
  return make_relation(g, Family::IHX3p, {p, q, r, s});
}

// ---------------------------------------------------------------------------
// The 26 generators

int GeneratorSpec::max_index() const {
  int m = 0;
  if (raw) {
    for (Symbol s : x) m = std::max(m, s.index());
    for (Symbol s : y) m = std::max(m, s.index());
  } else {
    for (Symbol s : params) m = std::max(m, s.index());
  }
  return m;
}

std::string GeneratorSpec::label() const {
  if (!raw) return describe(family, params);
  std::string s = "<";
  for (Symbol t : x) s += t.str();
  s += "|";
  for (Symbol t : y) s += t.str();
  return s + ">";
}

namespace {

Symbol sym(const char* t) { return Symbol::parse(t); }

GeneratorSpec raw(const char* a1, const char* a2, const char* a3, const char* b1, const char* b2, const char* b3) {
  return {0, true, {sym(a1), sym(a2), sym(a3)}, {sym(b1), sym(b2), sym(b3)}, Family::D, {}};
}

GeneratorSpec fam(int component, Family f, std::initializer_list<const char*> names) {
  std::vector<Symbol> p;
  for (const char* n : names) p.push_back(sym(n));
  return {component, false, {}, {}, f, p};
}

}  // namespace

const std::vector<GeneratorSpec>& theorem_generators() {
  static const std::vector<GeneratorSpec> list = {
      raw("a1", "a2", "a3", "a4", "a5", "a6"),
      raw("a1", "b1", "a2", "a3", "a4", "a5"),
      raw("a1", "b1", "a2", "a3", "b3", "a4"),
      raw("a1", "a2", "a3", "a3", "a4", "a5"),
      raw("a1", "b1", "a2", "a2", "a3", "a4"),
      raw("a1", "b1", "a2", "a2", "a3", "b3"),
      raw("a1", "a2", "a3", "a2", "a3", "a4"),
      fam(1, Family::D, {"a1", "a2", "a5", "a3", "a3", "a4"}),
      fam(1, Family::D, {"a1", "a2", "a3", "a4", "a3", "a4"}),
      fam(1, Family::D, {"a1", "a2", "a3", "b1", "a3", "a4"}),
      fam(1, Family::D, {"a3", "a1", "a4", "a2", "a2", "a3"}),
      fam(1, Family::D, {"a3", "a1", "b1", "a2", "a2", "a3"}),
      fam(1, Family::D, {"a1", "a2", "a4", "a3", "a2", "a1"}),
      fam(1, Family::IHX1, {"a1", "a2", "a3", "a4", "b1"}),
      fam(2, Family::Sq, {"a1", "a2", "a4", "a5", "a3", "b3"}),
      fam(2, Family::Sq, {"a1", "a2", "a4", "b4", "a3", "b3"}),
      fam(2, Family::Sq, {"a1", "a2", "a2", "b1", "a3", "b3"}),
      fam(2, Family::Sq, {"a1", "a2", "a2", "a4", "a3", "b3"}),
      fam(2, Family::Sq, {"a1", "a2", "b1", "a4", "a3", "b3"}),
      fam(2, Family::T, {"a1", "a2", "a3", "a4"}),
      fam(2, Family::IHX2, {"a1", "a2", "a3", "a4"}),
      fam(2, Family::IHX2, {"a1", "a2", "a3", "b1"}),
      fam(3, Family::D, {"a1", "b1", "a2", "b2", "a3", "b3"}),
      fam(3, Family::D, {"a1", "b1", "a2", "a3", "a4", "b4"}),
      fam(3, Family::IHX3, {"a1", "a2", "a3"}),
      fam(3, Family::IHX3p, {"a1", "a2", "a3", "a4"}),
  };
  return list;
}

std::vector<GeneratorSpec> family_R_specs(int genus, int i) {
  require_genus(genus);
  std::vector<GeneratorSpec> out;
  for (const auto& s : theorem_generators())
    if (s.component == i && s.max_index() <= genus) out.push_back(s);
  return out;
}

std::vector<PairVector> family_R(int genus, int i) {
  std::vector<PairVector> out;
  for (const auto& s : family_R_specs(genus, i))
    out.push_back(s.raw ? bracket(s.x, s.y, genus) : make_relation(genus, s.family, s.params).value);
  return out;
}

// ---------------------------------------------------------------------------
// Sweep

long SweepReport::total() const {
  long t = 0;
  for (const auto& [f, c] : checked) t += c;
  return t;
}

SweepReport verify_relation_sweep(int genus, Execution exec) {
  require_genus(genus);
  const int n = 2 * genus;
  const auto& B = assemble_B_matrix(genus);
  SweepReport rep;
  for (Family f : kFamilies) {
    const int k = family_arity(f);
    long total = 1;
    for (int i = 0; i < k; ++i) total *= n;
    long checked = 0, nonzero = 0;
    long first_bad = LONG_MAX;
    auto visit = [&](long code, long& c, long& nz, long& bad) {
      std::vector<Symbol> p(k);
      long rest = code;
      for (int i = k - 1; i >= 0; --i) {
        p[i] = Symbol(int(rest % n));
        rest /= n;
      }
      if (!clause_violation(f, p).empty()) return;
      ++c;
      PairVector v = relation_value(genus, f, p);
      if (v.is_zero()) return;
      ++nz;
      if (!B.apply(v.coords()).empty()) bad = std::min(bad, code);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel
      {
        long c = 0, nz = 0, bad = LONG_MAX;
#pragma omp for schedule(dynamic, 256) nowait
        for (long code = 0; code < total; ++code) visit(code, c, nz, bad);
#pragma omp critical
        {
          checked += c;
          nonzero += nz;
          first_bad = std::min(first_bad, bad);
        }
      }
    } else {
      for (long code = 0; code < total; ++code) visit(code, checked, nonzero, first_bad);
    }
    if (first_bad != LONG_MAX) {
      std::vector<Symbol> p(k);
      long rest = first_bad;
      for (int i = k - 1; i >= 0; --i) {
        p[i] = Symbol(int(rest % n));
        rest /= n;
      }
      throw MembershipFailure(describe(f, p) + " is not in ker B: " + format(relation_value(genus, f, p)));
    }
    rep.checked[f] = checked;
    rep.nonzero[f] = nonzero;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Generation

const std::vector<SparseMatrix>& g_pair_actions(int genus) {
  require_genus(genus);
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<SparseMatrix>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[genus];
  if (!slot) {
    slot = std::make_unique<std::vector<SparseMatrix>>();
    for (const auto& m : g_closure_generators(genus)) slot->push_back(induced_action(m, Space::PairSpace));
  }
  return *slot;
}

namespace {

GenerationCertificate generation_certificate(const std::string& theorem, int genus,
                                             const std::vector<PairVector>& gens, const LatticeBasis& target,
                                             Execution exec) {
  const int dim = int(tables(genus).pairs.size());
  std::vector<SparseVector> rows;
  for (const auto& v : gens) rows.push_back(v.coords());
  ClosureResult c = span_closure(dim, rows, g_pair_actions(genus), exec);
  GenerationCertificate cert;
  cert.theorem = theorem;
  cert.genus = genus;
  cert.generator_count = int(gens.size());
  cert.closure_iterations = c.iterations;
  cert.closure_rank = c.lattice.rank();
  cert.target_rank = target.rank();
  cert.hnf_digest_lhs = c.lattice.digest();
  cert.hnf_digest_rhs = target.digest();
  cert.equal = c.lattice == target;
  if (!cert.equal) {
    try {
      auto idx = lattice_index(target, c.lattice);
      cert.index = idx ? idx->str() : "infinite";
    } catch (const MathFailure&) {
      cert.index = "not contained";
    }
    const auto trows = target.rows();
    for (std::size_t k = 0; k < trows.size(); ++k)
      if (!c.lattice.contains(trows[k])) {
        cert.witness = "target basis vector " + std::to_string(k) + ": " + format(PairVector(genus, trows[k]));
        break;
      }
  } else {
    cert.index = "1";
  }
  return cert;
}

void require_equal(const GenerationCertificate& c) {
  if (!c.equal)
    throw GenerationFailure(c.theorem + " at genus " + std::to_string(c.genus) + ": closure has index " + c.index +
                            "; " + c.witness);
}

}  // namespace

GenerationCertificate theorem_K_certificate(int genus, Execution exec) {
  std::vector<PairVector> gens;
  for (int i = 0; i < 4; ++i)
    for (auto& v : family_R(genus, i)) gens.push_back(std::move(v));
  return generation_certificate("theorem-k", genus, gens, compute_K(genus), exec);
}

GenerationCertificate component_certificate(int genus, int i, Execution exec) {
  return generation_certificate("component-" + std::to_string(i), genus, family_R(genus, i), K_component(genus, i),
                                exec);
}

GenerationCertificate verify_theorem_K(int genus, Execution exec) {
  auto c = theorem_K_certificate(genus, exec);
  require_equal(c);
  return c;
}

GenerationCertificate verify_component(int genus, int i, Execution exec) {
  auto c = component_certificate(genus, i, exec);
  require_equal(c);
  return c;
}

// ---------------------------------------------------------------------------
// U_0 orbits

OrbitReport orbit_classification_U0(int genus) {
  const auto& actions = g_pair_actions(genus);
  const auto& comp = pair_components(genus);
  const int dim = int(comp.size());
  // G permutes the pair basis up to sign, so orbits are connected components.
  std::vector<int> parent(dim);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : actions)
    for (int p = 0; p < dim; ++p) {
      const auto& col = m.column(p);
      if (col.size() != 1 || abs(col.lead_value()) != 1)
        throw MathFailure("G generator does not act by a signed permutation on the pair basis");
      int a = find(p), b = find(col.lead_index());
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  OrbitReport rep;
  std::vector<int> orbit_size(dim, 0);
  for (int p = 0; p < dim; ++p)
    if (comp[p] == 0) {
      ++rep.u0_size;
      ++orbit_size[find(p)];
    }
  std::vector<bool> reached(dim, false);
  for (const auto& s : family_R_specs(genus, 0)) {
    PairVector v = bracket(s.x, s.y, genus);
    int root = find(v.coords().lead_index());
    rep.orbits.emplace_back(s.label(), orbit_size[root]);
    reached[root] = true;
  }
  for (int p = 0; p < dim; ++p)
    if (comp[p] == 0) {
      if (!reached[find(p)]) throw UnclassifiedElement("U0 basis element " + pair_label(genus, p) + " is in no pattern orbit");
      ++rep.covered;
    }
  return rep;
}

}  // namespace gr2
