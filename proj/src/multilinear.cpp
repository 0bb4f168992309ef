#include "gr2/multilinear.hpp"

#include "gr2/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace gr2 {

const char* space_name(Space s) {
  switch (s) {
    case Space::Lambda2: return "Lambda2H";
    case Space::Lambda3: return "Lambda3H";
    case Space::PairSpace: return "Lambda2Lambda3H";
    case Space::S2Lambda2: return "S2Lambda2H";
    case Space::D2Prime: return "D2prime";
    case Space::D2Doubled: return "D2";
    case Space::S2HMod2: return "S2H_mod2";
    case Space::Lambda2HMod2: return "Lambda2H_mod2";
    case Space::Lambda3HMod2: return "Lambda3H_mod2";
  }
  return "?";
}

void throw_genus_mismatch() { throw AmbientMismatch("vectors of different genus"); }

namespace {

std::unique_ptr<BasisTables> make_tables(int g) {
  auto t = std::make_unique<BasisTables>();
  t->genus = g;
  const int n = t->n = 2 * g;
  t->l2_index_.assign(n * n, -1);
  t->l3_index_.assign(n * n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      t->l2_index_[i * n + j] = int(t->lambda2.size());
      t->lambda2.push_back({i, j});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        t->l3_index_[(i * n + j) * n + k] = int(t->lambda3.size());
        t->lambda3.push_back({i, j, k});
      }
  const int T = int(t->lambda3.size());
  for (int I = 0; I < T; ++I)
    for (int J = I + 1; J < T; ++J) t->pairs.push_back({I, J});
  const int P = int(t->lambda2.size());
  for (int e = 0; e < P; ++e)
    for (int f = e; f < P; ++f) t->s2l2.push_back({e, f});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) t->s2h.push_back({i, j});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) t->lambda4.push_back({i, j, k, l});
  return t;
}

template <class T, class Make>
const T& cached(int genus, Make make) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<T>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[genus];
  if (!slot) slot = make(genus);
  return *slot;
}

// Sorts three distinct ids in place and returns the permutation sign; 0 on a repeat.
int sort3(int& i, int& j, int& k) {
  if (i == j || j == k || i == k) return 0;
  int s = 1;
  if (i > j) std::swap(i, j), s = -s;
  if (j > k) std::swap(j, k), s = -s;
  if (i > j) std::swap(i, j), s = -s;
  return s;
}

std::vector<std::pair<int, Int>> nonzero(const SymVector& x) {
  std::vector<std::pair<int, Int>> out;
  for (int i = 0; i < x.dim(); ++i)
    if (x[i] != 0) out.emplace_back(i, x[i]);
  return out;
}

void same_genus(const SymVector& x, const SymVector& y) {
  if (x.genus() != y.genus()) throw AmbientMismatch("genus mismatch");
}

}  // namespace

const BasisTables& tables(int genus) {
  require_genus(genus);
  return cached<BasisTables>(genus, make_tables);
}

int space_dim(int genus, Space s) {
  const auto& t = tables(genus);
  switch (s) {
    case Space::Lambda2:
    case Space::Lambda2HMod2: return int(t.lambda2.size());
    case Space::Lambda3:
    case Space::Lambda3HMod2: return int(t.lambda3.size());
    case Space::PairSpace: return int(t.pairs.size());
    case Space::S2Lambda2: return int(t.s2l2.size());
    case Space::D2Prime:
    case Space::D2Doubled: return build_D2prime(genus).rank();
    case Space::S2HMod2: return int(t.s2h.size());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Products

Bivector wedge2(const SymVector& x, const SymVector& y) {
  same_genus(x, y);
  const auto& t = tables(x.genus());
  std::vector<Entry> terms;
  for (const auto& [i, c] : nonzero(x))
    for (const auto& [j, d] : nonzero(y)) {
      if (i == j) continue;
      if (i < j)
        terms.push_back({t.lambda2_index(i, j), c * d});
      else
        terms.push_back({t.lambda2_index(j, i), -c * d});
    }
  return Bivector(x.genus(), SparseVector::from_terms(std::move(terms)));
}

Trivector wedge3(const SymVector& x, const SymVector& y, const SymVector& z) {
  same_genus(x, y);
  same_genus(x, z);
  const auto& t = tables(x.genus());
  std::vector<Entry> terms;
  const auto nx = nonzero(x), ny = nonzero(y), nz = nonzero(z);
  for (const auto& [i0, c] : nx)
    for (const auto& [j0, d] : ny)
      for (const auto& [k0, e] : nz) {
        int i = i0, j = j0, k = k0;
        int s = sort3(i, j, k);
        if (s == 0) continue;
        terms.push_back({t.lambda3_index(i, j, k), s * c * d * e});
      }
  return Trivector(x.genus(), SparseVector::from_terms(std::move(terms)));
}

Trivector wedge3(Symbol x, Symbol y, Symbol z, int genus) {
  const auto& t = tables(genus);
  for (Symbol s : {x, y, z})
    if (s.index() > genus) throw AmbientMismatch("symbol " + s.str() + " exceeds genus " + std::to_string(genus));
  int i = x.id(), j = y.id(), k = z.id();
  int s = sort3(i, j, k);
  if (s == 0) return Trivector(genus);
  return Trivector(genus, SparseVector::unit(t.lambda3_index(i, j, k), s));
}

PairVector wedge_pair(const Trivector& x, const Trivector& y) {
  if (x.genus() != y.genus()) throw_genus_mismatch();
  const auto& t = tables(x.genus());
  std::vector<Entry> terms;
  for (const auto& [I, c] : x.coords())
    for (const auto& [J, d] : y.coords()) {
      if (I == J) continue;
      if (I < J)
        terms.push_back({t.pair_index(I, J), c * d});
      else
        terms.push_back({t.pair_index(J, I), -c * d});
    }
  return PairVector(x.genus(), SparseVector::from_terms(std::move(terms)));
}

PairVector bracket(const std::array<Symbol, 3>& x, const std::array<Symbol, 3>& y, int genus) {
  return wedge_pair(wedge3(x[0], x[1], x[2], genus), wedge3(y[0], y[1], y[2], genus));
}

S2Vector sym_product(const Bivector& e, const Bivector& f) {
  if (e.genus() != f.genus()) throw_genus_mismatch();
  const auto& t = tables(e.genus());
  std::vector<Entry> terms;
  for (const auto& [E, c] : e.coords())
    for (const auto& [F, d] : f.coords())
      terms.push_back({E <= F ? t.s2l2_index(E, F) : t.s2l2_index(F, E), c * d});
  return S2Vector(e.genus(), SparseVector::from_terms(std::move(terms)));
}

S2Vector embed_lambda4(const SymVector& h1, const SymVector& h2, const SymVector& h3, const SymVector& h4) {
  return sym_product(wedge2(h1, h2), wedge2(h3, h4)) + sym_product(wedge2(h1, h3), wedge2(h4, h2)) +
         sym_product(wedge2(h1, h4), wedge2(h2, h3));
}

std::string trivector_label(int genus, int I) {
  const auto& t = tables(genus);
  std::string s;
  for (Symbol x : t.triple(I)) s += x.str();
  return s;
}

std::string pair_label(int genus, int p) {
  const auto& t = tables(genus);
  return trivector_label(genus, t.pairs[p][0]) + "|" + trivector_label(genus, t.pairs[p][1]);
}

namespace {

std::array<Symbol, 3> parse_triple(const std::string& text) {
  std::vector<Symbol> out;
  std::size_t k = 0;
  while (k < text.size()) {
    if (text[k] == ' ') {
      ++k;
      continue;
    }
    std::size_t start = k++;
    while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
    out.push_back(Symbol::parse(text.substr(start, k - start)));
  }
  if (out.size() != 3) throw ParseError("expected three symbols in '" + text + "'");
  return {out[0], out[1], out[2]};
}

template <class V>
std::string format_terms(const V& v, auto label) {
  std::string s;
  for (const auto& [i, c] : v.coords()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Int m = abs(c);
    if (m != 1) s += m.str() + "*";
    s += label(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

PairVector parse_pair(int genus, const std::string& text) {
  std::string body = text;
  body.erase(std::remove_if(body.begin(), body.end(), [](char c) { return c == '<' || c == '>'; }), body.end());
  auto bar_pos = body.find('|');
  if (bar_pos == std::string::npos) throw ParseError("expected 'xxx|yyy' in '" + text + "'");
  return bracket(parse_triple(body.substr(0, bar_pos)), parse_triple(body.substr(bar_pos + 1)), genus);
}

std::string format(const Trivector& t) {
  if (t.is_zero()) return "0";
  const auto& tab = tables(t.genus());
  return format_terms(t, [&](int I) {
    auto x = tab.triple(I);
    return x[0].str() + "^" + x[1].str() + "^" + x[2].str();
  });
}

std::string format(const PairVector& v) {
  return format_terms(v, [&](int p) { return "<" + pair_label(v.genus(), p) + ">"; });
}

// ---------------------------------------------------------------------------
// D′₂ and D₂

namespace {

std::unique_ptr<D2PrimeModel> make_d2prime(int g) {
  const auto& t = tables(g);
  std::vector<SparseVector> relations;
  relations.reserve(t.lambda4.size());
  for (const auto& q : t.lambda4)
    relations.push_back(embed_lambda4(SymVector(g, Symbol(q[0])), SymVector(g, Symbol(q[1])),
                                      SymVector(g, Symbol(q[2])), SymVector(g, Symbol(q[3])))
                            .coords());
  auto m = std::make_unique<D2PrimeModel>(
      D2PrimeModel{g, QuotientLattice(int(t.s2l2.size()), relations), {}, {}});
  for (const auto& r : m->quotient.relations().rows())
    if (r.lead_value() != 1)
      throw MathFailure("Lambda4 relation pivot " + r.lead_value().str() + " at column " +
                        std::to_string(r.lead_index()));
  m->columns = m->quotient.free_columns();
  for (int c : m->columns) m->is_square.push_back(t.s2l2[c][0] == t.s2l2[c][1]);
  return m;
}

}  // namespace

const D2PrimeModel& build_D2prime(int genus) {
  require_genus(genus);
  return cached<D2PrimeModel>(genus, make_d2prime);
}

D2PrimeVector D2PrimeModel::reduce(const S2Vector& v) const {
  if (v.genus() != genus && !v.is_zero()) throw_genus_mismatch();
  SparseVector r = quotient.reduce(v.coords());
  SparseVector out;
  for (const auto& [i, c] : r) {
    int k = quotient.free_position(i);
    if (k < 0) throw MathFailure("D2prime residue has support on a pivot column");
    out.push_back(k, c);
  }
  return D2PrimeVector(genus, std::move(out));
}

S2Vector D2PrimeModel::lift(const D2PrimeVector& v) const {
  SparseVector out;
  for (const auto& [k, c] : v.coords()) out.push_back(columns.at(k), c);
  return S2Vector(genus, std::move(out));
}

LatticeBasis build_D2(int genus) {
  const auto& m = build_D2prime(genus);
  LatticeBasis out(m.rank());
  for (int k = 0; k < m.rank(); ++k) out.insert(SparseVector::unit(k, m.is_square[k] ? 1 : 2));
  return out;
}

D2Vector to_doubled(const D2PrimeVector& t) { return D2Vector(t.genus(), Int(2) * t.coords()); }

D2Vector doubled_from_s2(const S2Vector& x) {
  return D2Vector(x.genus(), build_D2prime(x.genus()).reduce(x).coords());
}

// ---------------------------------------------------------------------------
// Mod-2 targets

Mod2Target mod2_target(int genus, Space space) {
  const auto& t = tables(genus);
  Mod2Target out;
  if (space == Space::S2HMod2) {
    out.dim = int(t.s2h.size());
    out.functional = BitVector(out.dim);
    for (int k = 0; k < out.dim; ++k)
      if (omega(Symbol(t.s2h[k][0]), Symbol(t.s2h[k][1])) != 0) out.functional.set(k);
  } else if (space == Space::Lambda2HMod2) {
    out.dim = int(t.lambda2.size());
    out.functional = BitVector(out.dim);
    for (int k = 0; k < out.dim; ++k)
      if (omega(Symbol(t.lambda2[k][0]), Symbol(t.lambda2[k][1])) != 0) out.functional.set(k);
  } else {
    throw UsageError(std::string("no omega functional on ") + space_name(space));
  }
  const int pivot = out.functional.first();
  for (int k = 0; k < out.dim; ++k) {
    if (k == pivot) continue;
    BitVector v(out.dim);
    v.set(k);
    if (out.functional.test(k)) v.set(pivot);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Induced actions

namespace {

std::vector<SparseVector> lambda2_columns(const SpMatrix& m) {
  const int g = m.genus();
  const auto& t = tables(g);
  std::vector<SparseVector> cols;
  for (const auto& e : t.lambda2) cols.push_back(wedge2(m.image(Symbol(e[0])), m.image(Symbol(e[1]))).coords());
  return cols;
}

std::vector<SparseVector> lambda3_columns(const SpMatrix& m) {
  const int g = m.genus();
  const auto& t = tables(g);
  std::vector<SparseVector> cols;
  for (const auto& e : t.lambda3)
    cols.push_back(wedge3(m.image(Symbol(e[0])), m.image(Symbol(e[1])), m.image(Symbol(e[2]))).coords());
  return cols;
}

}  // namespace

SparseMatrix induced_action(const SpMatrix& m, Space space) {
  const int g = m.genus();
  const auto& t = tables(g);
  switch (space) {
    case Space::Lambda2: return SparseMatrix(int(t.lambda2.size()), lambda2_columns(m));
    case Space::Lambda3: return SparseMatrix(int(t.lambda3.size()), lambda3_columns(m));
    case Space::PairSpace: {
      const auto c3 = lambda3_columns(m);
      std::vector<SparseVector> cols(t.pairs.size());
#pragma omp parallel for schedule(static)
      for (long p = 0; p < long(t.pairs.size()); ++p)
        cols[p] = wedge_pair(Trivector(g, c3[t.pairs[p][0]]), Trivector(g, c3[t.pairs[p][1]])).coords();
      return SparseMatrix(int(t.pairs.size()), std::move(cols));
    }
    case Space::S2Lambda2: {
      const auto c2 = lambda2_columns(m);
      std::vector<SparseVector> cols;
      for (const auto& [e, f] : t.s2l2) cols.push_back(sym_product(Bivector(g, c2[e]), Bivector(g, c2[f])).coords());
      return SparseMatrix(int(t.s2l2.size()), std::move(cols));
    }
    case Space::D2Prime: {
      const auto& model = build_D2prime(g);
      const auto c2 = lambda2_columns(m);
      std::vector<SparseVector> cols;
      for (int c : model.columns) {
        const auto& [e, f] = t.s2l2[c];
        cols.push_back(model.reduce(sym_product(Bivector(g, c2[e]), Bivector(g, c2[f]))).coords());
      }
      return SparseMatrix(model.rank(), std::move(cols));
    }
    default: throw UsageError(std::string("no integral action on ") + space_name(space));
  }
}

// ---------------------------------------------------------------------------
// Contraction classification

const char* fine_label_name(FineLabel f) {
  switch (f) {
    case FineLabel::V0: return "V0";
    case FineLabel::V10: return "V10";
    case FineLabel::V11: return "V11";
    case FineLabel::V12: return "V12";
    case FineLabel::V2: return "V2";
    case FineLabel::V3: return "V3";
  }
  return "?";
}

ContractionType classify_pair(int genus, int p) {
  const auto& t = tables(genus);
  const auto x = t.triple(t.pairs.at(p)[0]);
  const auto y = t.triple(t.pairs.at(p)[1]);
  ContractionType out;
  int mi = -1, mj = -1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (y[j] == bar(x[i])) {
        ++out.mixed;
        mi = i;
        mj = j;
      }
  switch (out.mixed) {
    case 0:
      out.fine = FineLabel::V0;
      out.component = 0;
      break;
    case 1:
      out.self = int(x[(mi + 1) % 3] == bar(x[(mi + 2) % 3])) + int(y[(mj + 1) % 3] == bar(y[(mj + 2) % 3]));
      out.fine = out.self == 0 ? FineLabel::V10 : out.self == 1 ? FineLabel::V11 : FineLabel::V12;
      out.component = out.self + 1;
      break;
    case 2:
      out.fine = FineLabel::V2;
      out.component = 2;
      break;
    default:
      out.fine = FineLabel::V3;
      out.component = 3;
  }
  return out;
}

const std::vector<int>& pair_components(int genus) {
  return cached<std::vector<int>>(genus, [](int g) {
    const int n = int(tables(g).pairs.size());
    auto v = std::make_unique<std::vector<int>>(n);
    for (int p = 0; p < n; ++p) (*v)[p] = classify_pair(g, p).component;
    return v;
  });
}

}  // namespace gr2
