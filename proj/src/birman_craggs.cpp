#include "gr2/birman_craggs.hpp"

#include "gr2/errors.hpp"
#include "gr2/gf2.hpp"
#include "gr2/lattice.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <sstream>

namespace gr2 {

int degree(Monomial m) { return std::popcount(m); }

BoolPoly BoolPoly::one(int genus) { return monomial(genus, 0); }

BoolPoly BoolPoly::var(int genus, Symbol s) { return monomial(genus, Monomial(1) << s.id()); }

BoolPoly BoolPoly::monomial(int genus, Monomial m) {
  if (gr2::degree(m) > 3) throw DegreeOverflow("monomial of degree " + std::to_string(gr2::degree(m)));
  BoolPoly p(genus);
  p.terms_.insert(m);
  return p;
}

void BoolPoly::toggle(Monomial m) {
  auto [it, fresh] = terms_.insert(m);
  if (!fresh) terms_.erase(it);
}

BoolPoly& BoolPoly::operator+=(const BoolPoly& o) {
  if (genus_ == 0) genus_ = o.genus_;
  if (o.genus_ != 0 && o.genus_ != genus_) throw AmbientMismatch("Boolean polynomials of different genus");
  for (Monomial m : o.terms_) toggle(m);
  return *this;
}

int BoolPoly::degree() const {
  int d = -1;
  for (Monomial m : terms_) d = std::max(d, gr2::degree(m));
  return d;
}

BoolPoly BoolPoly::part(int d) const {
  BoolPoly out(genus_);
  for (Monomial m : terms_)
    if (gr2::degree(m) == d) out.terms_.insert(m);
  return out;
}

namespace {

std::vector<int> bits_of(Monomial m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string monomial_str(Monomial m) {
  if (m == 0) return "1";
  std::string s;
  for (int b : bits_of(m)) {
    if (!s.empty()) s += "*";
    s += Symbol(b).str();
  }
  return s;
}

// Degree descending, then the symbol lists lexicographically.
bool display_less(Monomial x, Monomial y) {
  if (degree(x) != degree(y)) return degree(x) > degree(y);
  return bits_of(x) < bits_of(y);
}

}  // namespace

std::string BoolPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<Monomial> ms(terms_.begin(), terms_.end());
  std::sort(ms.begin(), ms.end(), display_less);
  std::string s;
  for (Monomial m : ms) {
    if (!s.empty()) s += " + ";
    s += monomial_str(m);
  }
  return s;
}

BoolPoly BoolPoly::parse(int genus, const std::string& text) {
  require_genus(genus);
  BoolPoly p(genus);
  std::string clean;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) clean += c;
  if (clean.empty()) throw ParseError("empty polynomial");
  if (clean == "0") return p;
  std::stringstream terms(clean);
  std::string term;
  while (std::getline(terms, term, '+')) {
    if (term.empty()) throw ParseError("empty term in '" + text + "'");
    Monomial m = 0;
    std::stringstream factors(term);
    std::string f;
    while (std::getline(factors, f, '*')) {
      if (f == "1") continue;
      Symbol s = Symbol::parse(f);
      if (s.index() > genus) throw ParseError("symbol " + f + " exceeds genus " + std::to_string(genus));
      m |= Monomial(1) << s.id();
    }
    if (gr2::degree(m) > 3) throw DegreeOverflow("term " + term + " has degree " + std::to_string(gr2::degree(m)));
    p += monomial(genus, m);
  }
  return p;
}

BoolPoly poly_mul(const BoolPoly& p, const BoolPoly& q) {
  BoolPoly out(p.genus() ? p.genus() : q.genus());
  std::map<Monomial, int> acc;
  for (Monomial x : p.terms())
    for (Monomial y : q.terms()) acc[x | y] ^= 1;
  for (auto [m, c] : acc)
    if (c) {
      if (degree(m) > 3)
        throw DegreeOverflow("(" + p.str() + ") * (" + q.str() + ") has a term of degree " +
                             std::to_string(degree(m)));
      out += BoolPoly::monomial(out.genus(), m);
    }
  return out;
}

BoolPoly operator*(const BoolPoly& p, const BoolPoly& q) { return poly_mul(p, q); }

int QuadForm::value(const SymVector& h) const {
  int v = 0;
  for (int s = 0; s < h.dim(); ++s)
    if (is_odd(h[s])) v ^= int((values >> s) & 1u);
  for (int s = 0; s < h.dim(); ++s)
    if (is_odd(h[s]) && is_odd(h[s ^ 1]) && s < (s ^ 1)) v ^= 1;
  return v;
}

BoolPoly hbar(const SymVector& h) {
  const int g = h.genus();
  BoolPoly p(g);
  for (int s = 0; s < h.dim(); ++s)
    if (is_odd(h[s])) p += BoolPoly::var(g, Symbol(s));
  // ω(s,t) is odd only for t = s̄
  int c = 0;
  for (int i = 1; i <= g; ++i)
    if (is_odd(h[Symbol::a(i).id()]) && is_odd(h[Symbol::b(i).id()])) c ^= 1;
  if (c) p += BoolPoly::one(g);
  return p;
}

int evaluate(const BoolPoly& p, const QuadForm& q) {
  int v = 0;
  for (Monomial m : p.terms())
    if ((m & ~q.values) == 0) v ^= 1;
  return v;
}

BoolPoly beta_bp(const BPData& d) {
  check_subsurface(d.basis, &d.e);
  const int g = d.e.genus();
  BoolPoly out(g);
  BoolPoly tail = hbar(d.e) + BoolPoly::one(g);
  for (const auto& [u, v] : d.basis) out += hbar(u) * hbar(v) * tail;
  return out;
}

BoolPoly beta_bscc(const BSCCData& d) {
  check_subsurface(d.basis);
  const int g = d.basis[0].first.genus();
  BoolPoly out(g);
  for (const auto& [u, v] : d.basis) out += hbar(u) * hbar(v);
  return out;
}

BoolPoly sp_action(const SpMatrix& m, const BoolPoly& p) {
  const int g = m.genus();
  std::vector<BoolPoly> images;
  for (int s = 0; s < 2 * g; ++s) images.push_back(hbar(m.image(Symbol(s))));
  BoolPoly out(g);
  for (Monomial mono : p.terms()) {
    BoolPoly term = BoolPoly::one(g);
    for (int b : bits_of(mono)) term = term * images[b];
    out += term;
  }
  return out;
}

Lambda3Mod2 third_differential(const BoolPoly& p) {
  const int g = p.genus();
  const auto& t = tables(g);
  Lambda3Mod2 out{g, BitVector(int(t.lambda3.size()))};
  for (Monomial m : p.terms())
    if (degree(m) == 3) {
      auto b = bits_of(m);
      out.bits.flip(t.lambda3_index(b[0], b[1], b[2]));
    }
  return out;
}

std::vector<Monomial> monomial_basis(int genus, int k) {
  const int n = 2 * genus;
  std::vector<Monomial> out;
  for (int d = 0; d <= k; ++d) {
    std::vector<Monomial> level;
    for (Monomial m = 0; m < (Monomial(1) << n); ++m)
      if (degree(m) == d) level.push_back(m);
    std::sort(level.begin(), level.end(), [](Monomial x, Monomial y) { return bits_of(x) < bits_of(y); });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

int dim_B(int genus, int k, Execution exec) {
  require_genus(genus);
  if (k < 0 || k > 3) throw UsageError("degree bound must be 0..3");
  const int n = 2 * genus;
  const long forms = 1L << n;
  const auto basis = monomial_basis(genus, k);
  const int nb = int(basis.size());
  // Column per form; transposed it is the evaluation matrix, same rank.
  std::vector<BitVector> cols(forms, BitVector(nb));
  auto fill = [&](long q) {
    for (int i = 0; i < nb; ++i)
      if ((basis[i] & ~Monomial(q)) == 0) cols[q].set(i);
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long q = 0; q < forms; ++q) fill(q);
  } else {
    for (long q = 0; q < forms; ++q) fill(q);
  }
  return gf2_rank(cols, nb);
}

AbelianizationReport abelianization_structure(int genus) {
  require_genus(genus);
  const auto& t = tables(genus);
  const int T = int(t.lambda3.size());
  const auto basis = monomial_basis(genus, 3);
  const int D = int(basis.size());
  // Generators (2e_t, 0) for t < T and (lift δm_k, m_k); relations 2·x_k = Σ_{t ∈ δm_k} y_t.
  std::vector<SparseVector> rels;
  for (int k = 0; k < D; ++k) {
    SparseVector r;
    if (degree(basis[k]) == 3) {
      auto b = bits_of(basis[k]);
      r.push_back(t.lambda3_index(b[0], b[1], b[2]), Int(-1));
    }
    r.push_back(T + k, Int(2));
    rels.push_back(std::move(r));
  }
  QuotientLattice q(T + D, rels);
  AbelianizationReport rep;
  rep.free_rank = q.free_rank();
  rep.torsion = q.torsion();
  rep.dim_B3 = D;
  rep.dim_B2 = int(monomial_basis(genus, 2).size());
  return rep;
}

namespace {

std::vector<SpMatrix> lemma_Sp_maps(int g) {
  std::vector<SpMatrix> maps{map_C1(g)};
  for (int i = 1; i < g; ++i) maps.push_back(map_D(g, i));
  for (int i = 1; i <= g; ++i)
    if (i != 2) maps.push_back(quarter_turn(g, i));
  for (int i = 3; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j) maps.push_back(handle_swap(g, i, j));
  return maps;
}

}  // namespace

LemmaSpReport sp_closure(int genus, const std::vector<BoolPoly>& gens) {
  require_genus(genus);
  const auto basis = monomial_basis(genus, 2);
  std::map<Monomial, int> position;
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis[i]] = int(i);
  auto encode = [&](const BoolPoly& p) {
    BitVector v(int(basis.size()));
    for (Monomial m : p.terms()) {
      auto it = position.find(m);
      if (it == position.end()) throw DegreeOverflow("closure left B_{<=2}: " + p.str());
      v.flip(it->second);
    }
    return v;
  };
  const auto maps = lemma_Sp_maps(genus);
  Gf2Echelon ech(int(basis.size()));
  std::vector<BoolPoly> level;
  for (const auto& p : gens)
    if (ech.insert(encode(p))) level.push_back(p);
  LemmaSpReport rep;
  while (!level.empty()) {
    ++rep.rounds;
    std::vector<BoolPoly> next;
    for (const auto& p : level)
      for (const auto& m : maps) {
        BoolPoly img = sp_action(m, p);
        if (ech.insert(encode(img))) next.push_back(std::move(img));
      }
    level = std::move(next);
  }
  rep.closure_dim = ech.rank();
  rep.target_dim = int(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    BitVector v(int(basis.size()));
    v.set(int(i));
    if (!ech.contains(v)) {
      rep.unreached = monomial_str(basis[i]);
      break;
    }
  }
  return rep;
}

LemmaSpReport verify_lemma_Sp(int genus) {
  auto q = [&](Symbol s, Symbol t) { return BoolPoly::var(genus, s) * BoolPoly::var(genus, t); };
  using S = Symbol;
  std::vector<BoolPoly> gens{q(S::a(1), S::b(1)), q(S::a(2), S::b(2)), q(S::a(3), S::b(3)), q(S::a(1), S::b(2)),
                             q(S::a(3), S::b(2))};
  LemmaSpReport rep = sp_closure(genus, gens);
  const int dim = dim_B(genus, 2);
  if (rep.target_dim != dim)
    throw RankMismatch("monomial count " + std::to_string(rep.target_dim) + " differs from evaluation rank " +
                       std::to_string(dim));
  if (rep.closure_dim != dim)
    throw GenerationFailure("closure has dimension " + std::to_string(rep.closure_dim) + " < " +
                            std::to_string(dim) + "; " + rep.unreached + " is not reached");
  return rep;
}

}  // namespace gr2
