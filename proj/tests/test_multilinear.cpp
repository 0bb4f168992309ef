#include "gr2/errors.hpp"
#include "gr2/multilinear.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace gr2;

namespace {

SymVector s(int g, const char* text) { return SymVector::parse(g, text); }

int pair_index(int g, const std::string& label) { return parse_pair(g, label).coords().lead_index(); }

}  // namespace

TEST_CASE("wedge3 sorts with signs") {
  const int g = 3;
  Trivector t = wedge3(s(g, "a1"), s(g, "a2"), s(g, "a3"));
  REQUIRE(t.coords().size() == 1);
  CHECK(t.coords().lead_value() == 1);
  CHECK(wedge3(s(g, "a2"), s(g, "a1"), s(g, "a3")) == -t);
  CHECK(wedge3(s(g, "a1"), s(g, "a1"), s(g, "a3")).is_zero());
  CHECK(format(t) == "a1^a2^a3");
  // multilinear: (a1+b2)∧a2∧a3 = a1∧a2∧a3 + b2∧a2∧a3
  Trivector u = wedge3(s(g, "a1+b2"), s(g, "a2"), s(g, "a3"));
  CHECK(u == t + wedge3(s(g, "b2"), s(g, "a2"), s(g, "a3")));
}

TEST_CASE("wedge_pair is alternating") {
  const int g = 3;
  Trivector t = wedge3(s(g, "a1"), s(g, "b1"), s(g, "a2"));
  Trivector u = wedge3(s(g, "b2"), s(g, "a3"), s(g, "b3"));
  CHECK(wedge_pair(t, t).is_zero());
  CHECK((wedge_pair(t, u) + wedge_pair(u, t)).is_zero());
  CHECK(format(wedge_pair(t, u)) == "<a1b1a2|b2a3b3>");
}

TEST_CASE("pair labels round trip") {
  const int g = 4;
  const int n = int(tables(g).pairs.size());
  for (int p = 0; p < n; p += 37) {
    PairVector v = parse_pair(g, pair_label(g, p));
    REQUIRE(v.coords().size() == 1);
    CHECK(v.coords().lead_index() == p);
    CHECK(v.coords().lead_value() == 1);
  }
  CHECK(parse_pair(g, "a2a1a3|b3a4b4").coords().lead_value() == -1);
  CHECK(parse_pair(g, "a1a1a3|b3a4b4").is_zero());
}

TEST_CASE("embed_lambda4 is alternating") {
  const int g = 3;
  SymVector h1 = s(g, "a1"), h2 = s(g, "b1+a3"), h3 = s(g, "a2"), h4 = s(g, "b2-b3");
  S2Vector x = embed_lambda4(h1, h2, h3, h4);
  CHECK(embed_lambda4(h2, h1, h3, h4) == -x);
  CHECK(embed_lambda4(h1, h2, h4, h3) == -x);
  CHECK(embed_lambda4(h1, h3, h2, h4) == -x);
  CHECK(embed_lambda4(h1, h1, h3, h4).is_zero());
  S2Vector basic = embed_lambda4(s(g, "a1"), s(g, "a2"), s(g, "a3"), s(g, "b3"));
  CHECK(basic.coords().size() == 3);
}

TEST_CASE("D2' ranks match the dense oracle") {
  for (int g = 3; g <= 4; ++g) {
    oracle::Spaces sp(g);
    const auto& m = build_D2prime(g);
    const int rel = g == 3 ? oracle::rank_bareiss(sp.lambda4_relations()) : oracle::rank_q(sp.lambda4_relations());
    CHECK(m.quotient.ambient_rank() == sp.s2_dim);
    CHECK(m.rank() == sp.s2_dim - rel);
    for (const auto& f : m.quotient.invariant_factors()) CHECK(f == 1);
  }
  CHECK(build_D2prime(3).quotient.ambient_rank() == 120);
  CHECK(build_D2prime(3).rank() == 105);
  CHECK(build_D2prime(4).rank() == 336);
  CHECK(build_D2prime(3).reduce(embed_lambda4(s(3, "a1"), s(3, "b1"), s(3, "a2"), s(3, "b2"))).is_zero());
}

TEST_CASE("D2' reduce and lift are inverse on classes") {
  const int g = 3;
  const auto& m = build_D2prime(g);
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    SymVector u = random_symvector(g, rng), v = random_symvector(g, rng), w = random_symvector(g, rng),
              z = random_symvector(g, rng);
    S2Vector x = sym_product(wedge2(u, v), wedge2(w, z));
    D2PrimeVector r = m.reduce(x);
    CHECK(m.reduce(m.lift(r)) == r);
    CHECK(m.reduce(x + embed_lambda4(u, v, w, z)) == r);
  }
}

TEST_CASE("half squares and D2") {
  const int g = 3;
  LatticeBasis d2 = build_D2(g);
  auto half_square = [&](const SymVector& u, const SymVector& v) {
    Bivector w = wedge2(u, v);
    return doubled_from_s2(sym_product(w, w));
  };
  D2Vector h = half_square(s(g, "a1"), s(g, "b1"));
  CHECK(d2.contains(h.coords()));
  // not in the image of D2' (doubled coordinates would all be even)
  bool all_even = true;
  for (const auto& [k, c] : h.coords()) all_even = all_even && !is_odd(c);
  CHECK_FALSE(all_even);
  CHECK(d2.contains(half_square(s(g, "a1+a2"), s(g, "b1")).coords()));

  Rng rng(3);
  for (int t = 0; t < 100; ++t) CHECK(d2.contains(half_square(random_symvector(g, rng), random_symvector(g, rng)).coords()));

  // index [D2 : D2'] = 2^(number of half squares of basis pairs)
  LatticeBasis d2p(build_D2prime(g).rank());
  for (int k = 0; k < build_D2prime(g).rank(); ++k) d2p.insert(SparseVector::unit(k, 2));
  auto idx = lattice_index(d2, d2p);
  REQUIRE(idx.has_value());
  CHECK(*idx == Int(1) << oracle::binom(2 * g, 2));
}

TEST_CASE("mod 2 targets") {
  Mod2Target t = mod2_target(3, Space::S2HMod2);
  CHECK(t.dim == 21);
  CHECK(t.kernel.size() == 20);
  const auto& tab = tables(3);
  CHECK(t.functional.test(tab.s2h_index(Symbol::a(1).id(), Symbol::b(1).id())));
  CHECK_FALSE(t.functional.test(tab.s2h_index(Symbol::a(1).id(), Symbol::a(2).id())));
  Mod2Target l = mod2_target(3, Space::Lambda2HMod2);
  CHECK(l.dim == 15);
  CHECK(l.kernel.size() == 14);
}

TEST_CASE("induced actions are functorial") {
  const int g = 3;
  SpMatrix e = quarter_turn(g, 1), f = handle_swap(g, 1, 2), m = random_symplectic(g, 4, 6);
  for (Space sp : {Space::Lambda2, Space::Lambda3, Space::PairSpace, Space::S2Lambda2, Space::D2Prime}) {
    CHECK(induced_action(SpMatrix(g), sp) == SparseMatrix::identity(space_dim(g, sp)));
    CHECK(induced_action(e * m, sp) == induced_action(e, sp).compose(induced_action(m, sp)));
    CHECK(induced_action(f * e, sp) == induced_action(f, sp).compose(induced_action(e, sp)));
    SparseMatrix e1 = induced_action(e, sp);
    CHECK(e1.compose(e1).compose(e1).compose(e1) == SparseMatrix::identity(space_dim(g, sp)));
  }
  SparseMatrix l3 = induced_action(e, Space::Lambda3);
  const int I = tables(g).lambda3_index(Symbol::a(1).id(), Symbol::a(2).id(), Symbol::a(3).id());
  CHECK(Trivector(g, l3.column(I)) == -wedge3(s(g, "b1"), s(g, "a2"), s(g, "a3")));
}

TEST_CASE("S2 action preserves the embedded Lambda4") {
  const int g = 3;
  const auto& m = build_D2prime(g);
  std::vector<SpMatrix> gens = g_generators(g);
  gens.push_back(map_C1(g));
  gens.push_back(map_D(g, 1));
  for (const auto& x : gens) {
    SparseMatrix a = induced_action(x, Space::S2Lambda2);
    for (const auto& q : tables(g).lambda4) {
      S2Vector r = embed_lambda4(SymVector(g, Symbol(q[0])), SymVector(g, Symbol(q[1])), SymVector(g, Symbol(q[2])),
                                 SymVector(g, Symbol(q[3])));
      CHECK(m.reduce(S2Vector(g, a.apply(r.coords()))).is_zero());
    }
  }
}

TEST_CASE("contraction classification") {
  auto cls = [](int g, const char* label) { return classify_pair(g, pair_index(g, label)); };
  ContractionType t0 = cls(6, "a1a2a3|a4a5a6");
  CHECK(t0.mixed == 0);
  CHECK(t0.component == 0);
  ContractionType t1 = cls(5, "a1a2a3|b3a4a5");
  CHECK(t1.mixed == 1);
  CHECK(t1.self == 0);
  CHECK(t1.component == 1);
  ContractionType t3 = cls(3, "a1b1a2|b2a3b3");
  CHECK(t3.mixed == 1);
  CHECK(t3.self == 2);
  CHECK(t3.fine == FineLabel::V12);
  CHECK(t3.component == 3);
  CHECK(cls(3, "a1a2a3|b1b2b3").fine == FineLabel::V3);
  CHECK(cls(3, "a1a2a3|b1b2a3").fine == FineLabel::V2);
  CHECK(cls(3, "a1a2b2|b1a3b3").fine == FineLabel::V12);
  CHECK(cls(3, "a1a2a3|b1a2b3").component == 2);
}

TEST_CASE("fine labels partition the pair basis and are G-invariant") {
  for (int g = 3; g <= 4; ++g) {
    const int n = int(tables(g).pairs.size());
    std::array<int, 4> counts{};
    for (int p = 0; p < n; ++p) ++counts[classify_pair(g, p).component];
    CHECK(counts[0] + counts[1] + counts[2] + counts[3] == n);
    for (const auto& x : g_generators(g)) {
      SparseMatrix a = induced_action(x, Space::PairSpace);
      for (int p = 0; p < n; ++p) {
        const auto& col = a.column(p);
        REQUIRE(col.size() == 1);
        CHECK(abs(col.lead_value()) == 1);
        CHECK(classify_pair(g, col.lead_index()) == classify_pair(g, p));
      }
    }
  }
  CHECK(int(tables(3).pairs.size()) == 190);
}
