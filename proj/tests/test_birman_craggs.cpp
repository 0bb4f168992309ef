#include "gr2/birman_craggs.hpp"
#include "gr2/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace gr2;

namespace {

BoolPoly P(int g, const char* t) { return BoolPoly::parse(g, t); }
SymVector s(int g, const char* t) { return SymVector::parse(g, t); }

Lambda3Mod2 wedge_mod2(const Trivector& t) {
  Lambda3Mod2 out{t.genus(), BitVector(space_dim(t.genus(), Space::Lambda3))};
  for (const auto& [k, c] : t.coords())
    if (is_odd(c)) out.bits.flip(k);
  return out;
}

}  // namespace

TEST_CASE("parsing and printing") {
  CHECK(P(3, "a1*b1*a2 + a1 + 1").str() == "a1*b1*a2 + a1 + 1");
  CHECK(P(3, "a1 + b1*a1").str() == "a1*b1 + a1");
  CHECK(P(3, "a1 + a1").is_zero());
  CHECK(P(3, "0").str() == "0");
  CHECK(P(3, "a2*a2") == P(3, "a2"));
  CHECK_THROWS_AS(P(3, "a4"), ParseError);
  CHECK_THROWS_AS(P(3, "a1*b1*a2*b2"), DegreeOverflow);
  CHECK(P(3, "a1*b1*a2 + b3").part(3) == P(3, "a1*b1*a2"));
  CHECK(P(3, "a1*b1*a2 + b3").degree() == 3);
}

TEST_CASE("hbar") {
  const int g = 3;
  CHECK(hbar(s(g, "a1")) == P(g, "a1"));
  CHECK(hbar(s(g, "a1+b1")) == P(g, "a1 + b1 + 1"));
  CHECK(hbar(s(g, "a1+b2")) == P(g, "a1 + b2"));
  CHECK(hbar(s(g, "2a1+b1")) == P(g, "b1"));
  CHECK(hbar(s(g, "3a1+b1+a2+b2")) == P(g, "a1 + b1 + a2 + b2"));
  CHECK(hbar(s(g, "a1-b1")) == hbar(s(g, "a1+b1")));
  // hbar is the evaluation h ↦ q(h), so it does not depend on how h is written
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    SymVector h = random_symvector(g, rng, 3);
    QuadForm q{g, std::uint32_t(rng.below(1u << 6))};
    CHECK(evaluate(hbar(h), q) == q.value(h));
  }
}

TEST_CASE("multiplication") {
  const int g = 3;
  CHECK(P(g, "a1") * P(g, "a1") == P(g, "a1"));
  CHECK(P(g, "a1 + 1") * P(g, "a1") == P(g, "0"));
  CHECK(P(g, "a1 + b1") * P(g, "a2") == P(g, "a1*a2 + b1*a2"));
  CHECK(P(g, "a1*b1") * P(g, "a1 + 1") == P(g, "0"));
  CHECK_THROWS_AS(P(g, "a1*b1") * P(g, "a2*b2"), DegreeOverflow);
  CHECK(P(g, "a1*b1") * P(g, "a1*a2") == P(g, "a1*b1*a2"));
}

TEST_CASE("evaluation is an algebra map") {
  const int g = 3;
  Rng rng(9);
  auto linear = [&] {
    BoolPoly p(g);
    for (int k = 0; k < 2 * g; ++k)
      if (rng.below(2)) p += BoolPoly::var(g, Symbol(k));
    if (rng.below(2)) p += BoolPoly::one(g);
    return p;
  };
  for (int t = 0; t < 200; ++t) {
    BoolPoly x = linear(), y = linear(), z = linear();
    QuadForm q{g, std::uint32_t(rng.below(1u << 6))};
    CHECK(evaluate(x * y * z, q) == evaluate(x, q) * evaluate(y, q) * evaluate(z, q));
    CHECK(evaluate(x + y, q) == (evaluate(x, q) ^ evaluate(y, q)));
  }
}

TEST_CASE("beta on BSCC and BP data") {
  const int g = 3;
  CHECK(beta_bscc({{{s(g, "a1"), s(g, "b1")}}}).str() == "a1*b1");
  CHECK(beta_bscc({{{s(g, "a1"), s(g, "b1+b2")}}}) == P(g, "a1*b1 + a1*b2"));
  CHECK(beta_bscc({{{s(g, "a1"), s(g, "b1")}, {s(g, "a2"), s(g, "b2")}}}) == P(g, "a1*b1 + a2*b2"));
  CHECK(beta_bp({{{s(g, "a1"), s(g, "b1")}}, s(g, "a2")}).str() == "a1*b1*a2 + a1*b1");
  CHECK_THROWS_AS(beta_bscc({{{s(g, "a1"), s(g, "a2")}}}), InvalidSubsurfaceBasis);
  CHECK(third_differential(beta_bp({{{s(g, "a1"), s(g, "b1")}}, s(g, "a2")})) ==
        wedge_mod2(tau1_bp({{{s(g, "a1"), s(g, "b1")}}, s(g, "a2")})));
}

TEST_CASE("symplectic action") {
  const int g = 3;
  CHECK(sp_action(map_C1(g), P(g, "b1")) == P(g, "b1 + a1 + 1"));
  CHECK(sp_action(handle_swap(g, 1, 2), P(g, "a1*b1")) == P(g, "a2*b2"));
  CHECK(sp_action(map_D(g, 2), P(g, "a2*b2")) == P(g, "a2*b2 + a2*a3"));
  CHECK(sp_action(SpMatrix(g), P(g, "a1*b2*a3 + b1 + 1")) == P(g, "a1*b2*a3 + b1 + 1"));
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    SpMatrix m = random_symplectic(g, rng, 5), n = random_symplectic(g, rng, 5);
    BoolPoly p = P(g, "a1*b2*a3 + a2*b3 + b1 + 1");
    CHECK(sp_action(m * n, p) == sp_action(m, sp_action(n, p)));
  }
}

TEST_CASE("third differential is equivariant") {
  const int g = 3;
  CHECK(third_differential(P(g, "a1*b1*a2 + a3")).bits.ones() ==
        std::vector<int>{tables(g).lambda3_index(0, 1, 2)});
  Rng rng(4);
  const auto& t = tables(g);
  for (int trial = 0; trial < 50; ++trial) {
    SpMatrix m = random_symplectic(g, rng, 6);
    BoolPoly p(g);
    Trivector w(g);
    for (int I = 0; I < int(t.lambda3.size()); ++I)
      if (rng.below(3) == 0) {
        auto x = t.triple(I);
        p += BoolPoly::monomial(g, (1u << x[0].id()) | (1u << x[1].id()) | (1u << x[2].id()));
        w += wedge3(m.image(x[0]), m.image(x[1]), m.image(x[2]));
      }
    CHECK(third_differential(sp_action(m, p)) == wedge_mod2(w));
  }
}

TEST_CASE("monomial bases and dimensions") {
  CHECK(monomial_basis(3, 0) == std::vector<Monomial>{0});
  CHECK(monomial_basis(3, 3).size() == 42);
  auto b = monomial_basis(4, 2);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(degree(b[i - 1]) <= degree(b[i]));
  for (int g = 3; g <= 4; ++g)
    for (int k = 0; k <= 3; ++k) {
      CHECK(dim_B(g, k) == oracle::bool_dim(g, k));
      CHECK(dim_B(g, k, Execution::Serial) == dim_B(g, k, Execution::Parallel));
    }
}

TEST_CASE("abelianization structure") {
  for (int g = 3; g <= 5; ++g) {
    AbelianizationReport r = abelianization_structure(g);
    CHECK(r.free_rank == oracle::binom(2 * g, 3));
    CHECK(int(r.torsion.size()) == r.dim_B2);
    CHECK(r.dim_B2 == 1 + oracle::binom(2 * g, 1) + oracle::binom(2 * g, 2));
    for (const auto& f : r.torsion) CHECK(f == 2);
  }
}

TEST_CASE("quadratics generate B2 under the symplectic maps") {
  LemmaSpReport r = verify_lemma_Sp(3);
  CHECK(r.closure_dim == 22);
  CHECK(r.target_dim == 22);
  CHECK(verify_lemma_Sp(4).closure_dim == 37);
  LemmaSpReport partial = sp_closure(3, {BoolPoly::one(3)});
  CHECK(partial.closure_dim == 1);
  CHECK_FALSE(partial.unreached.empty());
}
