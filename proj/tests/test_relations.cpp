#include "gr2/errors.hpp"
#include "gr2/relations.hpp"

#include <doctest.h>

using namespace gr2;

namespace {

Symbol S(const char* t) { return Symbol::parse(t); }

bool in_kernel(const PairVector& v) {
  const auto& B = assemble_B_matrix(v.genus());
  return B.apply(v.coords()).empty();
}

}  // namespace

TEST_CASE("constructors check clauses and membership") {
  const int g = 5;
  RelationElement d = rel_D(g, S("a1"), S("a2"), S("a5"), S("a3"), S("a3"), S("a4"));
  CHECK(in_kernel(d.value));
  CHECK_FALSE(d.value.is_zero());
  CHECK(describe(Family::D, d.params) == "D(a1,a2;a5,a3;a3,a4)");
  CHECK(in_kernel(rel_D(3, S("a1"), S("b1"), S("a2"), S("b2"), S("a3"), S("b3")).value));
  CHECK_THROWS_AS(rel_D(g, S("a1"), S("a2"), S("a1"), S("a3"), S("a3"), S("a4")), ClauseViolation);

  RelationElement ihx3 = rel_IHX3(3, S("a1"), S("a2"), S("a3"));
  CHECK(ihx3.value.coords().size() == 4);
  RelationElement t = rel_T(4, S("a1"), S("a2"), S("a3"), S("a4"));
  CHECK(t.value.coords().size() == 3);
  RelationElement ihx2 = rel_IHX2(3, S("a1"), S("a2"), S("a3"), S("b1"));
  CHECK(ihx2.value.coords().size() == 2);
  CHECK_THROWS_AS(rel_IHX2(3, S("a1"), S("a2"), S("a3"), S("a1")), ClauseViolation);
  CHECK_THROWS_AS(rel_T(4, S("a1"), S("a2"), S("b2"), S("a4")), ClauseViolation);
}

TEST_CASE("D is antisymmetric in c1, c2") {
  const int g = 4;
  PairVector x = relation_value(g, Family::D, {S("a1"), S("a2"), S("a3"), S("b1"), S("a3"), S("a4")});
  PairVector y = relation_value(g, Family::D, {S("a1"), S("a2"), S("b1"), S("a3"), S("a3"), S("a4")});
  CHECK((x + y).is_zero());
}

TEST_CASE("the 26 generators") {
  CHECK(theorem_generators().size() == 26);
  int total6 = 0;
  for (int i = 0; i < 4; ++i) total6 += int(family_R(6, i).size());
  CHECK(total6 == 26);
  int total5 = 0;
  for (int i = 0; i < 4; ++i) total5 += int(family_R(5, i).size());
  CHECK(total5 == 25);
  for (int g = 3; g <= 5; ++g)
    for (int i = 0; i < 4; ++i)
      for (const auto& v : family_R(g, i)) {
        CHECK(in_kernel(v));
        for (const auto& [p, c] : v.coords()) CHECK(classify_pair(g, p).component == i);
      }
}

TEST_CASE("sweep: serial and parallel agree, zero failures") {
  SweepReport s = verify_relation_sweep(3, Execution::Serial);
  SweepReport p = verify_relation_sweep(3, Execution::Parallel);
  CHECK(s.checked == p.checked);
  CHECK(s.nonzero == p.nonzero);
  CHECK(s.checked.at(Family::D) == 720);
  SweepReport s4 = verify_relation_sweep(4);
  CHECK(s4.checked.at(Family::T) == 384);
  CHECK(s4.checked.at(Family::IHX3p) == 384);
}

TEST_CASE("Theorem K generation at g = 3, 4") {
  for (int g = 3; g <= 4; ++g) {
    GenerationCertificate c = verify_theorem_K(g);
    CHECK(c.equal);
    CHECK(c.index == "1");
    CHECK(c.hnf_digest_lhs == c.hnf_digest_rhs);
    CHECK(c.hnf_digest_rhs == compute_K(g).digest());
  }
  GenerationCertificate ser = theorem_K_certificate(3, Execution::Serial);
  CHECK(ser.hnf_digest_lhs == theorem_K_certificate(3).hnf_digest_lhs);
}

TEST_CASE("components generate K cap U_i") {
  for (int g = 3; g <= 4; ++g)
    for (int i = 0; i < 4; ++i) {
      GenerationCertificate c = verify_component(g, i);
      CHECK(c.equal);
      CHECK(c.hnf_digest_rhs == K_component(g, i).digest());
    }
}

TEST_CASE("a partial generating set is detected as such") {
  const int g = 4;
  std::vector<SparseVector> gens;
  for (const auto& v : family_R(g, 0)) gens.push_back(v.coords());
  ClosureResult cl = span_closure(int(tables(g).pairs.size()), gens, g_pair_actions(g));
  CHECK(cl.lattice == K_component(g, 0));
  CHECK_FALSE(cl.lattice == compute_K(g));
  CHECK_FALSE(lattice_index(compute_K(g), cl.lattice).has_value());
}

TEST_CASE("U0 orbit classification") {
  OrbitReport r3 = orbit_classification_U0(3);
  CHECK(r3.covered == r3.u0_size);
  CHECK(r3.u0_size == 6);
  OrbitReport r4 = orbit_classification_U0(4);
  CHECK(r4.covered == 264);
  CHECK(r4.orbits.size() == 4);
}
