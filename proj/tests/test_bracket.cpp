#include "gr2/bracket.hpp"
#include "gr2/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace gr2;

namespace {

PairVector P(int g, const std::string& label) { return parse_pair(g, label); }

S2Vector prod(int g, const char* a, const char* b, const char* c, const char* d) {
  return sym_product(wedge2(SymVector::parse(g, a), SymVector::parse(g, b)),
                     wedge2(SymVector::parse(g, c), SymVector::parse(g, d)));
}

}  // namespace

TEST_CASE("b0 and b2 on basic pairs") {
  const int g = 3;
  const auto& m = build_D2prime(g);
  CHECK(b0(P(g, "a1a2a3|b1b2b3")) ==
        m.reduce(prod(g, "a2", "a3", "b2", "b3") + prod(g, "a3", "a1", "b3", "b1") + prod(g, "a1", "a2", "b1", "b2")));
  CHECK(b2_x4(P(g, "a1a2a3|b1b2b3")) == -1);
  CHECK(b2_x4(P(g, "a1a2a3|b2b1b3")) == 1);
  CHECK(b0(P(5, "a1a2a3|b3a4a5")) == build_D2prime(5).reduce(prod(5, "a1", "a2", "a4", "a5")));
  CHECK(b0(P(6, "a1a2a3|a4a5a6")).is_zero());
  CHECK(b2_x4(P(6, "a1a2a3|a4a5a6")) == 0);
}

TEST_CASE("B columns agree with the dense oracle expansion") {
  for (int g = 3; g <= 4; ++g) {
    oracle::Spaces sp(g);
    const auto& m = build_D2prime(g);
    const auto& B = assemble_B_matrix(g);
    CHECK(B.rows() == m.rank() + 1);
    CHECK(B.cols() == int(tables(g).pairs.size()));
    for (int p = 0; p < B.cols(); p += (g == 3 ? 1 : 7)) {
      const auto& pr = tables(g).pairs[p];
      auto x = sp.l3[pr[0]], y = sp.l3[pr[1]];
      oracle::Dense s2 = sp.b0(x, y);
      SparseVector v;
      for (int i = 0; i < int(s2.size()); ++i)
        if (s2[i]) v.push_back(i, s2[i]);
      CHECK(m.reduce(S2Vector(g, v)).coords() == b0(PairVector(g, SparseVector::unit(p))).coords());
      CHECK(B.column(p).at(m.rank()) == -sp.det3(x, y));
    }
  }
}

TEST_CASE("serial and parallel assembly agree") {
  for (int g = 3; g <= 4; ++g) CHECK(assemble_B_matrix_serial(g) == assemble_B_matrix(g));
}

TEST_CASE("rank anchors against the independent oracle") {
  oracle::Ranks o3 = oracle::ranks(3, true);
  RankReport r3 = rank_certificate(3);
  CHECK(r3.lambda3 == o3.lambda3);
  CHECK(r3.pairs == o3.pairs);
  CHECK(r3.d2prime == o3.d2prime);
  CHECK(r3.imB == o3.imB);
  CHECK(r3.K == o3.K);
  CHECK(r3.K == 84);
  CHECK(r3.imB == 106);

  oracle::Ranks o4 = oracle::ranks(4);
  RankReport r4 = rank_certificate(4);
  CHECK(r4.d2prime == o4.d2prime);
  CHECK(r4.imB == o4.imB);
  CHECK(r4.K == o4.K);
  CHECK(r4.K == 1203);
}

TEST_CASE("K is a saturated kernel and G-stable") {
  const int g = 3;
  const LatticeBasis& K = compute_K(g);
  const auto& B = assemble_B_matrix(g);
  for (const auto& r : K.rows()) CHECK(B.apply(r).empty());
  for (const auto& f : invariant_factors(K)) CHECK(f == 1);
  CHECK(integer_kernel(B, Execution::Serial) == K);
  for (const auto& x : g_generators(g)) {
    SparseMatrix a = induced_action(x, Space::PairSpace);
    for (const auto& r : K.rows()) CHECK(K.contains(a.apply(r)));
  }
}

TEST_CASE("B is G-equivariant") {
  const int g = 3;
  const auto& B = assemble_B_matrix(g);
  const int r = B.rows() - 1;
  for (const auto& x : g_generators(g)) {
    SparseMatrix ap = induced_action(x, Space::PairSpace);
    SparseMatrix ad = induced_action(x, Space::D2Prime);
    for (int p = 0; p < B.cols(); ++p) {
      PairVector e(g, SparseVector::unit(p));
      PairVector moved(g, ap.apply(e.coords()));
      CHECK(b0(moved).coords() == ad.apply(b0(e).coords()));
      CHECK(b2_x4(moved) == B.column(p).at(r));
    }
  }
}

TEST_CASE("K decomposes along the components") {
  DecompositionReport d3 = check_K_decomposition(3);
  CHECK(d3.u0_in_K);
  CHECK(d3.sum_equals_K);
  CHECK(d3.rank_KU[0] == d3.basis_count[0]);
  CHECK(d3.rank_KU[0] + d3.rank_KU[1] + d3.rank_KU[2] + d3.rank_KU[3] == 84);
  DecompositionReport d4 = check_K_decomposition(4);
  CHECK(d4.sum_equals_K);
  CHECK(d4.rank_K == 1203);
}

TEST_CASE("decomposable brackets match the basis expansion") {
  const int g = 3;
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    Triple x{random_symvector(g, rng), random_symvector(g, rng), random_symvector(g, rng)};
    Triple y{random_symvector(g, rng), random_symvector(g, rng), random_symvector(g, rng)};
    PairVector v = wedge_pair(wedge3(x[0], x[1], x[2]), wedge3(y[0], y[1], y[2]));
    CHECK(bracket_value(x, y) == bracket_value(v));
  }
}
