#include "gr2/errors.hpp"
#include "gr2/gf2.hpp"
#include "gr2/lattice.hpp"
#include "gr2/symplectic.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace gr2;

namespace {

SparseVector sv(std::initializer_list<long long> dense) {
  std::vector<Int> d(dense.begin(), dense.end());
  return SparseVector::from_dense(d);
}

SparseMatrix random_matrix(int rows, int cols, std::uint64_t seed, int density, int bound) {
  Rng rng(seed);
  std::vector<SparseVector> c(cols);
  for (int j = 0; j < cols; ++j) {
    std::vector<Entry> terms;
    for (int i = 0; i < rows; ++i)
      if (int(rng.below(100)) < density) terms.push_back({i, Int(rng.between(-bound, bound))});
    c[j] = SparseVector::from_terms(terms);
  }
  return SparseMatrix(rows, std::move(c));
}

oracle::Dense dense_of(const SparseVector& v, int n) {
  oracle::Dense d(n, 0);
  for (const auto& [i, c] : v) d[i] = static_cast<long long>(c);
  return d;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_floor(-7, 4) == 1);
  auto [g, s, t] = xgcd(12, -18);
  CHECK(g == 6);
  CHECK(s * 12 + t * -18 == 6);
  CHECK(is_odd(Int(-3)));
  CHECK_FALSE(is_odd(Int(0)));
}

TEST_CASE("sparse vector normalizes terms") {
  auto v = SparseVector::from_terms({{3, 2}, {1, 5}, {3, -2}, {0, 0}});
  REQUIRE(v.size() == 1);
  CHECK(v.lead_index() == 1);
  CHECK(v.at(3) == 0);
  SparseVector w = v;
  w.axpy(-1, v);
  CHECK(w.empty());
}

TEST_CASE("lattice membership, index and canonical form") {
  LatticeBasis a(3);
  a.insert(sv({2, 0, 0}));
  a.insert(sv({1, 3, 0}));
  CHECK(a.rank() == 2);
  CHECK(a.contains(sv({3, 3, 0})));
  CHECK_FALSE(a.contains(sv({1, 0, 0})));
  CHECK(a.pivot_product() == 6);

  // same lattice, different generators
  LatticeBasis b(3);
  b.insert(sv({1, 3, 0}));
  b.insert(sv({-1, 3, 0}));
  b.insert(sv({5, 3, 0}));
  CHECK(a == b);
  CHECK(a.digest() == b.digest());

  LatticeBasis full = LatticeBasis::from_rows(3, {sv({1, 0, 0}), sv({0, 1, 0})});
  auto idx = lattice_index(full, a);
  REQUIRE(idx.has_value());
  CHECK(*idx == 6);
  CHECK_THROWS_AS(lattice_index(a, full), MathFailure);

  auto coords = a.coordinates(sv({3, 3, 0}));
  REQUIRE(coords.has_value());
}

TEST_CASE("snf of a small matrix") {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm s = snf(m);
  REQUIRE(s.factors.size() == 3);
  CHECK(s.factors[0] == 2);
  CHECK(s.factors[1] == 6);
  CHECK(s.factors[2] == 12);
  IntMatrix d = s.left * m * s.right;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(d(i, j) == (i == j ? s.factors[i] : Int(0)));
}

TEST_CASE("integer kernel: parallel and serial agree and match the dense rank") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    SparseMatrix m = random_matrix(12, 30, seed, 20, 3);
    LatticeBasis kp = integer_kernel(m, Execution::Parallel);
    LatticeBasis ks = integer_kernel(m, Execution::Serial);
    CHECK(kp == ks);
    std::vector<oracle::Dense> cols;
    for (const auto& c : m.columns()) cols.push_back(dense_of(c, m.rows()));
    CHECK(kp.rank() == 30 - oracle::rank_bareiss(cols));
    for (const auto& r : kp.rows()) CHECK(m.apply(r).empty());
    // saturated
    for (const auto& f : invariant_factors(kp)) CHECK(f == 1);
  }
}

TEST_CASE("span closure matches the naive fixpoint") {
  SparseMatrix shift(4, {sv({0, 1, 0, 0}), sv({0, 0, 1, 0}), sv({0, 0, 0, 1}), sv({2, 0, 0, 0})});
  auto fast = span_closure(4, {sv({1, 0, 0, 0})}, {shift});
  auto slow = span_closure_reference(4, {sv({1, 0, 0, 0})}, {shift});
  CHECK(fast.lattice == slow.lattice);
  CHECK(fast.lattice.rank() == 4);
  CHECK(fast.lattice.pivot_product() == 1);
}

TEST_CASE("intersection with coordinate blocks and sums") {
  LatticeBasis l = LatticeBasis::from_rows(3, {sv({1, 1, 0}), sv({0, 2, 1})});
  LatticeBasis first = intersect_coordinates(l, {true, true, false});
  CHECK(first.rank() == 1);
  CHECK(first.contains(sv({1, 1, 0})));
  LatticeBasis s = lattice_sum({&first, &l});
  CHECK(s == l);
}

TEST_CASE("mod 2 kernel") {
  std::vector<SparseVector> basis{SparseVector::unit(0), SparseVector::unit(1)};
  BitVector x(1), y(1);
  x.set(0);
  y.set(0);
  LatticeBasis k = mod2_kernel(2, basis, {x, y});
  CHECK(k.contains(sv({1, 1})));
  CHECK(k.contains(sv({2, 0})));
  CHECK_FALSE(k.contains(sv({1, 0})));
}

TEST_CASE("quotient lattice torsion and reduction") {
  QuotientLattice q(3, {sv({2, 0, 0}), sv({0, 1, 1})});
  CHECK(q.free_rank() == 1);
  REQUIRE(q.torsion().size() == 1);
  CHECK(q.torsion()[0] == 2);
  CHECK(q.reduce(sv({3, 0, 0})) == q.reduce(sv({1, 0, 0})));
}

TEST_CASE("gf2 echelon") {
  BitVector a(5), b(5), c(5);
  a.set(0);
  a.set(2);
  b.set(2);
  c.set(0);
  Gf2Echelon e(5);
  CHECK(e.insert(a));
  CHECK(e.insert(b));
  CHECK_FALSE(e.insert(c));
  CHECK(e.rank() == 2);
  CHECK(gf2_rank({a, b, c}, 5) == 2);
}
