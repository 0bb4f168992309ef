#include "gr2/bracket.hpp"

#include "gr2/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace gr2 {

Int omega_det(const Triple& x, const Triple& y) {
  Int w[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i][j] = omega(x[i], y[j]);
  return w[0][0] * (w[1][1] * w[2][2] - w[1][2] * w[2][1]) - w[0][1] * (w[1][0] * w[2][2] - w[1][2] * w[2][0]) +
         w[0][2] * (w[1][0] * w[2][1] - w[1][1] * w[2][0]);
}

S2Vector b0_s2(const Triple& x, const Triple& y) {
  S2Vector out(x[0].genus());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Int w = omega(x[i], y[j]);
      if (w == 0) continue;
      out.axpy(w, sym_product(wedge2(x[(i + 1) % 3], x[(i + 2) % 3]), wedge2(y[(j + 1) % 3], y[(j + 2) % 3])));
    }
  return out;
}

BracketValue bracket_value(const Triple& x, const Triple& y) {
  return {build_D2prime(x[0].genus()).reduce(b0_s2(x, y)), -omega_det(x, y)};
}

namespace {

Triple basis_triple(int genus, int I) {
  const auto s = tables(genus).triple(I);
  return {SymVector(genus, s[0]), SymVector(genus, s[1]), SymVector(genus, s[2])};
}

SparseVector b_column(int genus, int p) {
  const auto& t = tables(genus);
  const int r = build_D2prime(genus).rank();
  BracketValue v = bracket_value(basis_triple(genus, t.pairs[p][0]), basis_triple(genus, t.pairs[p][1]));
  SparseVector col = v.tree.coords();
  if (v.theta_x4 != 0) col.push_back(r, v.theta_x4);
  return col;
}

template <class T, class Make>
const T& cached(int genus, Make make) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<T>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[genus];
  if (!slot) slot = std::make_unique<T>(make(genus));
  return *slot;
}

}  // namespace

SparseMatrix build_B_matrix(int genus, Execution exec) {
  require_genus(genus);
  const int n = int(tables(genus).pairs.size());
  const int r = build_D2prime(genus).rank();
  std::vector<SparseVector> cols(n);
  if (exec == Execution::Serial) {
    for (int p = 0; p < n; ++p) cols[p] = b_column(genus, p);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (int p = 0; p < n; ++p) cols[p] = b_column(genus, p);
  }
  return SparseMatrix(r + 1, std::move(cols));
}

SparseMatrix assemble_B_matrix_serial(int genus) { return build_B_matrix(genus, Execution::Serial); }

const SparseMatrix& assemble_B_matrix(int genus) {
  require_genus(genus);
  return cached<SparseMatrix>(genus, [](int g) { return build_B_matrix(g, Execution::Parallel); });
}

D2PrimeVector b0(const PairVector& v) {
  const auto& B = assemble_B_matrix(v.genus());
  const int r = B.rows() - 1;
  SparseVector image = B.apply(v.coords());
  SparseVector tree;
  for (const auto& [i, c] : image)
    if (i < r) tree.push_back(i, c);
  return D2PrimeVector(v.genus(), std::move(tree));
}

Int b2_x4(const PairVector& v) {
  const auto& B = assemble_B_matrix(v.genus());
  Int s = 0;
  for (const auto& [p, c] : v.coords()) s += c * B.column(p).at(B.rows() - 1);
  return s;
}

BracketValue bracket_value(const PairVector& v) { return {b0(v), b2_x4(v)}; }

const LatticeBasis& compute_K(int genus) {
  require_genus(genus);
  return cached<LatticeBasis>(genus, [](int g) { return integer_kernel(assemble_B_matrix(g)); });
}

LatticeBasis image_b0_8b2(int genus) {
  const auto& B = assemble_B_matrix(genus);
  const int r = B.rows() - 1;
  LatticeBasis out(B.rows());
  for (const auto& col : B.columns()) {
    SparseVector v = col;
    if (!v.empty() && v.max_index() == r) {
      SparseVector w;
      for (const auto& [i, c] : v) w.push_back(i, i == r ? Int(2 * c) : c);
      v = std::move(w);
    }
    out.insert(v);
  }
  return out;
}

std::vector<bool> component_mask(int genus, int i) {
  const auto& comp = pair_components(genus);
  std::vector<bool> mask(comp.size());
  for (std::size_t p = 0; p < comp.size(); ++p) mask[p] = comp[p] == i;
  return mask;
}

const LatticeBasis& K_component(int genus, int i) {
  if (i < 0 || i > 3) throw UsageError("component index must be 0..3");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<LatticeBasis>> cache;
  const LatticeBasis& K = compute_K(genus);
  std::lock_guard lock(mu);
  auto& slot = cache[{genus, i}];
  if (!slot) slot = std::make_unique<LatticeBasis>(intersect_coordinates(K, component_mask(genus, i)));
  return *slot;
}

DecompositionReport check_K_decomposition(int genus) {
  const LatticeBasis& K = compute_K(genus);
  DecompositionReport rep;
  rep.rank_K = K.rank();
  const auto& comp = pair_components(genus);
  for (int c : comp) ++rep.basis_count[c];

  rep.u0_in_K = true;
  for (std::size_t p = 0; p < comp.size(); ++p)
    if (comp[p] == 0 && !K.contains(SparseVector::unit(int(p)))) {
      rep.u0_in_K = false;
      throw DecompositionFailure("U0 basis element " + pair_label(genus, int(p)) + " is not in K");
    }

  std::vector<const LatticeBasis*> parts;
  int total = 0;
  for (int i = 0; i < 4; ++i) {
    parts.push_back(&K_component(genus, i));
    rep.rank_KU[i] = parts.back()->rank();
    total += rep.rank_KU[i];
  }
  if (rep.rank_KU[0] != rep.basis_count[0])
    throw DecompositionFailure("rank of K∩U0 is " + std::to_string(rep.rank_KU[0]) + ", expected " +
                               std::to_string(rep.basis_count[0]));
  if (total != rep.rank_K)
    throw DecompositionFailure("ranks of K∩U_i sum to " + std::to_string(total) + ", rank K is " +
                               std::to_string(rep.rank_K));
  rep.sum_equals_K = lattice_sum(parts) == K;
  if (!rep.sum_equals_K) throw DecompositionFailure("sum of K∩U_i is a proper sublattice of K");
  return rep;
}

RankReport rank_certificate(int genus) {
  RankReport r;
  const auto& t = tables(genus);
  r.lambda3 = int(t.lambda3.size());
  r.pairs = int(t.pairs.size());
  r.d2prime = build_D2prime(genus).rank();
  r.K = compute_K(genus).rank();
  r.imB = image_b0_8b2(genus).rank();
  if (r.imB != r.d2prime + 1)
    throw RankMismatch("rank im B = " + std::to_string(r.imB) + " but rank D2prime + 1 = " +
                       std::to_string(r.d2prime + 1));
  if (r.pairs != r.K + r.imB)
    throw RankMismatch("rank K + rank im B = " + std::to_string(r.K + r.imB) + " differs from " +
                       std::to_string(r.pairs));
  return r;
}

}  // namespace gr2
