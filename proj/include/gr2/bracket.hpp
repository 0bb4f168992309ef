#pragma once

#include "gr2/lattice.hpp"
#include "gr2/multilinear.hpp"
#include "gr2/parallel.hpp"

#include <array>

namespace gr2 {

using Triple = std::array<SymVector, 3>;

/// B = (B⁽⁰⁾, B⁽²⁾) with the theta part stored as 4·B⁽²⁾.
struct BracketValue {
  D2PrimeVector tree;
  Int theta_x4;
  friend bool operator==(const BracketValue&, const BracketValue&) = default;
};

/// 3x3 matrix omega(x_i, y_j) and its determinant.
Int omega_det(const Triple& x, const Triple& y);

/// Σ_{i,j ∈ Z₃} ω(x_i,y_j) (x_{i+1}∧x_{i+2})·(y_{j+1}∧y_{j+2}) before passing to D′₂.
S2Vector b0_s2(const Triple& x, const Triple& y);
BracketValue bracket_value(const Triple& x, const Triple& y);

D2PrimeVector b0(const PairVector& v);
Int b2_x4(const PairVector& v);
BracketValue bracket_value(const PairVector& v);

/// Rows: the D′₂ coordinates, then one theta row (4·B⁽²⁾). Columns: pair basis.
/// Parallel assembly is cached per genus; the serial path always recomputes.
const SparseMatrix& assemble_B_matrix(int genus);
SparseMatrix assemble_B_matrix_serial(int genus);
/// Uncached assembly with either execution path.
SparseMatrix build_B_matrix(int genus, Execution exec);

/// Saturated integral kernel of B, cached.
const LatticeBasis& compute_K(int genus);

/// Lattice spanned by the B columns, theta row doubled: im(B⁽⁰⁾, 8·B⁽²⁾).
LatticeBasis image_b0_8b2(int genus);

/// Coordinate mask of the pairs in component U_i.
std::vector<bool> component_mask(int genus, int i);
/// K ∩ U_i, cached.
const LatticeBasis& K_component(int genus, int i);

struct DecompositionReport {
  int rank_K = 0;
  std::array<int, 4> basis_count{};  // pairs in each U_i
  std::array<int, 4> rank_KU{};      // rank of K ∩ U_i
  bool u0_in_K = false;
  bool sum_equals_K = false;
};

/// Throws DecompositionFailure naming the failing piece.
DecompositionReport check_K_decomposition(int genus);

struct RankReport {
  int lambda3 = 0;
  int pairs = 0;
  int d2prime = 0;
  int K = 0;
  int imB = 0;
};

/// Throws RankMismatch.
RankReport rank_certificate(int genus);

}  // namespace gr2
