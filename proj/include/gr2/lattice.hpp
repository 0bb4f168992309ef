#pragma once

#include "gr2/gf2.hpp"
#include "gr2/parallel.hpp"
#include "gr2/sparse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gr2 {

/// A sublattice of Z^n held in canonical row Hermite normal form:
/// strictly increasing pivot columns, positive pivots, and every entry
/// sitting in another row's pivot column reduced into [0, pivot).
///
/// The form is maintained incrementally, so `insert` doubles as the
/// "HNF-augmentation" step of closure and kernel computations.
class LatticeBasis {
 public:
  explicit LatticeBasis(int ambient = 0);
  static LatticeBasis from_rows(int ambient, const std::vector<SparseVector>& rows);

  int ambient_rank() const { return n_; }
  int rank() const { return int(slots_.size()); }

  /// Adds `v` to the lattice. Returns false when `v` was already a member.
  bool insert(const SparseVector& v);

  /// Canonical representative of v modulo the lattice.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// Basis rows ordered by pivot column.
  std::vector<SparseVector> rows() const;
  std::vector<int> pivot_columns() const;
  Int pivot_product() const;

  /// Integer coefficients of v in the `rows()` basis, or nullopt when v is not a member.
  std::optional<std::vector<Int>> coordinates(const SparseVector& v) const;

  /// Canonical text form ("n=<ambient>;idx:val,...;...") and its SHA-256.
  std::string serialize() const;
  std::string digest() const;

  IntMatrix to_matrix() const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b);

 private:
  void check_ambient(const SparseVector& v) const;
  void reduce_after(SparseVector& v, int after) const;
  void add_reduced(SparseVector v);
  void fix_column(int col, int source_slot);
  void register_row(int slot);

  int n_;
  std::vector<int> slot_of_pivot_;
  std::vector<SparseVector> slots_;
  // column -> slots that may hold a non-pivot entry in that column (lazy, may hold stale ids)
  std::vector<std::vector<int>> users_;
};

/// Row Hermite normal form of the row span; zero rows dropped.
IntMatrix hnf(const IntMatrix& m);

struct SmithForm {
  /// Nonzero invariant factors d1 | d2 | ... (positive).
  std::vector<Int> factors;
  /// Unimodular U, V with U * M * V = diag(factors, 0...).
  IntMatrix left;
  IntMatrix right;
};

SmithForm snf(const IntMatrix& m);

/// Nonzero invariant factors of the matrix whose rows are the lattice basis;
/// Z^n / lattice has torsion exactly the factors > 1.
std::vector<Int> invariant_factors(const LatticeBasis& lattice);

/// Saturated integral kernel { x : M x = 0 }.
/// Parallel: splits M into connected blocks and solves each independently.
/// Serial: one HNF of [M^T | I] (reference).
LatticeBasis integer_kernel(const SparseMatrix& m, Execution exec = Execution::Parallel);

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b);

/// Index [super : sub]; nullopt when infinite. Throws MathFailure if sub is not contained in super.
std::optional<Int> lattice_index(const LatticeBasis& super, const LatticeBasis& sub);

LatticeBasis lattice_sum(const std::vector<const LatticeBasis*>& parts);

/// lattice ∩ Z^{block}, where block marks the allowed coordinates.
LatticeBasis intersect_coordinates(const LatticeBasis& lattice, const std::vector<bool>& block);

/// { sum c_i basis_i : sum c_i images_i = 0 mod 2 }.
LatticeBasis mod2_kernel(int ambient, const std::vector<SparseVector>& basis,
                         const std::vector<BitVector>& images);

struct ClosureResult {
  LatticeBasis lattice;
  int iterations = 0;
};

/// Smallest sublattice containing `gens` and stable under every endomorphism.
/// Breadth-first worklist: every vector that enlarges the lattice has its
/// images queued for the next level; the fixpoint is reached when a level
/// adds nothing.
ClosureResult span_closure(int ambient, const std::vector<SparseVector>& gens,
                           const std::vector<SparseMatrix>& endos,
                           Execution exec = Execution::Parallel);

/// Naive fixpoint: apply every endo to every basis row until stable. Test reference.
ClosureResult span_closure_reference(int ambient, const std::vector<SparseVector>& gens,
                                     const std::vector<SparseMatrix>& endos);

/// Z^n modulo a relation lattice, with canonical residues.
class QuotientLattice {
 public:
  QuotientLattice(int ambient, const std::vector<SparseVector>& relations);

  int ambient_rank() const { return relations_.ambient_rank(); }
  const LatticeBasis& relations() const { return relations_; }
  /// All nonzero invariant factors of the relation matrix.
  const std::vector<Int>& invariant_factors() const { return factors_; }
  std::vector<Int> torsion() const;
  bool torsion_free() const;
  int free_rank() const { return int(free_columns_.size()); }
  /// Ambient columns that carry the free quotient coordinates.
  const std::vector<int>& free_columns() const { return free_columns_; }
  /// Position of `col` among the free columns, or -1.
  int free_position(int col) const { return free_position_.at(col); }

  /// Canonical representative of v + relations (HNF residue).
  SparseVector reduce(const SparseVector& v) const;
  /// Free coordinates followed by residues at non-unit pivot columns.
  std::vector<Int> coordinates(const SparseVector& v) const;

 private:
  LatticeBasis relations_;
  std::vector<Int> factors_;
  std::vector<int> free_columns_;
  std::vector<int> free_position_;
  std::vector<int> torsion_columns_;
};

}  // namespace gr2
