#pragma once

#include "gr2/gf2.hpp"
#include "gr2/lattice.hpp"
#include "gr2/sparse.hpp"
#include "gr2/symplectic.hpp"

#include <array>
#include <string>
#include <vector>

namespace gr2 {

enum class Space {
  Lambda2,       // Λ²H
  Lambda3,       // Λ³H
  PairSpace,     // Λ²(Λ³H)
  S2Lambda2,     // S²(Λ²H)
  D2Prime,       // S²(Λ²H)/Λ⁴H, coordinates on the non-pivot columns
  D2Doubled,     // D₂(H) stored as twice its D′₂ ⊗ Q coordinates
  S2HMod2,       // S²H ⊗ Z₂
  Lambda2HMod2,  // Λ²H ⊗ Z₂
  Lambda3HMod2,  // Λ³H ⊗ Z₂
};

const char* space_name(Space s);

/// Canonical bases for one genus. Everything is lexicographic in symbol ids.
struct BasisTables {
  int genus = 0;
  int n = 0;  // 2g

  std::vector<std::array<int, 2>> lambda2;  // i < j
  std::vector<std::array<int, 3>> lambda3;  // i < j < k
  std::vector<std::array<int, 2>> pairs;    // trivector indices I < J
  std::vector<std::array<int, 2>> s2l2;     // Λ²-indices e <= f
  std::vector<std::array<int, 2>> s2h;      // i <= j
  std::vector<std::array<int, 4>> lambda4;  // i < j < k < l

  int lambda2_index(int i, int j) const { return l2_index_[i * n + j]; }
  int lambda3_index(int i, int j, int k) const { return l3_index_[(i * n + j) * n + k]; }
  int pair_index(int I, int J) const {
    const int t = int(lambda3.size());
    return I * (2 * t - I - 1) / 2 + (J - I - 1);
  }
  int s2l2_index(int e, int f) const {
    const int p = int(lambda2.size());
    return e * (2 * p - e + 1) / 2 + (f - e);
  }
  int s2h_index(int i, int j) const { return i * (2 * n - i + 1) / 2 + (j - i); }

  std::array<Symbol, 3> triple(int I) const {
    return {Symbol(lambda3[I][0]), Symbol(lambda3[I][1]), Symbol(lambda3[I][2])};
  }

  std::vector<int> l2_index_;
  std::vector<int> l3_index_;
};

/// Built once per genus and shared read-only.
const BasisTables& tables(int genus);

int space_dim(int genus, Space s);

/// Sparse exact vector tagged with the space it lives in; arithmetic between
/// different tags does not compile, arithmetic across genera throws.
template <Space S>
class ModuleVector {
 public:
  ModuleVector() = default;
  explicit ModuleVector(int genus) : genus_(genus) {}
  ModuleVector(int genus, SparseVector coords) : genus_(genus), coords_(std::move(coords)) {}

  static constexpr Space space = S;
  int genus() const { return genus_; }
  const SparseVector& coords() const { return coords_; }
  SparseVector& coords() { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  Int at(int i) const { return coords_.at(i); }

  ModuleVector& operator+=(const ModuleVector& o) {
    check(o);
    coords_ += o.coords_;
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    check(o);
    coords_ -= o.coords_;
    return *this;
  }
  void axpy(const Int& c, const ModuleVector& o) {
    check(o);
    coords_.axpy(c, o.coords_);
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Int& c, ModuleVector a) {
    a.coords_ *= c;
    return a;
  }
  ModuleVector operator-() const { return ModuleVector(genus_, -coords_); }
  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

 private:
  void check(const ModuleVector& o);
  int genus_ = 0;
  SparseVector coords_;
};

void throw_genus_mismatch();

template <Space S>
void ModuleVector<S>::check(const ModuleVector& o) {
  if (genus_ == 0) genus_ = o.genus_;
  if (o.genus_ != genus_ && o.genus_ != 0) throw_genus_mismatch();
}

using Bivector = ModuleVector<Space::Lambda2>;
using Trivector = ModuleVector<Space::Lambda3>;
using PairVector = ModuleVector<Space::PairSpace>;
using S2Vector = ModuleVector<Space::S2Lambda2>;
using D2PrimeVector = ModuleVector<Space::D2Prime>;
using D2Vector = ModuleVector<Space::D2Doubled>;

/// Vector over Z₂ tagged with its space.
template <Space S>
struct Mod2Vector {
  int genus = 0;
  BitVector bits;
  friend bool operator==(const Mod2Vector&, const Mod2Vector&) = default;
};

using S2HMod2 = Mod2Vector<Space::S2HMod2>;
using Lambda2Mod2 = Mod2Vector<Space::Lambda2HMod2>;
using Lambda3Mod2 = Mod2Vector<Space::Lambda3HMod2>;

// ---------------------------------------------------------------------------
// Products

Bivector wedge2(const SymVector& x, const SymVector& y);
Trivector wedge3(const SymVector& x, const SymVector& y, const SymVector& z);
/// Signed basis trivector (zero on a repeated symbol).
Trivector wedge3(Symbol x, Symbol y, Symbol z, int genus);
PairVector wedge_pair(const Trivector& t, const Trivector& u);
/// The bracket symbol ⟨x1 x2 x3 | y1 y2 y3⟩.
PairVector bracket(const std::array<Symbol, 3>& x, const std::array<Symbol, 3>& y, int genus);
S2Vector sym_product(const Bivector& e, const Bivector& f);
/// (h1∧h2)(h3∧h4) + (h1∧h3)(h4∧h2) + (h1∧h4)(h2∧h3).
S2Vector embed_lambda4(const SymVector& h1, const SymVector& h2, const SymVector& h3, const SymVector& h4);

/// Basis labels: "a1b1a2" for trivectors, "a1a2a3|b3a4a5" for pairs.
std::string trivector_label(int genus, int I);
std::string pair_label(int genus, int p);
/// Inverse of pair_label; the two triples may be unsorted, the sign is returned in the vector.
PairVector parse_pair(int genus, const std::string& text);
std::string format(const Trivector& t);
std::string format(const PairVector& v);

// ---------------------------------------------------------------------------
// D′₂ and D₂

struct D2PrimeModel {
  int genus = 0;
  QuotientLattice quotient;     // ambient S²(Λ²H), relations = embedded Λ⁴H
  std::vector<int> columns;     // S² index of each D′₂ coordinate
  std::vector<bool> is_square;  // coordinate is a square e·e
  int rank() const { return int(columns.size()); }

  D2PrimeVector reduce(const S2Vector& v) const;
  /// Representative in S²(Λ²H) supported on the free columns.
  S2Vector lift(const D2PrimeVector& v) const;
};

/// Cached per genus. Fails with MathFailure if a relation pivot is not a unit,
/// since then the free columns would not be Z-coordinates.
const D2PrimeModel& build_D2prime(int genus);

/// D₂ in the doubled model: generated by 2·D′₂ and the squares e·e (which
/// represent ½ e·e).
LatticeBasis build_D2(int genus);

/// Doubled-model image of a D′₂ class.
D2Vector to_doubled(const D2PrimeVector& t);
/// Doubled-model coordinates of the element ½x, for x in S²(Λ²H).
D2Vector doubled_from_s2(const S2Vector& x);

// ---------------------------------------------------------------------------
// Mod-2 targets

struct Mod2Target {
  int dim = 0;
  BitVector functional;            // ω̄ as a row vector
  std::vector<BitVector> kernel;   // basis of ker ω̄
};

/// S2HMod2 or Lambda2HMod2. ω̄(h·k) = ω(h,k) mod 2 on S²H, ω̄(h∧k) = ω(h,k) mod 2 on Λ²H.
Mod2Target mod2_target(int genus, Space space);

// ---------------------------------------------------------------------------
// Induced actions

/// Matrix of M on Lambda2, Lambda3, PairSpace, S2Lambda2 or D2Prime in canonical bases.
SparseMatrix induced_action(const SpMatrix& m, Space space);

// ---------------------------------------------------------------------------
// Contraction classification

enum class FineLabel { V0, V10, V11, V12, V2, V3 };

struct ContractionType {
  int mixed = 0;  // m
  int self = 0;   // n, only meaningful when m = 1
  int component = 0;  // U_i
  FineLabel fine = FineLabel::V0;
  friend bool operator==(const ContractionType&, const ContractionType&) = default;
};

const char* fine_label_name(FineLabel f);
ContractionType classify_pair(int genus, int p);
/// Component U_i of every pair basis element, cached.
const std::vector<int>& pair_components(int genus);

}  // namespace gr2
