#pragma once

#include "gr2/invariants.hpp"
#include "gr2/multilinear.hpp"
#include "gr2/parallel.hpp"
#include "gr2/symplectic.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace gr2 {

/// Monomial over the variables s̄ (bit = symbol id); 0 is the constant 1̄.
using Monomial = std::uint32_t;

int degree(Monomial m);

/// Squarefree Z₂-polynomial of degree ≤ 3 in the 2g variables.
class BoolPoly {
 public:
  BoolPoly() = default;
  explicit BoolPoly(int genus) : genus_(genus) {}
  static BoolPoly one(int genus);
  static BoolPoly var(int genus, Symbol s);
  static BoolPoly monomial(int genus, Monomial m);
  /// Accepts "a1*b1*a2 + a1 + 1"; "0" is the zero polynomial.
  static BoolPoly parse(int genus, const std::string& text);

  int genus() const { return genus_; }
  const std::set<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// Homogeneous part of the given degree.
  BoolPoly part(int d) const;
  std::string str() const;

  BoolPoly& operator+=(const BoolPoly& o);
  friend BoolPoly operator+(BoolPoly a, const BoolPoly& b) { return a += b; }
  friend bool operator==(const BoolPoly&, const BoolPoly&) = default;

 private:
  void toggle(Monomial m);
  int genus_ = 0;
  std::set<Monomial> terms_;
};

/// Throws DegreeOverflow when the squarefree product has degree > 3.
BoolPoly poly_mul(const BoolPoly& p, const BoolPoly& q);
BoolPoly operator*(const BoolPoly& p, const BoolPoly& q);

/// Quadratic form with polar form ω mod 2, given by its values on the basis (bit = symbol id).
struct QuadForm {
  int genus = 0;
  std::uint32_t values = 0;
  int value(const SymVector& h) const;
};

/// Σ c_s s̄ + (Σ_{s<t} c_s c_t ω(s,t)) 1̄, mod 2.
BoolPoly hbar(const SymVector& h);
int evaluate(const BoolPoly& p, const QuadForm& q);

BoolPoly beta_bp(const BPData& d);
BoolPoly beta_bscc(const BSCCData& d);

/// Algebra map determined by s̄ ↦ (M s)‾.
BoolPoly sp_action(const SpMatrix& m, const BoolPoly& p);
/// Degree-3 part, read in Λ³H ⊗ Z₂.
Lambda3Mod2 third_differential(const BoolPoly& p);

/// Canonical monomial basis of B_{≤k}: degree ascending, then lexicographic.
std::vector<Monomial> monomial_basis(int genus, int k);
/// Z₂-dimension of B_{≤k} from the rank of the evaluation matrix over all 2^{2g} forms.
int dim_B(int genus, int k, Execution exec = Execution::Parallel);

struct AbelianizationReport {
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
  int dim_B2 = 0;
  int dim_B3 = 0;
};

/// Invariant factors of Λ³H ×_{Λ³H⊗Z₂} B_{≤3} from a presentation.
AbelianizationReport abelianization_structure(int genus);

struct LemmaSpReport {
  int closure_dim = 0;
  int target_dim = 0;
  int rounds = 0;
  std::string unreached;  // first basis monomial outside the closure
};

/// Z₂-span closure of the five listed quadratics under C₁, D_i (i < g), E_i (i ≠ 2),
/// F_ij (3 ≤ i < j). Throws GenerationFailure when it falls short of B_{≤2}.
LemmaSpReport verify_lemma_Sp(int genus);
/// Same closure from an arbitrary generator list; never throws on shortfall.
LemmaSpReport sp_closure(int genus, const std::vector<BoolPoly>& gens);

}  // namespace gr2
