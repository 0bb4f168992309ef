#pragma once

#include "gr2/bracket.hpp"
#include "gr2/lattice.hpp"
#include "gr2/multilinear.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace gr2 {

using HandleBasis = std::vector<std::pair<SymVector, SymVector>>;

/// Bounding pair data: symplectic basis (u_i, v_i) of the cobounded subsurface and the class e.
struct BPData {
  HandleBasis basis;
  SymVector e;
};

/// Bounding simple closed curve: symplectic basis of the subsurface it bounds.
struct BSCCData {
  HandleBasis basis;
};

/// Checks ω(u_i,v_j) = δ_ij, ω(u_i,u_j) = ω(v_i,v_j) = 0 and, if given, ω(e, ·) = 0 on the basis.
void check_subsurface(const HandleBasis& basis, const SymVector* e = nullptr);

Trivector tau1_bp(const BPData& d);
Trivector tau1_pb(const SymVector& x, const SymVector& y, const SymVector& z);
/// ½ Σ_{i,j} (u_i∧v_i)·(u_j∧v_j) in the doubled model; membership in D₂ is checked.
D2Vector tau2_bscc(const BSCCData& d);

/// Factors (±s1, s2, s3) of a single signed basis trivector; NonDecomposable otherwise.
Triple factors_of(const Trivector& t);

// ---------------------------------------------------------------------------
// Traces, Θ, d̄′

S2HMod2 trace_S(const D2PrimeVector& t);
/// Defined on D₂ only: non-square doubled coordinates must be even (MembershipFailure otherwise).
Lambda2Mod2 trace_Lambda(const D2Vector& x);
/// The 4-term wedge rule on an S²(Λ²H) vector, i.e. Tr^Λ of its D′₂ class.
Lambda2Mod2 trace_Lambda_s2(const S2Vector& v);
S2HMod2 trace_S_s2(const S2Vector& v);

/// Θ on S²(Λ²H) representatives, with ⟨a_i,b_j⟩ = δ_ij symmetric.
Int theta_s2(const S2Vector& v);
/// Θ in the symplectic basis S′ = M·S, i.e. Θ_S(M⁻¹ v).
Int theta_s2(const S2Vector& v, const SpMatrix& m);
Int theta(const D2PrimeVector& t);
Int theta(const D2PrimeVector& t, const SpMatrix& m);
/// Θ of a doubled-model class ½·lift: returned as a rational.
Rational theta(const D2Vector& x);

Int dbar_prime_s2(const S2Vector& v);
Rational dbar_prime(const D2PrimeVector& t);
Rational dbar_prime(const D2Vector& x);

/// 8 Σ_{i,j ∈ Z₃} ω(x_i,x_{i+1}) ω(y_j,y_{j+1}) ω(x_{i+2},y_{j+2}).
Int d_morita(const Triple& x, const Triple& y);

struct ThetaPair {
  Int theta;
  Int theta_tilde;
};

/// θ = Θ(B⁽⁰⁾(x∧y)), θ̃ = −3·det ω(x_i,y_j). Throws DiscrepancyFailure unless θ − θ̃ ∈ 4Z.
ThetaPair theta_discrepancy(const Triple& x, const Triple& y);

/// (4h(h−1), −h/8).
std::pair<Int, Rational> bscc_values(int h);
/// Standard handle data (a_i, b_i), i ≤ h, in genus max(3, h).
BSCCData standard_bscc(int h);

// ---------------------------------------------------------------------------
// Congruence lattices

/// U′(H) ⊂ D′₂ ⊕ Z: Tr^S T = 0 and 2Θ(T) ≡ −z mod 8. Last coordinate is z.
LatticeBasis lattice_Uprime(int genus);
/// U(H) ⊂ D₂ ⊕ Z in the doubled model: Tr^Λ X = 0 and Θ(X) ≡ −z mod 4.
LatticeBasis lattice_U(int genus);
/// Integral basis of ker Tr^S in D′₂.
LatticeBasis ker_trace_S(int genus);
/// Integral basis of ker Tr^Λ in the doubled D₂ lattice.
LatticeBasis ker_trace_Lambda(int genus);

struct UPoint {
  D2Vector x;
  Int z;
};

/// (B⁽⁰⁾(u∧v), −2 det) in doubled coordinates; MembershipFailure unless it lies in U(H).
UPoint cocycle_C(const Triple& x, const Triple& y);

/// det ω(x_i, y_j).
Int form_b(const Triple& x, const Triple& y);
/// Determinant of the Gram matrix of b on the Λ³H basis.
Int b_gram_determinant(int genus);

// ---------------------------------------------------------------------------
// Suites

struct ExactRowsReport {
  int d2prime_rank = 0;
  int im_b0_rank = 0;
  bool im_b0_equals_ker = false;
  int trace_S_image_rank = 0;
  int ker_omega_S_dim = 0;
  int trace_Lambda_image_rank = 0;
  int ker_omega_Lambda_dim = 0;
};

/// Throws MathFailure subclasses on failure.
ExactRowsReport verify_exact_rows(int genus);

struct TrialReport {
  long trials = 0;
  long checks = 0;
};

TrialReport verify_theta_mod4(int genus, long trials, std::uint64_t seed);
TrialReport verify_theta_discrepancy(int genus, long trials, std::uint64_t seed);
TrialReport verify_d_identity(int genus, long trials, std::uint64_t seed);
TrialReport verify_bscc_values(int max_h);

struct UprimeReport {
  int rank = 0;
  bool image_equal = false;
  bool uprime_in_U = false;
  bool z8_in_Uprime = false;
  bool z4_in_Uprime = false;
  bool z4_in_U = false;
  std::string digest_image;
  std::string digest_uprime;
};

UprimeReport verify_uprime(int genus);
/// Cocycle membership on every pair basis element.
TrialReport verify_cocycle(int genus);

Triple random_triple(int genus, Rng& rng, int bound = 2);

}  // namespace gr2
