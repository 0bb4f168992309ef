#pragma once

#include "gr2/bracket.hpp"
#include "gr2/lattice.hpp"
#include "gr2/multilinear.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace gr2 {

enum class Family { D, Sq, T, IHX1, IHX2, IHX3, IHX3p };

const char* family_name(Family f);
int family_arity(Family f);

struct RelationElement {
  Family family;
  std::vector<Symbol> params;
  PairVector value;
};

/// "D(a1,a2;a5,a3;a3,a4)" style text for a family and parameter tuple.
std::string describe(Family f, const std::vector<Symbol>& params);

/// Builds the displayed combination without checking anything.
PairVector relation_value(int genus, Family f, const std::vector<Symbol>& params);
/// Empty when the distinctness clause holds, otherwise the coincident symbols.
std::string clause_violation(Family f, const std::vector<Symbol>& params);

/// Checks the clause (ClauseViolation) and B-membership (MembershipFailure).
RelationElement make_relation(int genus, Family f, const std::vector<Symbol>& params);

RelationElement rel_D(int genus, Symbol x, Symbol y, Symbol c1, Symbol c2, Symbol xp, Symbol yp);
RelationElement rel_Sq(int genus, Symbol x, Symbol y, Symbol p, Symbol q, Symbol r, Symbol s);
RelationElement rel_T(int genus, Symbol x, Symbol p, Symbol q, Symbol r);
RelationElement rel_IHX1(int genus, Symbol s1, Symbol s2, Symbol s3, Symbol s4, Symbol c);
RelationElement rel_IHX2(int genus, Symbol x, Symbol y, Symbol p, Symbol c);
RelationElement rel_IHX3(int genus, Symbol p, Symbol q, Symbol r);
RelationElement rel_IHX3p(int genus, Symbol p, Symbol q, Symbol r, Symbol s);

/// One generator of the 26-element list: either a raw bracket symbol or a family member.
struct GeneratorSpec {
  int component;
  bool raw;
  std::array<Symbol, 3> x, y;  // raw
  Family family;               // otherwise
  std::vector<Symbol> params;
  int max_index() const;
  std::string label() const;
};

const std::vector<GeneratorSpec>& theorem_generators();

/// The genus-applicable members of (R_i), in listed order.
std::vector<GeneratorSpec> family_R_specs(int genus, int i);
std::vector<PairVector> family_R(int genus, int i);

struct SweepReport {
  std::map<Family, long> checked;  // clause-valid tuples per family
  std::map<Family, long> nonzero;  // of those, how many give a nonzero vector
  long total() const;
};

/// Enumerates every clause-valid tuple of every family and checks B = 0.
/// Throws MembershipFailure with the first failing tuple (in enumeration order).
SweepReport verify_relation_sweep(int genus, Execution exec = Execution::Parallel);

struct GenerationCertificate {
  std::string theorem;
  int genus = 0;
  int generator_count = 0;
  int closure_iterations = 0;
  int closure_rank = 0;
  int target_rank = 0;
  std::string hnf_digest_lhs;  // closure
  std::string hnf_digest_rhs;  // target
  bool equal = false;
  std::string index;  // [target : closure], "infinite" when ranks differ
  std::string witness;  // first target basis vector outside the closure
};

/// G-span closure of the genus-applicable 26 elements against K. Throws
/// GenerationFailure when the closure falls short.
GenerationCertificate verify_theorem_K(int genus, Execution exec = Execution::Parallel);
/// Same with (R_i) against K ∩ U_i.
GenerationCertificate verify_component(int genus, int i, Execution exec = Execution::Parallel);

/// Non-throwing variants used by the certificate layer.
GenerationCertificate theorem_K_certificate(int genus, Execution exec = Execution::Parallel);
GenerationCertificate component_certificate(int genus, int i, Execution exec = Execution::Parallel);

struct OrbitReport {
  int u0_size = 0;
  /// For each applicable (R_0) pattern, the size of its signed G-orbit.
  std::vector<std::pair<std::string, int>> orbits;
  int covered = 0;
};

/// Every U_0 basis pair lies up to sign in the G-orbit of an applicable (R_0)
/// pattern. Throws UnclassifiedElement otherwise.
OrbitReport orbit_classification_U0(int genus);

/// Induced actions of E_i and F_{i,i+1} on Λ²(Λ³H), cached.
const std::vector<SparseMatrix>& g_pair_actions(int genus);

}  // namespace gr2
