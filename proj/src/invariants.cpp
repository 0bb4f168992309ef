#include "gr2/invariants.hpp"

#include "gr2/errors.hpp"

#include <algorithm>
#include <climits>

namespace gr2 {

namespace {

struct Quad {
  Symbol a, b, c, d;
};

// (a∧b)·(c∧d) for an S²(Λ²H) basis index.
Quad quad(const BasisTables& t, int k) {
  const auto& e = t.lambda2[t.s2l2[k][0]];
  const auto& f = t.lambda2[t.s2l2[k][1]];
  return {Symbol(e[0]), Symbol(e[1]), Symbol(f[0]), Symbol(f[1])};
}

int pairing(Symbol s, Symbol t) { return t == bar(s) ? 1 : 0; }

bool odd(const Int& c) { return is_odd(c); }

template <class F>
long first_failure(long trials, F&& ok) {
  long bad = LONG_MAX;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : bad)
  for (long t = 0; t < trials; ++t) {
    bool good = false;
    try {
      good = ok(t);
    } catch (const std::exception&) {
      good = false;
    }
    if (!good) bad = std::min(bad, t);
  }
  return bad == LONG_MAX ? -1 : bad;
}

std::string triple_str(const Triple& x) { return "(" + x[0].str() + ", " + x[1].str() + ", " + x[2].str() + ")"; }

}  // namespace

void check_subsurface(const HandleBasis& basis, const SymVector* e) {
  if (basis.empty()) throw InvalidSubsurfaceBasis("subsurface basis is empty");
  const int g = basis[0].first.genus();
  for (const auto& [u, v] : basis)
    if (u.genus() != g || v.genus() != g) throw AmbientMismatch("subsurface basis mixes genera");
  if (e && e->genus() != g) throw AmbientMismatch("boundary class has the wrong genus");
  const int h = int(basis.size());
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      const auto& [ui, vi] = basis[i];
      const auto& [uj, vj] = basis[j];
      if (omega(ui, vj) != (i == j ? 1 : 0))
        throw InvalidSubsurfaceBasis("omega(u" + std::to_string(i + 1) + ", v" + std::to_string(j + 1) +
                                     ") = " + to_string(omega(ui, vj)));
      if (i < j && (omega(ui, uj) != 0 || omega(vi, vj) != 0))
        throw InvalidSubsurfaceBasis("handles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " are not orthogonal");
    }
  if (e)
    for (int i = 0; i < h; ++i)
      if (omega(*e, basis[i].first) != 0 || omega(*e, basis[i].second) != 0)
        throw InvalidSubsurfaceBasis("boundary class pairs nontrivially with handle " + std::to_string(i + 1));
}

Trivector tau1_bp(const BPData& d) {
  check_subsurface(d.basis, &d.e);
  Trivector out(d.e.genus());
  for (const auto& [u, v] : d.basis) out -= wedge3(u, v, d.e);
  return out;
}

Trivector tau1_pb(const SymVector& x, const SymVector& y, const SymVector& z) { return -wedge3(x, y, z); }

D2Vector tau2_bscc(const BSCCData& d) {
  check_subsurface(d.basis);
  const int g = d.basis[0].first.genus();
  std::vector<Bivector> w;
  for (const auto& [u, v] : d.basis) w.push_back(wedge2(u, v));
  S2Vector sum(g);
  for (const auto& x : w)
    for (const auto& y : w) sum += sym_product(x, y);
  D2Vector out = doubled_from_s2(sum);
  if (!build_D2(g).contains(out.coords())) throw MembershipFailure("tau2 value is not in D2");
  return out;
}

Triple factors_of(const Trivector& t) {
  if (t.coords().size() != 1) throw NonDecomposable("expected a single basis trivector, got " + format(t));
  const int g = t.genus();
  const auto s = tables(g).triple(t.coords().lead_index());
  return {SymVector(g, s[0], t.coords().lead_value()), SymVector(g, s[1]), SymVector(g, s[2])};
}

// ---------------------------------------------------------------------------

S2HMod2 trace_S_s2(const S2Vector& v) {
  const int g = v.genus();
  const auto& t = tables(g);
  S2HMod2 out{g, BitVector(int(t.s2h.size()))};
  auto add = [&](Symbol s, Symbol u, Symbol x, Symbol y) {
    if (omega(s, u) == 0) return;
    out.bits.flip(t.s2h_index(std::min(x.id(), y.id()), std::max(x.id(), y.id())));
  };
  for (const auto& [k, c] : v.coords()) {
    if (!odd(c)) continue;
    auto [a, b, cc, d] = quad(t, k);
    add(a, cc, b, d);
    add(a, d, b, cc);
    add(b, cc, a, d);
    add(b, d, a, cc);
  }
  return out;
}

Lambda2Mod2 trace_Lambda_s2(const S2Vector& v) {
  const int g = v.genus();
  const auto& t = tables(g);
  Lambda2Mod2 out{g, BitVector(int(t.lambda2.size()))};
  auto add = [&](Symbol s, Symbol u, Symbol x, Symbol y) {
    if (omega(s, u) == 0 || x == y) return;
    out.bits.flip(t.lambda2_index(std::min(x.id(), y.id()), std::max(x.id(), y.id())));
  };
  for (const auto& [k, c] : v.coords()) {
    if (!odd(c)) continue;
    auto [a, b, cc, d] = quad(t, k);
    add(a, cc, b, d);
    add(a, d, b, cc);
    add(b, cc, a, d);
    add(b, d, a, cc);
  }
  return out;
}

S2HMod2 trace_S(const D2PrimeVector& t) { return trace_S_s2(build_D2prime(t.genus()).lift(t)); }

Lambda2Mod2 trace_Lambda(const D2Vector& x) {
  const int g = x.genus();
  const auto& model = build_D2prime(g);
  const auto& t = tables(g);
  Lambda2Mod2 out{g, BitVector(int(t.lambda2.size()))};
  SparseVector halves;
  for (const auto& [k, c] : x.coords()) {
    const int col = model.columns[k];
    if (model.is_square[k]) {
      // ½(a∧b)² ↦ (1 + ω(a,b)) a∧b
      auto [a, b, cc, d] = quad(t, col);
      if (odd(c) && omega(a, b) == 0) out.bits.flip(t.s2l2[col][0]);
    } else {
      if (odd(c)) throw MembershipFailure("doubled coordinate " + std::to_string(k) + " is odd: not in D2");
      halves.push_back(col, c / 2);
    }
  }
  out.bits ^= trace_Lambda_s2(S2Vector(g, std::move(halves))).bits;
  return out;
}

Int theta_s2(const S2Vector& v) {
  const auto& t = tables(v.genus());
  Int s = 0;
  for (const auto& [k, c] : v.coords()) {
    auto [a, b, cc, d] = quad(t, k);
    int w = pairing(a, d) * pairing(b, cc) - pairing(a, cc) * pairing(b, d);
    if (w != 0) s += w * c;
  }
  return s;
}

Int theta_s2(const S2Vector& v, const SpMatrix& m) {
  const int g = v.genus();
  const auto& t = tables(g);
  const SpMatrix inv = m.inverse();
  std::vector<Bivector> image;
  for (const auto& e : t.lambda2) image.push_back(wedge2(inv.image(Symbol(e[0])), inv.image(Symbol(e[1]))));
  S2Vector moved(g);
  for (const auto& [k, c] : v.coords()) moved.axpy(c, sym_product(image[t.s2l2[k][0]], image[t.s2l2[k][1]]));
  return theta_s2(moved);
}

Int theta(const D2PrimeVector& t) { return theta_s2(build_D2prime(t.genus()).lift(t)); }

Int theta(const D2PrimeVector& t, const SpMatrix& m) { return theta_s2(build_D2prime(t.genus()).lift(t), m); }

Rational theta(const D2Vector& x) {
  const auto& model = build_D2prime(x.genus());
  return Rational(theta_s2(model.lift(D2PrimeVector(x.genus(), x.coords())))) / 2;
}

Int dbar_prime_s2(const S2Vector& v) {
  const auto& t = tables(v.genus());
  Int s = 0;
  for (const auto& [k, c] : v.coords()) {
    auto [a, b, cc, d] = quad(t, k);
    int w = -4 * omega(a, b) * omega(cc, d) - 2 * omega(a, cc) * omega(b, d) + 2 * omega(a, d) * omega(b, cc);
    if (w != 0) s += w * c;
  }
  return s;
}

Rational dbar_prime(const D2PrimeVector& t) { return Rational(dbar_prime_s2(build_D2prime(t.genus()).lift(t))); }

Rational dbar_prime(const D2Vector& x) {
  const auto& model = build_D2prime(x.genus());
  return Rational(dbar_prime_s2(model.lift(D2PrimeVector(x.genus(), x.coords())))) / 2;
}

Int d_morita(const Triple& x, const Triple& y) {
  Int s = 0;
  for (int i = 0; i < 3; ++i) {
    Int wx = omega(x[i], x[(i + 1) % 3]);
    if (wx == 0) continue;
    for (int j = 0; j < 3; ++j) s += wx * omega(y[j], y[(j + 1) % 3]) * omega(x[(i + 2) % 3], y[(j + 2) % 3]);
  }
  return 8 * s;
}

ThetaPair theta_discrepancy(const Triple& x, const Triple& y) {
  ThetaPair p{theta_s2(b0_s2(x, y)), -3 * omega_det(x, y)};
  if (mod_floor(p.theta - p.theta_tilde, 4) != 0)
    throw DiscrepancyFailure("theta - theta~ = " + to_string(Int(p.theta - p.theta_tilde)) + " for x = " + triple_str(x) +
                             ", y = " + triple_str(y));
  return p;
}

std::pair<Int, Rational> bscc_values(int h) {
  if (h < 1) throw UsageError("h must be positive");
  return {Int(4) * h * (h - 1), Rational(-h, 8)};
}

BSCCData standard_bscc(int h) {
  if (h < 1) throw UsageError("h must be positive");
  const int g = std::max(3, h);
  BSCCData d;
  for (int i = 1; i <= h; ++i) d.basis.emplace_back(SymVector(g, Symbol::a(i)), SymVector(g, Symbol::b(i)));
  return d;
}

// ---------------------------------------------------------------------------
// Congruence lattices

LatticeBasis ker_trace_S(int genus) {
  const auto& model = build_D2prime(genus);
  const int r = model.rank();
  std::vector<SparseVector> basis;
  std::vector<BitVector> images;
  for (int k = 0; k < r; ++k) {
    basis.push_back(SparseVector::unit(k));
    images.push_back(trace_S(D2PrimeVector(genus, basis.back())).bits);
  }
  return mod2_kernel(r, basis, images);
}

LatticeBasis ker_trace_Lambda(int genus) {
  const auto& model = build_D2prime(genus);
  const int r = model.rank();
  std::vector<SparseVector> basis;
  std::vector<BitVector> images;
  for (int k = 0; k < r; ++k) {
    basis.push_back(SparseVector::unit(k, model.is_square[k] ? 1 : 2));
    images.push_back(trace_Lambda(D2Vector(genus, basis.back())).bits);
  }
  return mod2_kernel(r, basis, images);
}

namespace {

Int theta_doubled(int genus, const SparseVector& x) {
  return theta_s2(build_D2prime(genus).lift(D2PrimeVector(genus, x)));
}

SparseVector with_z(SparseVector v, int r, const Int& z) {
  if (z != 0) v.push_back(r, z);
  return v;
}

}  // namespace

LatticeBasis lattice_Uprime(int genus) {
  const int r = build_D2prime(genus).rank();
  LatticeBasis out(r + 1);
  for (const auto& t : ker_trace_S(genus).rows()) out.insert(with_z(t, r, -2 * theta(D2PrimeVector(genus, t))));
  out.insert(SparseVector::unit(r, 8));
  return out;
}

LatticeBasis lattice_U(int genus) {
  const int r = build_D2prime(genus).rank();
  LatticeBasis out(r + 1);
  for (const auto& x : ker_trace_Lambda(genus).rows()) out.insert(with_z(x, r, -theta_doubled(genus, x)));
  out.insert(SparseVector::unit(r, 4));
  return out;
}

UPoint cocycle_C(const Triple& x, const Triple& y) {
  const int g = x[0].genus();
  const Int det = omega_det(x, y);
  UPoint p{to_doubled(build_D2prime(g).reduce(b0_s2(x, y))), -2 * det};
  if (p.z != 2 * -det) throw IdentityFailure("second coordinate differs from 8 B2");
  if (trace_Lambda(p.x).bits.any())
    throw MembershipFailure("cocycle value has nonzero Tr^Lambda for x = " + triple_str(x) + ", y = " + triple_str(y));
  if (mod_floor(theta_doubled(g, p.x.coords()) + p.z, 4) != 0)
    throw MembershipFailure("cocycle value breaks the mod 4 congruence for x = " + triple_str(x) +
                            ", y = " + triple_str(y));
  return p;
}

Int form_b(const Triple& x, const Triple& y) { return omega_det(x, y); }

Int b_gram_determinant(int genus) {
  const auto& t = tables(genus);
  const int n = int(t.lambda3.size());
  std::vector<Triple> basis;
  for (int I = 0; I < n; ++I) {
    auto s = t.triple(I);
    basis.push_back({SymVector(genus, s[0]), SymVector(genus, s[1]), SymVector(genus, s[2])});
  }
  IntMatrix gram(n, n);
  for (int I = 0; I < n; ++I)
    for (int J = 0; J < n; ++J) gram(I, J) = form_b(basis[I], basis[J]);
  return determinant(gram);
}

// ---------------------------------------------------------------------------
// Suites

ExactRowsReport verify_exact_rows(int genus) {
  ExactRowsReport rep;
  const auto& model = build_D2prime(genus);
  const int r = model.rank();
  rep.d2prime_rank = r;

  const auto& B = assemble_B_matrix(genus);
  LatticeBasis im(r);
  for (const auto& col : B.columns()) {
    SparseVector tree;
    for (const auto& [i, c] : col)
      if (i < r) tree.push_back(i, c);
    im.insert(tree);
  }
  rep.im_b0_rank = im.rank();
  LatticeBasis ker = ker_trace_S(genus);
  rep.im_b0_equals_ker = im == ker;
  if (!rep.im_b0_equals_ker) {
    for (const auto& row : ker.rows())
      if (!im.contains(row))
        throw GenerationFailure("ker Tr^S element outside im B0 at coordinate " + std::to_string(row.lead_index()));
    throw GenerationFailure("im B0 is not contained in ker Tr^S");
  }

  Mod2Target s2 = mod2_target(genus, Space::S2HMod2);
  rep.ker_omega_S_dim = int(s2.kernel.size());
  Gf2Echelon es(s2.dim);
  for (int k = 0; k < r; ++k) {
    BitVector img = trace_S(D2PrimeVector(genus, SparseVector::unit(k))).bits;
    int parity = 0;
    for (int i : img.ones()) parity ^= int(s2.functional.test(i));
    if (parity) throw MembershipFailure("Tr^S of D2prime coordinate " + std::to_string(k) + " is outside ker omega");
    es.insert(img);
  }
  rep.trace_S_image_rank = es.rank();
  if (rep.trace_S_image_rank != rep.ker_omega_S_dim)
    throw RankMismatch("Tr^S image has rank " + std::to_string(rep.trace_S_image_rank) + " < " +
                       std::to_string(rep.ker_omega_S_dim));

  Mod2Target l2 = mod2_target(genus, Space::Lambda2HMod2);
  rep.ker_omega_Lambda_dim = int(l2.kernel.size());
  Gf2Echelon el(l2.dim);
  for (int k = 0; k < r; ++k) {
    BitVector img = trace_Lambda(D2Vector(genus, SparseVector::unit(k, model.is_square[k] ? 1 : 2))).bits;
    int parity = 0;
    for (int i : img.ones()) parity ^= int(l2.functional.test(i));
    if (parity) throw MembershipFailure("Tr^Lambda of a D2 generator is outside ker omega");
    el.insert(img);
  }
  rep.trace_Lambda_image_rank = el.rank();
  if (rep.trace_Lambda_image_rank != rep.ker_omega_Lambda_dim)
    throw RankMismatch("Tr^Lambda image has rank " + std::to_string(rep.trace_Lambda_image_rank) + " < " +
                       std::to_string(rep.ker_omega_Lambda_dim));
  return rep;
}

Triple random_triple(int genus, Rng& rng, int bound) {
  return {random_symvector(genus, rng, bound), random_symvector(genus, rng, bound), random_symvector(genus, rng, bound)};
}

namespace {

// Stream ids keep the randomized suites independent of each other.
enum Stream : std::uint64_t { kThetaMod4 = 1, kDiscrepancy = 2, kDIdentity = 3 };

D2PrimeVector random_combination(int genus, const std::vector<SparseVector>& rows, Rng& rng, int terms) {
  D2PrimeVector v(genus);
  for (int k = 0; k < terms; ++k)
    v.axpy(rng.between(-3, 3), D2PrimeVector(genus, rows[int(rng.below(rows.size()))]));
  return v;
}

}  // namespace

TrialReport verify_theta_mod4(int genus, long trials, std::uint64_t seed) {
  const int dim = int(tables(genus).pairs.size());
  const auto kerS = ker_trace_S(genus).rows();
  const auto kerL = ker_trace_Lambda(genus).rows();
  assemble_B_matrix(genus);
  auto trial = [&](long t) {
    Rng rng(seed, kThetaMod4, std::uint64_t(t));
    SpMatrix m = random_symplectic(genus, rng, 1 + int(rng.below(8)));
    PairVector v(genus);
    for (int k = 0; k < 3; ++k) v.axpy(rng.between(-2, 2), PairVector(genus, SparseVector::unit(int(rng.below(dim)))));
    const D2PrimeVector t1 = b0(v);
    const D2PrimeVector t2 = random_combination(genus, kerS, rng, 3);
    const D2PrimeVector x = random_combination(genus, kerL, rng, 3);  // doubled D₂ coordinates
    for (const auto* t : {&t1, &t2})
      if (mod_floor(theta(*t, m) - theta(*t), 4) != 0) return false;
    // 2Θ on D₂ equals Θ of the doubled representative
    return mod_floor(theta(x, m) - theta(x), 4) == 0;
  };
  long bad = first_failure(trials, trial);
  if (bad >= 0)
    throw InvarianceFailure("Theta mod 4 changed under a basis change in trial " + std::to_string(bad) +
                            " (seed " + std::to_string(seed) + ")");
  return {trials, 3 * trials};
}

TrialReport verify_theta_discrepancy(int genus, long trials, std::uint64_t seed) {
  require_genus(genus);
  auto trial = [&](long t) {
    Rng rng(seed, kDiscrepancy, std::uint64_t(t));
    Triple x = random_triple(genus, rng), y = random_triple(genus, rng);
    theta_discrepancy(x, y);
    return true;
  };
  long bad = first_failure(trials, trial);
  if (bad >= 0) {
    Rng rng(seed, kDiscrepancy, std::uint64_t(bad));
    Triple x = random_triple(genus, rng), y = random_triple(genus, rng);
    theta_discrepancy(x, y);  // rethrows with the witness
  }
  return {trials, trials};
}

TrialReport verify_d_identity(int genus, long trials, std::uint64_t seed) {
  const auto& model = build_D2prime(genus);
  auto check = [&](const Triple& x, const Triple& y) {
    BracketValue b{model.reduce(b0_s2(x, y)), -omega_det(x, y)};
    Rational dprime = -dbar_prime(b.tree);
    Rational d2 = Rational(b.theta_x4) / 4;
    return Rational(d_morita(x, y)) == 2 * dprime + 48 * d2;
  };
  auto trial = [&](long t) {
    Rng rng(seed, kDIdentity, std::uint64_t(t));
    Triple x = random_triple(genus, rng), y = random_triple(genus, rng);
    return check(x, y);
  };
  long bad = first_failure(trials, trial);
  if (bad >= 0) {
    Rng rng(seed, kDIdentity, std::uint64_t(bad));
    Triple x = random_triple(genus, rng), y = random_triple(genus, rng);
    throw IdentityFailure("d != 2d' + 48d'' for x = " + triple_str(x) + ", y = " + triple_str(y));
  }
  return {trials, trials};
}

TrialReport verify_bscc_values(int max_h) {
  for (int h = 1; h <= max_h; ++h) {
    auto [d, d2] = bscc_values(h);
    Rational dprime = -dbar_prime(tau2_bscc(standard_bscc(h)));
    if (Rational(d) != 2 * dprime + 48 * d2)
      throw IdentityFailure("BSCC cross-check fails at h = " + std::to_string(h) + ": 2d' = " +
                            to_string(Rational(2 * dprime)) + ", d = " + to_string(d));
  }
  return {max_h, max_h};
}

UprimeReport verify_uprime(int genus) {
  UprimeReport rep;
  const int r = build_D2prime(genus).rank();
  LatticeBasis image = image_b0_8b2(genus);
  LatticeBasis up = lattice_Uprime(genus);
  LatticeBasis u = lattice_U(genus);
  rep.rank = up.rank();
  rep.digest_image = image.digest();
  rep.digest_uprime = up.digest();
  rep.image_equal = image == up;
  rep.uprime_in_U = true;
  for (const auto& row : up.rows()) {
    SparseVector doubled;
    for (const auto& [i, c] : row) doubled.push_back(i, i < r ? Int(2 * c) : c);
    if (!u.contains(doubled)) rep.uprime_in_U = false;
  }
  rep.z8_in_Uprime = up.contains(SparseVector::unit(r, 8));
  rep.z4_in_Uprime = up.contains(SparseVector::unit(r, 4));
  rep.z4_in_U = u.contains(SparseVector::unit(r, 4));
  if (!rep.image_equal) throw GenerationFailure("im(B0, 8B2) differs from U'(H)");
  if (!rep.uprime_in_U) throw MembershipFailure("U'(H) is not contained in U(H)");
  if (!rep.z8_in_Uprime || rep.z4_in_Uprime || !rep.z4_in_U)
    throw MembershipFailure("congruence spot checks on (0,8) and (0,4) failed");
  return rep;
}

TrialReport verify_cocycle(int genus) {
  const auto& t = tables(genus);
  const int r = build_D2prime(genus).rank();
  const LatticeBasis u = lattice_U(genus);
  const long n = long(t.pairs.size());
  auto basis_triple = [&](int I) {
    auto s = t.triple(I);
    return Triple{SymVector(genus, s[0]), SymVector(genus, s[1]), SymVector(genus, s[2])};
  };
  auto trial = [&](long p) {
    Triple x = basis_triple(t.pairs[p][0]), y = basis_triple(t.pairs[p][1]);
    UPoint c = cocycle_C(x, y);
    return u.contains(with_z(c.x.coords(), r, c.z)) && c.z == 2 * bracket_value(x, y).theta_x4;
  };
  long bad = first_failure(n, trial);
  if (bad >= 0)
    throw MembershipFailure("cocycle value outside U(H) or z != 8 B2 at " + pair_label(genus, int(bad)));
  return {n, n};
}

}  // namespace gr2
