#pragma once

#include "gr2/integer.hpp"
#include "gr2/sparse.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace gr2 {

/// One of a_1..a_g, b_1..b_g. Ids follow the total order a1 < b1 < a2 < b2 < ...,
/// so a_i = 2(i-1), b_i = 2(i-1)+1 and bar flips the low bit.
class Symbol {
 public:
  constexpr Symbol() = default;
  constexpr explicit Symbol(int id) : id_(id) {}
  static constexpr Symbol a(int i) { return Symbol(2 * (i - 1)); }
  static constexpr Symbol b(int i) { return Symbol(2 * (i - 1) + 1); }
  /// Accepts "a3", "b12".
  static Symbol parse(const std::string& text);

  constexpr int id() const { return id_; }
  constexpr bool is_a() const { return (id_ & 1) == 0; }
  constexpr int index() const { return id_ / 2 + 1; }
  std::string str() const;

  friend constexpr auto operator<=>(Symbol, Symbol) = default;

 private:
  int id_ = 0;
};

constexpr Symbol bar(Symbol s) { return Symbol(s.id() ^ 1); }
constexpr int epsilon(Symbol s) { return s.is_a() ? 1 : -1; }
constexpr int nmap(Symbol s) { return s.index(); }
/// omega on basis symbols: omega(a_i, b_i) = 1 = -omega(b_i, a_i), zero otherwise.
constexpr int omega(Symbol s, Symbol t) { return t == bar(s) ? epsilon(s) : 0; }

/// Element of H = Z^{2g} in the basis a1, b1, a2, b2, ...
class SymVector {
 public:
  SymVector() = default;
  explicit SymVector(int genus);
  SymVector(int genus, Symbol s, Int coeff = 1);
  /// Accepts sums like "a1+2b3-b2".
  static SymVector parse(int genus, const std::string& text);

  int genus() const { return genus_; }
  int dim() const { return 2 * genus_; }
  const Int& operator[](int i) const { return coords_[i]; }
  Int& operator[](int i) { return coords_[i]; }
  const std::vector<Int>& coords() const { return coords_; }
  bool is_zero() const;
  std::string str() const;

  SymVector& operator+=(const SymVector& o);
  SymVector& operator-=(const SymVector& o);
  friend SymVector operator+(SymVector x, const SymVector& y) { return x += y; }
  friend SymVector operator-(SymVector x, const SymVector& y) { return x -= y; }
  friend SymVector operator*(const Int& c, SymVector x);
  SymVector operator-() const { return Int(-1) * *this; }
  friend bool operator==(const SymVector&, const SymVector&) = default;

 private:
  int genus_ = 0;
  std::vector<Int> coords_;
};

Int omega(const SymVector& x, const SymVector& y);

/// Matrix acting on H; column j is the image of basis symbol j.
class SpMatrix {
 public:
  SpMatrix() = default;
  explicit SpMatrix(int genus);  // identity
  SpMatrix(int genus, IntMatrix entries);

  int genus() const { return genus_; }
  const IntMatrix& entries() const { return m_; }
  SymVector image(Symbol s) const;
  SymVector apply(const SymVector& x) const;
  SpMatrix operator*(const SpMatrix& o) const;
  /// Inverse of a symplectic matrix, Omega^{-1} M^T Omega.
  SpMatrix inverse() const;
  bool is_symplectic() const;
  friend bool operator==(const SpMatrix&, const SpMatrix&) = default;

 private:
  int genus_ = 0;
  IntMatrix m_;
};

/// Gram matrix of omega in the symbol basis.
IntMatrix omega_gram(int genus);

/// E_i: a_i -> -b_i, b_i -> a_i.
SpMatrix quarter_turn(int genus, int i);
/// F_ij: (a_i, b_i) <-> (a_j, b_j).
SpMatrix handle_swap(int genus, int i, int j);

/// All E_i followed by all F_ij (i < j).
std::vector<SpMatrix> g_generators(int genus);
/// E_i and F_{i,i+1}: enough to generate G.
std::vector<SpMatrix> g_closure_generators(int genus);

/// Matrix sending the listed symbols to the given vectors and fixing the rest.
/// Throws NonSymplectic naming the first pair whose form value changed.
SpMatrix partial_symplectic(const std::map<Symbol, SymVector>& images, int genus);

/// C_1: b1 -> b1 + a1.
SpMatrix map_C1(int genus);
/// D_i: (b_i, b_{i+1}) -> (b_i + a_{i+1}, b_{i+1} + a_i).
SpMatrix map_D(int genus, int i);

/// Seeded generator used for every randomized check. Draws go through `below`
/// (modular reduction of raw 64-bit outputs) so results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  long long between(long long lo, long long hi) { return lo + (long long)below(std::uint64_t(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

/// Product of `steps` generators drawn from the transvections x -> x +- omega(x,v) v
/// (v ranging over the symbols and the sums a_i+a_{i+1}, b_i+b_{i+1}, a_i+b_{i+1})
/// together with all E_i and F_ij.
SpMatrix random_symplectic(int genus, Rng& rng, int steps);
SpMatrix random_symplectic(int genus, std::uint64_t seed, int steps);

SymVector random_symvector(int genus, Rng& rng, int bound = 2);

}  // namespace gr2
