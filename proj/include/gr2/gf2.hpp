#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gr2 {

/// Fixed-size vector over Z/2.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int size) : size_(size), words_((size + 63) / 64, 0) {}

  int size() const { return size_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool value = true) {
    if (value)
      words_[i >> 6] |= std::uint64_t(1) << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void flip(int i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  bool none() const;
  bool any() const { return !none(); }
  int count() const;
  /// Lowest set index, or -1.
  int first() const;
  std::vector<int> ones() const;
  std::string str() const;

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incremental row echelon form over Z/2. Optionally tracks, for every
/// stored row, which inputs were combined to produce it, so that linear
/// dependencies among the inputs can be read off.
class Gf2Echelon {
 public:
  explicit Gf2Echelon(int dim, int tracked = 0);

  /// Returns true when `v` was independent of the rows stored so far.
  /// `tag` must have size `tracked` when tracking is on.
  bool insert(BitVector v, BitVector tag = {});
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).none(); }
  int rank() const { return int(rows_.size()); }
  int dim() const { return dim_; }
  /// Combination tags of inputs that reduced to zero.
  const std::vector<BitVector>& dependencies() const { return dependencies_; }

 private:
  int dim_;
  int tracked_;
  std::vector<int> row_of_pivot_;
  std::vector<BitVector> rows_;
  std::vector<BitVector> tags_;
  std::vector<BitVector> dependencies_;
};

int gf2_rank(const std::vector<BitVector>& rows, int dim);

/// Basis of { c : sum_i c_i rows[i] = 0 }.
std::vector<BitVector> gf2_left_nullspace(const std::vector<BitVector>& rows, int dim);

}  // namespace gr2
