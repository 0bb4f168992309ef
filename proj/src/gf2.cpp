#include "gr2/gf2.hpp"

#include "gr2/errors.hpp"

#include <bit>

namespace gr2 {

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw AmbientMismatch("bit vector size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool BitVector::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

int BitVector::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

int BitVector::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return int(i * 64 + std::countr_zero(words_[i]));
  return -1;
}

std::vector<int> BitVector::ones() const {
  std::vector<int> out;
  for (int i = 0; i < size_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

std::string BitVector::str() const {
  std::string s(size_, '0');
  for (int i = 0; i < size_; ++i)
    if (test(i)) s[i] = '1';
  return s;
}

Gf2Echelon::Gf2Echelon(int dim, int tracked) : dim_(dim), tracked_(tracked), row_of_pivot_(dim, -1) {}

BitVector Gf2Echelon::reduce(BitVector v) const {
  if (v.size() != dim_) throw AmbientMismatch("bit vector size mismatch");
  for (int p = v.first(); p >= 0;) {
    int r = row_of_pivot_[p];
    if (r < 0) {
      // skip to next set bit after p
      int next = -1;
      for (int i = p + 1; i < dim_; ++i)
        if (v.test(i)) {
          next = i;
          break;
        }
      p = next;
      continue;
    }
    v ^= rows_[r];
    p = v.first();
  }
  return v;
}

bool Gf2Echelon::insert(BitVector v, BitVector tag) {
  if (v.size() != dim_) throw AmbientMismatch("bit vector size mismatch");
  if (tracked_ > 0 && tag.size() != tracked_) throw AmbientMismatch("tag size mismatch");
  // Eliminate leading bits only; rows stay in echelon (not reduced) form.
  while (true) {
    int p = v.first();
    if (p < 0) {
      if (tracked_ > 0) dependencies_.push_back(std::move(tag));
      return false;
    }
    int r = row_of_pivot_[p];
    if (r < 0) {
      row_of_pivot_[p] = int(rows_.size());
      rows_.push_back(std::move(v));
      if (tracked_ > 0) tags_.push_back(std::move(tag));
      return true;
    }
    v ^= rows_[r];
    if (tracked_ > 0) tag ^= tags_[r];
  }
}

int gf2_rank(const std::vector<BitVector>& rows, int dim) {
  Gf2Echelon e(dim);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

std::vector<BitVector> gf2_left_nullspace(const std::vector<BitVector>& rows, int dim) {
  const int n = int(rows.size());
  Gf2Echelon e(dim, n);
  for (int i = 0; i < n; ++i) {
    BitVector tag(n);
    tag.set(i);
    e.insert(rows[i], std::move(tag));
  }
  return e.dependencies();
}

}  // namespace gr2
