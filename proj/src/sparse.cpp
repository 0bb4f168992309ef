#include "gr2/sparse.hpp"

#include "gr2/errors.hpp"

#include <algorithm>

namespace gr2 {

SparseVector SparseVector::from_terms(std::vector<Entry> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out;
  out.entries_.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.entries_.empty() && out.entries_.back().index == t.index) {
      out.entries_.back().value += t.value;
    } else {
      if (!out.entries_.empty() && out.entries_.back().value == 0) out.entries_.pop_back();
      out.entries_.push_back(std::move(t));
    }
  }
  if (!out.entries_.empty() && out.entries_.back().value == 0) out.entries_.pop_back();
  return out;
}

SparseVector SparseVector::unit(int index, Int value) {
  SparseVector v;
  if (value != 0) v.entries_.push_back({index, std::move(value)});
  return v;
}

SparseVector SparseVector::from_dense(std::span<const Int> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.entries_.push_back({int(i), dense[i]});
  return v;
}

Int SparseVector::at(int index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, int i) { return e.index < i; });
  if (it != entries_.end() && it->index == index) return it->value;
  return 0;
}

std::vector<Int> SparseVector::to_dense(int dim) const {
  std::vector<Int> out(dim);
  for (const auto& e : entries_) out.at(e.index) = e.value;
  return out;
}

void SparseVector::axpy(const Int& scalar, const SparseVector& other) {
  if (scalar == 0 || other.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->index < a->index) {
      merged.push_back({b->index, scalar * b->value});
      ++b;
    } else {
      Int v = a->value + scalar * b->value;
      if (v != 0) merged.push_back({a->index, std::move(v)});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

SparseVector& SparseVector::operator+=(const SparseVector& other) {
  axpy(1, other);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other) {
  axpy(-1, other);
  return *this;
}

SparseVector& SparseVector::operator*=(const Int& scalar) {
  if (scalar == 0) {
    entries_.clear();
  } else {
    for (auto& e : entries_) e.value *= scalar;
  }
  return *this;
}

SparseVector SparseVector::operator-() const {
  SparseVector out = *this;
  for (auto& e : out.entries_) e.value = -e.value;
  return out;
}

SparseMatrix::SparseMatrix(int rows, std::vector<SparseVector> columns)
    : rows_(rows), cols_(int(columns.size())), data_(std::move(columns)) {}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i] = SparseVector::unit(i);
  return m;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  if (x.max_index() >= cols_) throw AmbientMismatch("vector index exceeds matrix columns");
  std::vector<Entry> terms;
  for (const auto& e : x) {
    for (const auto& c : data_[e.index]) terms.push_back({c.index, e.value * c.value});
  }
  return SparseVector::from_terms(std::move(terms));
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::vector<Entry>> rows(rows_);
  for (int j = 0; j < cols_; ++j)
    for (const auto& e : data_[j]) rows[e.index].push_back({j, e.value});
  SparseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) t.data_[i] = SparseVector::from_terms(std::move(rows[i]));
  return t;
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& other) const {
  if (cols_ != other.rows_) throw AmbientMismatch("matrix product dimension mismatch");
  SparseMatrix out(rows_, other.cols_);
  for (int j = 0; j < other.cols_; ++j) out.data_[j] = apply(other.data_[j]);
  return out;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(int(rows.size())), cols_(rows.size() ? int(rows.begin()->size()) : 0) {
  data_.reserve(std::size_t(rows_) * cols_);
  for (const auto& r : rows) {
    if (int(r.size()) != cols_) throw UsageError("ragged matrix literal");
    for (long long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

SparseVector IntMatrix::row(int i) const {
  return SparseVector::from_dense(std::span<const Int>(data_.data() + std::size_t(i) * cols_, cols_));
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw AmbientMismatch("matrix product dimension mismatch");
  IntMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Int determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw AmbientMismatch("determinant of a non-square matrix");
  const int n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace gr2
