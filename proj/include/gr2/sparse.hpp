#pragma once

#include "gr2/integer.hpp"

#include <span>
#include <vector>

namespace gr2 {

struct Entry {
  int index;
  Int value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Exact integer vector stored as strictly increasing (index, nonzero value) pairs.
class SparseVector {
 public:
  SparseVector() = default;

  /// Sorts, merges duplicate indices and drops zeros.
  static SparseVector from_terms(std::vector<Entry> terms);
  static SparseVector unit(int index, Int value = 1);
  static SparseVector from_dense(std::span<const Int> dense);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Coefficient at `index` (zero when absent).
  Int at(int index) const;
  int lead_index() const { return entries_.front().index; }
  const Int& lead_value() const { return entries_.front().value; }
  int max_index() const { return entries_.empty() ? -1 : entries_.back().index; }

  std::vector<Int> to_dense(int dim) const;

  SparseVector& operator+=(const SparseVector& other);
  SparseVector& operator-=(const SparseVector& other);
  SparseVector& operator*=(const Int& scalar);
  SparseVector operator-() const;

  /// this += scalar * other
  void axpy(const Int& scalar, const SparseVector& other);

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Int& s, SparseVector a) { return a *= s; }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;

  /// Appends an entry; the caller guarantees increasing indices and nonzero value.
  void push_back(int index, Int value) { entries_.push_back({index, std::move(value)}); }

 private:
  std::vector<Entry> entries_;
};

/// Column-major sparse integer matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(cols) {}
  SparseMatrix(int rows, std::vector<SparseVector> columns);

  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVector& column(int j) const { return data_[j]; }
  SparseVector& column(int j) { return data_[j]; }
  const std::vector<SparseVector>& columns() const { return data_; }

  /// Matrix-vector product.
  SparseVector apply(const SparseVector& x) const;
  SparseMatrix transpose() const;
  /// Product this * other.
  SparseMatrix compose(const SparseMatrix& other) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVector> data_;
};

/// Dense row-major exact integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  SparseVector row(int i) const;
  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix transpose() const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

/// Exact determinant by fraction-free elimination.
Int determinant(const IntMatrix& m);

}  // namespace gr2
