#include "gr2/lattice.hpp"

#include "gr2/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <numeric>

namespace gr2 {

namespace {

std::size_t position_after(const SparseVector& v, int col) {
  const auto& e = v.entries();
  return std::size_t(std::upper_bound(e.begin(), e.end(), col,
                                      [](int c, const Entry& x) { return c < x.index; }) -
                     e.begin());
}

std::string sha256_hex(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LatticeBasis

LatticeBasis::LatticeBasis(int ambient) : n_(ambient), slot_of_pivot_(ambient, -1), users_(ambient) {}

LatticeBasis LatticeBasis::from_rows(int ambient, const std::vector<SparseVector>& rows) {
  LatticeBasis b(ambient);
  for (const auto& r : rows) b.insert(r);
  return b;
}

void LatticeBasis::check_ambient(const SparseVector& v) const {
  if (!v.empty() && (v.lead_index() < 0 || v.max_index() >= n_))
    throw AmbientMismatch("vector index " + std::to_string(v.max_index()) + " outside ambient rank " +
                          std::to_string(n_));
}

void LatticeBasis::reduce_after(SparseVector& v, int after) const {
  std::size_t k = position_after(v, after);
  while (k < v.size()) {
    const int c = v.entries()[k].index;
    const int s = slot_of_pivot_[c];
    if (s < 0) {
      ++k;
      continue;
    }
    const SparseVector& row = slots_[s];
    Int q = floor_div(v.entries()[k].value, row.lead_value());
    if (q != 0) v.axpy(-q, row);
    k = position_after(v, c);
  }
}

SparseVector LatticeBasis::reduce(SparseVector v) const {
  check_ambient(v);
  reduce_after(v, -1);
  return v;
}

bool LatticeBasis::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  add_reduced(std::move(r));
  return true;
}

void LatticeBasis::register_row(int slot) {
  const SparseVector& row = slots_[slot];
  for (std::size_t k = 1; k < row.size(); ++k) users_[row.entries()[k].index].push_back(slot);
}

void LatticeBasis::fix_column(int col, int source_slot) {
  std::vector<int> users = std::move(users_[col]);
  users_[col].clear();
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  std::vector<int> live;
  const SparseVector& source = slots_[source_slot];
  const Int& d = source.lead_value();
  for (int u : users) {
    if (u == source_slot) continue;
    SparseVector& row = slots_[u];
    Int x = row.at(col);
    if (x == 0) continue;
    Int q = floor_div(x, d);
    if (q != 0) {
      row.axpy(-q, source);
      reduce_after(row, col);
      register_row(u);
    }
    if (row.at(col) != 0) live.push_back(u);
  }
  users_[col] = std::move(live);
}

void LatticeBasis::add_reduced(SparseVector v) {
  while (!v.empty()) {
    const int p = v.lead_index();
    const int s = slot_of_pivot_[p];
    if (s < 0) {
      if (v.lead_value() < 0) {
        v = -v;
        reduce_after(v, p);
      }
      const int slot = int(slots_.size());
      slots_.push_back(std::move(v));
      slot_of_pivot_[p] = slot;
      register_row(slot);
      fix_column(p, slot);
      return;
    }
    // p already carries a pivot d and 0 < v[p] < d: replace the pivot by gcd
    SparseVector row = slots_[s];
    const Int d = row.lead_value();
    const Int a = v.lead_value();
    auto [g, x, y] = xgcd(d, a);
    SparseVector merged = x * row;
    merged.axpy(y, v);
    SparseVector rest = (a / g) * row;
    rest.axpy(-(d / g), v);
    reduce_after(merged, p);
    slots_[s] = std::move(merged);
    register_row(s);
    fix_column(p, s);
    v = reduce(std::move(rest));
  }
}

std::vector<SparseVector> LatticeBasis::rows() const {
  std::vector<SparseVector> out;
  out.reserve(slots_.size());
  for (int p = 0; p < n_; ++p)
    if (slot_of_pivot_[p] >= 0) out.push_back(slots_[slot_of_pivot_[p]]);
  return out;
}

std::vector<int> LatticeBasis::pivot_columns() const {
  std::vector<int> out;
  for (int p = 0; p < n_; ++p)
    if (slot_of_pivot_[p] >= 0) out.push_back(p);
  return out;
}

Int LatticeBasis::pivot_product() const {
  Int prod = 1;
  for (const auto& r : slots_) prod *= r.lead_value();
  return prod;
}

std::optional<std::vector<Int>> LatticeBasis::coordinates(const SparseVector& v) const {
  check_ambient(v);
  SparseVector w = v;
  std::vector<Int> out;
  for (int p = 0; p < n_; ++p) {
    const int s = slot_of_pivot_[p];
    if (s < 0) continue;
    const SparseVector& row = slots_[s];
    Int c = w.at(p);
    if (c % row.lead_value() != 0) return std::nullopt;
    c /= row.lead_value();
    if (c != 0) w.axpy(-c, row);
    out.push_back(std::move(c));
  }
  if (!w.empty()) return std::nullopt;
  return out;
}

std::string LatticeBasis::serialize() const {
  std::string s = "n=" + std::to_string(n_) + ";";
  for (const auto& row : rows()) {
    bool first = true;
    for (const auto& e : row) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(e.index);
      s += ':';
      s += e.value.str();
    }
    s += ';';
  }
  return s;
}

std::string LatticeBasis::digest() const { return sha256_hex(serialize()); }

IntMatrix LatticeBasis::to_matrix() const {
  auto r = rows();
  IntMatrix m(int(r.size()), n_);
  for (int i = 0; i < int(r.size()); ++i)
    for (const auto& e : r[i]) m(i, e.index) = e.value;
  return m;
}

bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
  return a.n_ == b.n_ && a.rank() == b.rank() && a.rows() == b.rows();
}

// ---------------------------------------------------------------------------
// Normal forms

IntMatrix hnf(const IntMatrix& m) {
  LatticeBasis b(m.cols());
  for (int i = 0; i < m.rows(); ++i) b.insert(m.row(i));
  return b.to_matrix();
}

namespace {

void swap_rows(IntMatrix& a, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
}

void swap_cols(IntMatrix& a, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
}

// row_i += q * row_j
void add_row(IntMatrix& a, int i, int j, const Int& q) {
  for (int k = 0; k < a.cols(); ++k)
    if (a(j, k) != 0) a(i, k) += q * a(j, k);
}

// col_i += q * col_j
void add_col(IntMatrix& a, int i, int j, const Int& q) {
  for (int k = 0; k < a.rows(); ++k)
    if (a(k, j) != 0) a(k, i) += q * a(k, j);
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  const int r = m.rows();
  const int c = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(r);
  IntMatrix v = IntMatrix::identity(c);
  int t = 0;
  for (; t < std::min(r, c); ++t) {
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < best)) {
          best = abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(a, t, pi);
    swap_rows(u, t, pi);
    swap_cols(a, t, pj);
    swap_cols(v, t, pj);
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int q = floor_div(a(i, t), a(t, t));
        add_row(a, i, t, -q);
        add_row(u, i, t, -q);
        if (a(i, t) != 0) {
          swap_rows(a, i, t);
          swap_rows(u, i, t);
          clean = false;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int q = floor_div(a(t, j), a(t, t));
        add_col(a, j, t, -q);
        add_col(v, j, t, -q);
        if (a(t, j) != 0) {
          swap_cols(a, j, t);
          swap_cols(v, j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(a, t, bad, 1);
      add_row(u, t, bad, 1);
    }
    if (a(t, t) < 0) {
      for (int k = 0; k < c; ++k) a(t, k) = -a(t, k);
      for (int k = 0; k < r; ++k) u(t, k) = -u(t, k);
    }
  }
  SmithForm out;
  for (int i = 0; i < t; ++i) out.factors.push_back(a(i, i));
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

std::vector<Int> invariant_factors(const LatticeBasis& lattice) {
  // In reduced HNF a unit-pivot row owns its pivot column outright, so each
  // splits off an invariant factor 1 by column operations touching only
  // that row. The remaining rows form a small dense core.
  std::vector<Int> out;
  std::vector<SparseVector> core;
  for (auto& row : lattice.rows()) {
    if (row.lead_value() == 1)
      out.push_back(1);
    else
      core.push_back(std::move(row));
  }
  if (core.empty()) return out;
  std::vector<int> cols;
  for (const auto& r : core)
    for (const auto& e : r) cols.push_back(e.index);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  IntMatrix dense(int(core.size()), int(cols.size()));
  for (int i = 0; i < int(core.size()); ++i)
    for (const auto& e : core[i]) {
      int j = int(std::lower_bound(cols.begin(), cols.end(), e.index) - cols.begin());
      dense(i, j) = e.value;
    }
  for (auto& f : snf(dense).factors) out.push_back(std::move(f));
  return out;
}

// ---------------------------------------------------------------------------
// Kernels

namespace {

std::vector<SparseVector> kernel_rows_reference(const SparseMatrix& m) {
  const int r = m.rows();
  const int c = m.cols();
  LatticeBasis aug(r + c);
  for (int j = 0; j < c; ++j) {
    SparseVector v = m.column(j);
    v.push_back(r + j, 1);
    aug.insert(v);
  }
  std::vector<SparseVector> out;
  for (const auto& row : aug.rows()) {
    if (row.lead_index() < r) continue;
    SparseVector k;
    for (const auto& e : row) k.push_back(e.index - r, e.value);
    out.push_back(std::move(k));
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

LatticeBasis integer_kernel(const SparseMatrix& m, Execution exec) {
  LatticeBasis result(m.cols());
  if (exec == Execution::Serial) {
    for (const auto& k : kernel_rows_reference(m)) result.insert(k);
    return result;
  }
  const int c = m.cols();
  SparseMatrix rows = m.transpose();  // column i of `rows` = row i of m
  UnionFind uf(c);
  for (int i = 0; i < m.rows(); ++i) {
    const auto& e = rows.column(i).entries();
    for (std::size_t k = 1; k < e.size(); ++k) uf.unite(e[0].index, e[k].index);
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(c, -1);
  for (int j = 0; j < c; ++j) {
    int root = uf.find(j);
    if (block_of[root] < 0) {
      block_of[root] = int(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(j);
  }
  std::vector<std::vector<SparseVector>> solved(blocks.size());
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < int(blocks.size()); ++b) {
    const auto& cols = blocks[b];
    std::vector<int> row_ids;
    for (int j : cols)
      for (const auto& e : m.column(j)) row_ids.push_back(e.index);
    std::sort(row_ids.begin(), row_ids.end());
    row_ids.erase(std::unique(row_ids.begin(), row_ids.end()), row_ids.end());
    std::vector<SparseVector> local_cols;
    local_cols.reserve(cols.size());
    for (int j : cols) {
      SparseVector v;
      for (const auto& e : m.column(j)) {
        int li = int(std::lower_bound(row_ids.begin(), row_ids.end(), e.index) - row_ids.begin());
        v.push_back(li, e.value);
      }
      local_cols.push_back(std::move(v));
    }
    SparseMatrix local(int(row_ids.size()), std::move(local_cols));
    for (const auto& k : kernel_rows_reference(local)) {
      SparseVector g;
      for (const auto& e : k) g.push_back(cols[e.index], e.value);
      solved[b].push_back(std::move(g));
    }
  }
  for (const auto& part : solved)
    for (const auto& k : part) result.insert(k);
  return result;
}

// ---------------------------------------------------------------------------
// Lattice relations

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch("lattices live in different ambients");
  return a == b;
}

std::optional<Int> lattice_index(const LatticeBasis& super, const LatticeBasis& sub) {
  if (super.ambient_rank() != sub.ambient_rank())
    throw AmbientMismatch("lattices live in different ambients");
  for (const auto& r : sub.rows())
    if (!super.contains(r)) throw MathFailure("lattice_index: second lattice is not contained in the first");
  if (super.rank() != sub.rank()) return std::nullopt;
  return sub.pivot_product() / super.pivot_product();
}

LatticeBasis lattice_sum(const std::vector<const LatticeBasis*>& parts) {
  if (parts.empty()) throw UsageError("lattice_sum of nothing");
  LatticeBasis out(parts.front()->ambient_rank());
  for (const auto* p : parts) {
    if (p->ambient_rank() != out.ambient_rank()) throw AmbientMismatch("lattices live in different ambients");
    for (const auto& r : p->rows()) out.insert(r);
  }
  return out;
}

LatticeBasis intersect_coordinates(const LatticeBasis& lattice, const std::vector<bool>& block) {
  const int n = lattice.ambient_rank();
  if (int(block.size()) != n) throw AmbientMismatch("block mask size differs from ambient rank");
  // Put the forbidden coordinates first; HNF rows whose pivot falls in the
  // allowed region then span exactly the intersection.
  std::vector<int> to_new(n), to_old(n);
  int next = 0;
  for (int j = 0; j < n; ++j)
    if (!block[j]) to_new[j] = next++;
  const int forbidden = next;
  for (int j = 0; j < n; ++j)
    if (block[j]) to_new[j] = next++;
  for (int j = 0; j < n; ++j) to_old[to_new[j]] = j;

  LatticeBasis permuted(n);
  for (const auto& r : lattice.rows()) {
    std::vector<Entry> t;
    for (const auto& e : r) t.push_back({to_new[e.index], e.value});
    permuted.insert(SparseVector::from_terms(std::move(t)));
  }
  LatticeBasis out(n);
  for (const auto& r : permuted.rows()) {
    if (r.lead_index() < forbidden) continue;
    std::vector<Entry> t;
    for (const auto& e : r) t.push_back({to_old[e.index], e.value});
    out.insert(SparseVector::from_terms(std::move(t)));
  }
  return out;
}

LatticeBasis mod2_kernel(int ambient, const std::vector<SparseVector>& basis,
                         const std::vector<BitVector>& images) {
  if (basis.size() != images.size()) throw AmbientMismatch("basis and image counts differ");
  LatticeBasis out(ambient);
  for (const auto& b : basis) out.insert(2 * b);
  if (images.empty()) return out;
  for (const auto& combo : gf2_left_nullspace(images, images.front().size())) {
    SparseVector v;
    for (int i : combo.ones()) v += basis[i];
    out.insert(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closure

namespace {

void check_endos(int ambient, const std::vector<SparseMatrix>& endos) {
  for (const auto& m : endos)
    if (m.rows() != ambient || m.cols() != ambient)
      throw AmbientMismatch("endomorphism is not square on the ambient lattice");
}

}  // namespace

ClosureResult span_closure(int ambient, const std::vector<SparseVector>& gens,
                           const std::vector<SparseMatrix>& endos, Execution exec) {
  check_endos(ambient, endos);
  ClosureResult out{LatticeBasis(ambient), 0};
  std::vector<SparseVector> level = gens;
  const int e = int(endos.size());
  while (!level.empty()) {
    std::vector<SparseVector> grew;
    for (auto& v : level)
      if (out.lattice.insert(v)) grew.push_back(std::move(v));
    if (grew.empty()) break;
    ++out.iterations;
    std::vector<SparseVector> next(grew.size() * e);
    const long total = long(next.size());
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
      for (long k = 0; k < total; ++k) next[k] = endos[k % e].apply(grew[k / e]);
    } else {
      for (long k = 0; k < total; ++k) next[k] = endos[k % e].apply(grew[k / e]);
    }
    level = std::move(next);
  }
  return out;
}

ClosureResult span_closure_reference(int ambient, const std::vector<SparseVector>& gens,
                                     const std::vector<SparseMatrix>& endos) {
  check_endos(ambient, endos);
  ClosureResult out{LatticeBasis::from_rows(ambient, gens), 0};
  bool changed = true;
  while (changed) {
    changed = false;
    ++out.iterations;
    for (const auto& r : out.lattice.rows())
      for (const auto& m : endos)
        if (out.lattice.insert(m.apply(r))) changed = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// QuotientLattice

QuotientLattice::QuotientLattice(int ambient, const std::vector<SparseVector>& relations)
    : relations_(LatticeBasis::from_rows(ambient, relations)),
      factors_(gr2::invariant_factors(relations_)),
      free_position_(ambient, -1) {
  std::vector<bool> is_pivot(ambient, false);
  for (const auto& r : relations_.rows()) {
    is_pivot[r.lead_index()] = true;
    if (r.lead_value() > 1) torsion_columns_.push_back(r.lead_index());
  }
  for (int j = 0; j < ambient; ++j)
    if (!is_pivot[j]) {
      free_position_[j] = int(free_columns_.size());
      free_columns_.push_back(j);
    }
}

std::vector<Int> QuotientLattice::torsion() const {
  std::vector<Int> t;
  for (const auto& f : factors_)
    if (f > 1) t.push_back(f);
  return t;
}

bool QuotientLattice::torsion_free() const { return torsion().empty(); }

SparseVector QuotientLattice::reduce(const SparseVector& v) const { return relations_.reduce(v); }

std::vector<Int> QuotientLattice::coordinates(const SparseVector& v) const {
  SparseVector r = reduce(v);
  std::vector<Int> out;
  out.reserve(free_columns_.size() + torsion_columns_.size());
  for (int c : free_columns_) out.push_back(r.at(c));
  for (int c : torsion_columns_) out.push_back(r.at(c));
  return out;
}

}  // namespace gr2
