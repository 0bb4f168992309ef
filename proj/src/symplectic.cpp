#include "gr2/symplectic.hpp"

#include "gr2/errors.hpp"

#include <cctype>

namespace gr2 {

Symbol Symbol::parse(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'a' && text[0] != 'b'))
    throw ParseError("not a basis symbol: '" + text + "'");
  int i = 0;
  for (std::size_t k = 1; k < text.size(); ++k) {
    if (!std::isdigit((unsigned char)text[k])) throw ParseError("not a basis symbol: '" + text + "'");
    i = i * 10 + (text[k] - '0');
    if (i > 1000) throw ParseError("symbol index too large: '" + text + "'");
  }
  if (i < 1) throw ParseError("symbol index must be positive: '" + text + "'");
  return text[0] == 'a' ? a(i) : b(i);
}

std::string Symbol::str() const { return (is_a() ? "a" : "b") + std::to_string(index()); }

// ---------------------------------------------------------------------------

SymVector::SymVector(int genus) : genus_(genus), coords_(2 * genus) { require_genus(genus); }

SymVector::SymVector(int genus, Symbol s, Int coeff) : SymVector(genus) {
  if (s.index() > genus) throw AmbientMismatch("symbol " + s.str() + " exceeds genus " + std::to_string(genus));
  coords_[s.id()] = std::move(coeff);
}

SymVector SymVector::parse(int genus, const std::string& text) {
  SymVector out(genus);
  std::size_t k = 0;
  auto skip = [&] {
    while (k < text.size() && std::isspace((unsigned char)text[k])) ++k;
  };
  bool any = false;
  while (true) {
    skip();
    if (k == text.size()) break;
    int sign = 1;
    if (text[k] == '+' || text[k] == '-') {
      sign = text[k] == '-' ? -1 : 1;
      ++k;
      skip();
    } else if (any) {
      throw ParseError("expected '+' or '-' in '" + text + "'");
    }
    Int coeff = 1;
    std::size_t start = k;
    while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
    if (k > start) coeff = Int(text.substr(start, k - start));
    skip();
    if (k < text.size() && text[k] == '*') {
      ++k;
      skip();
    }
    start = k;
    if (k < text.size() && (text[k] == 'a' || text[k] == 'b')) ++k;
    while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
    Symbol s = Symbol::parse(text.substr(start, k - start));
    out += SymVector(genus, s, sign * coeff);
    any = true;
  }
  if (!any) throw ParseError("empty homology expression");
  return out;
}

bool SymVector::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

std::string SymVector::str() const {
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    const Int& c = coords_[i];
    if (c == 0) continue;
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Int m = abs(c);
    if (m != 1) s += m.str();
    s += Symbol(i).str();
  }
  return s.empty() ? "0" : s;
}

SymVector& SymVector::operator+=(const SymVector& o) {
  if (o.genus_ != genus_) throw AmbientMismatch("genus mismatch");
  for (int i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

SymVector& SymVector::operator-=(const SymVector& o) {
  if (o.genus_ != genus_) throw AmbientMismatch("genus mismatch");
  for (int i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

SymVector operator*(const Int& c, SymVector x) {
  for (auto& v : x.coords_) v *= c;
  return x;
}

Int omega(const SymVector& x, const SymVector& y) {
  if (x.genus() != y.genus()) throw AmbientMismatch("genus mismatch");
  Int s = 0;
  for (int i = 0; i < x.genus(); ++i) s += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
  return s;
}

// ---------------------------------------------------------------------------

SpMatrix::SpMatrix(int genus) : genus_(genus), m_(IntMatrix::identity(2 * genus)) { require_genus(genus); }

SpMatrix::SpMatrix(int genus, IntMatrix entries) : genus_(genus), m_(std::move(entries)) {
  require_genus(genus);
  if (m_.rows() != 2 * genus || m_.cols() != 2 * genus) throw AmbientMismatch("matrix size does not match genus");
}

SymVector SpMatrix::image(Symbol s) const {
  SymVector v(genus_);
  for (int i = 0; i < 2 * genus_; ++i) v[i] = m_(i, s.id());
  return v;
}

SymVector SpMatrix::apply(const SymVector& x) const {
  if (x.genus() != genus_) throw AmbientMismatch("genus mismatch");
  SymVector v(genus_);
  for (int j = 0; j < 2 * genus_; ++j) {
    if (x[j] == 0) continue;
    for (int i = 0; i < 2 * genus_; ++i)
      if (m_(i, j) != 0) v[i] += m_(i, j) * x[j];
  }
  return v;
}

SpMatrix SpMatrix::operator*(const SpMatrix& o) const {
  if (o.genus_ != genus_) throw AmbientMismatch("genus mismatch");
  return SpMatrix(genus_, m_ * o.m_);
}

SpMatrix SpMatrix::inverse() const {
  IntMatrix w = omega_gram(genus_);
  IntMatrix winv = w.transpose();  // Omega^{-1} = -Omega = Omega^T
  return SpMatrix(genus_, winv * m_.transpose() * w);
}

bool SpMatrix::is_symplectic() const {
  IntMatrix w = omega_gram(genus_);
  return m_.transpose() * w * m_ == w;
}

IntMatrix omega_gram(int genus) {
  IntMatrix w(2 * genus, 2 * genus);
  for (int i = 0; i < 2 * genus; ++i)
    for (int j = 0; j < 2 * genus; ++j) w(i, j) = omega(Symbol(i), Symbol(j));
  return w;
}

SpMatrix quarter_turn(int genus, int i) {
  if (i < 1 || i > genus) throw UsageError("quarter_turn index out of range");
  return partial_symplectic({{Symbol::a(i), -SymVector(genus, Symbol::b(i))},
                             {Symbol::b(i), SymVector(genus, Symbol::a(i))}},
                            genus);
}

SpMatrix handle_swap(int genus, int i, int j) {
  if (i < 1 || j < 1 || i > genus || j > genus || i == j) throw UsageError("handle_swap indices out of range");
  return partial_symplectic({{Symbol::a(i), SymVector(genus, Symbol::a(j))},
                             {Symbol::b(i), SymVector(genus, Symbol::b(j))},
                             {Symbol::a(j), SymVector(genus, Symbol::a(i))},
                             {Symbol::b(j), SymVector(genus, Symbol::b(i))}},
                            genus);
}

std::vector<SpMatrix> g_generators(int genus) {
  require_genus(genus);
  std::vector<SpMatrix> out;
  for (int i = 1; i <= genus; ++i) out.push_back(quarter_turn(genus, i));
  for (int i = 1; i <= genus; ++i)
    for (int j = i + 1; j <= genus; ++j) out.push_back(handle_swap(genus, i, j));
  return out;
}

std::vector<SpMatrix> g_closure_generators(int genus) {
  require_genus(genus);
  std::vector<SpMatrix> out;
  for (int i = 1; i <= genus; ++i) out.push_back(quarter_turn(genus, i));
  for (int i = 1; i < genus; ++i) out.push_back(handle_swap(genus, i, i + 1));
  return out;
}

SpMatrix partial_symplectic(const std::map<Symbol, SymVector>& images, int genus) {
  require_genus(genus);
  IntMatrix m = IntMatrix::identity(2 * genus);
  for (const auto& [s, v] : images) {
    if (s.index() > genus) throw AmbientMismatch("symbol " + s.str() + " exceeds genus");
    if (v.genus() != genus) throw AmbientMismatch("image has the wrong genus");
    for (int i = 0; i < 2 * genus; ++i) m(i, s.id()) = v[i];
  }
  SpMatrix out(genus, std::move(m));
  for (int i = 0; i < 2 * genus; ++i)
    for (int j = i + 1; j < 2 * genus; ++j) {
      Symbol s(i), t(j);
      if (omega(out.image(s), out.image(t)) != omega(s, t))
        throw NonSymplectic("omega(" + s.str() + ", " + t.str() + ") = " + std::to_string(omega(s, t)) +
                            " but omega of the images (" + out.image(s).str() + ", " + out.image(t).str() +
                            ") = " + to_string(omega(out.image(s), out.image(t))));
    }
  return out;
}

SpMatrix map_C1(int genus) {
  return partial_symplectic({{Symbol::b(1), SymVector(genus, Symbol::b(1)) + SymVector(genus, Symbol::a(1))}},
                            genus);
}

SpMatrix map_D(int genus, int i) {
  if (i < 1 || i >= genus) throw UsageError("D_i needs 1 <= i < g");
  return partial_symplectic(
      {{Symbol::b(i), SymVector(genus, Symbol::b(i)) + SymVector(genus, Symbol::a(i + 1))},
       {Symbol::b(i + 1), SymVector(genus, Symbol::b(i + 1)) + SymVector(genus, Symbol::a(i))}},
      genus);
}

// ---------------------------------------------------------------------------

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                    std::uint32_t(stream >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
  engine_.seed(seq);
}

namespace {

SpMatrix transvection(const SymVector& v, int sign) {
  const int g = v.genus();
  IntMatrix m = IntMatrix::identity(2 * g);
  for (int j = 0; j < 2 * g; ++j) {
    Int w = omega(SymVector(g, Symbol(j)), v) * sign;
    if (w == 0) continue;
    for (int i = 0; i < 2 * g; ++i) m(i, j) += w * v[i];
  }
  return SpMatrix(g, std::move(m));
}

std::vector<SpMatrix> random_pool(int genus) {
  std::vector<SymVector> centers;
  for (int s = 0; s < 2 * genus; ++s) centers.emplace_back(genus, Symbol(s));
  for (int i = 1; i < genus; ++i) {
    centers.push_back(SymVector(genus, Symbol::a(i)) + SymVector(genus, Symbol::a(i + 1)));
    centers.push_back(SymVector(genus, Symbol::b(i)) + SymVector(genus, Symbol::b(i + 1)));
    centers.push_back(SymVector(genus, Symbol::a(i)) + SymVector(genus, Symbol::b(i + 1)));
  }
  std::vector<SpMatrix> pool;
  for (const auto& v : centers) {
    pool.push_back(transvection(v, 1));
    pool.push_back(transvection(v, -1));
  }
  for (auto& m : g_generators(genus)) pool.push_back(std::move(m));
  return pool;
}

}  // namespace

SpMatrix random_symplectic(int genus, Rng& rng, int steps) {
  require_genus(genus);
  if (steps < 0) throw UsageError("steps must be non-negative");
  const auto pool = random_pool(genus);
  SpMatrix m(genus);
  for (int k = 0; k < steps; ++k) m = m * pool[rng.below(pool.size())];
  return m;
}

SpMatrix random_symplectic(int genus, std::uint64_t seed, int steps) {
  Rng rng(seed);
  return random_symplectic(genus, rng, steps);
}

SymVector random_symvector(int genus, Rng& rng, int bound) {
  SymVector v(genus);
  for (int i = 0; i < 2 * genus; ++i) v[i] = rng.between(-bound, bound);
  return v;
}

}  // namespace gr2
