#include "aplab/homology.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "json.hpp"

namespace aplab {

using BigInt = boost::multiprecision::cpp_int;
using BigRow = std::vector<BigInt>;
using BigMatrix = std::vector<BigRow>;

int thread_count() { return omp_get_max_threads(); }

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer matrix entry overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer matrix entry overflow");
  return r;
}

BigMatrix to_big(const IntegerMatrix& m) {
  BigMatrix out(static_cast<std::size_t>(m.dim()), BigRow(static_cast<std::size_t>(m.dim())));
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  }
  return out;
}

BigMatrix big_mul(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  BigMatrix c(n, BigRow(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

BigMatrix big_pow(BigMatrix base, std::int64_t k) {
  const std::size_t n = base.size();
  BigMatrix result(n, BigRow(n));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = 1;
  while (k > 0) {
    if (k & 1) result = big_mul(result, base);
    k >>= 1;
    if (k > 0) base = big_mul(base, base);
  }
  return result;
}

std::int64_t to_int64(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<std::int64_t>::max()) || x < BigInt(std::numeric_limits<std::int64_t>::min())) {
    throw std::overflow_error("lattice entry exceeds 64 bits");
  }
  return static_cast<std::int64_t>(x);
}

// Row echelon form by unimodular row operations. `rows` may carry extra
// columns beyond `pivot_cols`; operations apply to the whole row. Returns the
// number of nonzero rows (they come first).
std::size_t echelonize(BigMatrix& rows, std::size_t pivot_cols) {
  std::size_t prow = 0;
  for (std::size_t c = 0; c < pivot_cols && prow < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = prow; r < rows.size(); ++r) {
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[prow], rows[best]);
      bool cleared = true;
      for (std::size_t r = prow + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const BigInt q = rows[r][c] / rows[prow][c];
        for (std::size_t j = 0; j < rows[r].size(); ++j) rows[r][j] -= q * rows[prow][j];
        if (rows[r][c] != 0) cleared = false;
      }
      if (cleared) {
        ++prow;
        break;
      }
    }
  }
  return prow;
}

// Integer kernel {v : A v = 0} of a rows x n matrix, as basis vectors.
BigMatrix integer_kernel(const BigMatrix& a, std::size_t n) {
  // Transpose augmented with the identity; zero rows of the A^T part carry kernel vectors.
  BigMatrix aug(n, BigRow(a.size() + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < a.size(); ++r) aug[i][r] = a[r][i];
    aug[i][a.size() + i] = 1;
  }
  const std::size_t rank = echelonize(aug, a.size());
  BigMatrix kernel;
  for (std::size_t i = rank; i < n; ++i) kernel.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(a.size()), aug[i].end());
  return kernel;
}

// Row Hermite normal form; zero rows dropped.
std::vector<IntVector> hermite(BigMatrix rows, std::size_t n) {
  const std::size_t rank = echelonize(rows, n);
  rows.resize(rank);
  std::size_t col = 0;
  for (std::size_t r = 0; r < rank; ++r) {
    while (rows[r][col] == 0) ++col;
    if (rows[r][col] < 0) {
      for (auto& x : rows[r]) x = -x;
    }
    for (std::size_t up = 0; up < r; ++up) {
      BigInt q = rows[up][col] / rows[r][col];
      if (rows[up][col] - q * rows[r][col] < 0) q -= 1;
      if (q != 0) {
        for (std::size_t j = 0; j < n; ++j) rows[up][j] -= q * rows[r][j];
      }
    }
    ++col;
  }
  std::vector<IntVector> out;
  for (const auto& row : rows) {
    IntVector v;
    for (const auto& x : row) v.push_back(to_int64(x));
    out.push_back(std::move(v));
  }
  return out;
}

Sublattice saturated_kernel(const BigMatrix& a, int n) {
  const BigMatrix kernel = integer_kernel(a, static_cast<std::size_t>(n));
  std::vector<IntVector> gens;
  for (const auto& row : kernel) {
    IntVector v;
    for (const auto& x : row) v.push_back(to_int64(x));
    gens.push_back(std::move(v));
  }
  // A kernel over Z is already saturated; saturated_span normalizes the basis.
  return Sublattice::saturated_span(n, gens);
}

void require_unimodular(const IntegerMatrix& m) {
  if (!m.is_unimodular()) throw NotInvertible("matrix is not in GL_n(Z): |det| != 1");
}

BigMatrix minus_identity(BigMatrix m) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= 1;
  return m;
}

}  // namespace

// ---------------------------------------------------------------- matrices

IntegerMatrix::IntegerMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), 0) {
  if (n < 0) throw std::invalid_argument("negative matrix dimension");
}

IntegerMatrix IntegerMatrix::identity(int n) {
  IntegerMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows) {
  const int n = static_cast<int>(rows.size());
  IntegerMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) throw std::invalid_argument("matrix is not square");
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix c(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const auto aik = (*this)(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n_; ++j) c(i, j) = checked_add(c(i, j), checked_mul(aik, rhs(k, j)));
    }
  }
  return c;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix c(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = checked_add(a_[i], -rhs.a_[i]);
  return c;
}

IntVector IntegerMatrix::operator*(const IntVector& v) const {
  if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("dimension mismatch");
  IntVector out(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      out[static_cast<std::size_t>(i)] =
          checked_add(out[static_cast<std::size_t>(i)], checked_mul((*this)(i, j), v[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

IntegerMatrix IntegerMatrix::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative matrix power");
  IntegerMatrix result = identity(n_);
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::int64_t IntegerMatrix::det() const {
  if (n_ == 0) return 1;
  // Bareiss fraction-free elimination.
  BigMatrix m = to_big(*this);
  const std::size_t n = m.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return to_int64(sign * m[n - 1][n - 1]);
}

bool IntegerMatrix::is_identity() const { return *this == identity(n_); }

Mod3Matrix::Mod3Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), 0) {}

Mod3Matrix Mod3Matrix::identity(int n) {
  Mod3Matrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mod3Matrix Mod3Matrix::reduce(const IntegerMatrix& m) {
  Mod3Matrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out.set(i, j, m(i, j));
  }
  return out;
}

void Mod3Matrix::set(int i, int j, long long value) {
  a_[static_cast<std::size_t>(i * n_ + j)] = static_cast<std::uint8_t>(((value % 3) + 3) % 3);
}

Mod3Matrix Mod3Matrix::operator*(const Mod3Matrix& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("dimension mismatch");
  Mod3Matrix c(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      int s = 0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * rhs(k, j);
      c.set(i, j, s);
    }
  }
  return c;
}

// ---------------------------------------------------------------- lattices

Sublattice Sublattice::saturated_span(int ambient, const std::vector<IntVector>& generators) {
  const auto n = static_cast<std::size_t>(ambient);
  BigMatrix gens;
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("generator has wrong dimension");
    gens.emplace_back(g.begin(), g.end());
  }
  // Saturation = Z^n intersected with the orthogonal of the orthogonal.
  const BigMatrix perp = integer_kernel(gens, n);
  const BigMatrix sat = integer_kernel(perp, n);
  Sublattice out(ambient);
  out.basis_ = hermite(sat, n);
  return out;
}

Sublattice Sublattice::full(int ambient) {
  std::vector<IntVector> gens;
  for (int i = 0; i < ambient; ++i) {
    IntVector e(static_cast<std::size_t>(ambient), 0);
    e[static_cast<std::size_t>(i)] = 1;
    gens.push_back(e);
  }
  return saturated_span(ambient, gens);
}

bool Sublattice::contains(const IntVector& v) const {
  if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("vector has wrong dimension");
  auto with = basis_;
  with.push_back(v);
  return rational_rank(with) == rank();
}

int rational_rank(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  BigMatrix rows;
  for (const auto& v : vectors) rows.emplace_back(v.begin(), v.end());
  return static_cast<int>(echelonize(rows, vectors.front().size()));
}

std::vector<std::vector<int>> mod3_span(const std::vector<IntVector>& vectors) {
  std::vector<std::vector<int>> rows;
  for (const auto& v : vectors) {
    std::vector<int> r;
    for (auto x : v) r.push_back(static_cast<int>(((x % 3) + 3) % 3));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t prow = 0;
  for (std::size_t c = 0; c < n && prow < rows.size(); ++c) {
    std::size_t p = prow;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[prow]);
    if (rows[prow][c] == 2) {
      for (auto& x : rows[prow]) x = (2 * x) % 3;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == prow || rows[r][c] == 0) continue;
      const int f = rows[r][c];
      for (std::size_t j = 0; j < n; ++j) rows[r][j] = ((rows[r][j] - f * rows[prow][j]) % 3 + 3) % 3;
    }
    ++prow;
  }
  rows.resize(prow);
  return rows;
}

// ---------------------------------------------------------------- actions

IntVector exponent_vector(const Word& w) {
  IntVector v(static_cast<std::size_t>(w.alphabet().rank), 0);
  for (Letter l : w.letters()) v[static_cast<std::size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
  return v;
}

IntegerMatrix abelianization(const FreeAutomorphism& phi) {
  IntegerMatrix m(phi.rank());
  for (int j = 1; j <= phi.rank(); ++j) {
    const IntVector col = exponent_vector(phi.image(j));
    for (int i = 0; i < phi.rank(); ++i) m(i, j - 1) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

bool in_ia3(const FreeAutomorphism& phi) { return Mod3Matrix::reduce(abelianization(phi)).is_identity(); }

std::int64_t euler_totient(std::int64_t k) {
  std::int64_t result = k;
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % p != 0) continue;
    while (k % p == 0) k /= p;
    result -= result / p;
  }
  if (k > 1) result -= result / k;
  return result;
}

std::int64_t torsion_exponent(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  // eulerTotient(k) >= sqrt(k/2), so k <= 2 n^2 covers every candidate.
  std::int64_t l = 1;
  for (std::int64_t k = 1; k <= 2LL * n * n + 2; ++k) {
    if (euler_totient(k) <= n) l = std::lcm(l, k);
  }
  return l;
}

Sublattice fix_subgroup(const IntegerMatrix& m) {
  require_unimodular(m);
  return saturated_kernel(minus_identity(to_big(m)), m.dim());
}

Sublattice per_subgroup(const IntegerMatrix& m) {
  require_unimodular(m);
  return saturated_kernel(minus_identity(big_pow(to_big(m), torsion_exponent(m.dim()))), m.dim());
}

std::optional<std::int64_t> finite_order(const IntegerMatrix& m) {
  require_unimodular(m);
  const std::int64_t limit = torsion_exponent(m.dim());
  try {
    IntegerMatrix power = m;
    for (std::int64_t k = 1; k <= limit; ++k) {
      if (power.is_identity()) return k;
      power = power * m;
    }
    return std::nullopt;
  } catch (const std::overflow_error&) {
  }
  const BigMatrix base = to_big(m);
  BigMatrix power = base;
  for (std::int64_t k = 1; k <= limit; ++k) {
    bool id = true;
    for (std::size_t i = 0; i < power.size() && id; ++i) {
      for (std::size_t j = 0; j < power.size() && id; ++j) id = power[i][j] == (i == j ? 1 : 0);
    }
    if (id) return k;
    power = big_mul(power, base);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- scans

namespace {

struct Enumeration {
  int n;
  std::vector<std::vector<std::int64_t>> values;  // candidate values per entry
  std::uint64_t total = 1;

  Enumeration(int n_, int bound, int level) : n(n_) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::vector<std::int64_t> vs;
        const int target = (i == j) ? 1 : 0;
        for (int v = -bound; v <= bound; ++v) {
          if (((v - target) % level + level) % level == 0) vs.push_back(v);
        }
        total *= vs.size();
        values.push_back(std::move(vs));
      }
    }
  }

  IntegerMatrix at(std::uint64_t index) const {
    IntegerMatrix m(n);
    for (std::size_t e = values.size(); e-- > 0;) {
      const auto& vs = values[e];
      m(static_cast<int>(e) / n, static_cast<int>(e) % n) = vs[index % vs.size()];
      index /= vs.size();
    }
    return m;
  }
};

std::int64_t small_det(const IntegerMatrix& m) {
  switch (m.dim()) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      return m.det();
  }
}

constexpr std::size_t kMaxExamples = 8;

template <class IsViolation>
ScanReport run_scan(int n, int bound, int level, Exec exec, IsViolation&& is_violation) {
  const auto start = std::chrono::steady_clock::now();
  const Enumeration en(n, bound, level);
  ScanReport report;
  report.dimension = n;
  report.bound = bound;
  report.level = level;
  report.enumerated = en.total;

  std::uint64_t invertible = 0, violations = 0;
  std::vector<std::pair<std::uint64_t, IntegerMatrix>> found;
  const auto total = static_cast<long long>(en.total);

  auto body = [&](long long idx, std::uint64_t& inv, std::uint64_t& vio,
                  std::vector<std::pair<std::uint64_t, IntegerMatrix>>& local) {
    const IntegerMatrix m = en.at(static_cast<std::uint64_t>(idx));
    const auto d = small_det(m);
    if (d != 1 && d != -1) return;
    ++inv;
    if (is_violation(m)) {
      ++vio;
      if (local.size() < kMaxExamples) local.emplace_back(static_cast<std::uint64_t>(idx), m);
    }
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      std::uint64_t inv = 0, vio = 0;
      std::vector<std::pair<std::uint64_t, IntegerMatrix>> local;
#pragma omp for schedule(dynamic, 4096) nowait
      for (long long idx = 0; idx < total; ++idx) body(idx, inv, vio, local);
#pragma omp critical
      {
        invertible += inv;
        violations += vio;
        found.insert(found.end(), local.begin(), local.end());
      }
    }
  } else {
    for (long long idx = 0; idx < total; ++idx) body(idx, invertible, violations, found);
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < found.size() && i < kMaxExamples; ++i) report.examples.push_back(found[i].second);
  report.invertible = invertible;
  report.violations = violations;
  report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ScanReport minkowski_scan(int n, int bound, int level, Exec exec) {
  if (n < 1 || n > 3) throw std::invalid_argument("minkowski_scan supports dimensions 1..3");
  if (bound < 0 || bound > 8) throw std::invalid_argument("minkowski_scan supports bounds 0..8");
  if (level < 1) throw std::invalid_argument("congruence level must be positive");
  return run_scan(n, bound, level, exec, [](const IntegerMatrix& m) {
    const auto order = finite_order(m);
    return order.has_value() && *order != 1;
  });
}

ScanReport abelian_standing_assumptions_check(int n, int bound, Exec exec) {
  if (n < 1 || n > 3) throw std::invalid_argument("abelian check supports dimensions 1..3");
  if (bound < 0 || bound > 6) throw std::invalid_argument("abelian check supports bounds 0..6");
  return run_scan(n, bound, 3, exec, [](const IntegerMatrix& m) { return per_subgroup(m) != fix_subgroup(m); });
}

std::string to_string(const IntegerMatrix& m) {
  std::ostringstream out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

IntegerMatrix parse_matrix(const std::string& text) {
  std::vector<IntVector> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    IntVector row;
    std::int64_t x;
    while (ls >> x) row.push_back(x);
    if (!ls.eof()) throw ParseError("non-integer entry in matrix line: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  try {
    return IntegerMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_json(const ScanReport& report) {
  nlohmann::ordered_json j;
  j["dimension"] = report.dimension;
  j["bound"] = report.bound;
  j["level"] = report.level;
  j["enumerated"] = report.enumerated;
  j["invertible"] = report.invertible;
  j["violations"] = report.violations;
  auto examples = nlohmann::ordered_json::array();
  for (const auto& m : report.examples) {
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.dim(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (int jj = 0; jj < m.dim(); ++jj) row.push_back(m(i, jj));
      rows.push_back(row);
    }
    examples.push_back(rows);
  }
  j["examples"] = examples;
  j["elapsed"] = report.elapsed;
  return j.dump(2);
}

}  // namespace aplab
