#pragma once

// Abelianized actions: integer and mod-3 matrices, congruence membership,
// periodic and fixed sublattices, finite-order detection and the desk-scale
// scans over level-3 congruence matrices.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aplab/aut.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

using IntVector = std::vector<std::int64_t>;

/// Square integer matrix, row-major. Arithmetic throws std::overflow_error.
class IntegerMatrix {
 public:
  explicit IntegerMatrix(int n = 0);
  static IntegerMatrix identity(int n);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows);

  int dim() const noexcept { return n_; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<std::int64_t>& data() const noexcept { return a_; }

  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  IntegerMatrix operator-(const IntegerMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntegerMatrix pow(int k) const;
  std::int64_t det() const;
  bool is_identity() const;
  /// True iff |det| = 1.
  bool is_unimodular() const { auto d = det(); return d == 1 || d == -1; }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  int n_;
  std::vector<std::int64_t> a_;
};

class Mod3Matrix {
 public:
  explicit Mod3Matrix(int n = 0);
  static Mod3Matrix identity(int n);
  static Mod3Matrix reduce(const IntegerMatrix& m);

  int dim() const noexcept { return n_; }
  int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  void set(int i, int j, long long value);
  Mod3Matrix operator*(const Mod3Matrix& rhs) const;
  bool is_identity() const { return *this == identity(n_); }

  friend bool operator==(const Mod3Matrix&, const Mod3Matrix&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> a_;
};

/// Saturated sublattice of Z^n, stored by its row Hermite normal form so that
/// equal lattices have equal bases.
class Sublattice {
 public:
  explicit Sublattice(int ambient = 0) : ambient_(ambient) {}
  /// Saturation of the span of `generators`.
  static Sublattice saturated_span(int ambient, const std::vector<IntVector>& generators);
  static Sublattice full(int ambient);

  int ambient() const noexcept { return ambient_; }
  int rank() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<IntVector>& basis() const noexcept { return basis_; }
  bool contains(const IntVector& v) const;

  friend bool operator==(const Sublattice&, const Sublattice&) = default;

 private:
  int ambient_;
  std::vector<IntVector> basis_;
};

/// Column i is the exponent-sum vector of phi(x_i).
IntegerMatrix abelianization(const FreeAutomorphism& phi);
IntVector exponent_vector(const Word& w);
bool in_ia3(const FreeAutomorphism& phi);

/// lcm{k >= 1 : eulerTotient(k) <= n}; orders of torsion in GL_n(Z) divide it.
std::int64_t torsion_exponent(int n);
std::int64_t euler_totient(std::int64_t k);

/// Saturated kernel of M - I. Throws NotInvertible unless |det M| = 1.
Sublattice fix_subgroup(const IntegerMatrix& m);
/// Saturated kernel of M^L - I with L = torsion_exponent(n).
Sublattice per_subgroup(const IntegerMatrix& m);
/// Least k <= L with M^k = I; absent means infinite order.
std::optional<std::int64_t> finite_order(const IntegerMatrix& m);

/// Rank over Q of a list of integer vectors.
int rational_rank(const std::vector<IntVector>& vectors);

/// Row-reduced basis of the span mod 3.
std::vector<std::vector<int>> mod3_span(const std::vector<IntVector>& vectors);

struct ScanReport {
  int dimension = 0;
  int bound = 0;
  int level = 3;
  std::uint64_t enumerated = 0;   // candidates congruent to I mod level
  std::uint64_t invertible = 0;   // of those, |det| = 1
  std::uint64_t violations = 0;
  std::vector<IntegerMatrix> examples;  // first violations in enumeration order
  double elapsed = 0.0;
};

/// Every M with entries in [-bound, bound], M = I mod level, |det M| = 1;
/// a violation is a finite-order M != I. Requires n <= 3, bound <= 8.
ScanReport minkowski_scan(int n, int bound, int level = 3, Exec exec = Exec::Parallel);
/// Same enumeration at level 3; a violation is per_subgroup(M) != fix_subgroup(M).
/// Requires n <= 3, bound <= 6.
ScanReport abelian_standing_assumptions_check(int n, int bound, Exec exec = Exec::Parallel);

std::string to_json(const ScanReport& report);
IntegerMatrix parse_matrix(const std::string& text);
std::string to_string(const IntegerMatrix& m);

}  // namespace aplab
