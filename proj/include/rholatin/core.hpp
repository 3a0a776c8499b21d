#pragma once

// Domain types for symmetric rho-latin squares and rectangles.
//
// Conventions used throughout the library:
//   - symbols are 1-based integers in [1, k]; an empty cell is not a symbol
//     and is exposed as std::nullopt;
//   - rows and columns are 0-based indices in [0, n);
//   - per-symbol vectors (rho, e, d) are read through `of(symbol)`.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rholatin {

using Symbol = int;

/// Malformed input: dimension mismatches, out-of-range values, broken type invariants.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to do more work than its configured budget allows.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A postcondition the algorithms guarantee did not hold. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Truncated subtraction max(0, x - y).
constexpr int monus(int x, int y) noexcept { return x > y ? x - y : 0; }

constexpr int choose2(int m) noexcept { return m * (m - 1) / 2; }

/// Raw cell grid as read from or written to files; 0 marks an empty cell.
using Grid = std::vector<std::vector<int>>;

namespace detail {

template <typename... Parts>
std::string concat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw StructuralError(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

}  // namespace detail

/// Target occurrence counts rho_1..rho_k for an order-n square.
class RhoVector {
 public:
  RhoVector(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
    const int k = static_cast<int>(entries_.size());
    detail::require(n_ >= 1, "rho: order n must be positive");
    detail::require(k >= n_, detail::concat("rho: need n <= k, got n=", n_, " k=", k));
    long long total = 0;
    for (int l = 0; l < k; ++l) {
      detail::require(entries_[l] >= 1 && entries_[l] <= n_,
                      detail::concat("rho: entry for symbol ", l + 1, " is ", entries_[l],
                                     ", must lie in [1, ", n_, "]"));
      total += entries_[l];
    }
    detail::require(total == static_cast<long long>(n_) * n_,
                    detail::concat("rho: entries sum to ", total, ", expected n^2 = ", n_ * n_));
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(entries_.size()); }
  int of(Symbol l) const { return entries_.at(l - 1); }
  std::span<const int> entries() const noexcept { return entries_; }

  friend bool operator==(const RhoVector&, const RhoVector&) = default;

 private:
  int n_;
  std::vector<int> entries_;
};

/// e_l: occurrences of each symbol in the filled block.
class OccurrenceVector {
 public:
  explicit OccurrenceVector(std::vector<int> counts) : counts_(std::move(counts)) {}

  int k() const noexcept { return static_cast<int>(counts_.size()); }
  int of(Symbol l) const { return counts_.at(l - 1); }
  std::span<const int> entries() const noexcept { return counts_; }
  int total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

  friend bool operator==(const OccurrenceVector&, const OccurrenceVector&) = default;

 private:
  std::vector<int> counts_;
};

/// How many times each symbol appears on the diagonal cells r..n-1.
class DiagonalTail {
 public:
  DiagonalTail(int n, int r, std::vector<int> counts) : n_(n), r_(r), counts_(std::move(counts)) {
    detail::require(r_ >= 0 && r_ <= n_, "tail: need 0 <= r <= n");
    int total = 0;
    for (std::size_t l = 0; l < counts_.size(); ++l) {
      detail::require(counts_[l] >= 0 && counts_[l] <= n_ - r_,
                      detail::concat("tail: entry for symbol ", l + 1, " is ", counts_[l],
                                     ", must lie in [0, ", n_ - r_, "]"));
      total += counts_[l];
    }
    detail::require(total == n_ - r_,
                    detail::concat("tail: entries sum to ", total, ", expected n - r = ", n_ - r_));
  }

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  int k() const noexcept { return static_cast<int>(counts_.size()); }
  int of(Symbol l) const { return counts_.at(l - 1); }
  std::span<const int> entries() const noexcept { return counts_; }

  friend bool operator==(const DiagonalTail&, const DiagonalTail&) = default;

 private:
  int n_;
  int r_;
  std::vector<int> counts_;
};

/// A symmetric n x n array over [k] whose top-left r x r block is filled and
/// whose remaining cells are empty (r == n means a full square).
///
/// Instances are only created through `from_grid` or `empty`, both of which
/// enforce symmetry, the latin property and the block shape.
class SymmetricSquare {
 public:
  static SymmetricSquare empty(int n, int k) {
    detail::require(n >= 1 && k >= 1, "square: n and k must be positive");
    return SymmetricSquare(n, k, 0, std::vector<int>(static_cast<std::size_t>(n) * n, kEmpty));
  }

  /// Builds a square from an n x n grid (0 = empty) whose filled cells are
  /// exactly the top-left r x r block.
  static SymmetricSquare from_grid(int k, int r, const Grid& grid) {
    const int n = static_cast<int>(grid.size());
    detail::require(n >= 1, "square: grid must be non-empty");
    detail::require(k >= 1, "square: k must be positive");
    detail::require(r >= 0 && r <= n, detail::concat("square: r=", r, " outside [0, ", n, "]"));
    std::vector<int> cells(static_cast<std::size_t>(n) * n, kEmpty);
    for (int i = 0; i < n; ++i) {
      detail::require(static_cast<int>(grid[i].size()) == n,
                      detail::concat("square: row ", i + 1, " has ", grid[i].size(),
                                     " cells, expected ", n));
      for (int j = 0; j < n; ++j) {
        const int v = grid[i][j];
        const bool inside = i < r && j < r;
        if (inside) {
          detail::require(v >= 1 && v <= k, detail::concat("square: cell (", i + 1, ",", j + 1,
                                                           ") must hold a symbol in [1, ", k,
                                                           "], got ", v));
          cells[static_cast<std::size_t>(i) * n + j] = v;
        } else {
          detail::require(v == 0, detail::concat("square: cell (", i + 1, ",", j + 1,
                                                 ") lies outside the ", r, "x", r,
                                                 " block and must be empty"));
        }
      }
    }
    SymmetricSquare square(n, k, r, std::move(cells));
    square.check_symmetric_latin();
    return square;
  }

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  bool is_full() const noexcept { return r_ == n_; }

  std::optional<Symbol> at(int i, int j) const {
    const int v = cells_.at(index(i, j));
    if (v == kEmpty) return std::nullopt;
    return v;
  }

  /// True iff symbol l occurs in row i (equivalently column i).
  bool row_has(int i, Symbol l) const {
    for (int j = 0; j < n_; ++j) {
      if (cells_[index(i, j)] == l) return true;
    }
    return false;
  }

  /// The top-left m x m block of this square as a rectangle of order n.
  SymmetricSquare truncated(int m) const {
    detail::require(m >= 0 && m <= r_, "square: can only truncate inside the filled block");
    std::vector<int> cells(cells_.size(), kEmpty);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) cells[index(i, j)] = cells_[index(i, j)];
    }
    return SymmetricSquare(n_, k_, m, std::move(cells));
  }

  Grid to_grid() const {
    Grid grid(n_, std::vector<int>(n_, 0));
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const int v = cells_[index(i, j)];
        grid[i][j] = v == kEmpty ? 0 : v;
      }
    }
    return grid;
  }

  friend bool operator==(const SymmetricSquare&, const SymmetricSquare&) = default;

 private:
  static constexpr int kEmpty = -1;

  SymmetricSquare(int n, int k, int r, std::vector<int> cells)
      : n_(n), k_(k), r_(r), cells_(std::move(cells)) {}

  std::size_t index(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) {
      throw StructuralError(detail::concat("square: cell (", i, ",", j, ") out of range"));
    }
    return static_cast<std::size_t>(i) * n_ + j;
  }

  void check_symmetric_latin() const {
    std::vector<char> seen(static_cast<std::size_t>(k_) + 1);
    for (int i = 0; i < n_; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int j = 0; j < n_; ++j) {
        const int v = cells_[index(i, j)];
        detail::require(v == cells_[index(j, i)],
                        detail::concat("square: not symmetric at (", i + 1, ",", j + 1, ")"));
        if (v == kEmpty) continue;
        detail::require(!seen[v], detail::concat("square: symbol ", v, " repeated in row ", i + 1));
        seen[v] = 1;
      }
    }
  }

  int n_;
  int k_;
  int r_;
  std::vector<int> cells_;
};

inline OccurrenceVector count_occurrences(const SymmetricSquare& square) {
  std::vector<int> e(square.k(), 0);
  for (int i = 0; i < square.n(); ++i) {
    for (int j = 0; j < square.n(); ++j) {
      if (auto v = square.at(i, j)) ++e[*v - 1];
    }
  }
  return OccurrenceVector(std::move(e));
}

/// mu_I(l): number of rows in I (all inside the filled block) missing symbol l.
inline int mu_rows(const SymmetricSquare& square, std::span<const int> rows, Symbol l) {
  detail::require(l >= 1 && l <= square.k(), detail::concat("mu: symbol ", l, " out of range"));
  int count = 0;
  for (int i : rows) {
    detail::require(i >= 0 && i < square.r(), detail::concat("mu: row ", i, " outside the block"));
    if (!square.row_has(i, l)) ++count;
  }
  return count;
}

/// mu_K(i): number of symbols in K missing from row i of the filled block.
inline int mu_symbols(const SymmetricSquare& square, int i, std::span<const Symbol> symbols) {
  detail::require(i >= 0 && i < square.r(), detail::concat("mu: row ", i, " outside the block"));
  int count = 0;
  for (Symbol l : symbols) {
    detail::require(l >= 1 && l <= square.k(), detail::concat("mu: symbol ", l, " out of range"));
    if (!square.row_has(i, l)) ++count;
  }
  return count;
}

/// The problem statement: complete `square` (an r x r block) to a symmetric
/// rho-latin square, optionally with a prescribed diagonal tail.
struct RhoInstance {
  RhoVector rho;
  SymmetricSquare square;
  std::optional<DiagonalTail> tail;

  RhoInstance(RhoVector rho_in, SymmetricSquare square_in, std::optional<DiagonalTail> tail_in = {})
      : rho(std::move(rho_in)), square(std::move(square_in)), tail(std::move(tail_in)) {
    detail::require(square.n() == rho.n(), "instance: square order differs from rho order");
    detail::require(square.k() == rho.k(), "instance: square symbol count differs from rho length");
    const auto e = count_occurrences(square);
    for (Symbol l = 1; l <= rho.k(); ++l) {
      detail::require(e.of(l) <= rho.of(l),
                      detail::concat("instance: symbol ", l, " occurs ", e.of(l),
                                     " times in the block but rho allows ", rho.of(l)));
    }
    if (tail) {
      detail::require(tail->k() == rho.k(), "instance: tail length differs from rho length");
      detail::require(tail->n() == rho.n() && tail->r() == square.r(),
                      "instance: tail is for a different (n, r)");
    }
  }

  int n() const noexcept { return rho.n(); }
  int k() const noexcept { return rho.k(); }
  int r() const noexcept { return square.r(); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void add(std::string message) {
    ok = false;
    violations.push_back(std::move(message));
  }
};

/// Checks a raw full grid against every constraint of a symmetric rho-latin
/// square. When `tail` is given, the diagonal cells tail->r()..n-1 must carry
/// exactly the multiset the tail describes.
inline ValidationReport validate_grid(const Grid& grid, const RhoVector& rho,
                                      const std::optional<DiagonalTail>& tail = {}) {
  const int n = rho.n();
  const int k = rho.k();
  detail::require(static_cast<int>(grid.size()) == n,
                  detail::concat("validate: grid has ", grid.size(), " rows, rho is for order ", n));
  for (const auto& row : grid) {
    detail::require(static_cast<int>(row.size()) == n, "validate: grid is not square");
  }
  if (tail) {
    detail::require(tail->n() == n && tail->k() == k, "validate: tail does not match rho");
  }

  ValidationReport report;
  std::vector<int> count(k + 1, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int v = grid[i][j];
      if (v < 1 || v > k) {
        report.add(detail::concat("cell (", i + 1, ",", j + 1, ") holds ", v,
                                  ", not a symbol in [1, ", k, "]"));
        continue;
      }
      ++count[v];
      if (grid[j][i] != v && i < j) {
        report.add(detail::concat("cells (", i + 1, ",", j + 1, ") and (", j + 1, ",", i + 1,
                                  ") differ"));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int j2 = j + 1; j2 < n; ++j2) {
        if (grid[i][j] == grid[i][j2]) {
          report.add(detail::concat("symbol ", grid[i][j], " twice in row ", i + 1, " at columns ",
                                    j + 1, " and ", j2 + 1));
        }
        if (grid[j][i] == grid[j2][i]) {
          report.add(detail::concat("symbol ", grid[j][i], " twice in column ", i + 1, " at rows ",
                                    j + 1, " and ", j2 + 1));
        }
      }
    }
  }
  for (Symbol l = 1; l <= k; ++l) {
    if (count[l] != rho.of(l)) {
      report.add(detail::concat("symbol ", l, " occurs ", count[l], " times, rho requires ",
                                rho.of(l)));
    }
  }
  if (tail) {
    std::vector<int> diag(k + 1, 0);
    for (int i = tail->r(); i < n; ++i) {
      if (grid[i][i] >= 1 && grid[i][i] <= k) ++diag[grid[i][i]];
    }
    for (Symbol l = 1; l <= k; ++l) {
      if (diag[l] != tail->of(l)) {
        report.add(detail::concat("symbol ", l, " occurs ", diag[l], " times on diagonal cells ",
                                  tail->r() + 1, "..", n, ", tail requires ", tail->of(l)));
      }
    }
  }
  return report;
}

inline ValidationReport validate_square(const SymmetricSquare& square, const RhoVector& rho,
                                        const std::optional<DiagonalTail>& tail = {}) {
  detail::require(square.is_full(), "validate: square is not fully filled");
  detail::require(square.n() == rho.n() && square.k() == rho.k(),
                  "validate: square dimensions do not match rho");
  return validate_grid(square.to_grid(), rho, tail);
}

}  // namespace rholatin
