#pragma once

// Ground truth by exhaustion, instance enumeration, and the harness that
// compares the theorem-side verdicts against it.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rholatin/completion.hpp"
#include "rholatin/conditions.hpp"
#include "rholatin/core.hpp"
#include "rholatin/factor.hpp"
#include "rholatin/io.hpp"

namespace rholatin {

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

namespace detail {

// Fills the cells outside the block in row-major upper-triangle order, trying
// symbols in ascending order. Pruning only uses counting arguments that every
// completion satisfies, so the search stays exhaustive.
class BruteForce {
 public:
  BruteForce(const RhoInstance& instance, std::uint64_t budget)
      : n_(instance.n()), k_(instance.k()), r_(instance.r()), budget_(budget) {
    require(k_ <= 63, "oracle: at most 63 symbols");
    all_ = (std::uint64_t{1} << k_) - 1;
    grid_ = instance.square.to_grid();
    row_mask_.assign(n_, 0);
    empty_in_row_.assign(n_, 0);
    remaining_.assign(k_, 0);
    for (int l = 0; l < k_; ++l) remaining_[l] = instance.rho.of(l + 1);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (grid_[i][j]) {
          row_mask_[i] |= bit(grid_[i][j]);
          --remaining_[grid_[i][j] - 1];
        } else {
          ++empty_in_row_[i];
        }
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        if (!grid_[i][j]) cells_.push_back({i, j});
      }
    }
    diagonal_left_ = n_ - r_;
    if (instance.tail) {
      tail_left_.assign(instance.tail->entries().begin(), instance.tail->entries().end());
    }
    for (int l = 0; l < k_; ++l) odd_ += remaining_[l] & 1;
  }

  std::optional<Grid> run() {
    if (!root_feasible() || !feasible()) return std::nullopt;
    if (!search(0)) return std::nullopt;
    return grid_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  struct Cell {
    int i, j;
  };

  static std::uint64_t bit(Symbol l) { return std::uint64_t{1} << (l - 1); }

  bool has_tail() const noexcept { return !tail_left_.empty(); }

  bool root_feasible() const {
    if (!has_tail()) return true;
    for (int l = 0; l < k_; ++l) {
      const int off = remaining_[l] - tail_left_[l];
      if (off < 0 || off % 2) return false;
    }
    return true;
  }

  bool feasible() const {
    if (!has_tail() && (odd_ > diagonal_left_ || (diagonal_left_ - odd_) % 2)) return false;
    std::uint64_t positive = 0;
    for (int l = 0; l < k_; ++l) {
      if (remaining_[l] > 0) positive |= std::uint64_t{1} << l;
    }
    std::vector<int> free_rows(k_, 0);
    for (int i = 0; i < n_; ++i) {
      if (!empty_in_row_[i]) continue;
      const std::uint64_t open = positive & ~row_mask_[i];
      if (std::popcount(open) < empty_in_row_[i]) return false;
      for (std::uint64_t m = ~row_mask_[i] & all_; m; m &= m - 1) ++free_rows[std::countr_zero(m)];
    }
    for (int l = 0; l < k_; ++l) {
      if (remaining_[l] > free_rows[l]) return false;
    }
    return true;
  }

  void place(const Cell& c, Symbol l, int sign) {
    grid_[c.i][c.j] = grid_[c.j][c.i] = sign > 0 ? l : 0;
    if (sign > 0) {
      row_mask_[c.i] |= bit(l);
      row_mask_[c.j] |= bit(l);
    } else {
      row_mask_[c.i] &= ~bit(l);
      row_mask_[c.j] &= ~bit(l);
    }
    if (c.i == c.j) {
      remaining_[l - 1] -= sign;
      empty_in_row_[c.i] -= sign;
      diagonal_left_ -= sign;
      odd_ += (remaining_[l - 1] & 1) ? 1 : -1;
      if (has_tail()) tail_left_[l - 1] -= sign;
    } else {
      remaining_[l - 1] -= 2 * sign;
      empty_in_row_[c.i] -= sign;
      empty_in_row_[c.j] -= sign;
    }
  }

  bool search(std::size_t pos) {
    if (++nodes_ > budget_) {
      throw BudgetError(concat("oracle: node budget of ", budget_, " exceeded"));
    }
    if (pos == cells_.size()) return true;
    const Cell c = cells_[pos];
    const std::uint64_t open = ~(row_mask_[c.i] | row_mask_[c.j]) & all_;
    for (std::uint64_t m = open; m; m &= m - 1) {
      const Symbol l = std::countr_zero(m) + 1;
      if (c.i == c.j) {
        if (remaining_[l - 1] < 1 || (has_tail() && tail_left_[l - 1] < 1)) continue;
      } else {
        const int reserved = has_tail() ? tail_left_[l - 1] : 0;
        if (remaining_[l - 1] - reserved < 2) continue;
      }
      place(c, l, +1);
      if (feasible() && search(pos + 1)) return true;
      place(c, l, -1);
    }
    return false;
  }

  int n_, k_, r_;
  std::uint64_t budget_;
  std::uint64_t all_ = 0;
  std::uint64_t nodes_ = 0;
  Grid grid_;
  std::vector<std::uint64_t> row_mask_;
  std::vector<int> empty_in_row_;
  std::vector<int> remaining_;
  std::vector<int> tail_left_;
  std::vector<Cell> cells_;
  int diagonal_left_ = 0;
  int odd_ = 0;
};

}  // namespace detail

/// Some completion of the instance (respecting the tail as a multiset on the
/// diagonal cells r..n-1 when given), or nullopt when none exists. Throws
/// BudgetError once the search visits more than `node_budget` nodes.
inline std::optional<SymmetricSquare> brute_force_complete(const RhoInstance& instance,
                                                           std::uint64_t node_budget = kDefaultNodeBudget) {
  detail::BruteForce search(instance, node_budget);
  auto grid = search.run();
  if (!grid) return std::nullopt;
  auto square = SymmetricSquare::from_grid(instance.k(), instance.n(), *grid);
  detail::ensure(validate_square(square, instance.rho, instance.tail).ok, "oracle: produced an invalid square");
  return square;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Calls visit(rho) for every rho in [1, n]^k summing to n^2, in
/// lexicographic order.
template <class Visit>
void for_each_rho(int n, int k, Visit&& visit) {
  if (k < n || k > n * n) return;
  std::vector<int> v(k, 1);
  const int total = n * n;
  std::function<void(int, int)> rec = [&](int pos, int left) {
    const int rest = k - pos - 1;
    if (rest < 0) {
      if (left == 0) visit(RhoVector(n, v));
      return;
    }
    for (int x = 1; x <= n; ++x) {
      const int after = left - x;
      if (after < rest || after > rest * n) continue;
      v[pos] = x;
      rec(pos + 1, after);
    }
  };
  rec(0, total);
}

inline std::vector<RhoVector> rho_compositions(int n, int k) {
  std::vector<RhoVector> out;
  for_each_rho(n, k, [&](const RhoVector& rho) { out.push_back(rho); });
  return out;
}

/// Calls visit(square) for every symmetric r x r rho-latin rectangle, as a
/// partial square of order rho.n(). Cells are filled in row-major
/// upper-triangle order with ascending symbols.
template <class Visit>
void for_each_symmetric_rectangle(const RhoVector& rho, int r, Visit&& visit) {
  const int n = rho.n();
  const int k = rho.k();
  detail::require(r >= 0 && r <= n, "enumerate: r outside [0, n]");
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) cells.push_back({i, j});
  }
  Grid grid(n, std::vector<int>(n, 0));
  std::vector<std::uint64_t> mask(r, 0);
  std::vector<int> left(rho.entries().begin(), rho.entries().end());
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == cells.size()) {
      visit(SymmetricSquare::from_grid(k, r, grid));
      return;
    }
    const auto [i, j] = cells[pos];
    const int cost = i == j ? 1 : 2;
    for (Symbol l = 1; l <= k; ++l) {
      const std::uint64_t b = std::uint64_t{1} << (l - 1);
      if ((mask[i] | mask[j]) & b) continue;
      if (left[l - 1] < cost) continue;
      left[l - 1] -= cost;
      mask[i] |= b;
      mask[j] |= b;
      grid[i][j] = grid[j][i] = l;
      rec(pos + 1);
      grid[i][j] = grid[j][i] = 0;
      mask[i] &= ~b;
      mask[j] &= ~b;
      left[l - 1] += cost;
    }
  };
  rec(0);
}

/// Calls visit(d) for every diagonal tail over k symbols with sum n - r.
template <class Visit>
void for_each_tail(int n, int r, int k, Visit&& visit) {
  std::vector<int> d(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      d[pos] = left;
      visit(DiagonalTail(n, r, d));
      return;
    }
    for (int x = left; x >= 0; --x) {
      d[pos] = x;
      rec(pos + 1, left - x);
    }
    d[pos] = 0;
  };
  rec(0, n - r);
}

struct EnumerationBounds {
  int n_min = 1;
  int n_max = 3;
  int k_max = 5;
  bool with_tails = false;
  bool include_full = false;  ///< also yield r = n
};

/// Every instance within the bounds, in a fixed order (n, k, rho, r,
/// rectangle, tail). `filter` may skip instances.
template <class Visit>
void enumerate_instances(const EnumerationBounds& bounds, Visit&& visit,
                         const std::function<bool(const RhoInstance&)>& filter = {}) {
  for (int n = bounds.n_min; n <= bounds.n_max; ++n) {
    for (int k = n; k <= std::min(bounds.k_max, n * n); ++k) {
      for_each_rho(n, k, [&](const RhoVector& rho) {
        const int r_max = bounds.include_full ? n : n - 1;
        for (int r = 0; r <= r_max; ++r) {
          for_each_symmetric_rectangle(rho, r, [&](const SymmetricSquare& square) {
            auto emit = [&](RhoInstance instance) {
              if (!filter || filter(instance)) visit(instance);
            };
            if (!bounds.with_tails) {
              emit(RhoInstance(rho, square));
            } else {
              for_each_tail(n, r, k, [&](const DiagonalTail& d) { emit(RhoInstance(rho, square, d)); });
            }
          });
        }
      });
    }
  }
}

// ---------------------------------------------------------------------------
// Cross-checking

enum class CrosscheckMode {
  kNodiag,         ///< complete() vs the oracle
  kDiag,           ///< complete_with_diagonal() vs the oracle, every tail
  kConstruct,      ///< construct() vs the parity rule and the oracle
  kConstructDiag,  ///< construct_with_diagonal() vs the parity rule and the oracle
  kCorollaries,    ///< fast paths vs the full verdict, with and without tails
  kFactorEquiv,    ///< subset conditions vs flow feasibility, with and without tails
  kClassical,      ///< k = n, rho = (n..n) against the classical conditions
  kFuzz,           ///< random feasible instances through complete()
};

inline std::string_view mode_name(CrosscheckMode m) {
  switch (m) {
    case CrosscheckMode::kNodiag: return "nodiag";
    case CrosscheckMode::kDiag: return "diag";
    case CrosscheckMode::kConstruct: return "construct";
    case CrosscheckMode::kConstructDiag: return "construct_diag";
    case CrosscheckMode::kCorollaries: return "corollaries";
    case CrosscheckMode::kFactorEquiv: return "factor_equiv";
    case CrosscheckMode::kClassical: return "classical";
    case CrosscheckMode::kFuzz: return "fuzz";
  }
  return "unknown";
}

inline std::optional<CrosscheckMode> parse_mode(std::string_view s) {
  for (auto m : {CrosscheckMode::kNodiag, CrosscheckMode::kDiag, CrosscheckMode::kConstruct,
                 CrosscheckMode::kConstructDiag, CrosscheckMode::kCorollaries, CrosscheckMode::kFactorEquiv,
                 CrosscheckMode::kClassical, CrosscheckMode::kFuzz}) {
    if (mode_name(m) == s) return m;
  }
  return std::nullopt;
}

struct CrosscheckOptions {
  int n_min = 1;
  int n_max = 3;
  int k_max = 5;
  CrosscheckMode mode = CrosscheckMode::kNodiag;
  int shards = 1;
  /// Number of random instances in kFuzz mode.
  std::uint64_t samples = 1000;
  /// 0 = exhaustive; otherwise each enumerated instance is kept with
  /// probability sample_ppm / 10^6, drawn from `seed` in stream order.
  std::uint64_t sample_ppm = 0;
  std::uint64_t seed = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  SubsetBudget subset_budget{};
};

struct Disagreement {
  std::uint64_t index = 0;  ///< position in the instance stream
  std::string what;
  io::json instance;
};

struct CrosscheckReport {
  std::uint64_t instances_tested = 0;
  std::uint64_t agreements = 0;
  std::vector<Disagreement> disagreements;
  double elapsed_seconds = 0;
  bool complete = true;  ///< false when some instance hit a budget
  std::uint64_t budget_skips = 0;
  std::uint64_t detach_calls = 0;
  std::uint64_t witnesses_checked = 0;
  std::uint64_t fast_paths_fired = 0;

  bool ok() const noexcept { return complete && disagreements.empty(); }

  void merge(const CrosscheckReport& other) {
    instances_tested += other.instances_tested;
    agreements += other.agreements;
    disagreements.insert(disagreements.end(), other.disagreements.begin(), other.disagreements.end());
    std::sort(disagreements.begin(), disagreements.end(),
              [](const Disagreement& a, const Disagreement& b) { return a.index < b.index; });
    elapsed_seconds = std::max(elapsed_seconds, other.elapsed_seconds);
    complete = complete && other.complete;
    budget_skips += other.budget_skips;
    detach_calls += other.detach_calls;
    witnesses_checked += other.witnesses_checked;
    fast_paths_fired += other.fast_paths_fired;
  }

  io::json to_json(bool with_timing = false) const {
    io::json list = io::json::array();
    for (const auto& d : disagreements) {
      list.push_back({{"index", d.index}, {"what", d.what}, {"instance", d.instance}});
    }
    io::json out = {{"instances_tested", instances_tested},
                    {"agreements", agreements},
                    {"disagreements", list},
                    {"complete", complete},
                    {"budget_skips", budget_skips},
                    {"detach_calls", detach_calls},
                    {"witnesses_checked", witnesses_checked},
                    {"fast_paths_fired", fast_paths_fired}};
    if (with_timing) out["elapsed_seconds"] = elapsed_seconds;
    return out;
  }
};

/// Outcome of one comparison: nullopt when everything agrees, otherwise a
/// description of the disagreement.
using CheckOutcome = std::optional<std::string>;

namespace detail {

inline std::string verdict_word(bool ok) { return ok ? "completable" : "not completable"; }

// The flow witness must violate the pairwise condition when re-evaluated from
// the rectangle itself, and its Hall part must violate the matching one-sided
// condition.
inline CheckOutcome check_witness(const RhoInstance& instance, const FactorWitness& w) {
  if (pairwise_slack(instance.square, instance.rho, instance.tail, w.pairwise.rows, w.pairwise.symbols) >= 0) {
    return "flow witness " + w.as_verdict(instance.tail.has_value()).describe() + " does not violate it";
  }
  const auto e = count_occurrences(instance.square);
  const int p = instance.n() - instance.r();
  auto upper = [&](Symbol l) {
    const int gap = instance.rho.of(l) - e.of(l);
    return instance.tail ? (gap - instance.tail->of(l)) / 2 : gap / 2;
  };
  long long lhs = 0;
  long long rhs = 0;
  if (w.hall_on_rows) {
    lhs = static_cast<long long>(p) * static_cast<long long>(w.hall.rows.size());
    for (Symbol l = 1; l <= instance.k(); ++l) {
      rhs += std::min(upper(l), mu_rows(instance.square, w.hall.rows, l));
    }
  } else {
    for (Symbol l : w.hall.symbols) lhs += monus(instance.rho.of(l) - e.of(l), p);
    for (int i = 0; i < instance.r(); ++i) rhs += std::min(p, mu_symbols(instance.square, i, w.hall.symbols));
  }
  if (lhs <= rhs) return "flow witness " + w.hall_verdict(instance.tail.has_value()).describe() + " does not violate it";
  return std::nullopt;
}

inline CheckOutcome check_against_oracle(const RhoInstance& instance, const CrosscheckOptions& options,
                                         CrosscheckReport& stats) {
  PipelineTrace trace;
  const auto result = instance.tail ? complete_with_diagonal(instance, &trace) : complete(instance, &trace);
  stats.detach_calls += trace.detach_calls;
  const bool oracle = brute_force_complete(instance, options.node_budget).has_value();
  if (result.completed() != oracle) {
    return concat("pipeline says ", verdict_word(result.completed()), " (", result.verdict.describe(),
                  "), oracle says ", verdict_word(oracle));
  }
  if (trace.witness) {
    ++stats.witnesses_checked;
    if (auto bad = check_witness(instance, *trace.witness)) return bad;
  }
  return std::nullopt;
}

inline bool construct_parity_rule(const RhoVector& rho) {
  int odd = 0;
  for (int v : rho.entries()) odd += v & 1;
  return odd <= rho.n() && (rho.n() - odd) % 2 == 0;
}

inline bool construct_diag_rule(const RhoVector& rho, const DiagonalTail& d) {
  for (Symbol l = 1; l <= rho.k(); ++l) {
    if ((rho.of(l) - d.of(l)) % 2 != 0 || d.of(l) > rho.of(l)) return false;
  }
  return true;
}

inline CheckOutcome check_construct(const RhoInstance& instance, const CrosscheckOptions& options,
                                    CrosscheckReport& stats) {
  PipelineTrace trace;
  const bool rule = instance.tail ? construct_diag_rule(instance.rho, *instance.tail)
                                  : construct_parity_rule(instance.rho);
  const auto result = instance.tail ? construct_with_diagonal(instance.rho, *instance.tail, &trace)
                                    : construct(instance.rho, &trace);
  stats.detach_calls += trace.detach_calls;
  if (result.completed() != rule) {
    return concat("constructor says ", verdict_word(result.completed()), ", parity rule says ", verdict_word(rule));
  }
  if (result.completed() && !validate_square(*result.square, instance.rho, instance.tail).ok) {
    return std::string("constructed square fails validation");
  }
  // from-scratch exhaustion is only cheap enough for small orders
  if (instance.n() <= 4) {
    const bool oracle = brute_force_complete(instance, options.node_budget).has_value();
    if (oracle != rule) return concat("oracle says ", verdict_word(oracle), ", parity rule says ", verdict_word(rule));
  }
  return std::nullopt;
}

inline CheckOutcome check_corollaries(const RhoInstance& instance, const CrosscheckOptions& options,
                                      CrosscheckReport& stats) {
  const auto full = instance.tail ? complete_with_diagonal(instance) : complete(instance);
  for (const auto& rep : corollary_fastpaths(instance.square, instance.rho, instance.tail, options.subset_budget)) {
    if (!rep.applicable) continue;
    ++stats.fast_paths_fired;
    for (const auto& v : {rep.verdict, rep.alternate_verdict}) {
      if (v && *v != full.completed()) {
        return concat(corollary_name(rep.id), " says ", verdict_word(*v), ", full theorem says ",
                      verdict_word(full.completed()));
      }
    }
  }
  return std::nullopt;
}

/// Where the degree window is meaningful (0 <= g <= f, integral f), the two
/// subset characterizations and flow feasibility must coincide.
inline CheckOutcome check_factor_equivalence(const RhoInstance& instance, const CrosscheckOptions& options,
                                             CrosscheckReport&) {
  const auto e = count_occurrences(instance.square);
  const int r = instance.r();
  if (instance.tail) {
    for (Symbol l = 1; l <= instance.k(); ++l) {
      if ((instance.rho.of(l) - e.of(l) - instance.tail->of(l)) % 2 != 0) return std::nullopt;
    }
  }
  const auto window = instance.tail ? window_diag(e, instance.rho, *instance.tail, r) : window_nodiag(e, instance.rho, r);
  if (!window.valid()) return std::nullopt;
  const auto flow = solve_gf_factor(build_gamma(instance.square), window);
  const auto subsets = instance.tail
                           ? check_subset_conditions_diag(instance.square, instance.rho, *instance.tail, options.subset_budget)
                           : check_subset_conditions_nodiag(instance.square, instance.rho, options.subset_budget);
  if (subsets.hall.satisfied != subsets.pairwise.satisfied || subsets.pairwise.satisfied != flow.feasible()) {
    return concat("hall: ", subsets.hall.describe(), "; pairwise: ", subsets.pairwise.describe(),
                  "; flow: ", flow.feasible() ? "feasible" : "infeasible");
  }
  return std::nullopt;
}

}  // namespace detail

/// Cruse's conditions for k = n, rho = (n, ..., n).
inline bool cruse_conditions(const SymmetricSquare& square) {
  const int n = square.n();
  const int r = square.r();
  const auto e = count_occurrences(square);
  int matching_parity = 0;
  for (Symbol l = 1; l <= square.k(); ++l) {
    if (e.of(l) < 2 * r - n) return false;
    if ((e.of(l) - n) % 2 == 0) ++matching_parity;
  }
  return matching_parity >= r;
}

/// The Andersen-Hoffman conditions for k = n, rho = (n, ..., n).
inline bool andersen_hoffman_conditions(const SymmetricSquare& square, const DiagonalTail& d) {
  const int n = square.n();
  const int r = square.r();
  const auto e = count_occurrences(square);
  for (Symbol l = 1; l <= square.k(); ++l) {
    if (e.of(l) < 2 * r - n + d.of(l)) return false;
    if ((e.of(l) + d.of(l) - n) % 2 != 0) return false;
  }
  return true;
}

/// A random feasible instance: a random rho with an admissible number of odd
/// entries, a random diagonal, a constructed square shuffled by a random
/// simultaneous row/column permutation and symbol relabelling, cut down to a
/// random r x r block.
inline RhoInstance random_feasible_instance(std::mt19937_64& rng, int n_max, int k_max) {
  std::uniform_int_distribution<int> pick_n(1, n_max);
  for (;;) {
    const int n = pick_n(rng);
    const int k = std::uniform_int_distribution<int>(n, std::min(k_max, n * n))(rng);
    // random composition of n^2 into k parts in [1, n]
    std::vector<int> rho(k, 1);
    int left = n * n - k;
    while (left > 0) {
      const int l = std::uniform_int_distribution<int>(0, k - 1)(rng);
      if (rho[l] < n) {
        ++rho[l];
        --left;
      }
    }
    RhoVector rv(n, rho);
    if (!detail::construct_parity_rule(rv)) continue;
    // diagonal: every odd symbol once, then pairs on symbols with room
    std::vector<int> d(k, 0);
    int placed = 0;
    for (int l = 0; l < k; ++l) {
      d[l] = rho[l] & 1;
      placed += d[l];
    }
    while (placed < n) {
      const int l = std::uniform_int_distribution<int>(0, k - 1)(rng);
      if (d[l] + 2 <= rho[l]) {
        d[l] += 2;
        placed += 2;
      }
    }
    auto built = construct_with_diagonal(rv, DiagonalTail(n, 0, d));
    detail::ensure(built.completed(), "fuzz: construct_with_diagonal failed on a valid diagonal");
    auto grid = built.square->to_grid();
    std::vector<int> perm(n);
    std::vector<int> relabel(k);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int l = 0; l < k; ++l) relabel[l] = l + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    const int r = std::uniform_int_distribution<int>(0, n - 1)(rng);
    Grid block(n, std::vector<int>(n, 0));
    std::vector<int> new_rho(k);
    for (int l = 0; l < k; ++l) new_rho[relabel[l] - 1] = rho[l];
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) block[i][j] = relabel[grid[perm[i]][perm[j]] - 1];
    }
    return RhoInstance(RhoVector(n, new_rho), SymmetricSquare::from_grid(k, r, block));
  }
}

/// Runs one crosscheck mode over every enumerated instance. Shards split the
/// stream by index; the merged report does not depend on the shard count.
inline CrosscheckReport crosscheck(const CrosscheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int shards = std::max(1, options.shards);

  std::function<CheckOutcome(const RhoInstance&, CrosscheckReport&)> check;
  EnumerationBounds bounds{options.n_min, options.n_max, options.k_max, false, false};
  bool classical = false;
  switch (options.mode) {
    case CrosscheckMode::kNodiag:
    case CrosscheckMode::kDiag:
      bounds.with_tails = options.mode == CrosscheckMode::kDiag;
      check = [&](const RhoInstance& x, CrosscheckReport& s) { return detail::check_against_oracle(x, options, s); };
      break;
    case CrosscheckMode::kConstruct:
    case CrosscheckMode::kConstructDiag:
      bounds.with_tails = options.mode == CrosscheckMode::kConstructDiag;
      check = [&](const RhoInstance& x, CrosscheckReport& s) { return detail::check_construct(x, options, s); };
      break;
    case CrosscheckMode::kCorollaries:
      check = [&](const RhoInstance& x, CrosscheckReport& s) { return detail::check_corollaries(x, options, s); };
      break;
    case CrosscheckMode::kFactorEquiv:
      check = [&](const RhoInstance& x, CrosscheckReport& s) {
        return detail::check_factor_equivalence(x, options, s);
      };
      break;
    case CrosscheckMode::kClassical:
      classical = true;
      check = [&](const RhoInstance& x, CrosscheckReport&) -> CheckOutcome {
        const bool theorem = x.tail ? complete_with_diagonal(x).completed() : complete(x).completed();
        const bool classic =
            x.tail ? andersen_hoffman_conditions(x.square, *x.tail) : cruse_conditions(x.square);
        if (theorem == classic) return std::nullopt;
        return detail::concat("theorem says ", detail::verdict_word(theorem), ", classical conditions say ",
                              detail::verdict_word(classic));
      };
      break;
    case CrosscheckMode::kFuzz:
      check = [&](const RhoInstance& x, CrosscheckReport& s) -> CheckOutcome {
        PipelineTrace trace;
        const auto result = complete(x, &trace);
        s.detach_calls += trace.detach_calls;
        if (!result.completed()) return "feasible instance reported " + result.verdict.describe();
        return std::nullopt;
      };
      break;
  }
  const bool both_tail_kinds =
      options.mode == CrosscheckMode::kCorollaries || options.mode == CrosscheckMode::kFactorEquiv || classical;

  auto run_one = [&](std::uint64_t index, const RhoInstance& instance, CrosscheckReport& report) {
    try {
      auto outcome = check(instance, report);
      ++report.instances_tested;
      if (outcome) {
        report.disagreements.push_back({index, *outcome, io::to_json(instance)});
      } else {
        ++report.agreements;
      }
    } catch (const BudgetError&) {
      report.complete = false;
      ++report.budget_skips;
    } catch (const InternalError& err) {
      ++report.instances_tested;
      report.disagreements.push_back({index, std::string("internal error: ") + err.what(), io::to_json(instance)});
    }
  };

  auto worker = [&](int shard, CrosscheckReport& report) {
    std::uint64_t index = 0;
    if (options.mode == CrosscheckMode::kFuzz) {
      std::mt19937_64 rng(options.seed);
      for (std::uint64_t i = 0; i < options.samples; ++i) {
        // every shard draws the full sequence so instances do not depend on the shard count
        auto instance = random_feasible_instance(rng, options.n_max, options.k_max);
        if (static_cast<int>(i % shards) == shard) run_one(i, instance, report);
      }
      return;
    }
    std::mt19937_64 rng(options.seed);
    auto visit = [&](const RhoInstance& instance) {
      const std::uint64_t i = index++;
      if (options.sample_ppm) {
        // sampling decisions are drawn for every instance, in stream order
        const bool keep = std::uniform_int_distribution<std::uint64_t>(0, 999'999)(rng) < options.sample_ppm;
        if (!keep) return;
      }
      if (static_cast<int>(i % shards) == shard) run_one(i, instance, report);
    };
    auto visit_kinds = [&](const RhoInstance& instance) {
      visit(instance);
      if (!both_tail_kinds || instance.r() == instance.n()) return;
      for_each_tail(instance.n(), instance.r(), instance.k(), [&](const DiagonalTail& d) {
        visit(RhoInstance(instance.rho, instance.square, d));
      });
    };
    if (classical) {
      for (int n = bounds.n_min; n <= bounds.n_max; ++n) {
        RhoVector rho(n, std::vector<int>(n, n));
        for (int r = 0; r < n; ++r) {
          for_each_symmetric_rectangle(rho, r, [&](const SymmetricSquare& s) { visit_kinds(RhoInstance(rho, s)); });
        }
      }
    } else if (options.mode == CrosscheckMode::kConstruct || options.mode == CrosscheckMode::kConstructDiag) {
      for (int n = bounds.n_min; n <= bounds.n_max; ++n) {
        for (int k = n; k <= std::min(bounds.k_max, n * n); ++k) {
          for_each_rho(n, k, [&](const RhoVector& rho) {
            if (!bounds.with_tails) {
              visit(RhoInstance(rho, SymmetricSquare::empty(n, k)));
            } else {
              for_each_tail(n, 0, k, [&](const DiagonalTail& d) {
                visit(RhoInstance(rho, SymmetricSquare::empty(n, k), d));
              });
            }
          });
        }
      }
    } else {
      enumerate_instances(bounds, both_tail_kinds ? std::function<void(const RhoInstance&)>(visit_kinds)
                                                  : std::function<void(const RhoInstance&)>(visit));
    }
  };

  std::vector<CrosscheckReport> parts(shards);
  if (shards == 1) {
    worker(0, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < shards; ++s) threads.emplace_back(worker, s, std::ref(parts[s]));
    for (auto& t : threads) t.join();
  }
  CrosscheckReport merged;
  for (const auto& part : parts) merged.merge(part);
  merged.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return merged;
}

}  // namespace rholatin
