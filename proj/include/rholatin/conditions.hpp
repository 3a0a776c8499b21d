#pragma once

// Necessary and sufficient conditions for completing a symmetric r x r
// rho-latin rectangle, evaluated directly: the admissibility bundles, the
// subset-quantified inequalities (by exhaustive Gray-code enumeration) and
// the cheaper sufficient-condition fast paths.
//
// Conditions are named by their customary labels (easyneccon, congcon1,
// reallylongineqnodial, ...) so reports can be matched against the
// mathematical statement directly.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rholatin/core.hpp"

namespace rholatin {

enum class Condition {
  kNone,
  kEasyneccon,
  kCongcon1,
  kCongcon2,
  kEasyneccondiag,
  kCongcon1diag,
  kLongineqnodial1,
  kLongineqnodial2,
  kReallylongineqnodial,
  kLongineqdial1,
  kLongineqdial2,
  kReallylongineqdial,
};

inline std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::kNone: return "none";
    case Condition::kEasyneccon: return "easyneccon";
    case Condition::kCongcon1: return "congcon1";
    case Condition::kCongcon2: return "congcon2";
    case Condition::kEasyneccondiag: return "easyneccondiag";
    case Condition::kCongcon1diag: return "congcon1diag";
    case Condition::kLongineqnodial1: return "longineqnodial1";
    case Condition::kLongineqnodial2: return "longineqnodial2";
    case Condition::kReallylongineqnodial: return "reallylongineqnodial";
    case Condition::kLongineqdial1: return "longineqdial1";
    case Condition::kLongineqdial2: return "longineqdial2";
    case Condition::kReallylongineqdial: return "reallylongineqdial";
  }
  return "unknown";
}

/// A pair (I, K) of rows (0-based) and symbols (1-based) exhibiting a violation.
struct SubsetWitness {
  std::vector<int> rows;
  std::vector<Symbol> symbols;

  friend bool operator==(const SubsetWitness&, const SubsetWitness&) = default;
};

struct ConditionVerdict {
  bool satisfied = true;
  Condition violated = Condition::kNone;
  std::optional<Symbol> symbol;
  std::optional<SubsetWitness> witness;

  static ConditionVerdict ok() { return {}; }
  static ConditionVerdict at_symbol(Condition c, Symbol l) { return {false, c, l, std::nullopt}; }
  static ConditionVerdict global(Condition c) { return {false, c, std::nullopt, std::nullopt}; }
  static ConditionVerdict at_subsets(Condition c, SubsetWitness w) {
    return {false, c, std::nullopt, std::move(w)};
  }

  /// e.g. "easyneccon at symbol 3" or "reallylongineqnodial at I={1}, K={3,4}".
  std::string describe() const {
    if (satisfied) return "satisfied";
    std::string out(condition_name(violated));
    if (symbol) out += " at symbol " + std::to_string(*symbol);
    if (witness) {
      auto list = [](const std::vector<int>& xs, int offset) {
        std::string s = "{";
        for (std::size_t i = 0; i < xs.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(xs[i] + offset);
        }
        return s + "}";
      };
      switch (violated) {
        case Condition::kLongineqnodial1:
        case Condition::kLongineqdial1:
          out += " at I=" + list(witness->rows, 1);
          break;
        case Condition::kLongineqnodial2:
        case Condition::kLongineqdial2:
          out += " at K=" + list(witness->symbols, 0);
          break;
        default:
          out += " at I=" + list(witness->rows, 1) + ", K=" + list(witness->symbols, 0);
      }
    }
    return out;
  }
};

/// easyneccon, congcon1 and congcon2.
inline ConditionVerdict is_rho_admissible(const OccurrenceVector& e, const RhoVector& rho, int r) {
  detail::require(e.k() == rho.k(), "admissible: e and rho differ in length");
  detail::require(r >= 0 && r <= rho.n(), "admissible: r outside [0, n]");
  const int p = rho.n() - r;
  for (Symbol l = 1; l <= rho.k(); ++l) {
    if (rho.of(l) - e.of(l) > 2 * p) return ConditionVerdict::at_symbol(Condition::kEasyneccon, l);
  }
  int odd = 0;
  for (Symbol l = 1; l <= rho.k(); ++l) odd += (rho.of(l) - e.of(l)) & 1;
  if (odd > p) return ConditionVerdict::global(Condition::kCongcon1);
  if ((odd - p) % 2 != 0) return ConditionVerdict::global(Condition::kCongcon2);
  return ConditionVerdict::ok();
}

/// congcon1 and congcon2 only.
inline ConditionVerdict is_nearly_rho_admissible(const OccurrenceVector& e, const RhoVector& rho,
                                                 int r) {
  detail::require(e.k() == rho.k(), "admissible: e and rho differ in length");
  const int p = rho.n() - r;
  int odd = 0;
  for (Symbol l = 1; l <= rho.k(); ++l) odd += (rho.of(l) - e.of(l)) & 1;
  if (odd > p) return ConditionVerdict::global(Condition::kCongcon1);
  if ((odd - p) % 2 != 0) return ConditionVerdict::global(Condition::kCongcon2);
  return ConditionVerdict::ok();
}

/// congcon1diag for every symbol, then easyneccondiag for every symbol.
inline ConditionVerdict is_rho_d_admissible(const OccurrenceVector& e, const RhoVector& rho,
                                            const DiagonalTail& d, int r) {
  detail::require(e.k() == rho.k() && d.k() == rho.k(), "admissible: length mismatch");
  detail::require(d.n() == rho.n() && d.r() == r,
                  detail::concat("admissible: tail is for (n, r) = (", d.n(), ", ", d.r(),
                                 "), expected (", rho.n(), ", ", r, ")"));
  const int p = rho.n() - r;
  for (Symbol l = 1; l <= rho.k(); ++l) {
    if ((rho.of(l) - e.of(l) + d.of(l)) % 2 != 0) {
      return ConditionVerdict::at_symbol(Condition::kCongcon1diag, l);
    }
  }
  for (Symbol l = 1; l <= rho.k(); ++l) {
    if (rho.of(l) - e.of(l) + d.of(l) > 2 * p) {
      return ConditionVerdict::at_symbol(Condition::kEasyneccondiag, l);
    }
  }
  return ConditionVerdict::ok();
}

/// Caps on the exhaustive subset enumerations (2^rows * 2^symbols pairs).
struct SubsetBudget {
  int max_rows = 12;
  int max_symbols = 16;
};

/// Both characterizations of the subset conditions, evaluated independently.
struct SubsetCheck {
  ConditionVerdict hall;      ///< the row-subset and symbol-subset pair of conditions
  ConditionVerdict pairwise;  ///< the single condition quantified over pairs (I, K)

  bool agree() const noexcept { return hall.satisfied == pairwise.satisfied; }
};

namespace detail {

inline std::vector<int> mask_to_rows(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

inline std::vector<Symbol> mask_to_symbols(std::uint64_t mask) {
  std::vector<Symbol> out;
  for (int l = 1; mask; ++l, mask >>= 1) {
    if (mask & 1) out.push_back(l);
  }
  return out;
}

inline std::uint64_t low_bits(int count) {
  return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

/// The bipartite missing-symbol structure of a rectangle together with the
/// per-symbol degree window, in bitmask form.
struct SubsetProblem {
  int r = 0;
  int k = 0;
  int p = 0;
  std::vector<std::uint64_t> row_missing;     // bit l-1: symbol l absent from row i
  std::vector<std::uint64_t> symbol_missing;  // bit i: row i lacks symbol l (index l-1)
  std::vector<int> lower;                     // g(l), index l-1
  std::vector<int> upper;                     // f(l), index l-1
};

inline SubsetProblem make_subset_problem(const SymmetricSquare& square, const RhoVector& rho,
                                         const std::optional<DiagonalTail>& tail,
                                         const SubsetBudget& budget) {
  const int r = square.r();
  const int k = rho.k();
  if (r > budget.max_rows || k > budget.max_symbols || r > 63 || k > 63) {
    throw BudgetError(concat("subset enumeration over r=", r, " rows and k=", k,
                             " symbols exceeds the budget (", budget.max_rows, " rows, ",
                             budget.max_symbols, " symbols); use the flow-based check"));
  }
  require(r < rho.n(), "subset conditions need r < n");
  const auto e = count_occurrences(square);
  SubsetProblem sp;
  sp.r = r;
  sp.k = k;
  sp.p = rho.n() - r;
  sp.row_missing.assign(r, 0);
  sp.symbol_missing.assign(k, 0);
  for (int i = 0; i < r; ++i) {
    for (Symbol l = 1; l <= k; ++l) {
      if (!square.row_has(i, l)) {
        sp.row_missing[i] |= std::uint64_t{1} << (l - 1);
        sp.symbol_missing[l - 1] |= std::uint64_t{1} << i;
      }
    }
  }
  for (Symbol l = 1; l <= k; ++l) {
    const int gap = rho.of(l) - e.of(l);
    sp.lower.push_back(monus(gap, sp.p));
    if (tail) {
      const int diag_gap = gap - tail->of(l);
      require(diag_gap % 2 == 0,
              concat("subset conditions: rho - e - d is odd at symbol ", l,
                     " (instance is not (rho,d)-admissible)"));
      sp.upper.push_back(diag_gap / 2);
    } else {
      // gap >= 0 because e <= rho, so this is the floor.
      sp.upper.push_back(gap / 2);
    }
  }
  return sp;
}

/// For all I: p|I| <= sum_l min(f(l), mu_I(l)). Gray-code order over I.
inline std::optional<std::uint64_t> first_row_hall_violation(const SubsetProblem& sp) {
  std::vector<int> mu(sp.k, 0);
  long long rhs = 0;
  for (int l = 0; l < sp.k; ++l) rhs += std::min(sp.upper[l], 0);
  std::uint64_t rows = 0;
  int size = 0;
  if (0 > rhs) return rows;
  const std::uint64_t steps = std::uint64_t{1} << sp.r;
  for (std::uint64_t t = 1; t < steps; ++t) {
    const int i = std::countr_zero(t);
    const std::uint64_t bit = std::uint64_t{1} << i;
    const int delta = (rows & bit) ? -1 : 1;
    rows ^= bit;
    size += delta;
    for (std::uint64_t m = sp.row_missing[i]; m; m &= m - 1) {
      const int l = std::countr_zero(m);
      const int before = std::min(sp.upper[l], mu[l]);
      mu[l] += delta;
      rhs += std::min(sp.upper[l], mu[l]) - before;
    }
    if (static_cast<long long>(sp.p) * size > rhs) return rows;
  }
  return std::nullopt;
}

/// For all K: sum_{l in K} g(l) <= sum_i min(p, mu_K(i)). Gray-code order over K.
inline std::optional<std::uint64_t> first_symbol_hall_violation(const SubsetProblem& sp) {
  std::vector<int> mu(sp.r, 0);
  long long lhs = 0;
  long long rhs = 0;
  std::uint64_t symbols = 0;
  const std::uint64_t steps = std::uint64_t{1} << sp.k;
  for (std::uint64_t t = 1; t < steps; ++t) {
    const int l = std::countr_zero(t);
    const std::uint64_t bit = std::uint64_t{1} << l;
    const int delta = (symbols & bit) ? -1 : 1;
    symbols ^= bit;
    lhs += delta * sp.lower[l];
    for (std::uint64_t m = sp.symbol_missing[l]; m; m &= m - 1) {
      const int i = std::countr_zero(m);
      const int before = std::min(sp.p, mu[i]);
      mu[i] += delta;
      rhs += std::min(sp.p, mu[i]) - before;
    }
    if (lhs > rhs) return symbols;
  }
  return std::nullopt;
}

/// For all (I, K):
///   p(r - |I|) + sum_{l not in K} f(l)
///     >= sum_{l in K} (g(l) -. mu_I(l)) + sum_{i in I} (p -. mu_K(i)).
/// Outer Gray code over I, inner Gray code over K with incremental sums.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> first_pairwise_violation(
    const SubsetProblem& sp) {
  long long upper_total = 0;
  for (int l = 0; l < sp.k; ++l) upper_total += sp.upper[l];

  std::vector<int> mu_rows_of(sp.k, 0);  // mu_I(l)
  std::vector<int> mu_syms_of(sp.r, 0);  // mu_K(i)
  std::uint64_t rows = 0;
  int row_count = 0;
  const std::uint64_t row_steps = std::uint64_t{1} << sp.r;
  const std::uint64_t symbol_steps = std::uint64_t{1} << sp.k;

  for (std::uint64_t t = 0; t < row_steps; ++t) {
    if (t > 0) {
      const int i = std::countr_zero(t);
      const std::uint64_t bit = std::uint64_t{1} << i;
      const int delta = (rows & bit) ? -1 : 1;
      rows ^= bit;
      row_count += delta;
      for (std::uint64_t m = sp.row_missing[i]; m; m &= m - 1) mu_rows_of[std::countr_zero(m)] += delta;
    }

    std::fill(mu_syms_of.begin(), mu_syms_of.end(), 0);
    std::uint64_t symbols = 0;
    long long outside_upper = upper_total;                        // sum_{l not in K} f(l)
    long long symbol_term = 0;                                    // sum_{l in K} (g -. mu_I)
    long long row_term = static_cast<long long>(sp.p) * row_count;  // sum_{i in I} (p -. mu_K)
    const long long fixed = static_cast<long long>(sp.p) * (sp.r - row_count);

    for (std::uint64_t u = 0; u < symbol_steps; ++u) {
      if (u > 0) {
        const int l = std::countr_zero(u);
        const std::uint64_t bit = std::uint64_t{1} << l;
        const int delta = (symbols & bit) ? -1 : 1;
        symbols ^= bit;
        outside_upper -= delta * sp.upper[l];
        symbol_term += delta * monus(sp.lower[l], mu_rows_of[l]);
        for (std::uint64_t m = sp.symbol_missing[l]; m; m &= m - 1) {
          const int i = std::countr_zero(m);
          const int before = monus(sp.p, mu_syms_of[i]);
          mu_syms_of[i] += delta;
          if (rows & (std::uint64_t{1} << i)) row_term += monus(sp.p, mu_syms_of[i]) - before;
        }
      }
      if (fixed + outside_upper < symbol_term + row_term) return std::pair{rows, symbols};
    }
  }
  return std::nullopt;
}

inline SubsetCheck check_subset_conditions(const SymmetricSquare& square, const RhoVector& rho,
                                           const std::optional<DiagonalTail>& tail,
                                           const SubsetBudget& budget) {
  const auto sp = make_subset_problem(square, rho, tail, budget);
  const auto c1 = tail ? Condition::kLongineqdial1 : Condition::kLongineqnodial1;
  const auto c2 = tail ? Condition::kLongineqdial2 : Condition::kLongineqnodial2;
  const auto c3 = tail ? Condition::kReallylongineqdial : Condition::kReallylongineqnodial;

  SubsetCheck check;
  if (auto rows = first_row_hall_violation(sp)) {
    check.hall = ConditionVerdict::at_subsets(c1, {mask_to_rows(*rows), {}});
  } else if (auto symbols = first_symbol_hall_violation(sp)) {
    check.hall = ConditionVerdict::at_subsets(c2, {{}, mask_to_symbols(*symbols)});
  }
  if (auto pair = first_pairwise_violation(sp)) {
    check.pairwise =
        ConditionVerdict::at_subsets(c3, {mask_to_rows(pair->first), mask_to_symbols(pair->second)});
  }
  return check;
}

}  // namespace detail

/// Both characterizations of the subset conditions for completion without a
/// prescribed tail. Precondition: r < n. Throws BudgetError past `budget`.
inline SubsetCheck check_subset_conditions_nodiag(const SymmetricSquare& square,
                                                  const RhoVector& rho,
                                                  const SubsetBudget& budget = {}) {
  return detail::check_subset_conditions(square, rho, std::nullopt, budget);
}

/// As above, with the tail-adjusted upper bounds (rho_l - e_l - d_l) / 2.
/// Requires rho_l - e_l - d_l even for every symbol.
inline SubsetCheck check_subset_conditions_diag(const SymmetricSquare& square,
                                                const RhoVector& rho, const DiagonalTail& d,
                                                const SubsetBudget& budget = {}) {
  detail::require(d.n() == rho.n() && d.r() == square.r() && d.k() == rho.k(),
                  "subset conditions: tail does not match the instance");
  return detail::check_subset_conditions(square, rho, d, budget);
}

/// Left side minus right side of the pairwise condition at one (I, K), computed
/// straight from the rectangle. Negative means (I, K) violates it.
inline long long pairwise_slack(const SymmetricSquare& square, const RhoVector& rho,
                                const std::optional<DiagonalTail>& tail,
                                std::span<const int> rows, std::span<const Symbol> symbols) {
  const int r = square.r();
  const int p = rho.n() - r;
  const auto e = count_occurrences(square);
  std::vector<char> in_k(rho.k() + 1, 0);
  for (Symbol l : symbols) in_k.at(l) = 1;
  long long lhs = static_cast<long long>(p) * (r - static_cast<int>(rows.size()));
  long long rhs = 0;
  for (Symbol l = 1; l <= rho.k(); ++l) {
    const int gap = rho.of(l) - e.of(l);
    if (in_k[l]) {
      rhs += monus(gap - p, mu_rows(square, rows, l));
    } else {
      lhs += tail ? (gap - tail->of(l)) / 2 : gap / 2;
    }
  }
  for (int i : rows) rhs += monus(p, mu_symbols(square, i, symbols));
  return lhs - rhs;
}

/// Decides completability from the conditions alone: admissibility followed
/// by the pairwise subset condition. Exponential; for verification and small
/// instances.
inline ConditionVerdict subset_theorem_verdict(const SymmetricSquare& square, const RhoVector& rho,
                                               const std::optional<DiagonalTail>& tail,
                                               const SubsetBudget& budget = {}) {
  const auto e = count_occurrences(square);
  auto admissible = tail ? is_rho_d_admissible(e, rho, *tail, square.r())
                         : is_rho_admissible(e, rho, square.r());
  if (!admissible.satisfied || square.r() == rho.n()) return admissible;
  return detail::check_subset_conditions(square, rho, tail, budget).pairwise;
}

// ---------------------------------------------------------------------------
// Sufficient-condition fast paths.

enum class Corollary {
  kCor1Diag,
  kCor2Diag,
  kCor3Diag,
  kHellCorDiag,
  kCor1NoDiag,
  kCor2NoDiag,
  kCor3NoDiag,
  kHellCorNoDiag,
};

inline std::string_view corollary_name(Corollary c) {
  switch (c) {
    case Corollary::kCor1Diag: return "cor1diag";
    case Corollary::kCor2Diag: return "cor2diag";
    case Corollary::kCor3Diag: return "cor3diag";
    case Corollary::kHellCorDiag: return "hellcordiag";
    case Corollary::kCor1NoDiag: return "cor1nodiag";
    case Corollary::kCor2NoDiag: return "cor2nodiag";
    case Corollary::kCor3NoDiag: return "cor3nodiag";
    case Corollary::kHellCorNoDiag: return "hellcornodiag";
  }
  return "unknown";
}

/// One fast path's outcome. When `applicable`, `verdict` is the completability
/// verdict the fast path predicts; `alternate_verdict` is the same prediction
/// through the fast path's second (equivalent) condition set, when it has one.
/// Verdicts are empty when the needed subset enumeration is over budget.
struct CorollaryReport {
  Corollary id;
  bool applicable = false;
  std::optional<bool> verdict;
  std::optional<bool> alternate_verdict;
};

namespace detail {

struct FastPathContext {
  int n, k, r, p;
  std::vector<int> gap;    // rho - e
  std::vector<int> unused;  // r - e = deg of the symbol in the missing bigraph
  std::vector<int> lower;   // (rho - e - p) truncated at 0
  std::vector<int> half;    // floor((rho - e)/2), or (rho - e - d)/2 with a tail
};

// For all K: sum_{l in K} half(l) >= sum_{i} (p -. mu_{not K}(i)).
inline bool refined_symbol_condition(const SubsetProblem& sp) {
  const std::uint64_t all = low_bits(sp.k);
  for (std::uint64_t K = 0; K <= all; ++K) {
    long long lhs = 0;
    for (std::uint64_t m = K; m; m &= m - 1) lhs += sp.upper[std::countr_zero(m)];
    long long rhs = 0;
    for (int i = 0; i < sp.r; ++i) rhs += monus(sp.p, std::popcount(sp.row_missing[i] & ~K & all));
    if (lhs < rhs) return false;
    if (K == all) break;
  }
  return true;
}

// For all I: p(r - |I|) >= sum_l (g(l) -. mu_I(l)).
inline bool lower_only_row_condition(const SubsetProblem& sp) {
  const std::uint64_t all = low_bits(sp.r);
  for (std::uint64_t I = 0; I <= all; ++I) {
    long long rhs = 0;
    for (int l = 0; l < sp.k; ++l) rhs += monus(sp.lower[l], std::popcount(sp.symbol_missing[l] & I));
    if (static_cast<long long>(sp.p) * (sp.r - std::popcount(I)) < rhs) return false;
    if (I == all) break;
  }
  return true;
}

}  // namespace detail

/// Evaluates every fast path relevant to the instance: the four tail-aware
/// ones when `tail` is given, otherwise the four without a tail. Requires r < n.
inline std::vector<CorollaryReport> corollary_fastpaths(const SymmetricSquare& square,
                                                        const RhoVector& rho,
                                                        const std::optional<DiagonalTail>& tail,
                                                        const SubsetBudget& budget = {}) {
  detail::require(square.r() < rho.n(), "fast paths need r < n");
  const auto e = count_occurrences(square);
  detail::FastPathContext c{rho.n(), rho.k(), square.r(), rho.n() - square.r(), {}, {}, {}, {}};
  bool parity_ok = true;
  for (Symbol l = 1; l <= c.k; ++l) {
    const int gap = rho.of(l) - e.of(l);
    c.gap.push_back(gap);
    c.unused.push_back(c.r - e.of(l));
    c.lower.push_back(monus(gap, c.p));
    if (tail) {
      const int t = gap - tail->of(l);
      parity_ok = parity_ok && t % 2 == 0;
      c.half.push_back(t >= 0 ? t / 2 : -((-t + 1) / 2));
    } else {
      c.half.push_back(gap / 2);
    }
  }

  auto all_symbols = [&](auto pred) {
    for (int l = 0; l < c.k; ++l) {
      if (!pred(l)) return false;
    }
    return true;
  };
  // subset-based parts only run when the cheap parts already hold
  auto with_subsets = [&](bool base, auto evaluate) -> std::optional<bool> {
    if (!base) return false;
    try {
      const auto sp = detail::make_subset_problem(square, rho, tail, budget);
      return evaluate(sp);
    } catch (const BudgetError&) {
      return std::nullopt;
    }
  };
  const bool hyp_lower_vanishes = all_symbols([&](int l) { return c.gap[l] <= c.p; });

  std::vector<CorollaryReport> out;
  if (tail) {
    auto d = [&](int l) { return tail->of(l + 1); };
    {
      CorollaryReport rep{Corollary::kCor1Diag, false, std::nullopt, std::nullopt};
      rep.applicable = hyp_lower_vanishes;
      if (rep.applicable) {
        rep.verdict = with_subsets(parity_ok, detail::refined_symbol_condition);
        rep.alternate_verdict = with_subsets(parity_ok, [](const detail::SubsetProblem& sp) {
          return !detail::first_row_hall_violation(sp).has_value();
        });
      }
      out.push_back(rep);
    }
    {
      CorollaryReport rep{Corollary::kCor2Diag, false, std::nullopt, std::nullopt};
      rep.applicable =
          all_symbols([&](int l) { return e.of(l + 1) >= 2 * c.r + d(l) - rho.of(l + 1); });
      if (rep.applicable) {
        // the row condition is stated over complements; quantifying over all
        // I is the same as quantifying over all complements of I
        rep.verdict = with_subsets(parity_ok, detail::lower_only_row_condition);
        rep.alternate_verdict = with_subsets(parity_ok, [](const detail::SubsetProblem& sp) {
          return !detail::first_symbol_hall_violation(sp).has_value();
        });
      }
      out.push_back(rep);
    }
    {
      CorollaryReport rep{Corollary::kCor3Diag, false, std::nullopt, std::nullopt};
      rep.applicable = all_symbols([&](int l) {
        const int rl = rho.of(l + 1);
        const int el = e.of(l + 1);
        return 2 * c.r + d(l) - el <= rl && rl <= c.n - c.r + el;
      });
      if (rep.applicable) rep.verdict = parity_ok;
      out.push_back(rep);
    }
    {
      CorollaryReport rep{Corollary::kHellCorDiag, false, std::nullopt, std::nullopt};
      const long long kr = c.k - c.r;
      rep.applicable =
          all_symbols([&](int l) {
            return static_cast<long long>(c.p) * c.unused[l] >= kr * (c.gap[l] - c.p) &&
                   kr * (c.gap[l] - d(l)) >= 2LL * c.p * c.unused[l];
          }) &&
          all_symbols([&](int l) {
            return all_symbols([&](int m) {
              return static_cast<long long>(c.unused[l]) * (c.gap[m] - d(m)) >=
                     2LL * c.unused[m] * (c.gap[l] - c.p);
            });
          });
      if (rep.applicable) rep.verdict = parity_ok;
      out.push_back(rep);
    }
    return out;
  }

  const bool nearly = is_nearly_rho_admissible(e, rho, c.r).satisfied;
  const bool hyp_half_covers = all_symbols([&](int l) { return c.half[l] >= c.unused[l]; });
  {
    CorollaryReport rep{Corollary::kCor1NoDiag, false, std::nullopt, std::nullopt};
    rep.applicable = hyp_lower_vanishes;
    if (rep.applicable) {
      rep.verdict = with_subsets(nearly, detail::refined_symbol_condition);
      rep.alternate_verdict = with_subsets(nearly, [](const detail::SubsetProblem& sp) {
        return !detail::first_row_hall_violation(sp).has_value();
      });
    }
    out.push_back(rep);
  }
  {
    CorollaryReport rep{Corollary::kCor2NoDiag, false, std::nullopt, std::nullopt};
    rep.applicable = hyp_half_covers;
    if (rep.applicable) {
      rep.verdict = with_subsets(nearly, [](const detail::SubsetProblem& sp) {
        return !detail::first_symbol_hall_violation(sp).has_value();
      });
      rep.alternate_verdict = with_subsets(nearly, detail::lower_only_row_condition);
    }
    out.push_back(rep);
  }
  {
    CorollaryReport rep{Corollary::kCor3NoDiag, false, std::nullopt, std::nullopt};
    rep.applicable = hyp_lower_vanishes && hyp_half_covers;
    if (rep.applicable) rep.verdict = nearly;
    out.push_back(rep);
  }
  {
    CorollaryReport rep{Corollary::kHellCorNoDiag, false, std::nullopt, std::nullopt};
    const long long kr = c.k - c.r;
    rep.applicable =
        all_symbols([&](int l) {
          return static_cast<long long>(c.p) * c.unused[l] >= kr * (c.gap[l] - c.p) &&
                 kr * c.half[l] >= static_cast<long long>(c.p) * c.unused[l];
        }) &&
        all_symbols([&](int l) {
          return all_symbols([&](int m) {
            return static_cast<long long>(c.unused[l]) * c.half[m] >=
                   static_cast<long long>(c.unused[m]) * (c.gap[l] - c.p);
          });
        });
    if (rep.applicable) rep.verdict = nearly;
    out.push_back(rep);
  }
  return out;
}

}  // namespace rholatin
