#pragma once

// Constructive completion. The n - r missing rows are first amalgamated into a
// single vertex alpha carrying n - r edges to every block row, n - r 1-loops
// and C(n - r, 2) 2-loops. A (g,f)-factor fixes the colors on the alpha-row
// edges, a diagonal tail fixes the 1-loop colors, the remaining color budget
// goes to the 2-loops, and alpha is then detached back into n - r vertices
// whose incident colors are all distinct. Reading the detached graph back as
// an array gives the completed square.

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "rholatin/conditions.hpp"
#include "rholatin/core.hpp"
#include "rholatin/factor.hpp"
#include "rholatin/flow.hpp"

namespace rholatin {

/// Raised when splitting the amalgamated vertex fails; carries a textual dump
/// of the amalgam for reproduction.
class DetachmentError : public InternalError {
 public:
  using InternalError::InternalError;
};

/// Chooses a diagonal tail d with sum n - r, d_l = rho_l - e_l (mod 2) and
/// deg_theta(l) <= (rho_l - e_l - d_l) / 2. Odd symbols get 1; the remaining
/// (n - r - |odd|) / 2 pairs go to symbols in ascending order, each as far as
/// its slack allows.
inline DiagonalTail select_diagonal_tail(std::span<const int> theta_degrees,
                                         const OccurrenceVector& e, const RhoVector& rho, int r) {
  const int n = rho.n();
  const int k = rho.k();
  const int p = n - r;
  detail::require(static_cast<int>(theta_degrees.size()) == k, "tail: theta degree count != k");
  std::vector<int> d(k, 0);
  int odd = 0;
  for (int l = 0; l < k; ++l) {
    d[l] = (rho.of(l + 1) - e.of(l + 1)) & 1;
    odd += d[l];
  }
  detail::ensure(odd <= p && (p - odd) % 2 == 0,
                 "tail: parity preconditions fail (instance is not rho-admissible)");
  int remaining = (p - odd) / 2;
  for (int l = 0; l < k && remaining > 0; ++l) {
    const int slack = (rho.of(l + 1) - e.of(l + 1) - d[l]) / 2 - theta_degrees[l];
    detail::ensure(slack >= 0, "tail: theta exceeds (rho - e) / 2 at some symbol");
    const int take = std::min(slack, remaining);
    d[l] += 2 * take;
    remaining -= take;
  }
  detail::ensure(remaining == 0, "tail: not enough slack to place the diagonal pairs");

  DiagonalTail tail(n, r, d);
  for (int l = 0; l < k; ++l) {
    const int gap = rho.of(l + 1) - e.of(l + 1);
    detail::ensure((d[l] - gap) % 2 == 0, "tail: parity property fails");
    detail::ensure(2 * theta_degrees[l] <= gap - d[l], "tail: theta bound fails");
  }
  return tail;
}

/// The colored graph on block rows x_1..x_r plus the amalgamated vertex alpha.
struct AmalgamatedGraph {
  SymmetricSquare block;
  std::vector<std::vector<Symbol>> row_colors;  // colors of the alpha-x_i edges
  std::vector<int> loop_colors;                 // 1-loops of alpha per color, index l-1
  std::vector<int> pair_colors;                 // 2-loops of alpha per color, index l-1

  int n() const noexcept { return block.n(); }
  int r() const noexcept { return block.r(); }
  int k() const noexcept { return block.k(); }
  int p() const noexcept { return block.n() - block.r(); }

  /// Degree of alpha in color class l (a 2-loop counts twice).
  int alpha_degree(Symbol l) const {
    int d = loop_colors.at(l - 1) + 2 * pair_colors.at(l - 1);
    for (const auto& colors : row_colors) d += static_cast<int>(std::count(colors.begin(), colors.end(), l));
    return d;
  }

  std::string dump() const {
    std::ostringstream os;
    os << "amalgam n=" << n() << " r=" << r() << " k=" << k() << "\n  block:";
    for (const auto& row : block.to_grid()) {
      os << " [";
      for (int v : row) os << v << ' ';
      os << ']';
    }
    for (int i = 0; i < r(); ++i) {
      os << "\n  alpha-x" << i + 1 << ":";
      for (Symbol l : row_colors[i]) os << ' ' << l;
    }
    os << "\n  loops:";
    for (int m : loop_colors) os << ' ' << m;
    os << "\n  pairs:";
    for (int m : pair_colors) os << ' ' << m;
    return os.str();
  }

  void check_invariants(const RhoVector& rho) const {
    const int p_ = p();
    const auto e = count_occurrences(block);
    detail::ensure(static_cast<int>(row_colors.size()) == r(), "amalgam: wrong number of rows");
    for (int i = 0; i < r(); ++i) {
      auto colors = row_colors[i];
      std::sort(colors.begin(), colors.end());
      detail::ensure(static_cast<int>(colors.size()) == p_, "amalgam: mult(alpha x_i) != n - r");
      detail::ensure(std::adjacent_find(colors.begin(), colors.end()) == colors.end(),
                     "amalgam: color repeated at x_i");
      for (Symbol l : colors) detail::ensure(!block.row_has(i, l), "amalgam: color repeated at x_i");
    }
    int loops = 0;
    int pairs = 0;
    for (Symbol l = 1; l <= k(); ++l) {
      detail::ensure(loop_colors[l - 1] >= 0 && pair_colors[l - 1] >= 0, "amalgam: negative multiplicity");
      loops += loop_colors[l - 1];
      pairs += pair_colors[l - 1];
      detail::ensure(alpha_degree(l) <= p_, "amalgam: color degree at alpha exceeds n - r");
      const int through_rows = alpha_degree(l) - loop_colors[l - 1] - 2 * pair_colors[l - 1];
      detail::ensure(e.of(l) + loop_colors[l - 1] + 2 * (through_rows + pair_colors[l - 1]) == rho.of(l),
                     "amalgam: |E1(G(l))| + 2|E2(G(l))| != rho_l");
    }
    detail::ensure(loops == p_, "amalgam: mult(alpha) != n - r");
    detail::ensure(pairs == choose2(p_), "amalgam: mult(alpha^2) != C(n - r, 2)");
  }
};

/// Colors the amalgam: Theta decides the alpha-row edges, d the 1-loops, and
/// each color gets (rho_l - e_l - d_l)/2 - deg_theta(l) of the 2-loops.
inline AmalgamatedGraph color_amalgam(const SymmetricSquare& square, const FactorSubgraph& theta,
                                      const DiagonalTail& d, const RhoVector& rho) {
  const int r = square.r();
  const int p = rho.n() - r;
  const auto e = count_occurrences(square);
  detail::require(d.r() == r && d.n() == rho.n(), "amalgam: tail does not match the block");
  AmalgamatedGraph g{square, theta.row_symbols, {}, {}};
  long long identity = 0;
  for (Symbol l = 1; l <= rho.k(); ++l) {
    const int gap = rho.of(l) - e.of(l);
    detail::ensure((gap - d.of(l)) % 2 == 0, "amalgam: d_l and rho_l - e_l differ in parity");
    const int pairs = (gap - d.of(l)) / 2 - theta.degree_of(l);
    detail::ensure(pairs >= 0, detail::concat("amalgam: negative 2-loop multiplicity at color ", l));
    g.loop_colors.push_back(d.of(l));
    g.pair_colors.push_back(pairs);
    identity += gap - 2 * theta.degree_of(l) - d.of(l);
  }
  detail::ensure(identity == 2LL * choose2(p), "amalgam: 2-loop counting identity fails");
  g.check_invariants(rho);
  return g;
}

/// alpha split into alpha_1..alpha_p, every edge and loop colored.
struct DetachedGraph {
  int r = 0;
  int p = 0;
  std::vector<std::vector<Symbol>> to_rows;  // [j][i]: color of alpha_j x_i
  std::vector<Symbol> loops;                 // [j]: color of the 1-loop at alpha_j
  std::vector<std::vector<Symbol>> between;  // [j][j']: color of alpha_j alpha_j'; 0 when j == j'

  /// Checks that each alpha_j has one 1-loop, one edge to every x_i and every
  /// other alpha_j', all of distinct colors, and that the colors are exactly
  /// those of the amalgam.
  void check_postconditions(const AmalgamatedGraph& g) const {
    const int k = g.k();
    detail::ensure(r == g.r() && p == g.p(), "detach: wrong shape");
    detail::ensure(static_cast<int>(to_rows.size()) == p && static_cast<int>(loops.size()) == p &&
                       static_cast<int>(between.size()) == p,
                   "detach: wrong number of split vertices");
    std::vector<int> loop_count(k + 1, 0);
    std::vector<int> pair_count(k + 1, 0);
    for (int j = 0; j < p; ++j) {
      std::vector<char> seen(k + 1, 0);
      auto take = [&](Symbol l, const char* what) {
        detail::ensure(l >= 1 && l <= k, detail::concat("detach: ", what, " at alpha_", j + 1, " is uncolored"));
        detail::ensure(!seen[l], detail::concat("detach: color ", l, " twice at alpha_", j + 1));
        seen[l] = 1;
      };
      detail::ensure(static_cast<int>(to_rows[j].size()) == r, "detach: alpha_j misses an x_i edge");
      for (int i = 0; i < r; ++i) take(to_rows[j][i], "edge to x_i");
      take(loops[j], "1-loop");
      ++loop_count[loops[j]];
      detail::ensure(static_cast<int>(between[j].size()) == p, "detach: alpha_j misses an alpha edge");
      for (int j2 = 0; j2 < p; ++j2) {
        if (j2 == j) continue;
        detail::ensure(between[j][j2] == between[j2][j], "detach: alpha-alpha edge colored inconsistently");
        take(between[j][j2], "edge to alpha");
        if (j < j2) ++pair_count[between[j][j2]];
      }
    }
    for (int i = 0; i < r; ++i) {
      std::vector<Symbol> used;
      for (int j = 0; j < p; ++j) used.push_back(to_rows[j][i]);
      std::sort(used.begin(), used.end());
      auto expected = g.row_colors[i];
      std::sort(expected.begin(), expected.end());
      detail::ensure(used == expected, "detach: colors on alpha-x_i edges changed");
    }
    for (Symbol l = 1; l <= k; ++l) {
      detail::ensure(loop_count[l] == g.loop_colors[l - 1], "detach: 1-loop colors changed");
      detail::ensure(pair_count[l] == g.pair_colors[l - 1], "detach: 2-loop colors changed");
    }
  }

  /// The block with the split vertices appended as rows/columns r..n-1.
  Grid assemble(const SymmetricSquare& block) const {
    Grid grid = block.to_grid();
    for (int j = 0; j < p; ++j) {
      const int row = r + j;
      for (int i = 0; i < r; ++i) grid[row][i] = grid[i][row] = to_rows[j][i];
      grid[row][row] = loops[j];
      for (int j2 = 0; j2 < p; ++j2) {
        if (j2 != j) grid[row][r + j2] = between[j][j2];
      }
    }
    return grid;
  }
};

/// Splits alpha into n - r vertices one at a time. Each split is an exact
/// assignment solved as a lower-bounded flow: the new vertex takes one edge
/// from every current neighbor, one 1-loop and p' - 1 of the 2-loops (which
/// become its edges to the residual amalgam), all of distinct colors, and it
/// must take every color whose degree at alpha equals p' so that the residual
/// keeps every color degree at most p' - 1. That invariant is what makes the
/// next split solvable, so the loop never needs to backtrack.
inline DetachedGraph detach(const AmalgamatedGraph& g) {
  const int r = g.r();
  const int p = g.p();
  const int k = g.k();
  struct Neighbor {
    bool is_row;
    int index;
    std::vector<Symbol> colors;
  };
  std::vector<Neighbor> neighbors;
  for (int i = 0; i < r; ++i) {
    auto colors = g.row_colors[i];
    std::sort(colors.begin(), colors.end());
    neighbors.push_back({true, i, std::move(colors)});
  }
  auto loops = g.loop_colors;
  auto pairs = g.pair_colors;

  DetachedGraph out;
  out.r = r;
  out.p = p;
  out.to_rows.assign(p, std::vector<Symbol>(r, 0));
  out.loops.assign(p, 0);
  out.between.assign(p, std::vector<Symbol>(p, 0));

  for (int j = 0; j < p; ++j) {
    const int remaining = p - j;
    std::vector<int> degree(k + 1, 0);
    for (const auto& u : neighbors) {
      for (Symbol l : u.colors) ++degree[l];
    }
    for (Symbol l = 1; l <= k; ++l) {
      degree[l] += loops[l - 1] + 2 * pairs[l - 1];
      if (degree[l] > remaining) {
        throw DetachmentError(detail::concat("detach: color ", l, " has degree ", degree[l],
                                             " at alpha with ", remaining, " vertices left\n", g.dump()));
      }
    }

    const int slots = static_cast<int>(neighbors.size());
    const int source = 0;
    const int loop_slot = slots + 1;
    const int pair_slot = slots + 2;
    auto color_node = [&](Symbol l) { return slots + 2 + l; };
    const int sink = slots + 3 + k;
    BoundedFlow net(sink + 1);
    struct Choice {
      int slot;
      Symbol color;
      int arc;
    };
    std::vector<Choice> choices;
    for (int s = 0; s < slots; ++s) {
      net.add_arc(source, 1 + s, 1, 1);
      for (Symbol l : neighbors[s].colors) choices.push_back({s, l, net.add_arc(1 + s, color_node(l), 0, 1)});
    }
    net.add_arc(source, loop_slot, 1, 1);
    net.add_arc(source, pair_slot, remaining - 1, remaining - 1);
    for (Symbol l = 1; l <= k; ++l) {
      if (loops[l - 1] > 0) choices.push_back({slots, l, net.add_arc(loop_slot, color_node(l), 0, 1)});
    }
    for (Symbol l = 1; l <= k; ++l) {
      if (pairs[l - 1] > 0) choices.push_back({slots + 1, l, net.add_arc(pair_slot, color_node(l), 0, 1)});
    }
    for (Symbol l = 1; l <= k; ++l) {
      net.add_arc(color_node(l), sink, degree[l] == remaining ? 1 : 0, 1);
    }

    const auto solved = net.solve(source, sink);
    if (!solved.feasible) {
      throw DetachmentError(detail::concat("detach: no valid split for alpha_", j + 1, "\n", g.dump()));
    }

    std::vector<Symbol> split_colors;
    for (const auto& c : choices) {
      if (solved.flow[c.arc] != 1) continue;
      if (c.slot < slots) {
        auto& u = neighbors[c.slot];
        u.colors.erase(std::find(u.colors.begin(), u.colors.end(), c.color));
        if (u.is_row) {
          out.to_rows[j][u.index] = c.color;
        } else {
          out.between[j][u.index] = out.between[u.index][j] = c.color;
        }
      } else if (c.slot == slots) {
        out.loops[j] = c.color;
        --loops[c.color - 1];
      } else {
        split_colors.push_back(c.color);
        --pairs[c.color - 1];
      }
    }
    neighbors.push_back({false, j, std::move(split_colors)});
  }
  for (const auto& u : neighbors) detail::ensure(u.colors.empty(), "detach: edges left at alpha");
  for (Symbol l = 1; l <= k; ++l) {
    detail::ensure(loops[l - 1] == 0 && pairs[l - 1] == 0, "detach: loops left at alpha");
  }
  try {
    out.check_postconditions(g);
  } catch (const InternalError& err) {
    throw DetachmentError(std::string(err.what()) + "\n" + g.dump());
  }
  return out;
}

/// Optional observer for what the pipeline did.
struct PipelineTrace {
  int detach_calls = 0;
  bool factor_solved = false;
  std::optional<FactorWitness> witness;
  std::optional<DiagonalTail> chosen_tail;
};

struct CompletionResult {
  std::optional<SymmetricSquare> square;
  ConditionVerdict verdict;

  bool completed() const noexcept { return square.has_value(); }
};

namespace detail {

inline CompletionResult finish(const SymmetricSquare& block, const FactorSubgraph& theta,
                               const DiagonalTail& d, const RhoVector& rho, PipelineTrace* trace) {
  const auto amalgam = color_amalgam(block, theta, d, rho);
  if (trace) ++trace->detach_calls;
  const auto detached = detach(amalgam);
  auto square = SymmetricSquare::from_grid(rho.k(), rho.n(), detached.assemble(block));
  const auto report = validate_square(square, rho, d);
  ensure(report.ok, "completion: result fails validation: " +
                        (report.violations.empty() ? std::string{} : report.violations.front()));
  for (int i = 0; i < block.r(); ++i) {
    for (int j = 0; j < block.r(); ++j) {
      ensure(square.at(i, j) == block.at(i, j), "completion: block was altered");
    }
  }
  return {std::move(square), ConditionVerdict::ok()};
}

}  // namespace detail

/// Completes the block to a symmetric rho-latin square, or reports the
/// violated condition (an admissibility failure or a factor witness).
inline CompletionResult complete(const RhoInstance& instance, PipelineTrace* trace = nullptr) {
  detail::require(!instance.tail, "complete: instance has a prescribed tail; use complete_with_diagonal");
  const auto& rho = instance.rho;
  const auto& block = instance.square;
  const auto e = count_occurrences(block);
  auto admissible = is_rho_admissible(e, rho, block.r());
  if (!admissible.satisfied) return {std::nullopt, admissible};
  if (block.is_full()) {
    detail::ensure(validate_square(block, rho).ok, "complete: admissible full square fails validation");
    return {block, ConditionVerdict::ok()};
  }
  const auto gamma = build_gamma(block);
  const auto window = window_nodiag(e, rho, block.r());
  auto factor = solve_gf_factor(gamma, window);
  if (trace) trace->factor_solved = true;
  if (!factor.feasible()) {
    if (trace) trace->witness = factor.witness;
    return {std::nullopt, factor.witness->as_verdict(false)};
  }
  const auto tail = select_diagonal_tail(factor.theta->symbol_degrees, e, rho, block.r());
  if (trace) trace->chosen_tail = tail;
  return detail::finish(block, *factor.theta, tail, rho, trace);
}

/// As `complete`, but the diagonal cells r..n-1 must carry the prescribed
/// tail (as a multiset). Never falls back to a free tail.
inline CompletionResult complete_with_diagonal(const RhoInstance& instance,
                                               PipelineTrace* trace = nullptr) {
  detail::require(instance.tail.has_value(), "complete_with_diagonal: instance has no tail");
  const auto& rho = instance.rho;
  const auto& block = instance.square;
  const auto& d = *instance.tail;
  const int r = block.r();
  const auto e = count_occurrences(block);
  auto admissible = is_rho_d_admissible(e, rho, d, r);
  if (!admissible.satisfied) return {std::nullopt, admissible};

  // A tail using a symbol more often than it has occurrences left makes the
  // upper bound (rho - e - d)/2 negative; (all rows, all other symbols) then
  // violates the pairwise condition.
  for (Symbol l = 1; l <= rho.k(); ++l) {
    if (rho.of(l) - e.of(l) - d.of(l) < 0) {
      SubsetWitness w;
      for (int i = 0; i < r; ++i) w.rows.push_back(i);
      for (Symbol m = 1; m <= rho.k(); ++m) {
        if (m != l) w.symbols.push_back(m);
      }
      return {std::nullopt, ConditionVerdict::at_subsets(Condition::kReallylongineqdial, std::move(w))};
    }
  }
  if (block.is_full()) {
    detail::ensure(validate_square(block, rho, d).ok, "complete: admissible full square fails validation");
    return {block, ConditionVerdict::ok()};
  }
  const auto gamma = build_gamma(block);
  const auto window = window_diag(e, rho, d, r);
  auto factor = solve_gf_factor(gamma, window);
  if (trace) trace->factor_solved = true;
  if (!factor.feasible()) {
    if (trace) trace->witness = factor.witness;
    return {std::nullopt, factor.witness->as_verdict(true)};
  }
  return detail::finish(block, *factor.theta, d, rho, trace);
}

/// A symmetric rho-latin square from scratch; exists iff the number of odd
/// rho_l is at most n and has the parity of n.
inline CompletionResult construct(const RhoVector& rho, PipelineTrace* trace = nullptr) {
  return complete(RhoInstance(rho, SymmetricSquare::empty(rho.n(), rho.k())), trace);
}

/// A symmetric rho-latin square whose diagonal has the multiset `d`
/// (sum n). Exists iff rho_l - d_l is even and d_l <= rho_l for every l.
inline CompletionResult construct_with_diagonal(const RhoVector& rho, const DiagonalTail& d,
                                                PipelineTrace* trace = nullptr) {
  detail::require(d.r() == 0 && d.n() == rho.n(), "construct: diagonal must be a tail with r = 0");
  return complete_with_diagonal(RhoInstance(rho, SymmetricSquare::empty(rho.n(), rho.k()), d), trace);
}

}  // namespace rholatin
