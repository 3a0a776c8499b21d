#pragma once

// The missing-symbol bigraph of a rectangle and the degree-constrained
// subgraph ((g,f)-factor) that decides which symbols each new row/column pair
// receives against the filled block.

#include <optional>
#include <vector>

#include "rholatin/conditions.hpp"
#include "rholatin/core.hpp"
#include "rholatin/flow.hpp"

namespace rholatin {

/// Bipartite graph between block rows [0, r) and symbols [1, k]; row i is
/// joined to symbol l iff l is absent from row i.
struct MissingBigraph {
  int rows = 0;
  int symbols = 0;
  std::vector<std::vector<Symbol>> row_edges;  // ascending per row

  int row_degree(int i) const { return static_cast<int>(row_edges.at(i).size()); }

  int symbol_degree(Symbol l) const {
    int d = 0;
    for (const auto& edges : row_edges) d += std::binary_search(edges.begin(), edges.end(), l);
    return d;
  }

  bool has_edge(int i, Symbol l) const {
    const auto& edges = row_edges.at(i);
    return std::binary_search(edges.begin(), edges.end(), l);
  }

  int edge_count() const {
    int total = 0;
    for (const auto& edges : row_edges) total += static_cast<int>(edges.size());
    return total;
  }
};

inline MissingBigraph build_gamma(const SymmetricSquare& square) {
  MissingBigraph gamma;
  gamma.rows = square.r();
  gamma.symbols = square.k();
  gamma.row_edges.resize(square.r());
  for (int i = 0; i < square.r(); ++i) {
    for (Symbol l = 1; l <= square.k(); ++l) {
      if (!square.row_has(i, l)) gamma.row_edges[i].push_back(l);
    }
  }
  const auto e = count_occurrences(square);
  for (int i = 0; i < gamma.rows; ++i) {
    detail::ensure(gamma.row_degree(i) == square.k() - square.r(), "gamma: row degree != k - r");
  }
  for (Symbol l = 1; l <= gamma.symbols; ++l) {
    detail::ensure(gamma.symbol_degree(l) == square.r() - e.of(l), "gamma: symbol degree != r - e");
  }
  return gamma;
}

/// Per-vertex degree bounds: every row needs exactly `row_demand` edges and
/// symbol l needs between lower[l-1] and upper[l-1].
struct DegreeWindow {
  int row_demand = 0;
  std::vector<int> lower;
  std::vector<int> upper;
  bool tail_adjusted = false;

  int lower_of(Symbol l) const { return lower.at(l - 1); }
  int upper_of(Symbol l) const { return upper.at(l - 1); }

  bool valid() const {
    if (row_demand < 0) return false;
    for (std::size_t l = 0; l < lower.size(); ++l) {
      if (lower[l] < 0 || lower[l] > upper[l]) return false;
    }
    return true;
  }
};

/// g(l) = (rho_l - e_l + r) -. n, f(l) = floor((rho_l - e_l) / 2).
inline DegreeWindow window_nodiag(const OccurrenceVector& e, const RhoVector& rho, int r) {
  DegreeWindow w;
  w.row_demand = rho.n() - r;
  for (Symbol l = 1; l <= rho.k(); ++l) {
    const int gap = rho.of(l) - e.of(l);
    w.lower.push_back(monus(gap + r, rho.n()));
    w.upper.push_back(gap >= 0 ? gap / 2 : -((1 - gap) / 2));
  }
  return w;
}

/// As window_nodiag but f(l) = (rho_l - e_l - d_l) / 2, which must be an integer.
inline DegreeWindow window_diag(const OccurrenceVector& e, const RhoVector& rho,
                                const DiagonalTail& d, int r) {
  DegreeWindow w;
  w.row_demand = rho.n() - r;
  w.tail_adjusted = true;
  for (Symbol l = 1; l <= rho.k(); ++l) {
    const int gap = rho.of(l) - e.of(l);
    detail::require((gap - d.of(l)) % 2 == 0,
                    detail::concat("window: rho - e - d is odd at symbol ", l));
    w.lower.push_back(monus(gap + r, rho.n()));
    w.upper.push_back((gap - d.of(l)) / 2);
  }
  return w;
}

/// Theta: for each row the symbols chosen for it, ascending.
struct FactorSubgraph {
  std::vector<std::vector<Symbol>> row_symbols;
  std::vector<int> symbol_degrees;  // index l-1

  int degree_of(Symbol l) const { return symbol_degrees.at(l - 1); }
  int edge_count() const {
    int total = 0;
    for (const auto& s : row_symbols) total += static_cast<int>(s.size());
    return total;
  }
};

/// Why no factor exists, in both characterizations: a pair (I, K) violating
/// the pairwise condition, and a single row set or symbol set violating the
/// Hall-type condition on that side.
struct FactorWitness {
  SubsetWitness pairwise;
  SubsetWitness hall;
  bool hall_on_rows = true;

  ConditionVerdict as_verdict(bool tail_adjusted) const {
    return ConditionVerdict::at_subsets(
        tail_adjusted ? Condition::kReallylongineqdial : Condition::kReallylongineqnodial, pairwise);
  }

  ConditionVerdict hall_verdict(bool tail_adjusted) const {
    Condition c = hall_on_rows
                      ? (tail_adjusted ? Condition::kLongineqdial1 : Condition::kLongineqnodial1)
                      : (tail_adjusted ? Condition::kLongineqdial2 : Condition::kLongineqnodial2);
    return ConditionVerdict::at_subsets(c, hall);
  }
};

struct FactorResult {
  std::optional<FactorSubgraph> theta;
  std::optional<FactorWitness> witness;

  bool feasible() const noexcept { return theta.has_value(); }
};

/// sum_{a not in A} f(a) - sum_{a in A} (g(a) -. deg_{Gamma[A]}(a)) for
/// A = I u K. Negative iff (I, K) violates the pairwise condition.
inline long long gf_pairwise_slack(const MissingBigraph& gamma, const DegreeWindow& window,
                                   std::span<const int> rows, std::span<const Symbol> symbols) {
  std::vector<char> in_i(gamma.rows, 0);
  std::vector<char> in_k(gamma.symbols + 1, 0);
  for (int i : rows) in_i.at(i) = 1;
  for (Symbol l : symbols) in_k.at(l) = 1;
  std::vector<int> symbol_inside(gamma.symbols + 1, 0);
  long long slack = 0;
  for (int i = 0; i < gamma.rows; ++i) {
    int inside = 0;
    for (Symbol l : gamma.row_edges[i]) {
      if (in_k[l]) ++inside;
      if (in_i[i]) ++symbol_inside[l];
    }
    if (in_i[i]) {
      slack -= monus(window.row_demand, inside);
    } else {
      slack += window.row_demand;
    }
  }
  for (Symbol l = 1; l <= gamma.symbols; ++l) {
    if (in_k[l]) {
      slack -= monus(window.lower_of(l), symbol_inside[l]);
    } else {
      slack += window.upper_of(l);
    }
  }
  return slack;
}

/// p|I| - sum_l min(f(l), mu_I(l)); positive iff I violates the row-side Hall condition.
inline long long gf_row_hall_excess(const MissingBigraph& gamma, const DegreeWindow& window,
                                    std::span<const int> rows) {
  std::vector<int> mu(gamma.symbols + 1, 0);
  for (int i : rows) {
    for (Symbol l : gamma.row_edges.at(i)) ++mu[l];
  }
  long long excess = static_cast<long long>(window.row_demand) * static_cast<long long>(rows.size());
  for (Symbol l = 1; l <= gamma.symbols; ++l) excess -= std::min(window.upper_of(l), mu[l]);
  return excess;
}

/// sum_{l in K} g(l) - sum_i min(p, mu_K(i)); positive iff K violates the
/// symbol-side Hall condition.
inline long long gf_symbol_hall_excess(const MissingBigraph& gamma, const DegreeWindow& window,
                                       std::span<const Symbol> symbols) {
  std::vector<char> in_k(gamma.symbols + 1, 0);
  long long excess = 0;
  for (Symbol l : symbols) {
    in_k.at(l) = 1;
    excess += window.lower_of(l);
  }
  for (int i = 0; i < gamma.rows; ++i) {
    int mu = 0;
    for (Symbol l : gamma.row_edges[i]) mu += in_k[l];
    excess -= std::min(window.row_demand, mu);
  }
  return excess;
}

/// Finds Theta with every row of degree exactly row_demand and every symbol
/// degree in [lower, upper], or a verified witness that none exists.
///
/// Network: s -> row [p, p], row -> symbol [0, 1] per edge, symbol -> t [g, f],
/// solved as a lower-bounded flow. On infeasibility the auxiliary minimum cut
/// C yields the witness: if t is outside C, the rows in C violate the row-side
/// condition and (all rows, symbols outside C) the pairwise one; otherwise the
/// symbols outside C violate the symbol-side condition and (rows in C, all
/// symbols) the pairwise one.
inline FactorResult solve_gf_factor(const MissingBigraph& gamma, const DegreeWindow& window) {
  detail::require(static_cast<int>(window.lower.size()) == gamma.symbols &&
                      static_cast<int>(window.upper.size()) == gamma.symbols,
                  "factor: window does not match the bigraph");
  if (!window.valid()) {
    throw StructuralError("factor: degree window has g > f or a negative bound somewhere");
  }
  const int r = gamma.rows;
  const int k = gamma.symbols;
  const int source = 0;
  const int sink = r + k + 1;
  auto row_node = [](int i) { return 1 + i; };
  auto symbol_node = [r](Symbol l) { return r + l; };

  BoundedFlow net(r + k + 2);
  for (int i = 0; i < r; ++i) net.add_arc(source, row_node(i), window.row_demand, window.row_demand);
  struct EdgeArc {
    int row;
    Symbol symbol;
    int arc;
  };
  std::vector<EdgeArc> edge_arcs;
  for (int i = 0; i < r; ++i) {
    for (Symbol l : gamma.row_edges[i]) edge_arcs.push_back({i, l, net.add_arc(row_node(i), symbol_node(l), 0, 1)});
  }
  for (Symbol l = 1; l <= k; ++l) net.add_arc(symbol_node(l), sink, window.lower_of(l), window.upper_of(l));

  const auto solved = net.solve(source, sink);
  FactorResult result;
  if (solved.feasible) {
    FactorSubgraph theta;
    theta.row_symbols.resize(r);
    theta.symbol_degrees.assign(k, 0);
    for (const auto& ea : edge_arcs) {
      if (solved.flow[ea.arc] == 1) {
        theta.row_symbols[ea.row].push_back(ea.symbol);
        ++theta.symbol_degrees[ea.symbol - 1];
      }
    }
    for (int i = 0; i < r; ++i) {
      detail::ensure(static_cast<int>(theta.row_symbols[i].size()) == window.row_demand,
                     "factor: row degree outside its window");
      for (Symbol l : theta.row_symbols[i]) detail::ensure(gamma.has_edge(i, l), "factor: theta not inside gamma");
    }
    for (Symbol l = 1; l <= k; ++l) {
      detail::ensure(window.lower_of(l) <= theta.degree_of(l) && theta.degree_of(l) <= window.upper_of(l),
                     "factor: symbol degree outside its window");
    }
    detail::ensure(theta.edge_count() == r * window.row_demand, "factor: |E(theta)| != r(n - r)");
    result.theta = std::move(theta);
    return result;
  }

  const auto& side = solved.auxiliary_side;
  std::vector<int> rows_in_cut;
  std::vector<int> all_rows;
  std::vector<Symbol> symbols_outside;
  std::vector<Symbol> all_symbols;
  for (int i = 0; i < r; ++i) {
    all_rows.push_back(i);
    if (side[row_node(i)]) rows_in_cut.push_back(i);
  }
  for (Symbol l = 1; l <= k; ++l) {
    all_symbols.push_back(l);
    if (!side[symbol_node(l)]) symbols_outside.push_back(l);
  }
  FactorWitness witness;
  if (!side[sink]) {
    witness.pairwise = {all_rows, symbols_outside};
    witness.hall = {rows_in_cut, {}};
    witness.hall_on_rows = true;
    detail::ensure(gf_row_hall_excess(gamma, window, rows_in_cut) > 0,
                   "factor: derived row set does not violate the row-side condition");
  } else {
    witness.pairwise = {rows_in_cut, all_symbols};
    witness.hall = {{}, symbols_outside};
    witness.hall_on_rows = false;
    detail::ensure(gf_symbol_hall_excess(gamma, window, symbols_outside) > 0,
                   "factor: derived symbol set does not violate the symbol-side condition");
  }
  detail::ensure(gf_pairwise_slack(gamma, window, witness.pairwise.rows, witness.pairwise.symbols) < 0,
                 "factor: derived (I, K) does not violate the pairwise condition");
  result.witness = std::move(witness);
  return result;
}

}  // namespace rholatin
