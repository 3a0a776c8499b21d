// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.
//
// The exhaustive sweeps are shared: one pass over all tail-free instances
// (n <= 4, k <= 6) and one over all instances with a tail feed criteria 1, 2,
// 4, 6, 8 and 9 at once.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "rholatin/completion.hpp"
#include "rholatin/conditions.hpp"
#include "rholatin/factor.hpp"
#include "rholatin/io.hpp"
#include "rholatin/oracle.hpp"

namespace {

using namespace rholatin;

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> examples;

  void fail(const std::string& what, const RhoInstance* instance = nullptr) {
    ++failures;
    if (examples.size() < 3) examples.push_back(instance ? what + " " + io::to_json(*instance).dump() : what);
  }
};

bool print(int id, const std::string& title, const Tally& t, const std::string& extra = {}) {
  const bool ok = t.failures == 0 && t.checked > 0;
  std::printf("%s criterion %d: %s (%llu checked, %llu failures%s%s)\n", ok ? "PASS" : "FAIL", id, title.c_str(),
              static_cast<unsigned long long>(t.checked), static_cast<unsigned long long>(t.failures),
              extra.empty() ? "" : ", ", extra.c_str());
  for (const auto& e : t.examples) std::printf("    %s\n", e.c_str());
  std::fflush(stdout);
  return ok;
}

// ---------------------------------------------------------------------------
// Independent evaluation of the subset inequalities, straight from the grid.

struct RawInstance {
  int n, k, r, p;
  std::vector<std::vector<bool>> missing;  // [row][symbol], symbol 1-based
  std::vector<int> gap;                    // rho - e, 1-based
  std::vector<int> f;                      // upper bound, 1-based
};

RawInstance raw(const RhoInstance& x) {
  RawInstance out{x.n(), x.k(), x.r(), x.n() - x.r(), {}, {}, {}};
  const Grid grid = x.square.to_grid();
  std::vector<int> e(out.k + 1, 0);
  out.missing.assign(out.r, std::vector<bool>(out.k + 1, true));
  for (int i = 0; i < out.r; ++i) {
    for (int j = 0; j < out.r; ++j) {
      ++e[grid[i][j]];
      out.missing[i][grid[i][j]] = false;
    }
  }
  out.gap.assign(out.k + 1, 0);
  out.f.assign(out.k + 1, 0);
  for (int l = 1; l <= out.k; ++l) {
    out.gap[l] = x.rho.entries()[l - 1] - e[l];
    if (x.tail) {
      out.f[l] = (out.gap[l] - x.tail->entries()[l - 1]) / 2;
    } else {
      out.f[l] = out.gap[l] / 2;
    }
  }
  return out;
}

long long mu_rows_raw(const RawInstance& a, const std::vector<int>& rows, int l) {
  long long c = 0;
  for (int i : rows) c += a.missing[i][l];
  return c;
}

long long mu_syms_raw(const RawInstance& a, int i, const std::vector<int>& syms) {
  long long c = 0;
  for (int l : syms) c += a.missing[i][l];
  return c;
}

long long sub0(long long x, long long y) { return x > y ? x - y : 0; }

// true when (I, K) violates the pairwise inequality
bool violates_pairwise(const RawInstance& a, const std::vector<int>& rows, const std::vector<int>& syms) {
  std::vector<bool> in_k(a.k + 1, false);
  for (int l : syms) in_k[l] = true;
  long long lhs = static_cast<long long>(a.p) * (a.r - static_cast<long long>(rows.size()));
  long long rhs = 0;
  for (int l = 1; l <= a.k; ++l) {
    if (in_k[l]) {
      rhs += sub0(a.gap[l] - a.p, mu_rows_raw(a, rows, l));
    } else {
      lhs += a.f[l];
    }
  }
  for (int i : rows) rhs += sub0(a.p, mu_syms_raw(a, i, syms));
  return lhs < rhs;
}

bool violates_row_side(const RawInstance& a, const std::vector<int>& rows) {
  long long rhs = 0;
  for (int l = 1; l <= a.k; ++l) rhs += std::min<long long>(a.f[l], mu_rows_raw(a, rows, l));
  return static_cast<long long>(a.p) * static_cast<long long>(rows.size()) > rhs;
}

bool violates_symbol_side(const RawInstance& a, const std::vector<int>& syms) {
  long long lhs = 0;
  long long rhs = 0;
  for (int l : syms) lhs += sub0(a.gap[l], a.p);
  for (int i = 0; i < a.r; ++i) rhs += std::min<long long>(a.p, mu_syms_raw(a, i, syms));
  return lhs > rhs;
}

// ---------------------------------------------------------------------------

struct Sweep {
  Tally equivalence;      // criterion 1 or 2
  Tally characterization; // criterion 4
  Tally fast_paths;       // criterion 6
  Tally witnesses;        // criterion 9
  Tally detach;           // criterion 8
  std::uint64_t fast_path_fires = 0;
  std::uint64_t completable = 0;
  double seconds = 0;
};

void sweep(bool with_tails, Sweep& s) {
  const auto start = std::chrono::steady_clock::now();
  EnumerationBounds bounds{1, 4, 6, with_tails, false};
  const SubsetBudget budget{};
  enumerate_instances(bounds, [&](const RhoInstance& x) {
    ++s.equivalence.checked;
    PipelineTrace trace;
    CompletionResult result;
    try {
      result = x.tail ? complete_with_diagonal(x, &trace) : complete(x, &trace);
    } catch (const DetachmentError& err) {
      s.detach.fail(err.what(), &x);
      s.equivalence.fail("pipeline raised", &x);
      return;
    } catch (const InternalError& err) {
      s.equivalence.fail(std::string("internal error: ") + err.what(), &x);
      return;
    }
    s.detach.checked += trace.detach_calls;
    const bool oracle = brute_force_complete(x).has_value();
    s.completable += oracle;
    if (oracle != result.completed()) {
      s.equivalence.fail(std::string("pipeline ") + (result.completed() ? "completes" : "refuses") + ", oracle " +
                             (oracle ? "completes" : "refuses"),
                         &x);
    }

    // every witness the pipeline returns, re-evaluated from the raw grid
    const auto a = raw(x);
    if (result.verdict.witness) {
      ++s.witnesses.checked;
      const auto& w = *result.verdict.witness;
      if (!violates_pairwise(a, w.rows, w.symbols)) s.witnesses.fail("pairwise witness holds", &x);
    }
    if (trace.witness) {
      ++s.witnesses.checked;
      const auto& h = trace.witness->hall;
      const bool bad = trace.witness->hall_on_rows ? !violates_row_side(a, h.rows) : !violates_symbol_side(a, h.symbols);
      if (bad) s.witnesses.fail("one-sided witness holds", &x);
    }

    // characterization equivalence where the degree window is meaningful
    bool window_ok = true;
    for (int l = 1; l <= a.k; ++l) {
      if (x.tail && (a.gap[l] - x.tail->entries()[l - 1]) % 2 != 0) window_ok = false;
      if (sub0(a.gap[l], a.p) > a.f[l]) window_ok = false;
    }
    if (window_ok) {
      ++s.characterization.checked;
      const auto e = count_occurrences(x.square);
      const auto window = x.tail ? window_diag(e, x.rho, *x.tail, x.r()) : window_nodiag(e, x.rho, x.r());
      const bool flow = solve_gf_factor(build_gamma(x.square), window).feasible();
      const auto subsets = detail::check_subset_conditions(x.square, x.rho, x.tail, budget);
      if (subsets.hall.satisfied != subsets.pairwise.satisfied || subsets.pairwise.satisfied != flow) {
        s.characterization.fail("hall/pairwise/flow differ", &x);
      }
    }

    // fast paths against the full verdict
    for (const auto& rep : corollary_fastpaths(x.square, x.rho, x.tail, budget)) {
      if (!rep.applicable) continue;
      ++s.fast_paths.checked;
      for (const auto& v : {rep.verdict, rep.alternate_verdict}) {
        if (v && *v != result.completed()) {
          s.fast_paths.fail(std::string(corollary_name(rep.id)) + " disagrees", &x);
        }
      }
    }
  });
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string seconds(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs", t);
  return buf;
}

}  // namespace

int main() {
  bool all = true;

  Sweep plain;
  sweep(false, plain);
  all &= print(1, "complete() succeeds iff exhaustive search does, n<=4, k<=6", plain.equivalence,
               std::to_string(plain.completable) + " completable, " + seconds(plain.seconds));

  Sweep tails;
  sweep(true, tails);
  all &= print(2, "complete_with_diagonal() succeeds iff exhaustive search does, every tail, n<=4, k<=6",
               tails.equivalence, std::to_string(tails.completable) + " completable, " + seconds(tails.seconds));

  // criterion 3
  Tally construct_tally;
  Tally detach3;
  std::uint64_t literal_only = 0;
  {
    const auto start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 5; ++n) {
      for (int k = n; k <= std::min(7, n * n); ++k) {
        for_each_rho(n, k, [&](const RhoVector& rho) {
          ++construct_tally.checked;
          PipelineTrace trace;
          const auto result = construct(rho, &trace);
          detach3.checked += trace.detach_calls;
          const RhoInstance x(rho, SymmetricSquare::empty(n, k));
          if (result.completed() != detail::construct_parity_rule(rho)) construct_tally.fail("construct vs parity", &x);
          if (result.completed() && !validate_square(*result.square, rho).ok) construct_tally.fail("invalid square", &x);
          if (n > 4) return;
          for_each_tail(n, 0, k, [&](const DiagonalTail& d) {
            ++construct_tally.checked;
            const RhoInstance xd(rho, SymmetricSquare::empty(n, k), d);
            PipelineTrace t;
            CompletionResult r;
            try {
              r = construct_with_diagonal(rho, d, &t);
            } catch (const DetachmentError& err) {
              detach3.fail(err.what(), &xd);
              return;
            }
            detach3.checked += t.detach_calls;
            bool literal = true;
            bool bounded = true;
            for (Symbol l = 1; l <= k; ++l) {
              literal = literal && (rho.of(l) - d.of(l)) % 2 == 0;
              bounded = bounded && d.of(l) <= rho.of(l);
            }
            if (literal && !bounded) ++literal_only;
            if (r.completed() != (literal && bounded)) construct_tally.fail("construct_with_diagonal vs parity", &xd);
            if (r.completed() && !validate_square(*r.square, rho, d).ok) construct_tally.fail("invalid square", &xd);
            if (brute_force_complete(xd).has_value() != r.completed()) construct_tally.fail("oracle disagrees", &xd);
          });
        });
      }
    }
    all &= print(3,
                 "construct() iff parity rule (n<=5, k<=7); construct_with_diagonal() iff rho-d even and d<=rho "
                 "(n<=4, every d)",
                 construct_tally,
                 std::to_string(literal_only) + " tails with even rho-d but some d>rho correctly refused, " +
                     seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()));
  }

  Tally characterization = plain.characterization;
  characterization.checked += tails.characterization.checked;
  characterization.failures += tails.characterization.failures;
  for (auto& e : tails.characterization.examples) characterization.examples.push_back(e);
  all &= print(4, "row/symbol conditions <=> pairwise condition <=> flow feasibility, on instances of 1 and 2",
               characterization);

  // criterion 5
  Tally classical;
  for (int n = 1; n <= 5; ++n) {
    RhoVector rho(n, std::vector<int>(n, n));
    for (int r = 0; r < n; ++r) {
      for_each_symmetric_rectangle(rho, r, [&](const SymmetricSquare& s) {
        ++classical.checked;
        const RhoInstance x(rho, s);
        if (complete(x).completed() != cruse_conditions(s)) classical.fail("Cruse", &x);
        for_each_tail(n, r, n, [&](const DiagonalTail& d) {
          ++classical.checked;
          const RhoInstance xd(rho, s, d);
          if (complete_with_diagonal(xd).completed() != andersen_hoffman_conditions(s, d)) {
            classical.fail("Andersen-Hoffman", &xd);
          }
        });
      });
    }
  }
  all &= print(5, "k=n, rho=(n..n): verdicts equal Cruse and Andersen-Hoffman conditions, n<=5", classical);

  Tally fast = plain.fast_paths;
  fast.checked += tails.fast_paths.checked;
  fast.failures += tails.fast_paths.failures;
  for (auto& e : tails.fast_paths.examples) fast.examples.push_back(e);
  all &= print(6, "every fast path that fires agrees with the full theorem, on instances of 1 and 2", fast);

  // criterion 7
  Tally fuzz;
  Tally detach7;
  {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 10'000; ++trial) {
      const auto x = random_feasible_instance(rng, 8, 12);
      ++fuzz.checked;
      PipelineTrace trace;
      try {
        const auto result = complete(x, &trace);
        detach7.checked += trace.detach_calls;
        if (!result.completed()) {
          fuzz.fail("refused: " + result.verdict.describe(), &x);
        } else if (!validate_square(*result.square, x.rho).ok) {
          fuzz.fail("invalid square", &x);
        } else if (!(result.square->truncated(x.r()) == x.square)) {
          fuzz.fail("block altered", &x);
        }
      } catch (const DetachmentError& err) {
        detach7.fail(err.what(), &x);
        fuzz.fail("detach failed", &x);
      } catch (const InternalError& err) {
        fuzz.fail(std::string("internal error: ") + err.what(), &x);
      }
    }
  }
  all &= print(7, "10^4 random feasible instances (n<=8, k<=12) complete, validate and keep the block", fuzz);

  Tally detach;
  for (const Tally* t : {&plain.detach, &tails.detach, &detach3, &detach7}) {
    detach.checked += t->checked;
    detach.failures += t->failures;
    for (const auto& e : t->examples) detach.examples.push_back(e);
  }
  all &= print(8, "detach() postconditions hold on every call in 1, 2, 3 and 7", detach);

  Tally witnesses = plain.witnesses;
  witnesses.checked += tails.witnesses.checked;
  witnesses.failures += tails.witnesses.failures;
  for (auto& e : tails.witnesses.examples) witnesses.examples.push_back(e);
  all &= print(9, "every returned witness violates its inequality when re-evaluated from the grid", witnesses);

  return all ? 0 : 1;
}
