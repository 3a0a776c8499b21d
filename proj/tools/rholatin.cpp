// Command-line front end. Exit codes: 0 feasible / agreement, 1 infeasible /
// disagreement, 2 input error, 3 budget exceeded.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rholatin/completion.hpp"
#include "rholatin/conditions.hpp"
#include "rholatin/io.hpp"
#include "rholatin/oracle.hpp"

namespace {

using namespace rholatin;
using io::json;

constexpr int kFeasible = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;
constexpr int kBudgetError = 3;

json square_document(const SymmetricSquare& square, const RhoVector& rho, const std::optional<DiagonalTail>& tail) {
  json out = {{"n", square.n()},
              {"k", square.k()},
              {"r", square.r()},
              {"rho", std::vector<int>(rho.entries().begin(), rho.entries().end())},
              {"grid", square.to_grid()}};
  if (tail) out["diagonal_tail"] = std::vector<int>(tail->entries().begin(), tail->entries().end());
  return out;
}

void print_square(const SymmetricSquare& square) {
  for (const auto& row : square.to_grid()) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "  ") << row[j];
    std::cout << '\n';
  }
}

int report(const ConditionVerdict& v) {
  if (v.satisfied) {
    std::cout << "feasible\n";
    return kFeasible;
  }
  std::cout << "infeasible: " << v.describe() << '\n';
  return kInfeasible;
}

struct CheckArgs {
  std::string file;
  bool diag = false;
  bool nodiag = false;
  std::string method = "flow";
};

RhoInstance load_instance(const std::string& file, bool diag, bool nodiag) {
  auto instance = io::instance_from_json(io::read_file(file));
  if (diag && !instance.tail) throw StructuralError("--diag needs a diagonal_tail in " + file);
  if (nodiag) instance.tail.reset();
  return instance;
}

int cmd_check(const CheckArgs& args) {
  const auto instance = load_instance(args.file, args.diag, args.nodiag);
  std::optional<ConditionVerdict> by_flow;
  std::optional<ConditionVerdict> by_subsets;
  if (args.method == "flow" || args.method == "both") {
    auto result = instance.tail ? complete_with_diagonal(instance) : complete(instance);
    by_flow = result.verdict;
  }
  if (args.method == "subsets" || args.method == "both") {
    by_subsets = subset_theorem_verdict(instance.square, instance.rho, instance.tail);
  }
  if (by_flow && by_subsets) {
    std::cout << "flow:    " << (by_flow->satisfied ? "feasible" : "infeasible: " + by_flow->describe()) << '\n';
    std::cout << "subsets: " << (by_subsets->satisfied ? "feasible" : "infeasible: " + by_subsets->describe())
              << '\n';
    if (by_flow->satisfied != by_subsets->satisfied) {
      std::cout << "methods disagree\n";
      return kInfeasible;
    }
    return by_flow->satisfied ? kFeasible : kInfeasible;
  }
  return report(by_flow ? *by_flow : *by_subsets);
}

int cmd_complete(const std::string& file, bool diag, bool nodiag, const std::string& out) {
  const auto instance = load_instance(file, diag, nodiag);
  auto result = instance.tail ? complete_with_diagonal(instance) : complete(instance);
  const int code = report(result.verdict);
  if (!result.completed()) return code;
  print_square(*result.square);
  if (!out.empty()) io::write_file(out, square_document(*result.square, instance.rho, instance.tail));
  return code;
}

int cmd_construct(int n, std::vector<int> rho_entries, const std::optional<std::vector<int>>& tail_entries,
                  const std::string& out) {
  RhoVector rho(n, std::move(rho_entries));
  std::optional<DiagonalTail> tail;
  if (tail_entries) {
    if (static_cast<int>(tail_entries->size()) != rho.k()) throw StructuralError("--tail needs k entries");
    tail.emplace(n, 0, *tail_entries);
  }
  auto result = tail ? construct_with_diagonal(rho, *tail) : construct(rho);
  const int code = report(result.verdict);
  if (!result.completed()) return code;
  print_square(*result.square);
  if (!out.empty()) io::write_file(out, square_document(*result.square, rho, tail));
  return code;
}

int cmd_verify(const std::string& file, const std::optional<std::vector<int>>& rho_entries,
               const std::optional<std::vector<int>>& tail_entries, int r) {
  const json doc = io::read_file(file);
  const Grid grid = io::grid_from_json(doc);
  const int n = static_cast<int>(grid.size());
  std::vector<int> entries;
  if (rho_entries) {
    entries = *rho_entries;
  } else if (doc.is_object() && doc.contains("rho")) {
    entries = doc.at("rho").get<std::vector<int>>();
  } else {
    throw StructuralError("verify: no rho given and none in " + file);
  }
  RhoVector rho(n, std::move(entries));
  std::optional<DiagonalTail> tail;
  if (tail_entries) {
    if (static_cast<int>(tail_entries->size()) != rho.k()) throw StructuralError("--tail needs k entries");
    tail.emplace(n, r, *tail_entries);
  }
  const auto result = validate_grid(grid, rho, tail);
  if (result.ok) {
    std::cout << "valid\n";
    return kFeasible;
  }
  for (const auto& v : result.violations) std::cout << "invalid: " << v << '\n';
  return kInfeasible;
}

int cmd_crosscheck(const CrosscheckOptions& options, const std::string& out) {
  const auto result = crosscheck(options);
  std::cout << "mode " << mode_name(options.mode) << ": " << result.instances_tested << " instances, "
            << result.agreements << " agreements, " << result.disagreements.size() << " disagreements";
  if (!result.complete) std::cout << ", " << result.budget_skips << " skipped over budget (incomplete)";
  std::cout << '\n';
  for (std::size_t i = 0; i < result.disagreements.size() && i < 5; ++i) {
    std::cout << "  " << result.disagreements[i].what << "\n    " << result.disagreements[i].instance.dump() << '\n';
  }
  if (!out.empty()) io::write_file(out, result.to_json());
  if (!result.complete) return kBudgetError;
  return result.disagreements.empty() ? kFeasible : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Completion of symmetric rho-latin rectangles"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "decide whether an instance can be completed");
  check->add_option("instance", check_args.file, "instance JSON file")->required();
  auto* diag_flag = check->add_flag("--diag", check_args.diag, "use the instance's diagonal tail (required)");
  check->add_flag("--nodiag", check_args.nodiag, "ignore any diagonal tail")->excludes(diag_flag);
  check->add_option("--method", check_args.method, "subsets, flow or both")
      ->check(CLI::IsMember({"subsets", "flow", "both"}));

  std::string complete_file;
  std::string complete_out;
  bool complete_diag = false;
  bool complete_nodiag = false;
  auto* complete_cmd = app.add_subcommand("complete", "complete an instance and print the square");
  complete_cmd->add_option("instance", complete_file, "instance JSON file")->required();
  complete_cmd->add_option("--out", complete_out, "write the completed square here");
  auto* complete_diag_flag = complete_cmd->add_flag("--diag", complete_diag, "use the instance's diagonal tail");
  complete_cmd->add_flag("--nodiag", complete_nodiag, "ignore any diagonal tail")->excludes(complete_diag_flag);

  int construct_n = 0;
  int construct_k = 0;
  std::vector<int> construct_rho;
  std::optional<std::vector<int>> construct_tail;
  std::string construct_out;
  auto* construct_cmd = app.add_subcommand("construct", "build a symmetric rho-latin square from scratch");
  construct_cmd->add_option("--n", construct_n, "order")->required();
  construct_cmd->add_option("--k", construct_k, "number of symbols")->required();
  construct_cmd->add_option("--rho", construct_rho, "occurrence counts, e.g. 2,1,1")->required()->delimiter(',');
  construct_cmd->add_option("--tail", construct_tail, "diagonal symbol counts")->delimiter(',');
  construct_cmd->add_option("--out", construct_out, "write the square here");

  std::string verify_file;
  std::optional<std::vector<int>> verify_rho;
  std::optional<std::vector<int>> verify_tail;
  int verify_r = 0;
  auto* verify = app.add_subcommand("verify", "check that a file holds a symmetric rho-latin square");
  verify->add_option("square", verify_file, "square JSON file")->required();
  verify->add_option("--rho", verify_rho, "occurrence counts (default: the file's rho)")->delimiter(',');
  verify->add_option("--tail", verify_tail, "counts on diagonal cells r+1..n")->delimiter(',');
  verify->add_option("--r", verify_r, "where the tail starts (default 0: whole diagonal)");

  CrosscheckOptions cross;
  std::string cross_mode = "nodiag";
  std::string cross_out;
  auto* crosscheck_cmd = app.add_subcommand("crosscheck", "compare the theorems against exhaustive search");
  crosscheck_cmd->add_option("--n-min", cross.n_min, "smallest order");
  crosscheck_cmd->add_option("--n-max", cross.n_max, "largest order")->required();
  crosscheck_cmd->add_option("--k-max", cross.k_max, "largest number of symbols");
  crosscheck_cmd->add_option("--mode", cross_mode,
                             "nodiag, diag, construct, construct_diag, corollaries, factor_equiv, classical or fuzz");
  crosscheck_cmd->add_option("--shards", cross.shards, "worker threads");
  crosscheck_cmd->add_option("--seed", cross.seed, "seed for sampled modes");
  crosscheck_cmd->add_option("--samples", cross.samples, "instances drawn in fuzz mode");
  crosscheck_cmd->add_option("--sample-ppm", cross.sample_ppm, "keep each instance with this chance per million");
  crosscheck_cmd->add_option("--out", cross_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(check_args);
    if (*complete_cmd) return cmd_complete(complete_file, complete_diag, complete_nodiag, complete_out);
    if (*construct_cmd) {
      if (static_cast<int>(construct_rho.size()) != construct_k) {
        throw StructuralError("--rho has " + std::to_string(construct_rho.size()) + " entries but --k is " +
                              std::to_string(construct_k));
      }
      return cmd_construct(construct_n, construct_rho, construct_tail, construct_out);
    }
    if (*verify) return cmd_verify(verify_file, verify_rho, verify_tail, verify_r);
    if (*crosscheck_cmd) {
      auto mode = parse_mode(cross_mode);
      if (!mode) throw StructuralError("unknown mode " + cross_mode);
      cross.mode = *mode;
      return cmd_crosscheck(cross, cross_out);
    }
  } catch (const StructuralError& err) {
    std::cerr << "input error: " << err.what() << '\n';
    return kInputError;
  } catch (const io::json::exception& err) {
    std::cerr << "input error: " << err.what() << '\n';
    return kInputError;
  } catch (const BudgetError& err) {
    std::cerr << "budget exceeded: " << err.what() << '\n';
    return kBudgetError;
  } catch (const InternalError& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kInfeasible;
  }
  return kInputError;
}
