#pragma once

// JSON encoding of instances, squares and verdicts.
//
// Instance files look like
//   {"n": 4, "k": 4, "r": 2, "rho": [4,4,4,4],
//    "grid": [[1,2,0,0],[2,1,0,0],[0,0,0,0],[0,0,0,0]],
//    "diagonal_tail": [2,0,0,0]}
// with 0 marking an empty cell. The grid may also be given as just the r x r
// block. Output uses nlohmann's default std::map ordering, so keys are sorted.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "rholatin/conditions.hpp"
#include "rholatin/core.hpp"

namespace rholatin::io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& object, const char* name) {
  if (!object.contains(name)) throw StructuralError(rholatin::detail::concat("json: missing field \"", name, "\""));
  return object.at(name);
}

inline int int_field(const json& object, const char* name) {
  const auto& v = field(object, name);
  if (!v.is_number_integer()) {
    throw StructuralError(rholatin::detail::concat("json: field \"", name, "\" must be an integer"));
  }
  return v.get<int>();
}

inline std::vector<int> int_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw StructuralError("json: " + what + " must be an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw StructuralError(rholatin::detail::concat("json: ", what, "[", i, "] must be an integer"));
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

inline Grid read_grid(const json& v, int n) {
  if (!v.is_array()) throw StructuralError("json: grid must be an array of rows");
  const int rows = static_cast<int>(v.size());
  if (rows > n) throw StructuralError(rholatin::detail::concat("json: grid has ", rows, " rows but n = ", n));
  Grid grid(n, std::vector<int>(n, 0));
  for (int i = 0; i < rows; ++i) {
    auto row = int_list(v[i], rholatin::detail::concat("grid[", i, "]"));
    if (static_cast<int>(row.size()) != rows && static_cast<int>(row.size()) != n) {
      throw StructuralError(rholatin::detail::concat("json: grid[", i, "] has ", row.size(), " cells"));
    }
    for (std::size_t j = 0; j < row.size(); ++j) grid[i][j] = row[j];
  }
  return grid;
}

}  // namespace detail

inline json to_json(const Grid& grid) { return json(grid); }

inline json to_json(const RhoInstance& instance) {
  json out = {{"n", instance.n()},
              {"k", instance.k()},
              {"r", instance.r()},
              {"rho", std::vector<int>(instance.rho.entries().begin(), instance.rho.entries().end())},
              {"grid", instance.square.to_grid()}};
  if (instance.tail) {
    out["diagonal_tail"] = std::vector<int>(instance.tail->entries().begin(), instance.tail->entries().end());
  }
  return out;
}

inline json to_json(const SubsetWitness& w) {
  std::vector<int> rows;
  for (int i : w.rows) rows.push_back(i + 1);
  return {{"I", rows}, {"K", w.symbols}};
}

inline json to_json(const ConditionVerdict& v) {
  json out = {{"satisfied", v.satisfied}};
  if (!v.satisfied) {
    out["condition"] = std::string(condition_name(v.violated));
    out["message"] = v.describe();
    if (v.symbol) out["symbol"] = *v.symbol;
    if (v.witness) out["witness"] = to_json(*v.witness);
  }
  return out;
}

/// Decodes an instance object; throws StructuralError naming the bad field.
inline RhoInstance instance_from_json(const json& v) {
  if (!v.is_object()) throw StructuralError("json: instance must be an object");
  const int n = detail::int_field(v, "n");
  const int k = detail::int_field(v, "k");
  const int r = detail::int_field(v, "r");
  if (n < 1) throw StructuralError("json: n must be positive");
  auto rho_entries = detail::int_list(detail::field(v, "rho"), "rho");
  if (static_cast<int>(rho_entries.size()) != k) {
    throw StructuralError(rholatin::detail::concat("json: rho has ", rho_entries.size(), " entries but k = ", k));
  }
  RhoVector rho(n, std::move(rho_entries));
  auto grid = detail::read_grid(detail::field(v, "grid"), n);
  auto square = SymmetricSquare::from_grid(k, r, grid);
  std::optional<DiagonalTail> tail;
  if (v.contains("diagonal_tail") && !v.at("diagonal_tail").is_null()) {
    auto d = detail::int_list(v.at("diagonal_tail"), "diagonal_tail");
    if (static_cast<int>(d.size()) != k) {
      throw StructuralError(rholatin::detail::concat("json: diagonal_tail has ", d.size(), " entries but k = ", k));
    }
    tail.emplace(n, r, std::move(d));
  }
  return RhoInstance(std::move(rho), std::move(square), std::move(tail));
}

/// Reads a full square from either {"grid": [[...]]} or a bare array.
inline Grid grid_from_json(const json& v) {
  const json& g = v.is_object() ? detail::field(v, "grid") : v;
  if (!g.is_array() || g.empty()) throw StructuralError("json: grid must be a non-empty array");
  return detail::read_grid(g, static_cast<int>(g.size()));
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw StructuralError(std::string("json: ") + err.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

inline void write_file(const std::string& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot write " + path);
  out << value.dump(2) << '\n';
}

}  // namespace rholatin::io
