#pragma once

// Tree files:
//   node := {"payoff": number}
//         | {"branches": [{"p": number, "node": node}, ...], "weight": number?}

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "surprise/tree.hpp"

namespace surprise {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double json_number(const nlohmann::json& j, const char* key,
                          const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ValidationError(std::string("expected number '") + key + "' at " + path);
  }
  return it->get<double>();
}

inline Node node_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError("expected object at " + path);
  const bool has_payoff = j.contains("payoff");
  const bool has_branches = j.contains("branches");
  if (has_payoff == has_branches) {
    throw ValidationError("node needs exactly one of 'payoff' or 'branches' at " + path);
  }
  if (has_payoff) return Node::terminal(json_number(j, "payoff", path));

  const nlohmann::json& arr = j.at("branches");
  if (!arr.is_array()) throw ValidationError("'branches' must be an array at " + path);
  Internal in;
  if (j.contains("weight")) in.surprise_weight = json_number(j, "weight", path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string bp = child_path(path, i);
    if (!arr[i].is_object() || !arr[i].contains("node")) {
      throw ValidationError("branch needs 'p' and 'node' at " + bp);
    }
    in.branches.push_back({json_number(arr[i], "p", bp), node_from_json(arr[i]["node"], bp)});
  }
  return Node(std::move(in));
}

}  // namespace detail

/// Parses and validates a tree. Probabilities within tolerance of summing to
/// one are renormalized; the affected paths are reported in the result.
inline NormalizedTree parse_tree(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed tree document: ") + e.what());
  }
  return normalize(detail::node_from_json(j, "root"));
}

inline NormalizedTree load_tree(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tree(buf.str());
}

inline nlohmann::json to_json(const Node& node) {
  if (node.is_terminal()) return {{"payoff", node.as_terminal().payoff}};
  const Internal& in = node.as_internal();
  nlohmann::json branches = nlohmann::json::array();
  for (const Branch& b : in.branches) {
    branches.push_back({{"p", b.probability}, {"node", to_json(b.child)}});
  }
  nlohmann::json out{{"branches", std::move(branches)}};
  if (in.surprise_weight != 1.0) out["weight"] = in.surprise_weight;
  return out;
}

}  // namespace surprise
