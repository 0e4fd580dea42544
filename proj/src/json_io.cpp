#include "digraphon/json_io.hpp"

#include <sstream>

#include <json.hpp>

namespace digraphon {

using nlohmann::json;

std::string serialize(const StepDigraphon& g) {
  json j;
  j["measures"] = json::array();
  for (int i = 0; i < g.block_count(); ++i)
    j["measures"].push_back(g.measures()[i]);
  j["values"] = json::array();
  for (int i = 0; i < g.block_count(); ++i) {
    json row = json::array();
    for (int k = 0; k < g.block_count(); ++k) row.push_back(g.values()(i, k));
    j["values"].push_back(row);
  }
  return j.dump();
}

StepDigraphon parse_digraphon(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("measures") || !j.contains("values"))
    throw Error(ErrorCode::ParseError,
                "expected object with \"measures\" and \"values\"");
  const json& jm = j["measures"];
  const json& jv = j["values"];
  if (!jm.is_array() || jm.empty())
    throw Error(ErrorCode::ParseError, "\"measures\" must be a nonempty array");
  if (!jv.is_array())
    throw Error(ErrorCode::ParseError, "\"values\" must be an array of arrays");
  const int t = static_cast<int>(jm.size());
  Eigen::VectorXd mu(t);
  for (int i = 0; i < t; ++i) {
    if (!jm[i].is_number())
      throw Error(ErrorCode::ParseError,
                  "measures[" + std::to_string(i) + "] is not a number");
    mu[i] = jm[i].get<double>();
  }
  if (static_cast<int>(jv.size()) != t)
    throw Error(ErrorCode::ParseError, "\"values\" must have one row per block");
  Eigen::MatrixXd v(t, t);
  for (int i = 0; i < t; ++i) {
    if (!jv[i].is_array() || static_cast<int>(jv[i].size()) != t)
      throw Error(ErrorCode::ParseError,
                  "values[" + std::to_string(i) + "] must have " +
                      std::to_string(t) + " entries");
    for (int k = 0; k < t; ++k) {
      if (!jv[i][k].is_number())
        throw Error(ErrorCode::ParseError,
                    "values[" + std::to_string(i) + "][" + std::to_string(k) +
                        "] is not a number");
      v(i, k) = jv[i][k].get<double>();
    }
  }
  return StepDigraphon(mu, v);
}

std::string serialize(const Digraph& g) {
  std::ostringstream os;
  os << g.n << "\n";
  for (auto [u, v] : g.edges) os << u << " " << v << "\n";
  return os.str();
}

Digraph parse_digraph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Digraph g;
  bool have_n = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    if (!have_n) {
      if (!(ls >> g.n)) continue;  // blank/comment-only line before header
      if (g.n < 1)
        throw Error(ErrorCode::EmptyDigraph,
                    "line " + std::to_string(lineno) + ": n must be >= 1");
      have_n = true;
      continue;
    }
    int u, v;
    if (!(ls >> u)) continue;
    if (!(ls >> v))
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + ": expected \"u v\"");
    if (u < 0 || v < 0 || u >= g.n || v >= g.n)
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + ": vertex out of range");
    g.edges.emplace_back(u, v);
  }
  if (!have_n) throw Error(ErrorCode::ParseError, "missing vertex-count line");
  std::sort(g.edges.begin(), g.edges.end());
  auto last = std::unique(g.edges.begin(), g.edges.end());
  if (last != g.edges.end())
    throw Error(ErrorCode::ParseError, "duplicate edge in edge list");
  return g;
}

}  // namespace digraphon
