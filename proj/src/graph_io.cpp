#include "descent/graph_io.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace descent {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string quiver_dot(const QuiverGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (const std::string& v : g.vertices)
    os << "  \"" << dot_escape(v) << "\";\n";
  for (const auto& [edge, mult] : g.arrows) {
    for (int k = 0; k < mult; ++k) {
      os << "  \"" << dot_escape(g.vertices[static_cast<size_t>(edge.first)])
         << "\" -> \""
         << dot_escape(g.vertices[static_cast<size_t>(edge.second)]) << "\";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string quiver_json(const QuiverGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.vertices;
  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& [edge, mult] : g.arrows) {
    nlohmann::ordered_json a;
    a["from"] = g.vertices[static_cast<size_t>(edge.first)];
    a["to"] = g.vertices[static_cast<size_t>(edge.second)];
    a["mult"] = mult;
    j["arrows"].push_back(std::move(a));
  }
  return j.dump(2) + "\n";
}

QuiverGraph quiver_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("quiver_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows") ||
      !j["vertices"].is_array() || !j["arrows"].is_array())
    throw std::invalid_argument(
        "quiver_from_json: expected an object with vertices and arrows arrays");
  QuiverGraph g;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string())
      throw std::invalid_argument("quiver_from_json: vertex labels must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  for (const auto& a : j["arrows"]) {
    if (!a.is_object() || !a.contains("from") || !a.contains("to") ||
        !a.contains("mult") || !a["from"].is_string() || !a["to"].is_string() ||
        !a["mult"].is_number_integer())
      throw std::invalid_argument(
          "quiver_from_json: arrows need string from/to and integer mult");
    const int from = g.index_of(a["from"].get<std::string>());
    const int to = g.index_of(a["to"].get<std::string>());
    if (from < 0 || to < 0)
      throw std::invalid_argument("quiver_from_json: arrow endpoint is not a vertex");
    const int mult = a["mult"].get<int>();
    if (mult <= 0)
      throw std::invalid_argument("quiver_from_json: multiplicities must be positive");
    if (!g.arrows.emplace(std::pair{from, to}, mult).second)
      throw std::invalid_argument("quiver_from_json: duplicate arrow");
  }
  return g;
}

std::string quiver_text(const QuiverGraph& g) {
  std::ostringstream os;
  os << "quiver: " << g.vertices.size() << " vertices, " << g.arrow_count()
     << " arrows\n";
  os << "vertices:";
  for (const std::string& v : g.vertices) os << ' ' << v;
  os << '\n';
  for (const auto& [edge, mult] : g.arrows) {
    os << g.vertices[static_cast<size_t>(edge.first)] << " -> "
       << g.vertices[static_cast<size_t>(edge.second)];
    if (mult != 1) os << "  (x" << mult << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace descent
