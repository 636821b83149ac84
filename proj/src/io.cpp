#include "filt/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace filt {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(errc::syntax_error, e.what());
  }
}

const ordered_json& field(const ordered_json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    raise(errc::schema_violation, std::string("missing field '") + name + "'");
  return j.at(name);
}

double number_field(const ordered_json& j, const char* name) {
  const ordered_json& v = field(j, name);
  if (!v.is_number()) raise(errc::schema_violation, std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

int int_field(const ordered_json& j, const char* name) {
  const ordered_json& v = field(j, name);
  if (!v.is_number_integer())
    raise(errc::schema_violation, std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

std::vector<std::string> string_array(const ordered_json& v, const char* what) {
  if (!v.is_array()) raise(errc::schema_violation, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) raise(errc::schema_violation, std::string(what) + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::unordered_map<std::string, int> name_index(const std::vector<std::string>& names) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  return index;
}

Simplex resolve_simplex(const std::vector<std::string>& vertex_names,
                        const std::unordered_map<std::string, int>& index) {
  std::vector<int> ids;
  ids.reserve(vertex_names.size());
  for (const auto& name : vertex_names) {
    auto it = index.find(name);
    if (it == index.end()) raise(errc::unknown_simplex, "unknown vertex '" + name + "'");
    ids.push_back(it->second);
  }
  std::sort(ids.begin(), ids.end());
  return Simplex(std::move(ids));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  std::istringstream in(line);
  while (std::getline(in, current, ',')) {
    const auto first = current.find_first_not_of(" \t\r");
    const auto last = current.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : current.substr(first, last - first + 1));
  }
  return fields;
}

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    raise(errc::syntax_error, "expected a number, got '" + token + "'");
  }
  if (used != token.size()) raise(errc::syntax_error, "trailing characters after number in '" + token + "'");
  return v;
}

}  // namespace

FilteredSpace parse_filtered_space(const std::string& text) {
  const ordered_json j = parse_json(text);
  const std::vector<std::string> vertices = string_array(field(j, "vertices"), "vertices");
  const int cap = int_field(j, "dimension_cap");
  const ordered_json& simplices = field(j, "simplices");
  if (!simplices.is_array()) raise(errc::schema_violation, "simplices must be an array");
  const auto index = name_index(vertices);
  std::vector<std::pair<Simplex, double>> assignments;
  assignments.reserve(simplices.size());
  for (const auto& entry : simplices) {
    const Simplex s = resolve_simplex(string_array(field(entry, "vertices"), "simplex vertices"), index);
    assignments.emplace_back(s, number_field(entry, "value"));
  }
  return FilteredSpace(vertices, cap, assignments);
}

std::string serialize_filtered_space(const FilteredSpace& space) {
  ordered_json j;
  j["vertices"] = space.vertex_names();
  j["dimension_cap"] = space.dimension_cap();
  ordered_json simplices = ordered_json::array();
  for (const auto& [s, v] : space.entries()) {
    ordered_json entry;
    ordered_json names = ordered_json::array();
    for (int id : s.vertices) names.push_back(space.vertex_names()[id]);
    entry["vertices"] = std::move(names);
    entry["value"] = v;
    simplices.push_back(std::move(entry));
  }
  j["simplices"] = std::move(simplices);
  return j.dump(2);
}

namespace {

PersistenceDiagram diagram_from_json(const ordered_json& j) {
  PersistenceDiagram d;
  d.degree = int_field(j, "degree");
  if (d.degree < 0) raise(errc::schema_violation, "degree must be >= 0");
  const ordered_json& points = field(j, "points");
  if (!points.is_array()) raise(errc::schema_violation, "points must be an array");
  for (const auto& p : points) {
    DiagramPoint point;
    point.birth = number_field(p, "birth");
    const ordered_json& death = field(p, "death");
    if (death.is_null())
      point.death = std::numeric_limits<double>::infinity();
    else if (death.is_number())
      point.death = death.get<double>();
    else
      raise(errc::schema_violation, "death must be a number or null");
    if (!std::isfinite(point.birth)) raise(errc::schema_violation, "birth must be finite");
    if (point.death < point.birth) raise(errc::schema_violation, "death must be >= birth");
    d.points.push_back(point);
  }
  return d;
}

ordered_json diagram_to_json(const PersistenceDiagram& d) {
  ordered_json j;
  j["degree"] = d.degree;
  ordered_json points = ordered_json::array();
  auto sorted = d.points;
  std::sort(sorted.begin(), sorted.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    return std::make_pair(a.birth, a.death) < std::make_pair(b.birth, b.death);
  });
  for (const auto& p : sorted) {
    ordered_json point;
    point["birth"] = p.birth;
    if (std::isinf(p.death))
      point["death"] = nullptr;
    else
      point["death"] = p.death;
    points.push_back(std::move(point));
  }
  j["points"] = std::move(points);
  return j;
}

}  // namespace

PersistenceDiagram parse_diagram(const std::string& text) {
  const ordered_json j = parse_json(text);
  if (!j.is_object()) raise(errc::schema_violation, "diagram must be a JSON object");
  return diagram_from_json(j);
}

std::vector<PersistenceDiagram> parse_diagram_list(const std::string& text) {
  const ordered_json j = parse_json(text);
  std::vector<PersistenceDiagram> out;
  if (j.is_object()) {
    out.push_back(diagram_from_json(j));
  } else if (j.is_array()) {
    for (const auto& entry : j) out.push_back(diagram_from_json(entry));
  } else {
    raise(errc::schema_violation, "expected a diagram object or an array of them");
  }
  return out;
}

std::string serialize_diagram(const PersistenceDiagram& diagram) {
  return diagram_to_json(diagram).dump(2);
}

std::string serialize_diagram_list(const std::vector<PersistenceDiagram>& list) {
  ordered_json j = ordered_json::array();
  for (const auto& d : list) j.push_back(diagram_to_json(d));
  return j.dump(2);
}

FiniteMetricSpace parse_metric_space(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) raise(errc::syntax_error, "empty input");
  if (text[first] == '{') {
    const ordered_json j = parse_json(text);
    const std::vector<std::string> points = string_array(field(j, "points"), "points");
    const ordered_json& dist = field(j, "dist");
    if (!dist.is_array()) raise(errc::schema_violation, "dist must be an array of rows");
    std::vector<std::vector<double>> matrix;
    for (const auto& row : dist) {
      if (!row.is_array()) raise(errc::schema_violation, "dist must be an array of rows");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) raise(errc::schema_violation, "dist entries must be numbers");
        r.push_back(v.get<double>());
      }
      matrix.push_back(std::move(r));
    }
    return FiniteMetricSpace(points, matrix);
  }

  // CSV: header row of names, then the square matrix
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty()) raise(errc::syntax_error, "empty input");
  const std::vector<std::string> names = split_csv_line(lines[0]);
  const std::size_t n = names.size();
  if (lines.size() != n + 1)
    raise(errc::syntax_error, "expected " + std::to_string(n) + " matrix rows after the header");
  std::vector<std::vector<double>> matrix;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != n)
      raise(errc::syntax_error, "row " + std::to_string(i) + " has " +
                                    std::to_string(fields.size()) + " fields, expected " +
                                    std::to_string(n));
    std::vector<double> row;
    row.reserve(n);
    for (const auto& token : fields) row.push_back(parse_number(token));
    matrix.push_back(std::move(row));
  }
  return FiniteMetricSpace(names, matrix);
}

std::string serialize_metric_space(const FiniteMetricSpace& m) {
  ordered_json j;
  j["points"] = m.point_names();
  j["dist"] = m.matrix();
  return j.dump(2);
}

VertexMap parse_vertex_map(const std::string& text, const FilteredSpace& target) {
  const ordered_json j = parse_json(text);
  VertexMap map;
  map.source_names = string_array(field(j, "vertices"), "vertices");
  const ordered_json& assignment = field(j, "assignment");
  if (!assignment.is_object()) raise(errc::schema_violation, "assignment must be an object");
  const auto target_index = name_index(target.vertex_names());
  map.to_target.reserve(map.source_names.size());
  for (const auto& name : map.source_names) {
    if (!assignment.contains(name))
      raise(errc::schema_violation, "assignment missing source vertex '" + name + "'");
    const ordered_json& value = assignment.at(name);
    if (!value.is_string()) raise(errc::schema_violation, "assignment targets must be vertex names");
    auto it = target_index.find(value.get<std::string>());
    if (it == target_index.end())
      raise(errc::schema_violation,
            "assignment target '" + value.get<std::string>() + "' is not a vertex of the space");
    map.to_target.push_back(it->second);
  }
  if (assignment.size() != map.source_names.size())
    raise(errc::schema_violation, "assignment mentions unknown source vertices");
  return map;
}

Correspondence parse_correspondence(const std::string& text, const FilteredSpace& x,
                                    const FilteredSpace& y) {
  const ordered_json j = parse_json(text);
  if (!j.is_array()) raise(errc::schema_violation, "correspondence must be an array of pairs");
  const auto x_index = name_index(x.vertex_names());
  const auto y_index = name_index(y.vertex_names());
  Correspondence r;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      raise(errc::schema_violation, "each pair must be [x name, y name]");
    auto ix = x_index.find(pair[0].get<std::string>());
    auto iy = y_index.find(pair[1].get<std::string>());
    if (ix == x_index.end() || iy == y_index.end())
      raise(errc::schema_violation, "pair names a vertex outside the spaces");
    r.pairs.emplace_back(ix->second, iy->second);
  }
  return r;
}

std::string serialize_correspondence(const Correspondence& r,
                                     const std::vector<std::string>& x_names,
                                     const std::vector<std::string>& y_names) {
  ordered_json j = ordered_json::array();
  for (const auto& [px, py] : r.pairs) {
    ordered_json pair = ordered_json::array();
    pair.push_back(x_names[px]);
    pair.push_back(y_names[py]);
    j.push_back(std::move(pair));
  }
  return j.dump();
}

std::string scalar_to_json(double v) {
  if (std::isinf(v)) return ordered_json(v > 0 ? "Infinity" : "-Infinity").dump();
  return ordered_json(v).dump();
}

}  // namespace filt
