#pragma once

#include <string>
#include <vector>

#include "filt/bottleneck.hpp"
#include "filt/filtered_space.hpp"
#include "filt/geodesic.hpp"
#include "filt/metric.hpp"
#include "filt/persistence.hpp"
#include "filt/tripod.hpp"

namespace filt {

// Filtered space JSON:
//   { "vertices": ["a", "b"], "dimension_cap": 1,
//     "simplices": [ { "vertices": ["a"], "value": 0.0 }, ... ] }
FilteredSpace parse_filtered_space(const std::string& text);
std::string serialize_filtered_space(const FilteredSpace& space);

// Diagram JSON (death null encodes infinity):
//   { "degree": 0, "points": [ { "birth": 0.0, "death": 1.0 },
//                              { "birth": 0.0, "death": null } ] }
PersistenceDiagram parse_diagram(const std::string& text);
std::vector<PersistenceDiagram> parse_diagram_list(const std::string& text);
std::string serialize_diagram(const PersistenceDiagram& diagram);
std::string serialize_diagram_list(const std::vector<PersistenceDiagram>& list);

// Metric space: JSON { "points": [...], "dist": [[...], ...] } or CSV with
// a header row of point names followed by the square matrix.
FiniteMetricSpace parse_metric_space(const std::string& text);
std::string serialize_metric_space(const FiniteMetricSpace& m);

// Vertex map JSON (for pullbacks):
//   { "vertices": ["z1", "z2"], "assignment": { "z1": "a", "z2": "b" } }
VertexMap parse_vertex_map(const std::string& text, const FilteredSpace& target);

// Correspondences as arrays of [x name, y name] pairs.
Correspondence parse_correspondence(const std::string& text, const FilteredSpace& x,
                                    const FilteredSpace& y);
std::string serialize_correspondence(const Correspondence& r,
                                     const std::vector<std::string>& x_names,
                                     const std::vector<std::string>& y_names);

// Scalar encoding used on CLI output: infinities become the string
// "Infinity" (resp. "-Infinity").
std::string scalar_to_json(double v);

}  // namespace filt
