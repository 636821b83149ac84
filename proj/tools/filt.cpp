// Command line front end: parses JSON/CSV inputs, runs the requested
// computation, prints a JSON result on stdout. Diagnostics go to stderr.
// Exit codes: 0 success, 1 verification found violations, 2 bad usage or
// unreadable/malformed input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "filt/bottleneck.hpp"
#include "filt/error.hpp"
#include "filt/filtered_space.hpp"
#include "filt/geodesic.hpp"
#include "filt/io.hpp"
#include "filt/metric.hpp"
#include "filt/persistence.hpp"
#include "filt/tripod.hpp"
#include "filt/verify.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) filt::raise(filt::errc::syntax_error, "cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ordered_json json_scalar(double v) { return ordered_json::parse(filt::scalar_to_json(v)); }

ordered_json json_correspondence(const filt::Correspondence& r,
                                 const std::vector<std::string>& x_names,
                                 const std::vector<std::string>& y_names) {
  return ordered_json::parse(filt::serialize_correspondence(r, x_names, y_names));
}

// Selects the diagram to compare: an explicit degree wins, a singleton
// list needs no selection.
const filt::PersistenceDiagram& pick_diagram(const std::vector<filt::PersistenceDiagram>& list,
                                             int degree, const std::string& label) {
  if (degree >= 0) {
    for (const auto& d : list)
      if (d.degree == degree) return d;
    filt::raise(filt::errc::schema_violation,
                label + " has no diagram of degree " + std::to_string(degree));
  }
  if (list.size() != 1)
    filt::raise(filt::errc::schema_violation,
                label + " holds several diagrams; pass --degree to choose one");
  return list.front();
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filtered spaces: persistence, bottleneck and tripod distances"};
  app.require_subcommand(1);

  std::string space_path, x_path, y_path, map_path, corr_path, suite;
  int kmax = 1, field = 2, degree = -1, cap = -1, max_depth = 14, trials = 100;
  int grid_bits = 12;
  bool keep_diagonal = false, capped = false;
  std::uint64_t budget = 0, seed = 0;
  double tol = 1e-6;

  CLI::App* persist = app.add_subcommand("persist", "persistence diagrams of a filtered space");
  persist->add_option("space", space_path, "filtered space JSON")->required();
  persist->add_option("--kmax", kmax, "top degree to report (default 1)");
  persist->add_option("--field", field, "coefficient field prime (default 2)");
  persist->add_flag("--keep-diagonal", keep_diagonal, "keep zero-length points");

  CLI::App* bottleneck_cmd = app.add_subcommand("bottleneck", "bottleneck distance of diagrams");
  bottleneck_cmd->add_option("first", x_path, "diagram (list) JSON")->required();
  bottleneck_cmd->add_option("second", y_path, "diagram (list) JSON")->required();
  bottleneck_cmd->add_option("--degree", degree, "degree to compare when lists are given");

  CLI::App* df_cmd = app.add_subcommand("df", "tripod distance between filtered spaces");
  df_cmd->add_option("first", x_path, "filtered space JSON")->required();
  df_cmd->add_option("second", y_path, "filtered space JSON")->required();
  df_cmd->add_option("--heuristic", budget,
                     "local search with this evaluation budget instead of exact enumeration");
  df_cmd->add_option("--seed", seed, "seed for --heuristic (default 0)");
  df_cmd->add_flag("--capped", capped, "restrict costs to simplices within the caps");
  df_cmd->add_option("--max-grid-bits", grid_bits,
                     "refuse exact enumeration above this grid size (default 12)");

  CLI::App* gh_cmd = app.add_subcommand("gh", "Gromov-Hausdorff distance of metric spaces");
  gh_cmd->add_option("first", x_path, "metric space JSON or CSV")->required();
  gh_cmd->add_option("second", y_path, "metric space JSON or CSV")->required();
  gh_cmd->add_option("--max-grid-bits", grid_bits,
                     "refuse enumeration above this grid size (default 12)");

  CLI::App* rips_cmd = app.add_subcommand("rips", "Vietoris-Rips filtration of a metric space");
  rips_cmd->add_option("metric", space_path, "metric space JSON or CSV")->required();
  rips_cmd->add_option("--cap", cap, "dimension cap (default: point count - 1)");

  CLI::App* cech_cmd = app.add_subcommand("cech", "ambient Cech filtration of a metric space");
  cech_cmd->add_option("metric", space_path, "metric space JSON or CSV")->required();
  cech_cmd->add_option("--cap", cap, "dimension cap (default: point count - 1)");

  CLI::App* pullback_cmd = app.add_subcommand("pullback", "pullback along a vertex surjection");
  pullback_cmd->add_option("space", space_path, "filtered space JSON")->required();
  pullback_cmd->add_option("map", map_path, "vertex map JSON")->required();
  pullback_cmd->add_option("--cap", cap, "dimension cap (default: source size - 1)");

  CLI::App* geodesic_cmd =
      app.add_subcommand("geodesic-length", "diagram path length along minimizing geodesics");
  geodesic_cmd->add_option("first", x_path, "filtered space JSON")->required();
  geodesic_cmd->add_option("second", y_path, "filtered space JSON")->required();
  geodesic_cmd->add_option("--degree", degree, "diagram degree (default 0)");
  geodesic_cmd->add_option("--tol", tol, "refinement tolerance (default 1e-6)");
  geodesic_cmd->add_option("--max-depth", max_depth, "dyadic depth bound (default 14)");
  geodesic_cmd->add_option("--correspondence", corr_path,
                           "use this minimizing correspondence instead of all of them");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a randomized property suite");
  verify_cmd->add_option("suite", suite,
                         "stability, pullback, pseudometric, geodesic, gh-stability, "
                         "reduction, or all")
      ->required();
  verify_cmd->add_option("--trials", trials, "trials per randomized check (default 100)");
  verify_cmd->add_option("--seed", seed, "base seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (persist->parsed()) {
      filt::FilteredSpace space = filt::parse_filtered_space(read_file(space_path));
      auto list = filt::diagrams(space, kmax, field, keep_diagonal);
      std::cout << filt::serialize_diagram_list(list) << "\n";
    } else if (bottleneck_cmd->parsed()) {
      auto first = filt::parse_diagram_list(read_file(x_path));
      auto second = filt::parse_diagram_list(read_file(y_path));
      filt::BottleneckResult result = filt::bottleneck(pick_diagram(first, degree, "first input"),
                                                       pick_diagram(second, degree, "second input"));
      ordered_json j;
      j["value"] = json_scalar(result.value);
      j["certificate"] = ordered_json::array();
      for (const auto& [i, k] : result.certificate.pairs) j["certificate"].push_back({i, k});
      emit(j);
    } else if (df_cmd->parsed()) {
      filt::FilteredSpace x = filt::parse_filtered_space(read_file(x_path));
      filt::FilteredSpace y = filt::parse_filtered_space(read_file(y_path));
      ordered_json j;
      if (budget > 0) {
        filt::DfUpperResult result = filt::df_upper(x, y, budget, seed);
        j["value"] = json_scalar(result.value);
        j["witness"] = json_correspondence(result.witness, x.vertex_names(), y.vertex_names());
        j["budget"] = budget;
        j["seed"] = seed;
      } else {
        filt::DfOptions options;
        options.capped = capped;
        options.max_grid_bits = grid_bits;
        filt::DfResult result = filt::df_exact(x, y, options);
        j["value"] = json_scalar(result.value);
        j["minimizers"] = ordered_json::array();
        for (const auto& r : result.minimizers)
          j["minimizers"].push_back(json_correspondence(r, x.vertex_names(), y.vertex_names()));
      }
      emit(j);
    } else if (gh_cmd->parsed()) {
      filt::FiniteMetricSpace m = filt::parse_metric_space(read_file(x_path));
      filt::FiniteMetricSpace n = filt::parse_metric_space(read_file(y_path));
      filt::GhOptions options;
      options.max_grid_bits = grid_bits;
      filt::GromovHausdorffResult result = filt::gromov_hausdorff_exact(m, n, options);
      ordered_json j;
      j["value"] = json_scalar(result.value);
      j["minimizers"] = ordered_json::array();
      for (const auto& r : result.minimizers)
        j["minimizers"].push_back(json_correspondence(r, m.point_names(), n.point_names()));
      emit(j);
    } else if (rips_cmd->parsed() || cech_cmd->parsed()) {
      filt::FiniteMetricSpace m = filt::parse_metric_space(read_file(space_path));
      int effective = cap < 0 ? m.size() - 1 : cap;
      filt::FilteredSpace space = rips_cmd->parsed() ? filt::rips_filtration(m, effective)
                                                     : filt::cech_filtration(m, effective);
      std::cout << filt::serialize_filtered_space(space) << "\n";
    } else if (pullback_cmd->parsed()) {
      filt::FilteredSpace space = filt::parse_filtered_space(read_file(space_path));
      filt::VertexMap phi = filt::parse_vertex_map(read_file(map_path), space);
      std::optional<int> requested;
      if (cap >= 0) requested = cap;
      std::cout << filt::serialize_filtered_space(filt::pullback(space, phi, requested)) << "\n";
    } else if (geodesic_cmd->parsed()) {
      filt::FilteredSpace x = filt::parse_filtered_space(read_file(x_path));
      filt::FilteredSpace y = filt::parse_filtered_space(read_file(y_path));
      int k = degree < 0 ? 0 : degree;
      ordered_json j;
      j["degree"] = k;
      if (!corr_path.empty()) {
        filt::Correspondence r = filt::parse_correspondence(read_file(corr_path), x, y);
        filt::GeodesicCurve curve = filt::make_geodesic(x, y, r);
        filt::PathLengthReport report = filt::diagram_path_length(curve, k, tol, max_depth);
        j["value"] = json_scalar(report.value);
        j["df"] = json_scalar(curve.df());
        j["depth"] = report.depth;
        j["converged"] = report.converged;
        j["correspondence"] = json_correspondence(r, x.vertex_names(), y.vertex_names());
      } else {
        filt::StrengthenedBound bound = filt::strengthened_lower_bound(x, y, k, tol, max_depth);
        j["value"] = json_scalar(bound.value);
        j["df"] = json_scalar(bound.df);
        j["depth"] = bound.report.depth;
        j["converged"] = bound.report.converged;
        j["correspondence"] =
            json_correspondence(bound.best, x.vertex_names(), y.vertex_names());
      }
      emit(j);
    } else if (verify_cmd->parsed()) {
      filt::VerifyReport report = filt::run_verify(suite, trials, seed);
      std::cout << filt::serialize_verify_report(report) << "\n";
      if (!report.passed) {
        std::cerr << "verification found violations\n";
        return 1;
      }
    }
  } catch (const filt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
