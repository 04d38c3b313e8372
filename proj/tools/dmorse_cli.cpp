#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dmorse/cloud_io.hpp"
#include "dmorse/morse.hpp"
#include "dmorse/offsets.hpp"
#include "dmorse/plot.hpp"
#include "dmorse/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuleFailure = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

dmorse::Mode parse_mode(const std::string& s) {
  if (s == "exact") return dmorse::Mode::Exact;
  if (s == "float") return dmorse::Mode::Float;
  throw InputError("unknown mode '" + s + "' (expected exact or float)");
}

template <class T>
int run_analyze(const std::string& input, const dmorse::AnalysisSettings& settings, const std::string& out_path) {
  const auto cloud = dmorse::load_point_cloud<T>(input, settings.tol);
  dmorse::EnumerationOptions opts;
  opts.max_subset_size = settings.max_subset;
  opts.allow_large = settings.max_subset != 0;
  const auto records = dmorse::enumerate_critical(cloud, opts);
  write_output(out_path, dmorse::dump_json(dmorse::analysis_report(cloud, records, settings)));
  return kOk;
}

template <class T>
int run_gradient(const std::string& input, const std::string& at, const dmorse::Tolerance& tol) {
  const auto cloud = dmorse::load_point_cloud<T>(input, tol);
  const auto z = dmorse::parse_point<T>(at);
  if (z.size() != cloud.ambient())
    throw InputError("query point has " + std::to_string(z.size()) + " coordinates, cloud has dimension " +
                     std::to_string(cloud.ambient()));
  write_output("", dmorse::dump_json(dmorse::gradient_json(dmorse::generalized_gradient(cloud, z))));
  return kOk;
}

int run_verify(const std::string& input, const std::string& out_path) {
  dmorse::AnalysisSettings settings;
  const auto cloud = dmorse::load_point_cloud<dmorse::Rational>(input, settings.tol);
  const auto records = dmorse::enumerate_critical(cloud);
  const auto report = dmorse::verify_morse_consistency(cloud, records);
  write_output(out_path, dmorse::dump_json(dmorse::analysis_report(cloud, records, settings, &report)));
  return report.all_pass() ? kOk : kRuleFailure;
}

int run_plot(const std::string& input, const std::string& out_path, std::size_t grid, std::size_t levels,
             const std::string& bbox) {
  const auto cloud = dmorse::load_point_cloud<dmorse::Rational>(input);
  if (cloud.ambient() != 2) throw InputError("plot requires a planar cloud (n = 2)");
  dmorse::PlotOptions opts;
  opts.grid = grid;
  opts.levels = levels;
  if (bbox != "auto") {
    const auto v = dmorse::parse_point<double>(bbox);
    if (v.size() != 4) throw InputError("--bbox expects 'auto' or 'xmin,ymin,xmax,ymax'");
    opts.bbox = std::array<double, 4>{v[0], v[1], v[2], v[3]};
  }
  std::vector<std::array<double, 2>> pts;
  for (const auto& p : cloud.points()) pts.push_back({p[0].get_d(), p[1].get_d()});
  const auto records = dmorse::enumerate_critical(cloud);
  write_output(out_path, dmorse::render_level_svg(pts, dmorse::plot_markers(records), opts));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical points of the distance function to a finite point cloud"};
  app.require_subcommand(1);

  std::string input, out_path, mode_name = "exact", at, bbox = "auto";
  double tol = 1e-9;
  std::size_t max_subset = 0, grid = 400, levels = 12;

  auto* analyze = app.add_subcommand("analyze", "Enumerate and classify all critical points");
  analyze->add_option("--input", input, "CSV point cloud")->required();
  analyze->add_option("--mode", mode_name, "exact or float")->capture_default_str();
  analyze->add_option("--tol", tol, "Float-mode relative tie tolerance")->capture_default_str();
  analyze->add_option("--max-subset", max_subset, "Largest projection set to search; lifts the size cap");
  analyze->add_option("--out", out_path, "Report path (default: stdout)");

  auto* gradient = app.add_subcommand("gradient", "Generalized gradient at one point");
  gradient->add_option("--input", input, "CSV point cloud")->required();
  gradient->add_option("--at", at, "Query point, comma-separated")->required();
  gradient->add_option("--mode", mode_name, "exact or float")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check offset homology against the classification");
  verify->add_option("--input", input, "CSV point cloud")->required();
  verify->add_option("--out", out_path, "Report path (default: stdout)");

  auto* plot = app.add_subcommand("plot", "SVG of the level sets of a planar cloud's distance function");
  plot->add_option("--input", input, "CSV point cloud")->required();
  plot->add_option("--out", out_path, "SVG path")->required();
  plot->add_option("--grid", grid, "Grid cells per side")->capture_default_str();
  plot->add_option("--levels", levels, "Number of level sets")->capture_default_str();
  plot->add_option("--bbox", bbox, "'auto' or xmin,ymin,xmax,ymax")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    dmorse::Tolerance tolerance;
    tolerance.rel = tol;
    const dmorse::Mode mode = parse_mode(mode_name);
    if (analyze->parsed()) {
      dmorse::AnalysisSettings settings{mode, tolerance, max_subset};
      return mode == dmorse::Mode::Exact ? run_analyze<dmorse::Rational>(input, settings, out_path)
                                         : run_analyze<double>(input, settings, out_path);
    }
    if (gradient->parsed())
      return mode == dmorse::Mode::Exact ? run_gradient<dmorse::Rational>(input, at, tolerance)
                                         : run_gradient<double>(input, at, tolerance);
    if (verify->parsed()) return run_verify(input, out_path);
    if (plot->parsed()) return run_plot(input, out_path, grid, levels, bbox);
  } catch (const dmorse::CloudFileError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const dmorse::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const dmorse::CloudTooLargeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
