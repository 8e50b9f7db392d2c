// xfer: transfer scalar/vector/tensor fields between point clouds with
// rescaled localized RBF interpolation; the rbf-f-svd method keeps the
// determinant of transferred deformation-gradient fields positive.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "xfer/csv.hpp"
#include "xfer/errors.hpp"
#include "xfer/experiment.hpp"
#include "xfer/fields.hpp"
#include "xfer/grid.hpp"
#include "xfer/parallel.hpp"
#include "xfer/report.hpp"
#include "xfer/transfer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::array<int, 3> parse_grid(const std::string& text) {
  std::array<int, 3> cells{};
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d,%d,%d%c", &cells[0], &cells[1], &cells[2],
                  &extra) != 3)
    throw CLI::ValidationError("--grid", "expected nx,ny,nz");
  return cells;
}

int run_command(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config " + config_path);
  std::stringstream buf;
  buf << in.rdbuf();

  const xfer::ExperimentConfig cfg = xfer::config_from_json(buf.str());
  xfer::TransferReport report = xfer::run_experiment(cfg);
  report = xfer::emit_report(std::move(report), cfg.output);

  bool any_failed = false;
  for (const auto& m : report.methods) {
    if (m.ok) {
      std::printf("%-10s det in [%.6g, %.6g], mean %.6g  (init %.1f ms, eval %.1f ms)\n",
                  m.name.c_str(), m.det.min, m.det.max, m.det.mean, m.init_ms,
                  m.evaluate_ms);
    } else {
      std::printf("%-10s FAILED: %s\n", m.name.c_str(), m.error.c_str());
      any_failed = true;
    }
  }
  std::printf("report written to %s\n", (fs::path(cfg.output) / "report.json").c_str());
  return any_failed ? 2 : 0;
}

int transfer_command(const std::string& src_path, const std::string& field_path,
                     const std::string& dst_path, const std::string& method_name,
                     int M, double alpha, double tol, int threads,
                     const std::string& out_dir) {
  const auto method = xfer::method_from_string(method_name);
  if (!method)
    throw CLI::ValidationError("--method", "must be rbf-d, rbf-f-e or rbf-f-svd");

  xfer::set_max_threads(threads);

  const xfer::PointSet src = xfer::PointSet::source(xfer::load_points_csv(src_path));
  const xfer::PointSet dst = xfer::PointSet::destination(xfer::load_points_csv(dst_path));

  xfer::RadiusConfig rcfg = xfer::default_radius_for(*method);
  if (M > 0) rcfg.M = M;
  if (alpha > 0) rcfg.alpha = alpha;
  xfer::SolverConfig scfg{tol, 2000, 50};

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  xfer::MethodReport mr;
  mr.name = xfer::to_string(*method);
  xfer::SourceStats source_stats; // empty for rbf-d: no tensor input

  const auto t_init = clock::now();
  const xfer::TransferOperator op(src, dst, rcfg, scfg);
  mr.init_ms = ms_since(t_init);
  mr.gmres_build_iters = op.ones_solve_stats().iterations;

  xfer::TensorField result{dst, {}};
  const auto t_eval = clock::now();
  if (*method == xfer::MethodKind::RbfDGrad) {
    const auto disp = xfer::load_displacement_csv(field_path);
    std::vector<xfer::SolveStats> st;
    result = op.transfer_displacement_gradient(disp, &st);
    for (const auto& s : st) mr.gmres_field_iters.push_back(s.iterations);
  } else {
    xfer::TensorField field{src, xfer::load_tensor_csv(field_path)};
    const auto src_dets = xfer::determinants(field.samples);
    source_stats.det = xfer::det_stats(src_dets);
    source_stats.histogram =
        xfer::make_histogram(src_dets, 60, source_stats.det.min, source_stats.det.max);
    if (*method == xfer::MethodKind::RbfFEuclidean) {
      std::vector<xfer::SolveStats> st;
      result = op.transfer_tensor_euclidean(field, &st);
      for (const auto& s : st) mr.gmres_field_iters.push_back(s.iterations);
    } else {
      xfer::TransferOperator::SvdInfo info;
      result = op.transfer_tensor_svd(field, &info);
      for (const auto& s : info.solves) mr.gmres_field_iters.push_back(s.iterations);
      mr.gauge_near_pi = info.gauge_near_pi;
    }
  }
  mr.evaluate_ms = ms_since(t_eval);

  const auto dets = xfer::determinants(result.samples);
  mr.det = xfer::det_stats(dets);
  const bool have_src_stats = !source_stats.histogram.counts.empty();
  const double lo = have_src_stats ? std::min(source_stats.det.min, mr.det.min) : mr.det.min;
  const double hi = have_src_stats ? std::max(source_stats.det.max, mr.det.max) : mr.det.max;
  mr.histogram = xfer::make_histogram(dets, 60, lo, hi);

  fs::create_directories(out_dir);
  xfer::save_tensor_csv(fs::path(out_dir) / "field.csv", result.samples);

  xfer::TransferReport report;
  report.config_json = json{{"mode", "transfer"},
                            {"src", src_path},
                            {"src_field", field_path},
                            {"dst", dst_path},
                            {"method", mr.name},
                            {"M", rcfg.M},
                            {"alpha", rcfg.alpha},
                            {"tol", tol},
                            {"threads", xfer::max_threads()}}
                          .dump(2);
  report.threads = xfer::max_threads();
  report.source = source_stats;
  if (source_stats.histogram.counts.empty())
    report.source.histogram = xfer::make_histogram({}, 1, 0.0, 1.0);
  report.methods.push_back(std::move(mr));
  xfer::emit_report(std::move(report), out_dir);

  std::printf("%s: %zu destination points, det in [%.6g, %.6g]\n",
              xfer::to_string(*method).c_str(), dets.size(),
              xfer::det_stats(dets).min, xfer::det_stats(dets).max);
  return 0;
}

int gen_command(const std::string& kind_name, const std::string& grid_text, int q,
                std::uint64_t seed, const std::string& out_dir, double amplitude,
                double rate, int axis, int modes) {
  const auto kind = xfer::field_kind_from_string(kind_name);
  if (!kind)
    throw CLI::ValidationError(
        "--kind", "must be twist, stretch, shear, rotblend or randsmooth");

  xfer::StructuredGrid grid;
  grid.cells = parse_grid(grid_text);
  const xfer::PointSet cloud = xfer::gauss_points(grid, q);

  xfer::FieldParams params;
  if (amplitude >= 0) params.amplitude = amplitude;
  params.rate = rate;
  params.axis = axis;
  params.modes = modes;

  const xfer::GeneratedField field = xfer::generate_field(*kind, params, cloud, seed);

  fs::create_directories(out_dir);
  xfer::save_points_csv(fs::path(out_dir) / "points.csv", cloud.points());
  xfer::save_tensor_csv(fs::path(out_dir) / "tensor.csv", field.tensor.samples);
  if (field.displacement)
    xfer::save_displacement_csv(fs::path(out_dir) / "displacement.csv",
                                *field.displacement);

  std::printf("%s: %zu points written to %s\n", kind_name.c_str(), cloud.size(),
              out_dir.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Field transfer between point clouds via rescaled localized RBF "
               "interpolation"};
  app.require_subcommand(1);

  // run
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config JSON")->required();

  // transfer
  std::string src_path, field_path, dst_path, method_name, out_dir = "out";
  int M = 0, threads = 0;
  double alpha = 0.0, tol = 1e-10;
  CLI::App* transfer =
      app.add_subcommand("transfer", "Transfer one field between two clouds");
  transfer->add_option("--src", src_path, "Source point cloud CSV")->required();
  transfer->add_option("--src-field", field_path,
                       "Source field CSV (tensor for rbf-f-*, displacement for rbf-d)")
      ->required();
  transfer->add_option("--dst", dst_path, "Destination point cloud CSV")->required();
  transfer->add_option("--method", method_name, "rbf-d | rbf-f-e | rbf-f-svd")
      ->required();
  transfer->add_option("--M", M, "Minimum enclosed neighbor count (default per method)");
  transfer->add_option("--alpha", alpha, "Radius safety factor (default per method)");
  transfer->add_option("--tol", tol, "GMRES relative tolerance")->capture_default_str();
  transfer->add_option("--threads", threads, "Worker thread cap (0 = hardware)")->capture_default_str();
  transfer->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // gen
  std::string kind_name, grid_text = "8,8,8", gen_out = "out";
  int q = 1, axis = 2, modes = 3;
  std::uint64_t seed = 0;
  double amplitude = -1.0, rate = 1.0;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic field on a grid cloud");
  gen->add_option("--kind", kind_name,
                  "twist | stretch | shear | rotblend | randsmooth")
      ->required();
  gen->add_option("--grid", grid_text, "Cells per axis: nx,ny,nz")->capture_default_str();
  gen->add_option("--q", q, "Gauss points per direction (1, 2 or 3)")->capture_default_str();
  gen->add_option("--seed", seed, "Random seed (randsmooth)")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();
  gen->add_option("--amplitude", amplitude, "Field amplitude");
  gen->add_option("--rate", rate, "Twist angle rate")->capture_default_str();
  gen->add_option("--axis", axis, "Rotation axis (0, 1 or 2)")->capture_default_str();
  gen->add_option("--modes", modes, "Randsmooth mode count")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(config_path);
    if (transfer->parsed())
      return transfer_command(src_path, field_path, dst_path, method_name, M, alpha,
                              tol, threads, out_dir);
    if (gen->parsed())
      return gen_command(kind_name, grid_text, q, seed, gen_out, amplitude, rate,
                         axis, modes);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const xfer::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
