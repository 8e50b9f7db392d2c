#include "xfer/experiment.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "xfer/errors.hpp"
#include "xfer/parallel.hpp"

namespace xfer {

using nlohmann::json;

void ExperimentConfig::validate() const {
  source.grid.validate();
  destination.grid.validate();
  if (source.q < 1 || source.q > 3 || destination.q < 1 || destination.q > 3)
    throw std::invalid_argument("ExperimentConfig: q must be 1, 2 or 3");
  solver.validate();
  for (const auto& [m, r] : radius) {
    (void)m;
    r.validate();
  }
  if (histogram_bins < 1)
    throw std::invalid_argument("ExperimentConfig: histogram_bins must be >= 1");
  if (threads < 0) throw std::invalid_argument("ExperimentConfig: threads must be >= 0");
}

namespace {

json cloud_to_json(const CloudSpec& c) {
  return json{{"box_min", {c.grid.box_min.x, c.grid.box_min.y, c.grid.box_min.z}},
              {"box_max", {c.grid.box_max.x, c.grid.box_max.y, c.grid.box_max.z}},
              {"cells", c.grid.cells},
              {"q", c.q}};
}

CloudSpec cloud_from_json(const json& j) {
  CloudSpec c;
  if (j.contains("box_min")) {
    const auto v = j.at("box_min").get<std::array<double, 3>>();
    c.grid.box_min = Point3{v[0], v[1], v[2]};
  }
  if (j.contains("box_max")) {
    const auto v = j.at("box_max").get<std::array<double, 3>>();
    c.grid.box_max = Point3{v[0], v[1], v[2]};
  }
  c.grid.cells = j.at("cells").get<std::array<int, 3>>();
  c.q = j.value("q", 1);
  return c;
}

json params_to_json(const FieldParams& p) {
  return json{{"amplitude", p.amplitude},
              {"rate", p.rate},
              {"axis", p.axis},
              {"center", {p.center(0), p.center(1), p.center(2)}},
              {"modes", p.modes}};
}

FieldParams params_from_json(const json& j) {
  FieldParams p;
  p.amplitude = j.value("amplitude", p.amplitude);
  p.rate = j.value("rate", p.rate);
  p.axis = j.value("axis", p.axis);
  if (j.contains("center")) {
    const auto v = j.at("center").get<std::array<double, 3>>();
    p.center = Vec3(v[0], v[1], v[2]);
  }
  p.modes = j.value("modes", p.modes);
  return p;
}

} // namespace

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig cfg;

  cfg.source = cloud_from_json(j.at("source"));
  cfg.destination = cloud_from_json(j.at("destination"));

  const json& f = j.at("field");
  const auto kind = field_kind_from_string(f.at("kind").get<std::string>());
  if (!kind)
    throw std::invalid_argument("config: unknown field kind '" +
                                f.at("kind").get<std::string>() + "'");
  cfg.field_kind = *kind;
  if (f.contains("params")) cfg.field_params = params_from_json(f.at("params"));

  for (const json& name : j.at("methods")) {
    const auto m = method_from_string(name.get<std::string>());
    if (!m)
      throw std::invalid_argument("config: unknown method '" + name.get<std::string>() +
                                  "'");
    cfg.methods.push_back(*m);
  }

  for (MethodKind m : cfg.methods) cfg.radius[m] = default_radius_for(m);
  if (j.contains("radius")) {
    const json& r = j.at("radius");
    if (r.contains("M")) {
      // One config applied to every method.
      const RadiusConfig rc{r.at("M").get<int>(), r.at("alpha").get<double>()};
      for (MethodKind m : cfg.methods) cfg.radius[m] = rc;
    } else {
      for (const auto& [key, val] : r.items()) {
        const auto m = method_from_string(key);
        if (!m) throw std::invalid_argument("config: unknown method in radius: " + key);
        cfg.radius[*m] = RadiusConfig{val.at("M").get<int>(), val.at("alpha").get<double>()};
      }
    }
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    cfg.solver.tolerance = s.value("tolerance", cfg.solver.tolerance);
    cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
    cfg.solver.restart = s.value("restart", cfg.solver.restart);
  }
  cfg.threads = j.value("threads", 0);
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.histogram_bins = j.value("histogram_bins", 60);
  cfg.output = j.value("output", std::string("out"));

  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["source"] = cloud_to_json(cfg.source);
  j["destination"] = cloud_to_json(cfg.destination);
  j["field"] = json{{"kind", to_string(cfg.field_kind)},
                    {"params", params_to_json(cfg.field_params)}};
  j["methods"] = json::array();
  for (MethodKind m : cfg.methods) j["methods"].push_back(to_string(m));
  json radius = json::object();
  for (const auto& [m, r] : cfg.radius)
    radius[to_string(m)] = json{{"M", r.M}, {"alpha", r.alpha}};
  j["radius"] = radius;
  j["solver"] = json{{"tolerance", cfg.solver.tolerance},
                     {"max_iterations", cfg.solver.max_iterations},
                     {"restart", cfg.solver.restart}};
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  j["histogram_bins"] = cfg.histogram_bins;
  j["output"] = cfg.output;
  return j.dump(2);
}

namespace {

ErrorNorms error_norms(const TensorField& got, const TensorTruth& truth) {
  ErrorNorms e;
  const std::size_t n = got.samples.size();
  std::array<double, 9> sq{};
  double det_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Tensor3 expect = truth(got.points[i]);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const double d = std::abs(got.samples[i](r, c) - expect(r, c));
        const std::size_t k = static_cast<std::size_t>(3 * r + c);
        e.comp_max[k] = std::max(e.comp_max[k], d);
        sq[k] += d * d;
      }
    const double dd = std::abs(det3(got.samples[i]) - det3(expect));
    e.det_max = std::max(e.det_max, dd);
    det_sq += dd * dd;
  }
  double total_sq = 0.0;
  for (std::size_t k = 0; k < 9; ++k) {
    e.comp_rms[k] = std::sqrt(sq[k] / static_cast<double>(n));
    e.max = std::max(e.max, e.comp_max[k]);
    total_sq += sq[k];
  }
  e.rms = std::sqrt(total_sq / static_cast<double>(9 * n));
  e.det_rms = std::sqrt(det_sq / static_cast<double>(n));
  return e;
}

} // namespace

TransferReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  set_max_threads(cfg.threads);

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  const PointSet src = gauss_points(cfg.source.grid, cfg.source.q);
  const PointSet dst = gauss_points(cfg.destination.grid, cfg.destination.q);
  const GeneratedField field = generate_field(cfg.field_kind, cfg.field_params, src, cfg.seed);

  const std::vector<double> src_dets = determinants(field.tensor.samples);
  const DetStats src_stats = det_stats(src_dets);

  TransferReport report;
  report.config_json = config_to_json(cfg);
  report.threads = max_threads();
  report.source.det = src_stats;
  report.source.histogram =
      make_histogram(src_dets, cfg.histogram_bins, src_stats.min, src_stats.max);

  for (MethodKind method : cfg.methods) {
    MethodReport mr;
    mr.name = to_string(method);
    const RadiusConfig rcfg =
        cfg.radius.contains(method) ? cfg.radius.at(method) : default_radius_for(method);

    try {
      const auto t_init = clock::now();
      const TransferOperator op(src, dst, rcfg, cfg.solver);
      mr.init_ms = ms_since(t_init);
      mr.gmres_build_iters = op.ones_solve_stats().iterations;

      const auto t_eval = clock::now();
      TensorField result{dst, {}};
      switch (method) {
        case MethodKind::RbfDGrad: {
          if (!field.displacement)
            throw NumericalError("field kind '" + to_string(cfg.field_kind) +
                                 "' provides no displacement data for rbf-d");
          std::vector<SolveStats> st;
          result = op.transfer_displacement_gradient(*field.displacement, &st);
          for (const auto& s : st) mr.gmres_field_iters.push_back(s.iterations);
          break;
        }
        case MethodKind::RbfFEuclidean: {
          std::vector<SolveStats> st;
          result = op.transfer_tensor_euclidean(field.tensor, &st);
          for (const auto& s : st) mr.gmres_field_iters.push_back(s.iterations);
          break;
        }
        case MethodKind::RbfFSvd: {
          TransferOperator::SvdInfo info;
          result = op.transfer_tensor_svd(field.tensor, &info);
          for (const auto& s : info.solves) mr.gmres_field_iters.push_back(s.iterations);
          mr.gauge_near_pi = info.gauge_near_pi;
          break;
        }
      }
      mr.evaluate_ms = ms_since(t_eval);

      const std::vector<double> dets = determinants(result.samples);
      mr.det = det_stats(dets);
      const double lo = std::min(src_stats.min, mr.det.min);
      const double hi = std::max(src_stats.max, mr.det.max);
      mr.histogram = make_histogram(dets, cfg.histogram_bins, lo, hi);

      if (field.truth) mr.errors = error_norms(result, field.truth);
    } catch (const NumericalError& e) {
      mr.ok = false;
      mr.error = e.what();
      mr.det = DetStats{};
      mr.histogram = Histogram{};
      mr.gmres_build_iters = 0;
      mr.gmres_field_iters.clear();
      mr.gauge_near_pi = false;
    }

    report.methods.push_back(std::move(mr));
  }

  return report;
}

} // namespace xfer
