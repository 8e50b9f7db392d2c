#include "xfer/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace xfer {

using nlohmann::json;

Histogram make_histogram(std::span<const double> values, int bins, double lo,
                         double hi) {
  if (bins < 1) throw std::invalid_argument("make_histogram: bins must be >= 1");
  if (!(lo <= hi)) throw std::invalid_argument("make_histogram: lo > hi");
  if (hi - lo < 1e-300) {
    lo -= 0.5;
    hi += 0.5;
  }

  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + b * width;
  h.counts.assign(static_cast<std::size_t>(bins), 0);

  for (double v : values) {
    int b = static_cast<int>(std::floor((v - lo) / width));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

void save_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "bin_lo,bin_hi,count\n";
  char buf[80];
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld\n", h.edges[b], h.edges[b + 1],
                  static_cast<long long>(h.counts[b]));
    out << buf;
  }
}

Histogram load_histogram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "bin_lo,bin_hi,count")
    throw std::runtime_error(path.string() + ": bad histogram header");
  Histogram h;
  double lo = 0, hi = 0;
  long long count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lld", &lo, &hi, &count) != 3)
      throw std::runtime_error(path.string() + ": bad histogram row '" + line + "'");
    if (h.edges.empty()) h.edges.push_back(lo);
    h.edges.push_back(hi);
    h.counts.push_back(count);
  }
  return h;
}

DetStats det_stats(std::span<const double> dets) {
  if (dets.empty()) throw std::invalid_argument("det_stats: empty input");
  DetStats s{dets[0], dets[0], 0.0};
  double sum = 0.0;
  for (double d : dets) {
    s.min = std::min(s.min, d);
    s.max = std::max(s.max, d);
    sum += d;
  }
  s.mean = sum / static_cast<double>(dets.size());
  return s;
}

std::vector<double> determinants(std::span<const Tensor3> tensors) {
  std::vector<double> d(tensors.size());
  for (std::size_t i = 0; i < tensors.size(); ++i) d[i] = det3(tensors[i]);
  return d;
}

namespace {

json histogram_to_json(const Histogram& h) {
  return json{{"edges", h.edges}, {"counts", h.counts}};
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  h.edges = j.at("edges").get<std::vector<double>>();
  h.counts = j.at("counts").get<std::vector<std::int64_t>>();
  return h;
}

json method_to_json(const MethodReport& m) {
  json j{{"name", m.name}};
  if (!m.ok) {
    j["error"] = m.error;
    j["det_min"] = nullptr;
    j["det_max"] = nullptr;
    j["det_mean"] = nullptr;
    j["histogram_file"] = nullptr;
    j["err_max"] = nullptr;
    j["err_rms"] = nullptr;
    j["gmres_iters"] = nullptr;
    j["time_ms"] = json{{"init", m.init_ms}, {"evaluate", m.evaluate_ms}};
    return j;
  }
  j["error"] = nullptr;
  j["det_min"] = m.det.min;
  j["det_max"] = m.det.max;
  j["det_mean"] = m.det.mean;
  j["histogram_file"] = m.histogram_file.empty() ? json(nullptr) : json(m.histogram_file);
  j["histogram"] = histogram_to_json(m.histogram);
  if (m.errors) {
    j["err_max"] = m.errors->max;
    j["err_rms"] = m.errors->rms;
    j["err_detail"] = json{{"comp_max", m.errors->comp_max},
                           {"comp_rms", m.errors->comp_rms},
                           {"det_max", m.errors->det_max},
                           {"det_rms", m.errors->det_rms}};
  } else {
    j["err_max"] = nullptr;
    j["err_rms"] = nullptr;
  }
  j["gmres_iters"] = json{{"build", m.gmres_build_iters}, {"per_field", m.gmres_field_iters}};
  j["time_ms"] = json{{"init", m.init_ms}, {"evaluate", m.evaluate_ms}};
  j["gauge_near_pi"] = m.gauge_near_pi;
  return j;
}

MethodReport method_from_json(const json& j) {
  MethodReport m;
  m.name = j.at("name").get<std::string>();
  if (!j.at("error").is_null()) {
    m.ok = false;
    m.error = j.at("error").get<std::string>();
    m.init_ms = j.at("time_ms").at("init").get<double>();
    m.evaluate_ms = j.at("time_ms").at("evaluate").get<double>();
    return m;
  }
  m.det.min = j.at("det_min").get<double>();
  m.det.max = j.at("det_max").get<double>();
  m.det.mean = j.at("det_mean").get<double>();
  if (!j.at("histogram_file").is_null())
    m.histogram_file = j.at("histogram_file").get<std::string>();
  m.histogram = histogram_from_json(j.at("histogram"));
  if (!j.at("err_max").is_null()) {
    ErrorNorms e;
    e.max = j.at("err_max").get<double>();
    e.rms = j.at("err_rms").get<double>();
    const json& d = j.at("err_detail");
    e.comp_max = d.at("comp_max").get<std::array<double, 9>>();
    e.comp_rms = d.at("comp_rms").get<std::array<double, 9>>();
    e.det_max = d.at("det_max").get<double>();
    e.det_rms = d.at("det_rms").get<double>();
    m.errors = e;
  }
  m.gmres_build_iters = j.at("gmres_iters").at("build").get<int>();
  m.gmres_field_iters = j.at("gmres_iters").at("per_field").get<std::vector<int>>();
  m.init_ms = j.at("time_ms").at("init").get<double>();
  m.evaluate_ms = j.at("time_ms").at("evaluate").get<double>();
  m.gauge_near_pi = j.at("gauge_near_pi").get<bool>();
  return m;
}

} // namespace

std::string report_to_json(const TransferReport& r) {
  json j;
  j["config"] = r.config_json.empty() ? json(json::object())
                                      : json::parse(r.config_json);
  j["threads"] = r.threads;
  j["source_stats"] = json{
      {"det_min", r.source.det.min},
      {"det_max", r.source.det.max},
      {"det_mean", r.source.det.mean},
      {"histogram_file",
       r.source.histogram_file.empty() ? json(nullptr) : json(r.source.histogram_file)},
      {"histogram", histogram_to_json(r.source.histogram)}};
  j["methods"] = json::array();
  for (const MethodReport& m : r.methods) j["methods"].push_back(method_to_json(m));
  return j.dump(2);
}

TransferReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  TransferReport r;
  r.config_json = j.at("config").dump(2);
  r.threads = j.at("threads").get<int>();
  const json& s = j.at("source_stats");
  r.source.det = DetStats{s.at("det_min").get<double>(), s.at("det_max").get<double>(),
                          s.at("det_mean").get<double>()};
  if (!s.at("histogram_file").is_null())
    r.source.histogram_file = s.at("histogram_file").get<std::string>();
  r.source.histogram = histogram_from_json(s.at("histogram"));
  for (const json& m : j.at("methods")) r.methods.push_back(method_from_json(m));
  return r;
}

TransferReport emit_report(TransferReport r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  if (!r.methods.empty()) {
    r.source.histogram_file = "hist_source.csv";
    save_histogram_csv(dir / r.source.histogram_file, r.source.histogram);
    for (MethodReport& m : r.methods) {
      if (!m.ok) continue;
      m.histogram_file = "hist_" + m.name + ".csv";
      save_histogram_csv(dir / m.histogram_file, m.histogram);
    }
  }

  std::ofstream out(dir / "report.json");
  if (!out)
    throw std::runtime_error("cannot open " + (dir / "report.json").string() +
                             " for writing");
  out << report_to_json(r) << '\n';
  return r;
}

} // namespace xfer
