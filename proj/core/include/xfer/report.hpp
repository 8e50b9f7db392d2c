#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xfer/tensor.hpp"

namespace xfer {

struct Histogram {
  std::vector<double> edges;        // size bins + 1
  std::vector<std::int64_t> counts; // size bins

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Uniform bins over [lo, hi]; values clamp into the boundary bins, so the
/// counts always sum to values.size(). A degenerate span is widened by 0.5
/// on each side.
Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi);

void save_histogram_csv(const std::filesystem::path& path, const Histogram& h);
Histogram load_histogram_csv(const std::filesystem::path& path);

struct DetStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;

  friend bool operator==(const DetStats&, const DetStats&) = default;
};

DetStats det_stats(std::span<const double> dets);
std::vector<double> determinants(std::span<const Tensor3> tensors);

/// Error norms against an analytic truth: overall and per tensor component
/// (max-norm and RMS over destinations), plus the same for the determinant.
struct ErrorNorms {
  double max = 0.0;
  double rms = 0.0;
  std::array<double, 9> comp_max{};
  std::array<double, 9> comp_rms{};
  double det_max = 0.0;
  double det_rms = 0.0;

  friend bool operator==(const ErrorNorms&, const ErrorNorms&) = default;
};

struct MethodReport {
  std::string name;
  bool ok = true;
  std::string error; // failure message when !ok; other methods still run

  DetStats det;
  Histogram histogram;
  std::string histogram_file;
  std::optional<ErrorNorms> errors; // present when analytic truth exists
  int gmres_build_iters = 0;
  std::vector<int> gmres_field_iters;
  double init_ms = 0.0;
  double evaluate_ms = 0.0;
  bool gauge_near_pi = false;

  friend bool operator==(const MethodReport&, const MethodReport&) = default;
};

struct SourceStats {
  DetStats det;
  Histogram histogram;
  std::string histogram_file;

  friend bool operator==(const SourceStats&, const SourceStats&) = default;
};

struct TransferReport {
  std::string config_json; // canonical serialized ExperimentConfig
  int threads = 1;
  SourceStats source;
  std::vector<MethodReport> methods;

  friend bool operator==(const TransferReport&, const TransferReport&) = default;
};

std::string report_to_json(const TransferReport& r);
TransferReport report_from_json(const std::string& text);

/// Writes <dir>/report.json plus one histogram CSV per completed method and
/// one for the source cloud (none at all when the method list is empty).
/// Returns the report with histogram_file fields filled in.
TransferReport emit_report(TransferReport r, const std::filesystem::path& dir);

} // namespace xfer
