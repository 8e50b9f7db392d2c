#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xfer/fields.hpp"
#include "xfer/gmres.hpp"
#include "xfer/grid.hpp"
#include "xfer/radii.hpp"
#include "xfer/report.hpp"
#include "xfer/transfer.hpp"

namespace xfer {

struct CloudSpec {
  StructuredGrid grid;
  int q = 1;
};

struct ExperimentConfig {
  CloudSpec source;
  CloudSpec destination;
  FieldKind field_kind = FieldKind::Stretch;
  FieldParams field_params;
  std::vector<MethodKind> methods;
  std::map<MethodKind, RadiusConfig> radius; // per-method; defaults from the quantity table
  SolverConfig solver{1e-10, 2000, 50};
  int threads = 0; // 0 = hardware concurrency
  std::uint64_t seed = 0;
  int histogram_bins = 60;
  std::string output = "out";

  void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

/// Builds the clouds, generates the field, runs every requested method and
/// collects statistics. Methods run sequentially so their timings do not
/// interleave; a NumericalError in one method is captured in its report
/// entry and the remaining methods still run.
TransferReport run_experiment(const ExperimentConfig& cfg);

} // namespace xfer
