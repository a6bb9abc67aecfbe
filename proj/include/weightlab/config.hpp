#ifndef WEIGHTLAB_CONFIG_HPP
#define WEIGHTLAB_CONFIG_HPP

#include <string>
#include <vector>

namespace weightlab {

/// Run-wide numeric configuration. Serialized alongside every report so runs
/// are reproducible byte for byte.
struct RunConfig {
  int p_max = 400;         // truncation order for structural checks
  int p_max_index = 2000;  // truncation order for index estimation
  double t_min = 1.0;
  double t_max = 1e8;
  int t_points = 400;
  std::vector<double> ells = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  double tol_rel = 1e-6;         // pointwise identity tolerance
  double verdict_margin = 1e-3;  // trend tolerance, log-per-index units
  int s_points = 256;            // coarse optimizer grid per t
  int golden_iters = 40;
  double s_max = 1e12;  // absolute cap of the optimizer s-window

  void validate() const;  // throws InvalidArgument on nonsense values
};

/// Parse a `key = value` config file (comments start with '#').
RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace weightlab

#endif  // WEIGHTLAB_CONFIG_HPP
