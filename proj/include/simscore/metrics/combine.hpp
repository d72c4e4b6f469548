#pragma once

#include <string>
#include <vector>

#include "simscore/metrics/config.hpp"

namespace simscore {

double symmetrize(double s_lr, double s_rl, Symmetrization mode);
inline double symmetrize(double s_lr, double s_rl, const MetricConfig& cfg) {
  return symmetrize(s_lr, s_rl, cfg.symmetrization);
}

/// Unweighted mean. Throws ArgumentError on an empty list or when `ids` is
/// given with a different length.
double fuse(const std::vector<double>& values, const std::vector<std::string>& ids = {});

}  // namespace simscore
