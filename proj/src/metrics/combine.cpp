#include "simscore/metrics/combine.hpp"

#include <algorithm>

#include "simscore/error.hpp"

namespace simscore {

double symmetrize(double s_lr, double s_rl, Symmetrization mode) {
  switch (mode) {
    case Symmetrization::kMax: return std::max(s_lr, s_rl);
    case Symmetrization::kMean: return s_lr == s_rl ? s_lr : (s_lr + s_rl) / 2.0;
    case Symmetrization::kLeft: return s_lr;
  }
  return s_lr;
}

double fuse(const std::vector<double>& values, const std::vector<std::string>& ids) {
  if (values.empty()) throw ArgumentError("fuse needs at least one value");
  if (!ids.empty() && ids.size() != values.size()) throw ArgumentError("fuse: one metric id per value");
  const double first = values.front();
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == first; })) return first;
  double sum = 0.0;
  for (double v : values) sum += v;
  return std::clamp(sum / static_cast<double>(values.size()), 0.0, 1.0);
}

}  // namespace simscore
