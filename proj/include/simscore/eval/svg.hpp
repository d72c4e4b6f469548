#pragma once

#include <string>

#include "simscore/eval/report.hpp"

namespace simscore {

/// Standalone SVG with every metric of the set overlaid: straight segments
/// for ROC (plus the chance diagonal), steps for PR. Output depends only on
/// the input, byte for byte.
std::string render_svg(const CurveSet& set, CurveKind kind);

/// Σ (R_n - R_{n-1}) P_n read off a PR curve.
double step_area(const Curve& pr);

}  // namespace simscore
