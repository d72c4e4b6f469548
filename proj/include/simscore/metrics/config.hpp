#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "simscore/tree_edit_distance.hpp"

namespace simscore {

enum class Symmetrization { kMax, kMean, kLeft };

Symmetrization parse_symmetrization(std::string_view s);
const char* to_string(Symmetrization s);

struct MetricConfig {
  int max_order = 4;                  // N
  std::vector<double> order_weights;  // w_n; empty means uniform 1/N
  double alpha = 0.25;                // CodeBLEU: n-gram
  double beta = 0.25;                 //           keyword-weighted n-gram
  double gamma = 0.25;                //           syntax
  double delta = 0.25;                //           dataflow
  double epsilon = 1e-12;             // precision floor inside the log
  std::size_t k_shared = 500;         // CrystalBLEU trivially shared n-grams per order
  double keyword_weight = 5.0;
  Symmetrization symmetrization = Symmetrization::kMax;
  int subtree_depth = 3;
  std::size_t node_cap = kDefaultNodeCap;
  EditCostTable edit_costs;

  /// Throws ValidationError when an invariant is broken.
  void validate() const;
  double order_weight(int n) const;
};

}  // namespace simscore
