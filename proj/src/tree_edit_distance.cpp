#include "simscore/tree_edit_distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "simscore/error.hpp"

namespace simscore {
namespace {

// Postorder view of a tree: 1-based indices as in the original formulation.
struct Annotated {
  std::vector<int> label;     // interned kind, index 1..n
  std::vector<int> leftmost;  // leftmost leaf descendant, postorder index
  std::vector<int> keyroots;  // ascending
  int n = 0;
};

Annotated annotate(const SyntaxTree& t, std::unordered_map<std::string, int>& intern) {
  Annotated a;
  a.n = static_cast<int>(t.size());
  a.label.assign(static_cast<std::size_t>(a.n) + 1, 0);
  a.leftmost.assign(static_cast<std::size_t>(a.n) + 1, 0);
  if (a.n == 0) return a;

  // iterative postorder
  std::vector<int> post_of(t.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  int counter = 0;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& ch = t.node(node).children;
    if (next < ch.size()) {
      const auto c = ch[next++];
      stack.push_back({c, 0});
      continue;
    }
    const int id = ++counter;
    post_of[node] = id;
    const auto& kind = t.node(node).kind;
    auto it = intern.find(kind);
    if (it == intern.end()) it = intern.emplace(kind, static_cast<int>(intern.size())).first;
    a.label[static_cast<std::size_t>(id)] = it->second;
    a.leftmost[static_cast<std::size_t>(id)] = ch.empty() ? id : a.leftmost[static_cast<std::size_t>(post_of[ch.front()])];
    stack.pop_back();
  }

  // keyroots: the highest node for each distinct leftmost leaf
  std::vector<int> highest(static_cast<std::size_t>(a.n) + 1, 0);
  for (int i = 1; i <= a.n; ++i) highest[static_cast<std::size_t>(a.leftmost[static_cast<std::size_t>(i)])] = i;
  for (int l = 1; l <= a.n; ++l)
    if (highest[static_cast<std::size_t>(l)]) a.keyroots.push_back(highest[static_cast<std::size_t>(l)]);
  std::sort(a.keyroots.begin(), a.keyroots.end());
  return a;
}

template <typename Cost>
Cost zhang_shasha(const Annotated& a, const Annotated& b, Cost ins, Cost del, Cost ren) {
  const std::size_t n1 = static_cast<std::size_t>(a.n);
  const std::size_t n2 = static_cast<std::size_t>(b.n);
  if (n1 == 0) return static_cast<Cost>(n2) * ins;
  if (n2 == 0) return static_cast<Cost>(n1) * del;

  std::vector<Cost> td((n1 + 1) * (n2 + 1), Cost{});
  std::vector<Cost> fd((n1 + 2) * (n2 + 2), Cost{});
  const std::size_t stride = n2 + 2;

  const int* la = a.leftmost.data();
  const int* lb = b.leftmost.data();
  const int* ka = a.label.data();
  const int* kb = b.label.data();
  for (int kr1 : a.keyroots) {
    for (int kr2 : b.keyroots) {
      const std::size_t i = static_cast<std::size_t>(kr1);
      const std::size_t j = static_cast<std::size_t>(kr2);
      const std::size_t li = static_cast<std::size_t>(la[i]);
      const std::size_t lj = static_cast<std::size_t>(lb[j]);
      const std::size_t rows = i - li + 2;
      const std::size_t cols = j - lj + 2;
      // fd row x, column y: forest distance between a[li..li+x-1] and b[lj..lj+y-1]
      fd[0] = Cost{};
      for (std::size_t x = 1; x < rows; ++x) fd[x * stride] = fd[(x - 1) * stride] + del;
      for (std::size_t y = 1; y < cols; ++y) fd[y] = fd[y - 1] + ins;
      for (std::size_t x = 1; x < rows; ++x) {
        const std::size_t ni = li + x - 1;
        const std::size_t lni = static_cast<std::size_t>(la[ni]);
        Cost* row = fd.data() + x * stride;
        const Cost* prev = row - stride;
        Cost* td_row = td.data() + ni * (n2 + 1);
        const int label_i = ka[ni];
        if (lni == li) {
          for (std::size_t y = 1; y < cols; ++y) {
            const std::size_t nj = lj + y - 1;
            const Cost drop = prev[y] + del;
            const Cost add = row[y - 1] + ins;
            if (static_cast<std::size_t>(lb[nj]) == lj) {
              const Cost sub = prev[y - 1] + (label_i == kb[nj] ? Cost{} : ren);
              const Cost best = std::min(std::min(drop, add), sub);
              row[y] = best;
              td_row[nj] = best;
            } else {
              const Cost tree = fd[(lni - li) * stride + (static_cast<std::size_t>(lb[nj]) - lj)] + td_row[nj];
              row[y] = std::min(std::min(drop, add), tree);
            }
          }
        } else {
          const Cost* base = fd.data() + (lni - li) * stride;
          for (std::size_t y = 1; y < cols; ++y) {
            const std::size_t nj = lj + y - 1;
            const Cost drop = prev[y] + del;
            const Cost add = row[y - 1] + ins;
            const Cost tree = base[static_cast<std::size_t>(lb[nj]) - lj] + td_row[nj];
            row[y] = std::min(std::min(drop, add), tree);
          }
        }
      }
    }
  }
  return td[n1 * (n2 + 1) + n2];
}

bool integral(double v) { return v == std::floor(v) && v < 1e6; }

}  // namespace

double tree_edit_distance(const SyntaxTree& a, const SyntaxTree& b, const EditCostTable& costs,
                          std::size_t node_cap) {
  if (costs.insert < 0 || costs.remove < 0 || costs.rename < 0) throw ArgumentError("edit costs must be >= 0");
  if (node_cap && (a.size() > node_cap || b.size() > node_cap)) {
    const auto big = std::max(a.size(), b.size());
    throw CapacityError("tree of " + std::to_string(big) + " nodes exceeds cap of " + std::to_string(node_cap), big);
  }
  std::unordered_map<std::string, int> intern;
  const Annotated x = annotate(a, intern);
  const Annotated y = annotate(b, intern);
  if (integral(costs.insert) && integral(costs.remove) && integral(costs.rename)) {
    return static_cast<double>(zhang_shasha<std::int32_t>(x, y, static_cast<std::int32_t>(costs.insert),
                                                          static_cast<std::int32_t>(costs.remove),
                                                          static_cast<std::int32_t>(costs.rename)));
  }
  return zhang_shasha<double>(x, y, costs.insert, costs.remove, costs.rename);
}

}  // namespace simscore
