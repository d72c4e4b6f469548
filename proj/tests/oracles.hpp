#pragma once

// Brute-force reference implementations and random generators shared by the
// unit tests and the acceptance runner. Nothing here calls into the library
// code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "simscore/lexer.hpp"
#include "simscore/syntax_tree.hpp"

namespace oracle {

// Double loop over every positive-negative pair.
inline double auroc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      pairs += 1;
      if (s[i] > s[j]) wins += 1;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// Predict positive when score >= t.
inline Confusion confusion_at(const std::vector<double>& s, const std::vector<int>& y, double t) {
  Confusion c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool pred = s[i] >= t;
    if (pred && y[i]) ++c.tp;
    else if (pred) ++c.fp;
    else if (y[i]) ++c.fn;
    else ++c.tn;
  }
  return c;
}

inline std::vector<double> thresholds_descending(const std::vector<double>& s) {
  std::set<double, std::greater<>> t(s.begin(), s.end());
  return {t.begin(), t.end()};
}

// Recounts the confusion matrix from scratch at every distinct threshold.
inline double average_precision(const std::vector<double>& s, const std::vector<int>& y) {
  double positives = 0;
  for (int v : y) positives += v;
  double ap = 0, prev_recall = 0;
  for (double t : thresholds_descending(s)) {
    const auto c = confusion_at(s, y, t);
    const double recall = c.tp / positives;
    const double precision = double(c.tp) / double(c.tp + c.fp);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

// Plain recursive edit distance; only for short sequences.
inline std::size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b, std::size_t i = 0,
                               std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const std::size_t sub = levenshtein(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
  const std::size_t del = levenshtein(a, b, i + 1, j) + 1;
  const std::size_t ins = levenshtein(a, b, i, j + 1) + 1;
  return std::min({sub, del, ins});
}

// Minimum-cost edit mapping by enumeration. A valid mapping is one-to-one,
// preserves ancestry in both directions and keeps preorder order.
inline double tree_edit_distance(const simscore::SyntaxTree& a, const simscore::SyntaxTree& b, double ins = 1,
                                 double del = 1, double ren = 1) {
  const auto ancestors = [](const simscore::SyntaxTree& t) {
    std::vector<std::vector<bool>> anc(t.size(), std::vector<bool>(t.size(), false));
    for (std::size_t v = 0; v < t.size(); ++v)
      for (std::size_t p = t.node(v).parent; p != simscore::SyntaxTree::npos; p = t.node(p).parent) anc[p][v] = true;
    return anc;
  };
  const auto aa = ancestors(a), ab = ancestors(b);
  const std::size_t n1 = a.size(), n2 = b.size();
  std::vector<std::pair<std::size_t, std::size_t>> m;
  double best = del * n1 + ins * n2;
  std::function<void(std::size_t, std::size_t, double)> go = [&](std::size_t i, std::size_t next_j, double renames) {
    if (i == n1) {
      const double k = double(m.size());
      best = std::min(best, renames + del * (n1 - k) + ins * (n2 - k));
      return;
    }
    go(i + 1, next_j, renames);
    for (std::size_t j = next_j; j < n2; ++j) {
      bool ok = true;
      for (const auto& [pi, pj] : m)
        if (aa[pi][i] != ab[pj][j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      m.emplace_back(i, j);
      go(i + 1, j + 1, renames + (a.node(i).kind == b.node(j).kind ? 0 : ren));
      m.pop_back();
    }
  };
  go(0, 0, 0);
  return best;
}

// Random ordered tree in bracket notation with exactly `nodes` nodes.
inline std::string random_bracket_tree(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& labels) {
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  std::function<std::string(std::size_t)> build = [&](std::size_t n) -> std::string {
    std::string s = "{" + labels[pick(rng)];
    std::size_t remaining = n - 1;
    while (remaining > 0) {
      std::uniform_int_distribution<std::size_t> size(1, remaining);
      const std::size_t k = size(rng);
      s += build(k);
      remaining -= k;
    }
    return s + "}";
  };
  return build(nodes);
}

inline simscore::TokenStream tokens_of(const std::vector<std::string>& words, simscore::TokenKind kind =
                                                                               simscore::TokenKind::kIdentifier) {
  simscore::TokenStream out;
  for (const auto& w : words) out.push_back({w, kind});
  return out;
}

// Reference BLEU straight from the definition: per-order clipped precision
// over std::map n-gram counts, orders without candidate n-grams skipped and
// the remaining uniform weights renormalised, ε floor, brevity penalty.
inline double bleu(const std::vector<std::string>& c, const std::vector<std::string>& r, int max_order = 4,
                   double eps = 1e-12, const std::vector<std::set<std::vector<std::string>>>* drop = nullptr) {
  if (c.empty()) return 0.0;
  const auto grams = [](const std::vector<std::string>& t, int n) {
    std::map<std::vector<std::string>, int> g;
    for (std::size_t i = 0; i + n <= t.size(); ++i) ++g[std::vector<std::string>(t.begin() + i, t.begin() + i + n)];
    return g;
  };
  double log_sum = 0;
  int used = 0;
  for (int n = 1; n <= max_order; ++n) {
    auto gc = grams(c, n), gr = grams(r, n);
    double num = 0, den = 0;
    for (const auto& [g, k] : gc) {
      if (drop && (*drop)[n - 1].count(g)) continue;
      num += std::min(k, gr.count(g) ? gr[g] : 0);
      den += k;
    }
    if (den == 0) continue;
    log_sum += std::log(std::max(num / den, eps));
    ++used;
  }
  if (used == 0) return 0.0;
  const double bp = c.size() > r.size() ? 1.0 : std::exp(1.0 - double(r.size()) / double(c.size()));
  return bp * std::exp(log_sum / used);
}

// Small random Java programs: a class with fields and methods built from
// declarations, assignments, loops, conditionals and calls.
class JavaGenerator {
 public:
  explicit JavaGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string program() {
    std::string s;
    if (coin(0.5)) s += "import java.util." + pick({"Scanner", "List", "Map", "ArrayList"}) + ";\n";
    s += "public class " + type_name() + " {\n";
    const int fields = uniform(0, 2);
    for (int i = 0; i < fields; ++i) s += "  static " + pick({"int", "long", "double"}) + " " + fresh() + " = " + literal() + ";\n";
    const int methods = uniform(1, 3);
    for (int i = 0; i < methods; ++i) s += method();
    return s + "}\n";
  }

 private:
  std::string method() {
    vars_.clear();
    std::string params;
    const int np = uniform(0, 3);
    for (int i = 0; i < np; ++i) {
      const std::string v = fresh();
      params += (i ? ", " : "") + std::string("int ") + v;
      vars_.push_back(v);
    }
    std::string s = "  " + std::string(coin(0.3) ? "// helper\n  " : "") + "static int " + fresh() + "(" + params + ") {\n";
    const int n = uniform(1, 5);
    for (int i = 0; i < n; ++i) s += statement(2);
    s += "    return " + expr(2) + ";\n  }\n";
    return s;
  }

  std::string statement(int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const int k = depth > 3 ? uniform(0, 1) : uniform(0, 5);
    switch (k) {
      case 0: {
        const std::string v = fresh();
        const std::string s = pad + "int " + v + " = " + expr(2) + ";\n";
        vars_.push_back(v);
        return s;
      }
      case 1:
        if (vars_.empty()) return statement(depth + 10);
        return pad + var() + " " + pick({"=", "+=", "-=", "*="}) + " " + expr(2) + ";\n";
      case 2: {
        std::string s = pad + "if (" + expr(1) + " " + pick({"<", ">", "==", "!="}) + " " + expr(1) + ") {\n" +
                        statement(depth + 1) + pad + "}";
        if (coin(0.4)) s += " else {\n" + statement(depth + 1) + pad + "}";
        return s + "\n";
      }
      case 3: {
        const std::string i = fresh();
        vars_.push_back(i);
        return pad + "for (int " + i + " = 0; " + i + " < " + expr(1) + "; " + i + "++) {\n" + statement(depth + 1) +
               pad + "}\n";
      }
      case 4:
        return pad + "while (" + expr(1) + " > " + literal() + ") {\n" + statement(depth + 1) + pad + "  break;\n" +
               pad + "}\n";
      default:
        return pad + "System.out.println(" + expr(2) + ");\n";
    }
  }

  std::string expr(int depth) {
    if (depth <= 0 || coin(0.4)) return vars_.empty() || coin(0.3) ? literal() : var();
    if (coin(0.15)) return "Math." + pick({"max", "min"}) + "(" + expr(depth - 1) + ", " + expr(depth - 1) + ")";
    return expr(depth - 1) + " " + pick({"+", "-", "*", "/", "%"}) + " " + expr(depth - 1);
  }

  std::string literal() { return std::to_string(uniform(0, 99)); }
  std::string var() { return vars_[static_cast<std::size_t>(uniform(0, int(vars_.size()) - 1))]; }
  std::string fresh() {
    static const char* stems[] = {"a", "b", "count", "sum", "idx", "tmp", "val", "acc", "n", "k", "res", "buf"};
    return std::string(stems[uniform(0, 11)]) + std::to_string(counter_++ % 97);
  }
  std::string type_name() { return pick({"Main", "Solution", "Task", "App"}) + std::to_string(uniform(0, 999)); }
  std::string pick(std::initializer_list<const char*> xs) {
    return *(xs.begin() + uniform(0, int(xs.size()) - 1));
  }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
  int counter_ = 0;
};

}  // namespace oracle
