#include "simscore/metrics/codebleu.hpp"

#include <algorithm>

#include "simscore/subtree.hpp"

namespace simscore {

ComponentScore syntax_match(const StringMultiset& candidate, const StringMultiset& reference) {
  const std::size_t total = multiset_size(candidate);
  if (total == 0) return {0.0, true};
  return {static_cast<double>(clipped_matches(candidate, reference)) / static_cast<double>(total), false};
}

ComponentScore syntax_match(const SyntaxTree* candidate, const SyntaxTree* reference, const MetricConfig& cfg) {
  if (!candidate || !reference) return {0.0, true};
  return syntax_match(subtree_multiset(*candidate, cfg.subtree_depth), subtree_multiset(*reference, cfg.subtree_depth));
}

ComponentScore dataflow_match(const DataFlowGraph& candidate, const DataFlowGraph& reference) {
  if (candidate.empty()) return {reference.empty() ? 1.0 : 0.0, true};
  const std::size_t total = candidate.size();
  return {static_cast<double>(clipped_matches(candidate.edges(), reference.edges())) / static_cast<double>(total),
          false};
}

double codebleu_total(double ngram, double weighted, double syntax, double dataflow, const MetricConfig& cfg) {
  return std::clamp(cfg.alpha * ngram + cfg.beta * weighted + cfg.gamma * syntax + cfg.delta * dataflow, 0.0, 1.0);
}

CodeBleuScore codebleu(const CodeBleuInputs& candidate, const CodeBleuInputs& reference, const MetricConfig& cfg) {
  CodeBleuScore s;
  const auto ng = ngram_bleu(*candidate.profile, *reference.profile, cfg);
  s.ngram = {ng.value, ng.degraded};
  NgramOptions weighted;
  weighted.keyword_weighted = true;
  const auto wg = ngram_bleu(*candidate.profile, *reference.profile, cfg, weighted);
  s.weighted = {wg.value, wg.degraded};
  if (candidate.tree && reference.tree) {
    s.syntax = syntax_match(*candidate.subtrees, *reference.subtrees);
    s.dataflow = dataflow_match(*candidate.dataflow, *reference.dataflow);
  } else {
    s.syntax = {0.0, true};
    s.dataflow = {0.0, true};
  }
  s.total = codebleu_total(s.ngram.value, s.weighted.value, s.syntax.value, s.dataflow.value, cfg);
  return s;
}

CodeBleuScore codebleu(const TokenStream& candidate, const TokenStream& reference, const SyntaxTree* candidate_tree,
                       const SyntaxTree* reference_tree, const MetricConfig& cfg) {
  const auto pc = ngram_profile(candidate, cfg.max_order);
  const auto pr = ngram_profile(reference, cfg.max_order);
  StringMultiset sc, sr;
  DataFlowGraph dc, dr;
  if (candidate_tree) {
    sc = subtree_multiset(*candidate_tree, cfg.subtree_depth);
    dc = dataflow_graph(*candidate_tree);
  }
  if (reference_tree) {
    sr = subtree_multiset(*reference_tree, cfg.subtree_depth);
    dr = dataflow_graph(*reference_tree);
  }
  return codebleu({&pc, candidate_tree, &sc, &dc}, {&pr, reference_tree, &sr, &dr}, cfg);
}

}  // namespace simscore
