#pragma once

#include "simscore/dataflow.hpp"
#include "simscore/lexer.hpp"
#include "simscore/metrics/bleu.hpp"
#include "simscore/multiset.hpp"
#include "simscore/syntax_tree.hpp"

namespace simscore {

struct ComponentScore {
  double value = 0.0;
  bool degraded = false;
};

/// Clipped precision of the candidate's depth-truncated subtrees against the
/// reference's. A null tree stands for a failed parse: 0, degraded.
ComponentScore syntax_match(const StringMultiset& candidate, const StringMultiset& reference);
ComponentScore syntax_match(const SyntaxTree* candidate, const SyntaxTree* reference, const MetricConfig& cfg = {});

/// Clipped precision of def-use edges. Two empty graphs agree vacuously (1,
/// flagged); an empty candidate against a non-empty reference scores 0.
ComponentScore dataflow_match(const DataFlowGraph& candidate, const DataFlowGraph& reference);

struct CodeBleuScore {
  double total = 0.0;
  ComponentScore ngram;
  ComponentScore weighted;
  ComponentScore syntax;
  ComponentScore dataflow;
  bool degraded() const { return ngram.degraded || weighted.degraded || syntax.degraded || dataflow.degraded; }
};

/// α·S_ngram + β·S_weighted + γ·S_syntax + δ·S_dataflow.
double codebleu_total(double ngram, double weighted, double syntax, double dataflow, const MetricConfig& cfg);

/// Everything CodeBLEU needs from one fragment. `tree` is null when parsing
/// failed; the dataflow graph is then empty and unused.
struct CodeBleuInputs {
  const NgramProfile* profile = nullptr;
  const SyntaxTree* tree = nullptr;
  const StringMultiset* subtrees = nullptr;
  const DataFlowGraph* dataflow = nullptr;
};

CodeBleuScore codebleu(const CodeBleuInputs& candidate, const CodeBleuInputs& reference, const MetricConfig& cfg);

/// Convenience form: tokenizes nothing, parses nothing; trees may be null.
CodeBleuScore codebleu(const TokenStream& candidate, const TokenStream& reference, const SyntaxTree* candidate_tree,
                       const SyntaxTree* reference_tree, const MetricConfig& cfg = {});

}  // namespace simscore
