#pragma once

#include <vector>

#include "simscore/lexer.hpp"
#include "simscore/metrics/config.hpp"
#include "simscore/ngram.hpp"

namespace simscore {

class TriviallySharedSet;

/// N-gram multisets of orders 1..N of one token stream, computed once per
/// fragment and reused across every pair the fragment takes part in.
struct NgramProfile {
  std::size_t length = 0;
  std::vector<NgramMultiset> orders;  // orders[n - 1]
};

NgramProfile ngram_profile(const TokenStream& tokens, int max_order);

/// Σ min(count_C, count_R) / Σ count_C over the candidate's n-grams of order
/// n; 0 when the candidate has none.
double clipped_precision(const TokenStream& candidate, const TokenStream& reference, int n);

struct NgramOptions {
  const TriviallySharedSet* shared = nullptr;  // n-grams to drop before counting
  bool keyword_weighted = false;                // scale keyword-bearing n-grams
};

struct NgramScore {
  double value = 0.0;
  bool degraded = false;  // no candidate n-grams left at any order
};

/// BP · exp(Σ w_n log max(p_n, ε)). Orders at which the candidate has no
/// n-grams are left out and the remaining weights renormalised, so that any
/// non-empty stream scores 1 against itself. BP uses the unfiltered lengths.
NgramScore ngram_bleu(const NgramProfile& candidate, const NgramProfile& reference, const MetricConfig& cfg,
                      const NgramOptions& opts = {});

double bleu(const TokenStream& candidate, const TokenStream& reference, const MetricConfig& cfg = {});
double weighted_ngram_match(const TokenStream& candidate, const TokenStream& reference,
                            const MetricConfig& cfg = {});

}  // namespace simscore
