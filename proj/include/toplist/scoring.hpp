#pragma once

#include <functional>
#include <span>
#include <string>

#include "toplist/eval_case.hpp"

namespace toplist {

/// A symmetric proper scoring rule given by its score and entropy
/// functions. Scores are negatively oriented and may be +inf.
///
/// Both callables must be invariant under permutation of classes; the
/// verify module's symmetry check is the admission test for user-supplied
/// rules. The entropy must equal the expected score of p under itself.
struct ScoringRule {
  std::string name;
  std::function<double(const Categorical&, std::size_t)> score;
  std::function<double(const Categorical&)> entropy;
  bool strictly_proper = false;
};

/// Quadratic score 1 - 2 p_y + sum_z p_z^2 with entropy 1 - sum_z p_z^2.
ScoringRule brier_rule();

/// Logarithmic score -ln p_y (+inf at p_y = 0) with Shannon entropy.
ScoringRule log_rule();

/// Additive penalty applied to invalid top lists, which are scored via
/// their largest valid sublist. Any positive value preserves strict
/// consistency; zero keeps plain consistency only.
struct PenaltyConfig {
  double c_invalid = 0.001;
};

/// Score of the padded distribution; requires a valid list.
double padded_score(const ScoringRule& rule, const TopList& t, std::size_t y);
double padded_score(const ScoringRule& rule, const TopList& t,
                    const std::string& y);

/// Penalized extension: valid lists score as padded_score; invalid lists
/// score as their largest valid sublist plus cfg.c_invalid.
double penalized_score(const ScoringRule& rule, const TopList& t,
                       std::size_t y, const PenaltyConfig& cfg = {});
double penalized_score(const ScoringRule& rule, const TopList& t,
                       const std::string& y, const PenaltyConfig& cfg = {});

/// Per-class penalized scores of t as a vector indexed by class.
std::vector<double> penalized_score_vector(const ScoringRule& rule,
                                           const TopList& t,
                                           const PenaltyConfig& cfg = {});

/// Expectation of a per-class score vector under p with the 0 * inf = 0
/// convention (probability-zero classes contribute nothing).
double expected_of(const Categorical& p, std::span<const double> scores);

/// Exact finite-sum expected penalized score of t when the outcome follows
/// p. For calibrated valid lists this equals the entropy of pad(t).
double expected_score(const ScoringRule& rule, const TopList& t,
                      const Categorical& p, const PenaltyConfig& cfg = {});

/// Arithmetic mean of per-case penalized scores, accumulated with
/// compensated sequential summation. Any +inf summand makes the mean +inf.
double mean_score(const ScoringRule& rule, std::span<const EvalCase> cases,
                  const PenaltyConfig& cfg = {});

/// Closed forms of the padded Brier and logarithmic scores. They agree with
/// score(pad(t), y) on valid lists and exist as an independent route for
/// cross-checking.
double padded_brier(const TopList& t, std::size_t y);
double padded_log(const TopList& t, std::size_t y);

}  // namespace toplist
