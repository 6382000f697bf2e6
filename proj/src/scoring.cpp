#include "toplist/scoring.hpp"

#include <cmath>
#include <stdexcept>

#include "toplist/numeric.hpp"

namespace toplist {

namespace {

// Sum of squares in a permutation-independent order, so that permuting the
// classes of p cannot change the score by even an ulp.
double sum_of_squares(const Categorical& p) {
  std::vector<double> squares;
  squares.reserve(p.size());
  for (double v : p.probs()) squares.push_back(v * v);
  return canonical_sum(std::move(squares));
}

void require_class(const Categorical& p, std::size_t y) {
  if (y >= p.size()) throw std::invalid_argument("class index out of range");
}

}  // namespace

ScoringRule brier_rule() {
  ScoringRule rule;
  rule.name = "brier";
  rule.score = [](const Categorical& p, std::size_t y) {
    require_class(p, y);
    return 1.0 - 2.0 * p.prob(y) + sum_of_squares(p);
  };
  rule.entropy = [](const Categorical& p) { return 1.0 - sum_of_squares(p); };
  rule.strictly_proper = true;
  return rule;
}

ScoringRule log_rule() {
  ScoringRule rule;
  rule.name = "log";
  rule.score = [](const Categorical& p, std::size_t y) {
    require_class(p, y);
    const double v = p.prob(y);
    return v > 0.0 ? -std::log(v) : kInf;
  };
  rule.entropy = [](const Categorical& p) {
    std::vector<double> terms;
    terms.reserve(p.size());
    for (double v : p.probs()) {
      if (v > 0.0) terms.push_back(-v * std::log(v));  // 0 log 0 = 0
    }
    return canonical_sum(std::move(terms));
  };
  rule.strictly_proper = true;
  return rule;
}

double padded_score(const ScoringRule& rule, const TopList& t, std::size_t y) {
  if (y >= t.m()) throw std::invalid_argument("class index out of range");
  if (!is_valid(t)) {
    throw std::domain_error(
        "padded score requires a valid top list; use penalized_score for invalid lists");
  }
  return rule.score(pad(t), y);
}

double padded_score(const ScoringRule& rule, const TopList& t, const std::string& y) {
  return padded_score(rule, t, t.universe()->index_of(y));
}

double penalized_score(const ScoringRule& rule, const TopList& t, std::size_t y,
                       const PenaltyConfig& cfg) {
  if (y >= t.m()) throw std::invalid_argument("class index out of range");
  if (cfg.c_invalid < 0.0) throw std::invalid_argument("c_invalid must be nonnegative");
  if (is_valid(t)) return rule.score(pad(t), y);
  return rule.score(pad(largest_valid_sublist(t)), y) + cfg.c_invalid;
}

double penalized_score(const ScoringRule& rule, const TopList& t, const std::string& y,
                       const PenaltyConfig& cfg) {
  return penalized_score(rule, t, t.universe()->index_of(y), cfg);
}

std::vector<double> penalized_score_vector(const ScoringRule& rule, const TopList& t,
                                           const PenaltyConfig& cfg) {
  if (cfg.c_invalid < 0.0) throw std::invalid_argument("c_invalid must be nonnegative");
  const bool valid = is_valid(t);
  const Categorical padded = valid ? pad(t) : pad(largest_valid_sublist(t));
  const double penalty = valid ? 0.0 : cfg.c_invalid;
  std::vector<double> scores;
  scores.reserve(t.m());
  for (std::size_t y = 0; y < t.m(); ++y) scores.push_back(rule.score(padded, y) + penalty);
  return scores;
}

double expected_of(const Categorical& p, std::span<const double> scores) {
  if (scores.size() != p.size()) {
    throw std::invalid_argument("score vector length does not match universe size");
  }
  StableSum sum;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p.prob(y) == 0.0) continue;  // 0 * inf = 0
    sum.add(p.prob(y) * scores[y]);
  }
  return sum.value();
}

double expected_score(const ScoringRule& rule, const TopList& t, const Categorical& p,
                      const PenaltyConfig& cfg) {
  if (!same_universe(t.universe(), p.universe())) {
    throw std::invalid_argument("top list and distribution use different universes");
  }
  return expected_of(p, penalized_score_vector(rule, t, cfg));
}

double mean_score(const ScoringRule& rule, std::span<const EvalCase> cases,
                  const PenaltyConfig& cfg) {
  if (cases.empty()) throw std::invalid_argument("cannot average an empty case sequence");
  const UniversePtr& universe = cases.front().universe();
  StableSum sum;
  for (const EvalCase& c : cases) {
    if (!same_universe(c.universe(), universe)) {
      throw std::invalid_argument("all cases must share one universe");
    }
    sum.add(penalized_score(rule, c.prediction(), c.observed(), cfg));
  }
  return sum.value() / static_cast<double>(cases.size());
}

double padded_brier(const TopList& t, std::size_t y) {
  if (y >= t.m()) throw std::invalid_argument("class index out of range");
  const std::size_t k = t.k();
  const std::size_t m = t.m();
  const double rest = 1.0 - t.confidence_sum();
  std::vector<double> squares;
  squares.reserve(k);
  for (double conf : t.confidences()) squares.push_back(conf * conf);
  double base = 1.0 + canonical_sum(std::move(squares));
  if (k < m) base += rest * rest / static_cast<double>(m - k);
  const std::size_t pos = t.position_of(y);
  const double predicted =
      pos < k ? t.confidences()[pos] : rest / static_cast<double>(m - k);
  return base - 2.0 * predicted;
}

double padded_log(const TopList& t, std::size_t y) {
  if (y >= t.m()) throw std::invalid_argument("class index out of range");
  const std::size_t pos = t.position_of(y);
  if (pos < t.k()) {
    const double conf = t.confidences()[pos];
    return conf > 0.0 ? -std::log(conf) : kInf;
  }
  const double rest = 1.0 - t.confidence_sum();
  if (rest <= 0.0) return kInf;
  return std::log(static_cast<double>(t.m() - t.k())) - std::log(rest);
}

}  // namespace toplist
