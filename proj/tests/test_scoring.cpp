#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "toplist/numeric.hpp"
#include "toplist/scoring.hpp"

using namespace toplist;
using toplist::testing::cat;
using toplist::testing::random_list;
using toplist::testing::random_positive;
using toplist::testing::tl;

TEST_CASE("brier score on the worked examples") {
  const auto rule = brier_rule();
  const auto u5 = numbered_universe(5);
  const auto delta = Categorical::unchecked(u5, {1.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(rule.score(delta, 0) == 0.0);
  CHECK(rule.score(delta, 1) == 2.0);
  CHECK(rule.score(delta, 4) == 2.0);

  const auto uniform = cat(u5, {0.2, 0.2, 0.2, 0.2, 0.2});
  for (std::size_t y = 0; y < 5; ++y) {
    CHECK(rule.score(uniform, y) == doctest::Approx(0.8).epsilon(1e-15));
  }

  const auto high = cat(u5, {0.99, 0.01, 0.0, 0.0, 0.0});
  CHECK(rule.entropy(high) == doctest::Approx(0.0198).epsilon(1e-12));
  CHECK(rule.strictly_proper);
}

TEST_CASE("log score on the worked examples") {
  const auto rule = log_rule();
  const auto u5 = numbered_universe(5);
  const auto delta = Categorical::unchecked(u5, {1.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(rule.score(delta, 0) == 0.0);
  CHECK(std::isinf(rule.score(delta, 2)));

  const auto u7 = numbered_universe(7);
  const auto uniform = cat(u7, std::vector<double>(7, 1.0 / 7));
  for (std::size_t y = 0; y < 7; ++y) {
    CHECK(rule.score(uniform, y) == doctest::Approx(std::log(7.0)).epsilon(1e-14));
  }

  // Shannon entropy of the padded one-class list from the reference table.
  const auto padded = pad(tl(u5, {"1"}, {0.99}));
  const double expected = -(0.99 * std::log(0.99) + 4 * 0.0025 * std::log(0.0025));
  CHECK(rule.entropy(padded) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::round(rule.entropy(padded) * 1e4) / 1e4 == 0.0699);
}

TEST_CASE("entropy equals the expected self-score") {
  std::mt19937_64 rng(42);
  for (const auto& rule : {brier_rule(), log_rule()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto u = numbered_universe(2 + trial % 6);
      const Categorical p = random_positive(u, rng);
      StableSum expectation;
      for (std::size_t y = 0; y < p.size(); ++y) {
        expectation.add(p.prob(y) * rule.score(p, y));
      }
      CHECK(rule.entropy(p) == doctest::Approx(expectation.value()).epsilon(1e-12));
    }
    // Distributions with zero-probability classes use the 0 * inf convention.
    const auto u4 = numbered_universe(4);
    const auto p = Categorical::unchecked(u4, {0.5, 0.5, 0.0, 0.0});
    std::vector<double> scores;
    for (std::size_t y = 0; y < 4; ++y) scores.push_back(rule.score(p, y));
    CHECK(rule.entropy(p) == doctest::Approx(expected_of(p, scores)).epsilon(1e-12));
  }
}

TEST_CASE("scores are exactly permutation symmetric") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (const auto& rule : {brier_rule(), log_rule()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = 2 + trial % 7;
      const auto u = numbered_universe(m);
      std::vector<double> probs(m);
      double total = 0.0;
      for (double& v : probs) {
        v = uniform(rng);
        total += v;
      }
      for (double& v : probs) v /= total;
      // Occasionally zero out a class to stress the log rule.
      if (trial % 5 == 0) probs[rng() % m] = 0.0;

      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<double> permuted(m);
      for (std::size_t i = 0; i < m; ++i) permuted[perm[i]] = probs[i];

      const auto p = Categorical::unchecked(u, probs);
      const auto q = Categorical::unchecked(u, permuted);
      const std::size_t y = rng() % m;
      CHECK(rule.score(p, y) == rule.score(q, perm[y]));
      CHECK(rule.entropy(p) == rule.entropy(q));
    }
  }
}

TEST_CASE("propriety on the m = 3 grid") {
  const auto u = numbered_universe(3);
  std::vector<Categorical> points;
  for (unsigned a = 0; a <= 20; ++a) {
    for (unsigned b = 0; a + b <= 20; ++b) {
      points.push_back(cat(u, {a / 20.0, b / 20.0, (20 - a - b) / 20.0}));
    }
  }
  for (const auto& rule : {brier_rule(), log_rule()}) {
    for (const auto& p : points) {
      std::vector<double> self_scores;
      for (std::size_t y = 0; y < 3; ++y) self_scores.push_back(rule.score(p, y));
      const double self = expected_of(p, self_scores);
      for (const auto& q : points) {
        if (p.probs() == q.probs()) continue;
        std::vector<double> cross_scores;
        for (std::size_t y = 0; y < 3; ++y) cross_scores.push_back(rule.score(q, y));
        const double cross = expected_of(p, cross_scores);
        CHECK(cross > self);  // strict propriety
      }
    }
  }
}

TEST_CASE("padded score closed forms and composition agree") {
  const auto u4 = numbered_universe(4);
  const TopList t = tl(u4, {"1", "2"}, {0.5, 0.2});
  // By hand: 1 + 0.29 + 0.09/2 - 2 * 0.15.
  CHECK(padded_brier(t, 2) == doctest::Approx(1.035).epsilon(1e-14));
  CHECK(padded_score(brier_rule(), t, std::size_t{2}) ==
        doctest::Approx(1.035).epsilon(1e-12));

  const auto u5 = numbered_universe(5);
  const TopList high = tl(u5, {"1"}, {0.99});
  CHECK(padded_score(log_rule(), high, std::size_t{0}) ==
        doctest::Approx(-std::log(0.99)).epsilon(1e-14));
  const double unlisted = std::log(4.0) - std::log(0.01);
  CHECK(padded_log(high, 2) == doctest::Approx(unlisted).epsilon(1e-14));
  CHECK(padded_score(log_rule(), high, std::size_t{2}) ==
        doctest::Approx(unlisted).epsilon(1e-12));

  std::mt19937_64 rng(7321);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto u = numbered_universe(2 + trial % 9);
    const Categorical p = random_positive(u, rng);
    const TopList list = true_top_list(p, rng() % (u->size() + 1));
    const std::size_t y = rng() % u->size();
    const double via_pad_brier = padded_score(brier_rule(), list, y);
    CHECK(std::abs(padded_brier(list, y) - via_pad_brier) <= 1e-12);
    const double via_pad_log = padded_score(log_rule(), list, y);
    const double closed_log = padded_log(list, y);
    if (std::isinf(via_pad_log)) {
      CHECK(std::isinf(closed_log));
    } else {
      CHECK(std::abs(closed_log - via_pad_log) <= 1e-12);
    }
  }
}

TEST_CASE("padded score rejects invalid lists and unknown classes") {
  const auto u4 = numbered_universe(4);
  const TopList invalid = tl(u4, {"1", "4"}, {0.5, 0.1});
  CHECK_THROWS_AS(padded_score(brier_rule(), invalid, std::size_t{0}),
                  std::domain_error);
  const TopList valid = tl(u4, {"1"}, {0.5});
  CHECK_THROWS_AS(padded_score(brier_rule(), valid, std::size_t{7}),
                  std::invalid_argument);
  CHECK_THROWS_AS(padded_score(brier_rule(), valid, "9"), std::invalid_argument);
}

TEST_CASE("penalized score agrees with padded score on valid lists") {
  std::mt19937_64 rng(555);
  const PenaltyConfig cfg{0.001};
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = numbered_universe(2 + trial % 6);
    const Categorical p = random_positive(u, rng);
    const TopList t = true_top_list(p, rng() % (u->size() + 1));
    const std::size_t y = rng() % u->size();
    CHECK(penalized_score(brier_rule(), t, y, cfg) ==
          padded_score(brier_rule(), t, y));
  }
}

TEST_CASE("penalized score of an invalid list scores its largest valid sublist") {
  const auto u4 = numbered_universe(4);
  const TopList invalid = tl(u4, {"1", "2"}, {0.4, 0.1});
  const TopList sublist = largest_valid_sublist(invalid);
  const auto rule = brier_rule();
  for (std::size_t y = 0; y < 4; ++y) {
    CHECK(penalized_score(rule, invalid, y, PenaltyConfig{0.0}) ==
          padded_score(rule, sublist, y));
    CHECK(penalized_score(rule, invalid, y, PenaltyConfig{0.001}) ==
          doctest::Approx(padded_score(rule, sublist, y) + 0.001).epsilon(1e-15));
  }
}

TEST_CASE("penalized extension with zero penalty equals sublist scoring everywhere") {
  std::mt19937_64 rng(808);
  for (const auto& rule : {brier_rule(), log_rule()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = numbered_universe(2 + trial % 7);
      const TopList t = random_list(u, rng);
      const TopList sub = largest_valid_sublist(t);
      for (std::size_t y = 0; y < u->size(); ++y) {
        CHECK(penalized_score(rule, t, y, PenaltyConfig{0.0}) ==
              padded_score(rule, sub, y));
      }
    }
  }
}

TEST_CASE("expected score reproduces the reference table anchors") {
  const auto u5 = numbered_universe(5);
  const auto brier = brier_rule();
  const auto log_r = log_rule();

  const Categorical p_m(u5, {0.5, 0.4, 0.05, 0.03, 0.02});
  CHECK(expected_score(brier, tl(u5, {"1"}, {0.5}), p_m) ==
        doctest::Approx(0.6875).epsilon(1e-12));

  const Categorical p_h(u5, {0.99, 0.01, 0.0, 0.0, 0.0});
  CHECK(std::isinf(expected_score(log_r, point_mass("1", u5), p_h)));

  const Categorical p_l(u5, {0.25, 0.22, 0.2, 0.18, 0.15});
  const double full = expected_score(brier, true_top_list(p_l, 5), p_l);
  CHECK(std::round(full * 1e4) / 1e4 == 0.7942);
}

TEST_CASE("expected score of a calibrated valid list is its padded entropy") {
  std::mt19937_64 rng(321);
  for (const auto& rule : {brier_rule(), log_rule()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = numbered_universe(2 + trial % 7);
      const Categorical p = random_positive(u, rng);
      const std::size_t k = rng() % (u->size() + 1);
      const TopList t = true_top_list(p, k);
      const double expectation = expected_score(rule, t, p);
      CHECK(expectation == doctest::Approx(rule.entropy(pad(t))).epsilon(1e-10));
    }
  }
}

TEST_CASE("expected score requires a shared universe") {
  const auto u3 = numbered_universe(3);
  const auto u4 = numbered_universe(4);
  const Categorical p(u4, {0.4, 0.3, 0.2, 0.1});
  CHECK_THROWS_AS(expected_score(brier_rule(), tl(u3, {"1"}, {0.5}), p),
                  std::invalid_argument);
}

TEST_CASE("mean score basics") {
  const auto u = numbered_universe(3);
  std::vector<EvalCase> cases;
  cases.push_back(EvalCase::from_hard("1", u, "1"));  // brier 0
  cases.push_back(EvalCase::from_hard("1", u, "2"));  // brier 2
  CHECK(mean_score(brier_rule(), cases) == doctest::Approx(1.0).epsilon(1e-15));

  cases.push_back(EvalCase::from_hard("1", u, "3"));  // log: inf
  CHECK(std::isinf(mean_score(log_rule(), cases)));

  CHECK_THROWS_AS(mean_score(brier_rule(), std::vector<EvalCase>{}),
                  std::invalid_argument);

  const auto other = numbered_universe(4);
  std::vector<EvalCase> mixed;
  mixed.push_back(EvalCase::from_hard("1", u, "1"));
  mixed.push_back(EvalCase::from_hard("1", other, "1"));
  CHECK_THROWS_AS(mean_score(brier_rule(), mixed), std::invalid_argument);
}

TEST_CASE("mean score over i.i.d. draws approaches the exact expectation") {
  const auto u = numbered_universe(4);
  const Categorical p(u, {0.5, 0.2, 0.2, 0.1});
  const TopList t = true_top_list(p, 1);
  const auto rule = brier_rule();

  const auto scores = penalized_score_vector(rule, t, {});
  const double expectation = expected_of(p, scores);
  StableSum second_moment;
  for (std::size_t y = 0; y < 4; ++y) {
    second_moment.add(p.prob(y) * scores[y] * scores[y]);
  }
  const double variance = second_moment.value() - expectation * expectation;
  const std::size_t n = 1000;
  const double exact_stderr = std::sqrt(variance / static_cast<double>(n));

  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<EvalCase> cases;
  cases.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ticket = uniform(rng);
    std::size_t y = 0;
    while (y + 1 < 4 && ticket >= p.prob(y)) {
      ticket -= p.prob(y);
      ++y;
    }
    cases.push_back(EvalCase::from_top_list(t, u->label(y)));
  }
  const double mean = mean_score(rule, cases);
  CHECK(std::abs(mean - expectation) <= 3.0 * exact_stderr);
}

TEST_CASE("padded brier of a point mass is twice the misclassification loss") {
  const auto u = numbered_universe(6);
  const auto rule = brier_rule();
  for (std::size_t x = 0; x < 6; ++x) {
    const TopList pm = point_mass(x, u);
    for (std::size_t y = 0; y < 6; ++y) {
      CHECK(padded_score(rule, pm, y) == (x == y ? 0.0 : 2.0));
    }
  }
}
