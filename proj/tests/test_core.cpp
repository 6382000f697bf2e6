#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "helpers.hpp"
#include "toplist/eval_case.hpp"
#include "toplist/numeric.hpp"
#include "toplist/top_list.hpp"

using namespace toplist;
using toplist::testing::cat;
using toplist::testing::random_list;
using toplist::testing::tl;

namespace {

// Exhaustive reference for largest_valid_sublist: scan all 2^k sublists.
std::vector<TopList> max_valid_sublists(const TopList& t) {
  const std::size_t k = t.k();
  std::vector<TopList> best;
  std::size_t best_size = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> classes;
    std::vector<double> conf;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        classes.push_back(t.classes()[i]);
        conf.push_back(t.confidences()[i]);
      }
    }
    TopList sub(t.universe(), std::move(classes), std::move(conf));
    if (!is_valid(sub)) continue;
    if (sub.k() > best_size) {
      best_size = sub.k();
      best.clear();
    }
    if (sub.k() == best_size) best.push_back(sub);
  }
  return best;
}

}  // namespace

TEST_CASE("universe construction and lookup") {
  const auto u = make_universe({"cat", "dog", "bird"});
  CHECK(u->size() == 3);
  CHECK(u->index_of("dog") == 1);
  CHECK(u->contains("bird"));
  CHECK_FALSE(u->contains("fish"));
  CHECK_THROWS_AS(u->index_of("fish"), std::invalid_argument);
  CHECK_THROWS_AS(make_universe({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(make_universe({}), std::invalid_argument);

  const auto numbered = numbered_universe(4);
  CHECK(numbered->labels() == std::vector<std::string>{"1", "2", "3", "4"});
}

TEST_CASE("categorical validation and renormalization") {
  const auto u = numbered_universe(3);
  CHECK_THROWS_AS(cat(u, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(cat(u, {0.5, 0.6, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(cat(u, {1.2, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(cat(u, {0.5, 0.4, 0.2}), std::invalid_argument);  // sum 1.1

  const auto p = cat(u, {0.5, 0.25, 0.25 + 5e-10});
  CHECK(stable_sum(p.probs()) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(p.prob("1") == doctest::Approx(0.5));
}

TEST_CASE("mode") {
  const auto u4 = numbered_universe(4);
  CHECK(mode(cat(u4, {0.5, 0.2, 0.2, 0.1})) == std::vector<std::size_t>{0});

  const auto u3 = numbered_universe(3);
  CHECK(mode(cat(u3, {0.4, 0.4, 0.2})) == std::vector<std::size_t>{0, 1});

  const auto uniform = cat(u3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(mode(uniform).size() == 3);
  CHECK(mode_labels(cat(u4, {0.5, 0.2, 0.2, 0.1})) == std::vector<std::string>{"1"});
}

TEST_CASE("top list structural invariants") {
  const auto u = numbered_universe(4);
  CHECK_THROWS_AS(tl(u, {"1", "1"}, {0.4, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(tl(u, {"1", "5"}, {0.4, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(tl(u, {"1", "2"}, {0.9, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(tl(u, {"1"}, {1.3}), std::invalid_argument);
  CHECK_THROWS_AS(tl(u, {"1"}, {-0.1}), std::invalid_argument);
  // Full lists must carry the whole mass.
  CHECK_THROWS_AS(tl(u, {"1", "2", "3", "4"}, {0.4, 0.3, 0.1, 0.1}),
                  std::invalid_argument);
  CHECK_NOTHROW(tl(u, {"1", "2", "3", "4"}, {0.4, 0.3, 0.2, 0.1}));
  CHECK_NOTHROW(TopList(u, std::vector<std::size_t>{}, {}));
}

TEST_CASE("proxy probability") {
  const auto u4 = numbered_universe(4);
  const TopList t = tl(u4, {"1", "2"}, {0.5, 0.2});
  CHECK(proxy_probability(t) == doctest::Approx(0.15).epsilon(1e-15));

  const auto u5 = numbered_universe(5);
  const TopList empty(u5, std::vector<std::size_t>{}, {});
  CHECK(proxy_probability(empty) == doctest::Approx(0.2).epsilon(1e-15));

  const TopList full(u4, {"1", "2", "3", "4"}, {0.4, 0.3, 0.2, 0.1});
  CHECK(proxy_probability(full) == 0.0);
}

TEST_CASE("pad") {
  const auto u4 = numbered_universe(4);
  const auto padded = pad(tl(u4, {"1", "2"}, {0.5, 0.2}));
  const std::vector<double> expected{0.5, 0.2, 0.15, 0.15};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(padded.prob(i) == doctest::Approx(expected[i]).epsilon(1e-15));
  }

  const auto u5 = numbered_universe(5);
  const auto uniform = pad(TopList(u5, std::vector<std::size_t>{}, {}));
  for (double v : uniform.probs()) CHECK(v == doctest::Approx(0.2).epsilon(1e-15));

  const auto high = pad(tl(u5, {"1"}, {0.99}));
  CHECK(high.prob(0) == 0.99);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(high.prob(i) == doctest::Approx(0.0025).epsilon(1e-12));
  }
  CHECK(stable_sum(high.probs()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pad properties on random lists") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = numbered_universe(2 + trial % 7);
    const TopList t = random_list(u, rng);
    const auto padded = pad(t);
    CHECK(std::abs(stable_sum(padded.probs()) - 1.0) < kNormTol);
    const double proxy = proxy_probability(t);
    for (std::size_t c = 0; c < u->size(); ++c) {
      if (!t.lists(c)) CHECK(padded.prob(c) == proxy);
    }
  }
}

TEST_CASE("pad of a full true list reproduces the distribution exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial % 6;
    const auto u = numbered_universe(m);
    std::vector<double> raw(m);
    double total = 0.0;
    for (double& v : raw) {
      v = uniform(rng) + 1e-3;
      total += v;
    }
    for (double& v : raw) v /= total;
    const Categorical p(u, raw);
    CHECK(pad(true_top_list(p, m)).probs() == p.probs());
  }
}

TEST_CASE("validity") {
  const auto u4 = numbered_universe(4);
  CHECK_FALSE(is_valid(tl(u4, {"1", "4"}, {0.5, 0.1})));  // pi = 0.2 > 0.1
  CHECK(is_valid(tl(u4, {"1", "4"}, {0.5, 0.2})));        // pi = 0.15
  const auto u5 = numbered_universe(5);
  CHECK(is_valid(TopList(u5, std::vector<std::size_t>{}, {})));
  CHECK(is_valid(tl(u4, {"1", "2", "3", "4"}, {0.25, 0.25, 0.25, 0.25})));
  // Boundary: min confidence exactly equal to the proxy probability.
  CHECK(is_valid(tl(u4, {"1", "2"}, {0.4, 0.2})));  // pi = 0.2 = min
}

TEST_CASE("calibration") {
  const auto u4 = numbered_universe(4);
  const Categorical p(u4, {0.5, 0.2, 0.2, 0.1});
  CHECK(is_calibrated(tl(u4, {"1", "4"}, {0.5, 0.1}), p, 1e-12));
  CHECK_FALSE(is_calibrated(tl(u4, {"1", "4"}, {0.5, 0.2}), p, 1e-12));
  CHECK(is_calibrated(TopList(u4, std::vector<std::size_t>{}, {}), p));

  const auto other = numbered_universe(3);
  const Categorical q(other, {0.5, 0.3, 0.2});
  CHECK_THROWS_AS(is_calibrated(tl(u4, {"1"}, {0.5}), q), std::invalid_argument);
}

TEST_CASE("largest valid sublist on the worked examples") {
  const auto u4 = numbered_universe(4);
  const TopList invalid = tl(u4, {"1", "2"}, {0.4, 0.1});
  const TopList sub = largest_valid_sublist(invalid);
  CHECK(sub.class_labels() == std::vector<std::string>{"1"});
  CHECK(sub.confidences() == std::vector<double>{0.4});

  const TopList valid = tl(u4, {"1", "4"}, {0.5, 0.2});
  CHECK(largest_valid_sublist(valid) == valid);

  const auto u6 = numbered_universe(6);
  const TopList tied = tl(u6, {"1", "2", "3"}, {0.3, 0.05, 0.05});
  const TopList reduced = largest_valid_sublist(tied);
  CHECK(reduced.class_labels() == std::vector<std::string>{"1"});
  CHECK(reduced.confidences() == std::vector<double>{0.3});
}

TEST_CASE("largest valid sublist matches the exhaustive scan") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto u = numbered_universe(2 + trial % 8);
    const TopList t = random_list(u, rng);
    const TopList result = largest_valid_sublist(t);
    CHECK(is_valid(result));
    const auto best = max_valid_sublists(t);
    REQUIRE(best.size() == 1);  // the maximum-cardinality valid sublist is unique
    CHECK(result == best.front());
  }
}

TEST_CASE("point mass") {
  const auto u5 = numbered_universe(5);
  const TopList pm = point_mass("1", u5);
  CHECK(pm.k() == 1);
  CHECK(pm.confidences() == std::vector<double>{1.0});
  CHECK(is_valid(pm));
  CHECK(pad(pm).probs() == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});

  const auto u1 = numbered_universe(1);
  const TopList degenerate = point_mass("1", u1);
  CHECK(degenerate.k() == 1);
  CHECK(degenerate.k() == degenerate.m());

  CHECK_THROWS_AS(point_mass("9", u5), std::invalid_argument);
}

TEST_CASE("true top lists of the worked example") {
  const auto u4 = numbered_universe(4);
  const Categorical p(u4, {0.5, 0.2, 0.2, 0.1});

  const auto all = true_top_lists(p, 2);
  REQUIRE(all.size() == 2);
  CHECK(all[0].class_labels() == std::vector<std::string>{"1", "2"});
  CHECK(all[1].class_labels() == std::vector<std::string>{"1", "3"});
  for (const auto& t : all) {
    CHECK(t.confidences()[0] == doctest::Approx(0.5));
    CHECK(t.confidences()[1] == doctest::Approx(0.2));
  }

  CHECK(true_top_list(p, 0).k() == 0);
  CHECK(true_top_lists(p, 0).size() == 1);

  const auto full = true_top_list(p, 4);
  CHECK(full.k() == 4);
  CHECK(pad(full).probs() == p.probs());

  CHECK_THROWS_AS(true_top_list(p, 5), std::invalid_argument);
}

TEST_CASE("true top lists are valid, calibrated and share one confidence multiset") {
  std::mt19937_64 rng(1234);
  const auto u = numbered_universe(5);
  for (int trial = 0; trial < 100; ++trial) {
    // Grid-valued distributions make ties likely.
    std::vector<double> probs(5, 0.0);
    unsigned left = 10;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      const unsigned v = rng() % (left + 1);
      probs[i] = v / 10.0;
      left -= v;
    }
    probs.back() = left / 10.0;
    const Categorical p(u, probs);
    for (std::size_t k = 0; k <= 5; ++k) {
      const auto lists = true_top_lists(p, k);
      REQUIRE(!lists.empty());
      std::vector<double> reference = lists.front().confidences();
      std::sort(reference.begin(), reference.end());
      for (const auto& t : lists) {
        CHECK(is_valid(t));
        CHECK(is_calibrated(t, p));
        std::vector<double> conf = t.confidences();
        std::sort(conf.begin(), conf.end());
        CHECK(conf == reference);
      }
    }
    // The mode is exactly the union of classes over true top-1 lists.
    std::set<std::size_t> top1_classes;
    for (const auto& t : true_top_lists(p, 1)) top1_classes.insert(t.classes()[0]);
    const auto modes = mode(p);
    CHECK(top1_classes == std::set<std::size_t>(modes.begin(), modes.end()));
  }
}

TEST_CASE("eval case canonicalization") {
  const auto u = numbered_universe(3);
  const EvalCase hard = EvalCase::from_hard("2", u, "3");
  CHECK(hard.kind() == PredictionKind::kHard);
  CHECK(hard.prediction().k() == 1);
  CHECK(hard.prediction().confidences() == std::vector<double>{1.0});
  CHECK(hard.observed_label() == "3");

  const Categorical p(u, {0.5, 0.3, 0.2});
  const EvalCase dist = EvalCase::from_distribution(p, "1");
  CHECK(dist.kind() == PredictionKind::kDistribution);
  CHECK(dist.prediction().k() == 3);
  CHECK(pad(dist.prediction()).probs() == p.probs());

  CHECK_THROWS_AS(EvalCase::from_hard("9", u, "1"), std::invalid_argument);
  CHECK_THROWS_AS(EvalCase::from_hard("1", u, "9"), std::invalid_argument);
}
