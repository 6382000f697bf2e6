#include "toplist/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "toplist/numeric.hpp"

namespace toplist::verify {

namespace {

// Saturates at uint64 max so oversized requests fail the budget guard
// instead of wrapping around.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result = result * (n - r + i) / i;
    if (result > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(result);
}

// a * b with saturation.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

}  // namespace

SimplexGrid::SimplexGrid(std::size_t m, unsigned denominator)
    : m_(m), denominator_(denominator) {
  if (m_ == 0) throw std::invalid_argument("grid needs at least one class");
  if (denominator_ == 0) throw std::invalid_argument("grid denominator must be positive");
}

std::uint64_t SimplexGrid::size() const {
  return binomial(denominator_ + m_ - 1, m_ - 1);
}

void SimplexGrid::for_each(
    const std::function<void(const std::vector<unsigned>&)>& fn) const {
  std::vector<unsigned> point(m_, 0);
  // Lexicographic enumeration of all compositions of the denominator.
  std::function<void(std::size_t, unsigned)> descend = [&](std::size_t pos,
                                                           unsigned remaining) {
    if (pos + 1 == m_) {
      point[pos] = remaining;
      fn(point);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      point[pos] = v;
      descend(pos + 1, remaining - v);
    }
  };
  descend(0, denominator_);
}

std::vector<std::vector<unsigned>> SimplexGrid::points() const {
  std::vector<std::vector<unsigned>> all;
  all.reserve(size());
  for_each([&](const std::vector<unsigned>& p) { all.push_back(p); });
  return all;
}

Categorical SimplexGrid::to_categorical(const UniversePtr& universe,
                                        const std::vector<unsigned>& numerators,
                                        unsigned denominator) {
  std::vector<double> probs;
  probs.reserve(numerators.size());
  for (unsigned v : numerators) {
    probs.push_back(static_cast<double>(v) / static_cast<double>(denominator));
  }
  return Categorical(universe, std::move(probs));
}

std::vector<double> decreasing_rearrangement(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

bool majorizes(const std::vector<double>& v, const std::vector<double>& w) {
  if (v.size() != w.size()) throw std::invalid_argument("vectors differ in length");
  if (std::abs(stable_sum(v) - stable_sum(w)) > kNormTol) {
    throw std::invalid_argument("vectors differ in total");
  }
  const auto vs = decreasing_rearrangement(v);
  const auto ws = decreasing_rearrangement(w);
  StableSum pv;
  StableSum pw;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    pv.add(vs[i]);
    pw.add(ws[i]);
    if (pv.value() < pw.value() - kBoundaryTol) return false;
  }
  return true;
}

bool check_true_list_majorization(const Categorical& p, std::size_t k) {
  if (k > p.size()) throw std::invalid_argument("k exceeds the universe size");
  const auto reference = pad(true_top_list(p, k)).probs();

  // Every k-subset as a calibrated list; only valid ones are in scope (an
  // invalid calibrated list is not true relative to any distribution).
  std::vector<std::size_t> pick(k);
  bool ok = true;
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start,
                                                             std::size_t depth) {
    if (!ok) return;
    if (depth == k) {
      std::vector<double> conf;
      conf.reserve(k);
      for (std::size_t c : pick) conf.push_back(p.prob(c));
      TopList candidate(p.universe(), pick, std::move(conf));
      if (is_valid(candidate) && !majorizes(reference, pad(candidate).probs())) {
        ok = false;
      }
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= p.size(); ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  return ok;
}

namespace {

struct Candidate {
  GridList list;
  unsigned numerator_sum = 0;
  std::vector<double> scores;  // per-class penalized scores
};

// All confidence assignments over the grid for one class subset: every
// composition with sum <= N (or exactly N for a full top-m list).
void enumerate_confidences(std::size_t k, unsigned n, bool full_list,
                           const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> conf(k, 0);
  if (k == 0) {
    fn(conf);
    return;
  }
  std::function<void(std::size_t, unsigned)> descend = [&](std::size_t pos,
                                                           unsigned budget) {
    if (pos + 1 == k) {
      if (full_list) {
        conf[pos] = budget;
        fn(conf);
        return;
      }
      for (unsigned v = 0; v <= budget; ++v) {
        conf[pos] = v;
        fn(conf);
      }
      return;
    }
    for (unsigned v = 0; v <= budget; ++v) {
      conf[pos] = v;
      descend(pos + 1, budget - v);
    }
  };
  descend(0, n);
}

}  // namespace

ConsistencyReport check_consistency(const ScoringRule& rule, std::size_t m,
                                    std::size_t k, unsigned grid_denominator,
                                    const ConsistencyOptions& opts) {
  if (m == 0) throw std::invalid_argument("universe must not be empty");
  if (k > m) throw std::invalid_argument("k exceeds the universe size");

  ConsistencyReport report;
  report.rule = rule.name;
  report.m = m;
  report.k = k;
  report.grid = grid_denominator;
  report.c_invalid = opts.penalty.c_invalid;
  report.strict_expected = rule.strictly_proper && opts.penalty.c_invalid > 0.0;

  const SimplexGrid grid(m, grid_denominator);
  const std::uint64_t n_points = grid.size();
  const std::uint64_t confs_per_subset =
      k == m ? binomial(grid_denominator + m - 1, m - 1)
             : binomial(grid_denominator + k, k);
  const std::uint64_t n_candidates = saturating_mul(binomial(m, k), confs_per_subset);
  const std::uint64_t n_pairs = saturating_mul(n_points, n_candidates);
  if (n_pairs > opts.budget) {
    throw BudgetExceeded("consistency oracle would evaluate " +
                         std::to_string(n_pairs) + " pairs, over the budget of " +
                         std::to_string(opts.budget));
  }
  report.grid_points = n_points;
  report.candidates = n_candidates;

  const UniversePtr universe = numbered_universe(m);
  const double denom = static_cast<double>(grid_denominator);

  // Candidate lists and their per-class score vectors do not depend on the
  // grid distribution, so they are built once.
  std::vector<Candidate> candidates;
  candidates.reserve(n_candidates);
  std::vector<std::size_t> subset(k);
  std::function<void(std::size_t, std::size_t)> subsets = [&](std::size_t start,
                                                              std::size_t depth) {
    if (depth == k) {
      enumerate_confidences(k, grid_denominator, k == m,
                            [&](const std::vector<unsigned>& conf) {
        std::vector<double> confidences;
        confidences.reserve(k);
        unsigned total = 0;
        for (unsigned c : conf) {
          confidences.push_back(static_cast<double>(c) / denom);
          total += c;
        }
        TopList list(universe, subset, std::move(confidences));
        Candidate cand;
        cand.list.classes = subset;
        cand.list.numerators = conf;
        cand.list.valid = is_valid(list);
        cand.numerator_sum = total;
        cand.scores = penalized_score_vector(rule, list, opts.penalty);
        candidates.push_back(std::move(cand));
      });
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= m; ++i) {
      subset[depth] = i;
      subsets(i + 1, depth + 1);
    }
  };
  subsets(0, 0);
  if (candidates.size() != n_candidates) {
    throw std::logic_error("candidate enumeration does not match the closed-form count");
  }

  grid.for_each([&](const std::vector<unsigned>& nums) {
    const Categorical p = SimplexGrid::to_categorical(universe, nums, grid_denominator);
    const TopList optimum = true_top_list(p, k);
    const double best = expected_of(p, penalized_score_vector(rule, optimum, opts.penalty));

    // Exact top-k mass on the integer grid, for true-list membership.
    std::vector<unsigned> sorted_nums(nums);
    std::sort(sorted_nums.begin(), sorted_nums.end(), std::greater<unsigned>());
    const unsigned top_mass =
        std::accumulate(sorted_nums.begin(), sorted_nums.begin() + k, 0u);

    for (const Candidate& cand : candidates) {
      const double expected = expected_of(p, cand.scores);
      const double gap = expected - best;

      bool is_true = cand.numerator_sum == top_mass;
      if (is_true) {
        for (std::size_t i = 0; i < k && is_true; ++i) {
          is_true = cand.list.numerators[i] == nums[cand.list.classes[i]];
        }
      }

      if (gap < -kScoreTol) {
        report.violations.push_back({nums, cand.list, gap});
      } else if (!is_true && gap <= kScoreTol) {
        report.strictness_failures.push_back({nums, cand.list, gap});
      }
    }
  });

  return report;
}

ComparabilityResult check_comparability(const ScoringRule& rule, const Categorical& p) {
  ComparabilityResult result;
  result.chain.reserve(p.size() + 1);
  for (std::size_t k = 0; k <= p.size(); ++k) {
    result.chain.push_back(expected_score(rule, true_top_list(p, k), p));
  }
  result.ok = true;
  for (std::size_t k = 0; k + 1 < result.chain.size(); ++k) {
    if (result.chain[k + 1] > result.chain[k] + kChainTol) result.ok = false;
  }
  return result;
}

AlphaBoundResult check_brier_alpha_bound(const TopList& t, std::size_t trials,
                                         std::uint64_t seed) {
  if (!is_valid(t)) throw std::invalid_argument("top list must be valid");
  if (t.k() == 0) throw std::invalid_argument("the bound needs a non-empty list");
  const double alpha = 1.0 - t.confidence_sum();
  const double least =
      *std::min_element(t.confidences().begin(), t.confidences().end());
  if (!(alpha > 0.0 && alpha < least)) {
    throw std::invalid_argument(
        "requires 0 < alpha < min confidence for the unaccounted mass");
  }

  const ScoringRule brier = brier_rule();
  const double padded_entropy = brier.entropy(pad(t));
  const std::size_t m = t.m();

  std::vector<std::size_t> unlisted;
  for (std::size_t c = 0; c < m; ++c) {
    if (!t.lists(c)) unlisted.push_back(c);
  }

  AlphaBoundResult result;
  result.alpha = alpha;

  const auto relative_gap = [&](const std::vector<double>& probs) {
    const double entropy = brier.entropy(Categorical(t.universe(), probs));
    return (padded_entropy - entropy) / entropy;
  };

  std::vector<double> base(m, 0.0);
  for (std::size_t i = 0; i < t.k(); ++i) base[t.classes()[i]] = t.confidences()[i];

  // Worst case: the entire unaccounted mass on a single unlisted class.
  std::vector<double> worst = base;
  worst[unlisted.front()] = alpha;
  result.worst_gap = relative_gap(worst);
  bool ok = result.worst_gap < alpha;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<double> probs;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<double> weights;
      weights.reserve(unlisted.size());
      double total = 0.0;
      for (std::size_t i = 0; i < unlisted.size(); ++i) {
        const double w = -std::log(1.0 - uniform(rng));
        weights.push_back(w);
        total += w;
      }
      probs = base;
      bool admissible = true;
      for (std::size_t i = 0; i < unlisted.size(); ++i) {
        const double share = alpha * weights[i] / total;
        if (share > least) {
          admissible = false;  // t would no longer be a true list
          break;
        }
        probs[unlisted[i]] = share;
      }
      if (admissible) break;
      probs.clear();
    }
    if (probs.empty()) throw std::runtime_error("rejection sampling failed");
    if (relative_gap(probs) >= alpha) ok = false;
    ++result.samples;
  }

  result.ok = ok;
  return result;
}

SchurResult check_entropy_schur_concavity(const ScoringRule& rule, std::size_t m,
                                          std::size_t trials, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("need at least two classes");
  const UniversePtr universe = numbered_universe(m);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_class(0, m - 1);

  SchurResult result;
  result.ok = true;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Categorical p = random_categorical(universe, rng);
    std::size_t i = pick_class(rng);
    std::size_t j = pick_class(rng);
    if (p.prob(i) == p.prob(j)) continue;
    if (p.prob(i) < p.prob(j)) std::swap(i, j);

    // T-transformation: move mass from the larger to the smaller entry, so
    // p majorizes the transformed vector.
    const double eps = uniform(rng) * (p.prob(i) - p.prob(j));
    std::vector<double> mixed = p.probs();
    mixed[i] -= eps;
    mixed[j] += eps;
    const Categorical w = Categorical::unchecked(universe, std::move(mixed));

    const double entropy_p = rule.entropy(p);
    const double entropy_w = rule.entropy(w);
    ++result.pairs;
    if (entropy_p > entropy_w + kChainTol) {
      result.ok = false;
      break;
    }
    if (rule.strictly_proper) {
      const auto ps = decreasing_rearrangement(p.probs());
      const auto ws = decreasing_rearrangement(w.probs());
      double sup = 0.0;
      for (std::size_t idx = 0; idx < ps.size(); ++idx) {
        sup = std::max(sup, std::abs(ps[idx] - ws[idx]));
      }
      if (sup > 1e-9 && !(entropy_p < entropy_w)) {
        result.ok = false;
        break;
      }
    }
  }
  return result;
}

Categorical random_categorical(const UniversePtr& universe, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> draws;
  draws.reserve(universe->size());
  double total = 0.0;
  for (std::size_t i = 0; i < universe->size(); ++i) {
    const double e = -std::log(1.0 - uniform(rng));
    draws.push_back(e);
    total += e;
  }
  for (double& d : draws) d /= total;
  return Categorical::unchecked(universe, std::move(draws));
}

TopList random_alpha_bounded_list(const UniversePtr& universe, std::mt19937_64& rng) {
  const std::size_t m = universe->size();
  if (m < 2) throw std::invalid_argument("need at least two classes");
  std::uniform_int_distribution<std::size_t> pick_k(1, m - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Categorical p = random_categorical(universe, rng);
    const auto sorted = decreasing_rearrangement(p.probs());
    std::vector<double> partial(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) partial[i + 1] = partial[i] + sorted[i];
    // Longer lists only shrink alpha, so scan upward from a random start.
    for (std::size_t k = pick_k(rng); k < m; ++k) {
      const double alpha = 1.0 - partial[k];
      if (alpha > 0.0 && alpha < sorted[k - 1]) return true_top_list(p, k);
    }
  }
  throw std::runtime_error("failed to sample an alpha-bounded list");
}

}  // namespace toplist::verify
