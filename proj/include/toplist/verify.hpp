#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "toplist/scoring.hpp"

namespace toplist::verify {

// Expected-score comparisons treat |gap| <= kScoreTol as a tie; strictness
// requires a gap above it.
inline constexpr double kScoreTol = 1e-10;

// Tolerance for comparability chains and Schur-concavity comparisons.
inline constexpr double kChainTol = 1e-12;

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// All points {v/N : v nonnegative integers summing to N} of the m-simplex.
/// Points are emitted as integer numerators in lexicographic order, so grid
/// membership tests stay exact.
class SimplexGrid {
 public:
  SimplexGrid(std::size_t m, unsigned denominator);

  std::size_t m() const { return m_; }
  unsigned denominator() const { return denominator_; }

  /// C(N + m - 1, m - 1).
  std::uint64_t size() const;

  void for_each(const std::function<void(const std::vector<unsigned>&)>& fn) const;
  std::vector<std::vector<unsigned>> points() const;

  static Categorical to_categorical(const UniversePtr& universe,
                                    const std::vector<unsigned>& numerators,
                                    unsigned denominator);

 private:
  std::size_t m_;
  unsigned denominator_;
};

/// Components of v sorted in decreasing order.
std::vector<double> decreasing_rearrangement(std::vector<double> v);

/// Whether v majorizes w: equal totals (within kNormTol) and the partial
/// sums of v's decreasing rearrangement dominate w's (within kBoundaryTol).
/// Throws on length or total mismatch.
bool majorizes(const std::vector<double>& v, const std::vector<double>& w);

/// Checks that the padded distribution of the true top-k list majorizes the
/// padded distribution of every valid calibrated top-k list, over all
/// k-subsets of the universe.
bool check_true_list_majorization(const Categorical& p, std::size_t k);

struct GridList {
  std::vector<std::size_t> classes;      // ascending class indices
  std::vector<unsigned> numerators;      // confidences over the denominator
  bool valid = false;
};

struct ConsistencyBreach {
  std::vector<unsigned> distribution;    // grid numerators of p
  GridList candidate;
  double gap = 0.0;                      // E[S(s,Y)] - E[S(t*,Y)]
};

/// Outcome of the brute-force consistency oracle. An empty violation list
/// means consistency holds on the grid; strictness_failures lists non-true
/// candidates that tie with the optimum.
struct ConsistencyReport {
  std::string rule;
  std::size_t m = 0;
  std::size_t k = 0;
  unsigned grid = 0;
  double c_invalid = 0.0;
  bool strict_expected = false;          // strictly proper rule and c_invalid > 0
  std::uint64_t grid_points = 0;
  std::uint64_t candidates = 0;          // candidate lists per grid point
  std::vector<ConsistencyBreach> violations;
  std::vector<ConsistencyBreach> strictness_failures;

  bool consistent() const { return violations.empty(); }
  bool passed() const {
    return violations.empty() && (!strict_expected || strictness_failures.empty());
  }
};

struct ConsistencyOptions {
  PenaltyConfig penalty{};
  std::uint64_t budget = 100'000'000;  // max (grid point, candidate) pairs
};

/// Brute-force oracle: enumerates every distribution on the grid and every
/// candidate top-k list with grid confidences (invalid ones included),
/// checking that no candidate beats the true list and, when strictness is
/// expected, that every non-true candidate scores strictly worse.
/// Intended for small instances; throws BudgetExceeded when the enumeration
/// would exceed opts.budget pairs.
ConsistencyReport check_consistency(const ScoringRule& rule, std::size_t m,
                                    std::size_t k, unsigned grid_denominator,
                                    const ConsistencyOptions& opts = {});

struct ComparabilityResult {
  bool ok = false;
  std::vector<double> chain;  // expected scores of true lists, k = 0..m
};

/// Verifies that the expected score of the true top-k list is non-increasing
/// in k (within kChainTol).
ComparabilityResult check_comparability(const ScoringRule& rule,
                                        const Categorical& p);

struct AlphaBoundResult {
  bool ok = false;
  double alpha = 0.0;
  double worst_gap = 0.0;     // relative Brier gap of the one-class allocation
  std::uint64_t samples = 0;
};

/// For a valid top list with 0 < alpha < min confidence, samples
/// distributions relative to which t is true and verifies that the relative
/// Brier entropy gap stays below alpha, including the deterministic worst
/// case that puts all remaining mass on a single unlisted class.
AlphaBoundResult check_brier_alpha_bound(const TopList& t, std::size_t trials,
                                         std::uint64_t seed);

struct SchurResult {
  bool ok = false;
  std::uint64_t pairs = 0;
};

/// Generates random majorization pairs p > w via T-transformations and
/// checks that the rule's entropy is order-reversing (strictly so for
/// strictly proper rules when the rearrangements differ by more than 1e-9).
SchurResult check_entropy_schur_concavity(const ScoringRule& rule,
                                          std::size_t m, std::size_t trials,
                                          std::uint64_t seed);

/// Uniform (Dirichlet(1,...,1)) random distribution.
Categorical random_categorical(const UniversePtr& universe,
                               std::mt19937_64& rng);

/// Random valid top list whose unaccounted mass alpha satisfies
/// 0 < alpha < min confidence (a true list of a random distribution, cut at
/// a length where the condition holds).
TopList random_alpha_bounded_list(const UniversePtr& universe,
                                  std::mt19937_64& rng);

}  // namespace toplist::verify
