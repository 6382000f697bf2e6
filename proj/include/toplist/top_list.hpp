#pragma once

#include <string>
#include <vector>

#include "toplist/categorical.hpp"

namespace toplist {

/// A probabilistic top-k list: k distinct classes with confidence scores
/// whose sum does not exceed one (and equals one when k = m).
///
/// Validity (min confidence >= proxy probability) is deliberately NOT an
/// invariant: invalid lists are representable and handled by the penalized
/// scores.
class TopList {
 public:
  TopList(UniversePtr universe, std::vector<std::size_t> classes,
          std::vector<double> confidences);
  TopList(UniversePtr universe, const std::vector<std::string>& class_labels,
          std::vector<double> confidences);

  const UniversePtr& universe() const { return universe_; }
  std::size_t k() const { return classes_.size(); }
  std::size_t m() const { return universe_->size(); }
  const std::vector<std::size_t>& classes() const { return classes_; }
  std::vector<std::string> class_labels() const;
  const std::vector<double>& confidences() const { return confidences_; }
  double confidence_sum() const { return confidence_sum_; }

  /// Whether the given class index appears in the list.
  bool lists(std::size_t class_index) const;
  /// Position of a class within the list, or k() if not listed.
  std::size_t position_of(std::size_t class_index) const;

  bool operator==(const TopList& other) const;

 private:
  UniversePtr universe_;
  std::vector<std::size_t> classes_;
  std::vector<double> confidences_;
  double confidence_sum_ = 0.0;
};

/// Unaccounted probability mass divided equally among the unlisted classes,
/// clamped to [0, 1]. Exactly zero for a full top-m list.
double proxy_probability(const TopList& t);

/// The padded distribution: listed classes keep their confidence scores and
/// every unlisted class receives the proxy probability.
Categorical pad(const TopList& t);

/// True when the least confidence score is at least the proxy probability
/// (within kBoundaryTol). Top-0 and top-m lists are always valid.
bool is_valid(const TopList& t);

/// True when every listed confidence matches the class probability under p
/// within tol. Vacuously true for the empty list.
bool is_calibrated(const TopList& t, const Categorical& p, double tol = 0.0);

/// Largest valid sublist: repeatedly removes all classes attaining the
/// minimal confidence until the remainder is valid. Identity on valid lists.
TopList largest_valid_sublist(const TopList& t);

/// Top-1 list carrying the full probability mass on one class.
TopList point_mass(std::size_t class_index, UniversePtr universe);
TopList point_mass(const std::string& label, UniversePtr universe);

/// Canonical true top-k list of p: classes sorted by (probability
/// descending, universe index ascending), confidences copied from p.
TopList true_top_list(const Categorical& p, std::size_t k);

/// All true top-k lists of p (one per k-subset maximizing total
/// probability), in deterministic order.
std::vector<TopList> true_top_lists(const Categorical& p, std::size_t k);

/// "({a,b},(0.5,0.2))"-style rendering with `digits` significant digits.
std::string to_string(const TopList& t, int digits = 6);

}  // namespace toplist
