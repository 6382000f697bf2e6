#pragma once

#include <vector>

#include "toplist/universe.hpp"

namespace toplist {

/// Probability distribution over a class universe. Entries must lie in
/// [0, 1] and sum to 1 within kNormTol; accepted inputs are stored
/// renormalized.
class Categorical {
 public:
  Categorical(UniversePtr universe, std::vector<double> probs);

  /// Wraps values the caller guarantees already form a distribution.
  /// Used where entries are assembled from already-validated parts and
  /// must be preserved bit-for-bit (e.g. padding a top list).
  static Categorical unchecked(UniversePtr universe, std::vector<double> probs);

  const UniversePtr& universe() const { return universe_; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_.at(i); }
  double prob(const std::string& label) const;

  bool operator==(const Categorical& other) const;

 private:
  struct unchecked_t {};
  Categorical(unchecked_t, UniversePtr universe, std::vector<double> probs);

  UniversePtr universe_;
  std::vector<double> probs_;
};

/// Classes attaining the maximal probability; never empty.
std::vector<std::size_t> mode(const Categorical& p);
std::vector<std::string> mode_labels(const Categorical& p);

}  // namespace toplist
