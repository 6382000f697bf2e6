#include "toplist/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toplist/numeric.hpp"

namespace toplist {

namespace {

void require_universe(const UniversePtr& universe) {
  if (!universe) throw std::invalid_argument("null class universe");
}

}  // namespace

Categorical::Categorical(UniversePtr universe, std::vector<double> probs)
    : universe_(std::move(universe)), probs_(std::move(probs)) {
  require_universe(universe_);
  if (probs_.size() != universe_->size()) {
    throw std::invalid_argument("probability vector length does not match universe size");
  }
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
  }
  const double total = stable_sum(probs_);
  if (std::abs(total - 1.0) > kNormTol) {
    throw std::invalid_argument("probabilities must sum to 1 within tolerance");
  }
  if (total != 1.0) {
    for (double& p : probs_) p /= total;
  }
}

Categorical::Categorical(unchecked_t, UniversePtr universe, std::vector<double> probs)
    : universe_(std::move(universe)), probs_(std::move(probs)) {}

Categorical Categorical::unchecked(UniversePtr universe, std::vector<double> probs) {
  require_universe(universe);
  return Categorical(unchecked_t{}, std::move(universe), std::move(probs));
}

double Categorical::prob(const std::string& label) const {
  return probs_[universe_->index_of(label)];
}

bool Categorical::operator==(const Categorical& other) const {
  return same_universe(universe_, other.universe_) && probs_ == other.probs_;
}

std::vector<std::size_t> mode(const Categorical& p) {
  const auto& probs = p.probs();
  const double top = *std::max_element(probs.begin(), probs.end());
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == top) result.push_back(i);
  }
  return result;
}

std::vector<std::string> mode_labels(const Categorical& p) {
  std::vector<std::string> labels;
  for (std::size_t i : mode(p)) labels.push_back(p.universe()->label(i));
  return labels;
}

}  // namespace toplist
