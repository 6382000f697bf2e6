#include "toplist/eval_case.hpp"

#include <numeric>
#include <stdexcept>

namespace toplist {

EvalCase::EvalCase(PredictionKind kind, TopList prediction, std::size_t observed)
    : kind_(kind), prediction_(std::move(prediction)), observed_(observed) {}

EvalCase EvalCase::from_hard(const std::string& label, UniversePtr universe,
                             const std::string& observed) {
  if (!universe) throw std::invalid_argument("null class universe");
  const std::size_t y = universe->index_of(observed);
  return EvalCase(PredictionKind::kHard, point_mass(label, std::move(universe)), y);
}

EvalCase EvalCase::from_top_list(TopList prediction, const std::string& observed) {
  const std::size_t y = prediction.universe()->index_of(observed);
  return EvalCase(PredictionKind::kTopList, std::move(prediction), y);
}

EvalCase EvalCase::from_distribution(const Categorical& prediction,
                                     const std::string& observed) {
  const std::size_t y = prediction.universe()->index_of(observed);
  std::vector<std::size_t> classes(prediction.size());
  std::iota(classes.begin(), classes.end(), std::size_t{0});
  TopList full(prediction.universe(), std::move(classes), prediction.probs());
  return EvalCase(PredictionKind::kDistribution, std::move(full), y);
}

const std::string& EvalCase::observed_label() const {
  return prediction_.universe()->label(observed_);
}

}  // namespace toplist
