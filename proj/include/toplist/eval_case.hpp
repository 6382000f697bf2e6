#pragma once

#include "toplist/top_list.hpp"

namespace toplist {

enum class PredictionKind { kHard, kTopList, kDistribution };

/// One prediction paired with one observed class. Hard classes are stored as
/// point-mass top-1 lists and full distributions as top-m lists, so every
/// prediction flows through the same scoring path.
class EvalCase {
 public:
  static EvalCase from_hard(const std::string& label, UniversePtr universe,
                            const std::string& observed);
  static EvalCase from_top_list(TopList prediction, const std::string& observed);
  static EvalCase from_distribution(const Categorical& prediction,
                                    const std::string& observed);

  PredictionKind kind() const { return kind_; }
  const TopList& prediction() const { return prediction_; }
  std::size_t observed() const { return observed_; }
  const std::string& observed_label() const;
  const UniversePtr& universe() const { return prediction_.universe(); }

 private:
  EvalCase(PredictionKind kind, TopList prediction, std::size_t observed);

  PredictionKind kind_;
  TopList prediction_;
  std::size_t observed_;
};

}  // namespace toplist
