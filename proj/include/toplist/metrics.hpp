#pragma once

#include <string>
#include <vector>

#include "toplist/top_list.hpp"

namespace toplist::metrics {

/// Misclassification indicator 1{x != y}. Negatively oriented;
/// set accuracy is 1 minus its mean.
double zero_one(const ClassUniverse& universe, const std::string& x,
                const std::string& y);

/// 1{y not among t's classes}; ignores confidences.
double top_k_error(const TopList& t, std::size_t y);
double top_k_error(const TopList& t, const std::string& y);

/// Universe of label-set classes. Each class identifier encodes a subset of
/// the labels as the sorted labels joined by '|' (empty subset -> "").
class LabelSetUniverse {
 public:
  /// All 2^|labels| subsets, ordered by bitmask over the sorted labels.
  /// Limited to 16 labels; declare an explicit class list beyond that.
  explicit LabelSetUniverse(std::vector<std::string> labels);

  /// A declared subset of 2^L given as explicit label subsets.
  LabelSetUniverse(std::vector<std::string> labels,
                   const std::vector<std::vector<std::string>>& classes);

  const std::vector<std::string>& labels() const { return labels_; }
  const UniversePtr& classes() const { return classes_; }

  std::string encode(std::vector<std::string> subset) const;
  std::vector<std::string> decode(const std::string& cls) const;

 private:
  std::vector<std::string> labels_;
  UniversePtr classes_;
};

/// Instance F1 of two label-set classes: 2|x & y| / (|x| + |y|).
/// Positively oriented; 0 when both sets are empty.
double instance_f1(const LabelSetUniverse& universe, const std::string& x,
                   const std::string& y);

struct F1DemoReport {
  std::string mode_class;
  double expected_f1_mode = 0.0;
  double expected_f1_single = 0.0;
  bool single_beats_mode = false;
};

/// Worked five-label example where the expected instance F1 of a single
/// label beats that of the most likely label set (2/3 > 0.64), showing that
/// instance F1 is not consistent for the mode.
F1DemoReport f1_mode_inconsistency_demo();

}  // namespace toplist::metrics
