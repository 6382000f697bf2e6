#include "toplist/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "toplist/numeric.hpp"

namespace toplist::metrics {

double zero_one(const ClassUniverse& universe, const std::string& x,
                const std::string& y) {
  return universe.index_of(x) != universe.index_of(y) ? 1.0 : 0.0;
}

double top_k_error(const TopList& t, std::size_t y) {
  if (y >= t.m()) throw std::invalid_argument("class index out of range");
  return t.lists(y) ? 0.0 : 1.0;
}

double top_k_error(const TopList& t, const std::string& y) {
  return top_k_error(t, t.universe()->index_of(y));
}

namespace {

constexpr char kSeparator = '|';

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += kSeparator;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> sorted_distinct_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw std::invalid_argument("duplicate label");
  }
  for (const auto& label : labels) {
    if (label.empty() || label.find(kSeparator) != std::string::npos) {
      throw std::invalid_argument("labels must be non-empty and must not contain '|'");
    }
  }
  return labels;
}

}  // namespace

LabelSetUniverse::LabelSetUniverse(std::vector<std::string> labels)
    : labels_(sorted_distinct_labels(std::move(labels))) {
  if (labels_.size() > 16) {
    throw std::invalid_argument(
        "full power-set universes are limited to 16 labels; declare classes explicitly");
  }
  std::vector<std::string> classes;
  classes.reserve(std::size_t{1} << labels_.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << labels_.size()); ++mask) {
    std::vector<std::string> subset;
    for (std::size_t bit = 0; bit < labels_.size(); ++bit) {
      if (mask & (std::size_t{1} << bit)) subset.push_back(labels_[bit]);
    }
    classes.push_back(join(subset));
  }
  classes_ = make_universe(std::move(classes));
}

LabelSetUniverse::LabelSetUniverse(std::vector<std::string> labels,
                                   const std::vector<std::vector<std::string>>& classes)
    : labels_(sorted_distinct_labels(std::move(labels))) {
  std::vector<std::string> encoded;
  encoded.reserve(classes.size());
  for (const auto& subset : classes) encoded.push_back(encode(subset));
  classes_ = make_universe(std::move(encoded));
}

std::string LabelSetUniverse::encode(std::vector<std::string> subset) const {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw std::invalid_argument("duplicate label in subset");
  }
  for (const auto& label : subset) {
    if (!std::binary_search(labels_.begin(), labels_.end(), label)) {
      throw std::invalid_argument("unknown label: " + label);
    }
  }
  return join(subset);
}

std::vector<std::string> LabelSetUniverse::decode(const std::string& cls) const {
  std::vector<std::string> parts;
  if (!cls.empty()) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = cls.find(kSeparator, start);
      parts.push_back(cls.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!std::binary_search(labels_.begin(), labels_.end(), parts[i])) {
      throw std::invalid_argument("class is not a label set: " + cls);
    }
    if (i > 0 && !(parts[i - 1] < parts[i])) {
      throw std::invalid_argument("class is not in canonical label-set form: " + cls);
    }
  }
  return parts;
}

double instance_f1(const LabelSetUniverse& universe, const std::string& x,
                   const std::string& y) {
  const auto xs = universe.decode(x);
  const auto ys = universe.decode(y);
  if (xs.empty() && ys.empty()) return 0.0;  // 0/0 resolved to 0
  std::vector<std::string> common;
  std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(),
                        std::back_inserter(common));
  return 2.0 * static_cast<double>(common.size()) /
         static_cast<double>(xs.size() + ys.size());
}

F1DemoReport f1_mode_inconsistency_demo() {
  const LabelSetUniverse universe({"1", "2", "3", "4", "5"});
  const UniversePtr& classes = universe.classes();

  std::vector<double> probs(classes->size(), 0.0);
  probs[classes->index_of("1|2")] = 0.28;
  probs[classes->index_of("1|3")] = 0.24;
  probs[classes->index_of("1|4")] = 0.24;
  probs[classes->index_of("1|5")] = 0.24;
  const Categorical p(classes, std::move(probs));

  const auto expected_f1 = [&](const std::string& x) {
    StableSum sum;
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p.prob(y) == 0.0) continue;
      sum.add(p.prob(y) * instance_f1(universe, x, classes->label(y)));
    }
    return sum.value();
  };

  F1DemoReport report;
  report.mode_class = classes->label(mode(p).front());
  report.expected_f1_mode = expected_f1(report.mode_class);
  report.expected_f1_single = expected_f1("1");
  report.single_beats_mode = report.expected_f1_single > report.expected_f1_mode;
  return report;
}

}  // namespace toplist::metrics
