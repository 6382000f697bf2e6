#include "toplist/top_list.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "toplist/numeric.hpp"

namespace toplist {

TopList::TopList(UniversePtr universe, std::vector<std::size_t> classes,
                 std::vector<double> confidences)
    : universe_(std::move(universe)),
      classes_(std::move(classes)),
      confidences_(std::move(confidences)) {
  if (!universe_) throw std::invalid_argument("null class universe");
  const std::size_t m = universe_->size();
  if (classes_.size() != confidences_.size()) {
    throw std::invalid_argument("classes and confidences must have equal length");
  }
  if (classes_.size() > m) {
    throw std::invalid_argument("top list cannot exceed the universe size");
  }
  std::vector<bool> seen(m, false);
  for (std::size_t c : classes_) {
    if (c >= m) throw std::invalid_argument("class index out of range");
    if (seen[c]) {
      throw std::invalid_argument("duplicate class in top list: " + universe_->label(c));
    }
    seen[c] = true;
  }
  for (double conf : confidences_) {
    if (!std::isfinite(conf) || conf < 0.0 || conf > 1.0) {
      throw std::invalid_argument("confidence scores must lie in [0, 1]");
    }
  }
  confidence_sum_ = stable_sum(confidences_);
  if (confidence_sum_ > 1.0 + kNormTol) {
    throw std::invalid_argument("confidence scores must not sum to more than 1");
  }
  if (classes_.size() == m && std::abs(confidence_sum_ - 1.0) > kNormTol) {
    throw std::invalid_argument("a full top-m list must have confidences summing to 1");
  }
}

namespace {

std::vector<std::size_t> indices_for(const UniversePtr& universe,
                                     const std::vector<std::string>& labels) {
  std::vector<std::size_t> indices;
  indices.reserve(labels.size());
  if (!universe) throw std::invalid_argument("null class universe");
  for (const auto& label : labels) indices.push_back(universe->index_of(label));
  return indices;
}

}  // namespace

TopList::TopList(UniversePtr universe, const std::vector<std::string>& class_labels,
                 std::vector<double> confidences)
    : TopList(universe, indices_for(universe, class_labels), std::move(confidences)) {}

std::vector<std::string> TopList::class_labels() const {
  std::vector<std::string> labels;
  labels.reserve(classes_.size());
  for (std::size_t c : classes_) labels.push_back(universe_->label(c));
  return labels;
}

bool TopList::lists(std::size_t class_index) const {
  return position_of(class_index) != k();
}

std::size_t TopList::position_of(std::size_t class_index) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == class_index) return i;
  }
  return classes_.size();
}

bool TopList::operator==(const TopList& other) const {
  return same_universe(universe_, other.universe_) && classes_ == other.classes_ &&
         confidences_ == other.confidences_;
}

double proxy_probability(const TopList& t) {
  const std::size_t m = t.m();
  const std::size_t k = t.k();
  if (k == m) return 0.0;
  const double raw = (1.0 - t.confidence_sum()) / static_cast<double>(m - k);
  return std::clamp(raw, 0.0, 1.0);
}

Categorical pad(const TopList& t) {
  std::vector<double> probs(t.m(), proxy_probability(t));
  const auto& classes = t.classes();
  const auto& conf = t.confidences();
  for (std::size_t i = 0; i < classes.size(); ++i) probs[classes[i]] = conf[i];
  return Categorical::unchecked(t.universe(), std::move(probs));
}

bool is_valid(const TopList& t) {
  if (t.k() == 0 || t.k() == t.m()) return true;
  const double least = *std::min_element(t.confidences().begin(), t.confidences().end());
  return least >= proxy_probability(t) - kBoundaryTol;
}

bool is_calibrated(const TopList& t, const Categorical& p, double tol) {
  if (!same_universe(t.universe(), p.universe())) {
    throw std::invalid_argument("top list and distribution use different universes");
  }
  if (tol < 0.0) throw std::invalid_argument("calibration tolerance must be nonnegative");
  const auto& classes = t.classes();
  const auto& conf = t.confidences();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (std::abs(conf[i] - p.prob(classes[i])) > tol) return false;
  }
  return true;
}

TopList largest_valid_sublist(const TopList& t) {
  TopList current = t;
  while (!is_valid(current)) {
    const auto& conf = current.confidences();
    const double least = *std::min_element(conf.begin(), conf.end());
    // No sublist keeping a minimal-confidence class can be valid, so all of
    // them go at once; this also makes the result unique.
    std::vector<std::size_t> classes;
    std::vector<double> kept;
    for (std::size_t i = 0; i < conf.size(); ++i) {
      if (conf[i] != least) {
        classes.push_back(current.classes()[i]);
        kept.push_back(conf[i]);
      }
    }
    current = TopList(current.universe(), std::move(classes), std::move(kept));
  }
  return current;
}

TopList point_mass(std::size_t class_index, UniversePtr universe) {
  if (!universe) throw std::invalid_argument("null class universe");
  if (class_index >= universe->size()) {
    throw std::invalid_argument("class index out of range");
  }
  return TopList(std::move(universe), std::vector<std::size_t>{class_index},
                 std::vector<double>{1.0});
}

TopList point_mass(const std::string& label, UniversePtr universe) {
  if (!universe) throw std::invalid_argument("null class universe");
  const std::size_t index = universe->index_of(label);
  return point_mass(index, std::move(universe));
}

namespace {

// Class indices ordered by (probability descending, universe index ascending).
std::vector<std::size_t> canonical_order(const Categorical& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.prob(a) > p.prob(b);
  });
  return order;
}

TopList list_for_classes(const Categorical& p, std::vector<std::size_t> classes) {
  std::sort(classes.begin(), classes.end(), [&](std::size_t a, std::size_t b) {
    if (p.prob(a) != p.prob(b)) return p.prob(a) > p.prob(b);
    return a < b;
  });
  std::vector<double> conf;
  conf.reserve(classes.size());
  for (std::size_t c : classes) conf.push_back(p.prob(c));
  return TopList(p.universe(), std::move(classes), std::move(conf));
}

}  // namespace

TopList true_top_list(const Categorical& p, std::size_t k) {
  if (k > p.size()) throw std::invalid_argument("k exceeds the universe size");
  auto order = canonical_order(p);
  order.resize(k);
  return list_for_classes(p, std::move(order));
}

std::vector<TopList> true_top_lists(const Categorical& p, std::size_t k) {
  const std::size_t m = p.size();
  if (k > m) throw std::invalid_argument("k exceeds the universe size");
  if (k == 0) return {true_top_list(p, 0)};

  const auto order = canonical_order(p);
  const double boundary = p.prob(order[k - 1]);
  std::vector<std::size_t> mandatory;
  std::vector<std::size_t> border;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.prob(i) > boundary) {
      mandatory.push_back(i);
    } else if (p.prob(i) == boundary) {
      border.push_back(i);
    }
  }
  const std::size_t slots = k - mandatory.size();

  // Every way of filling the remaining slots from the boundary classes, in
  // lexicographic order of the chosen indices.
  std::vector<TopList> lists;
  std::vector<std::size_t> pick(slots);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start,
                                                             std::size_t depth) {
    if (depth == slots) {
      std::vector<std::size_t> classes = mandatory;
      classes.insert(classes.end(), pick.begin(), pick.end());
      lists.push_back(list_for_classes(p, std::move(classes)));
      return;
    }
    for (std::size_t i = start; i + (slots - depth) <= border.size(); ++i) {
      pick[depth] = border[i];
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  return lists;
}

std::string to_string(const TopList& t, int digits) {
  std::string out = "({";
  const auto labels = t.class_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += ",";
    out += labels[i];
  }
  out += "},(";
  for (std::size_t i = 0; i < t.confidences().size(); ++i) {
    if (i > 0) out += ",";
    out += format_number(t.confidences()[i], digits);
  }
  out += "))";
  return out;
}

}  // namespace toplist
