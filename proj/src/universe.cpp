#include "toplist/universe.hpp"

#include <stdexcept>

namespace toplist {

ClassUniverse::ClassUniverse(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw std::invalid_argument("class universe must contain at least one label");
  }
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw std::invalid_argument("duplicate class label: " + labels_[i]);
    }
  }
}

bool ClassUniverse::contains(const std::string& label) const {
  return index_.find(label) != index_.end();
}

std::size_t ClassUniverse::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw std::invalid_argument("unknown class label: " + label);
  }
  return it->second;
}

UniversePtr make_universe(std::vector<std::string> labels) {
  return std::make_shared<const ClassUniverse>(std::move(labels));
}

UniversePtr numbered_universe(std::size_t m) {
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) labels.push_back(std::to_string(i));
  return make_universe(std::move(labels));
}

}  // namespace toplist
