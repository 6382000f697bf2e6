#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace toplist {

/// Ordered finite set of distinct class labels. The construction order
/// defines the canonical index of each class. Immutable once built and
/// shared by reference between distributions and top lists.
class ClassUniverse {
 public:
  explicit ClassUniverse(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  bool contains(const std::string& label) const;

  /// Canonical index of a label; throws std::invalid_argument if unknown.
  std::size_t index_of(const std::string& label) const;

  bool operator==(const ClassUniverse& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const ClassUniverse>;

UniversePtr make_universe(std::vector<std::string> labels);

/// Universe of m classes labeled "1", "2", ..., "m".
UniversePtr numbered_universe(std::size_t m);

/// Two universes are interchangeable when they share the same label order.
inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace toplist
