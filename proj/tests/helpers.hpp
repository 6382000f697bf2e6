#pragma once

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "toplist/top_list.hpp"

namespace toplist::testing {

// Disambiguates brace-literal labels from index lists.
inline TopList tl(const UniversePtr& u, std::vector<std::string> labels,
                  std::vector<double> conf) {
  return TopList(u, labels, std::move(conf));
}

inline Categorical cat(const UniversePtr& u, std::vector<double> probs) {
  return Categorical(u, std::move(probs));
}

// Structurally valid top list with random length, classes and confidences;
// roughly half of the draws are invalid in the validity sense.
inline TopList random_list(const UniversePtr& u, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick_k(0, u->size());
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::size_t k = pick_k(rng);
  std::vector<std::size_t> classes(u->size());
  std::iota(classes.begin(), classes.end(), std::size_t{0});
  std::shuffle(classes.begin(), classes.end(), rng);
  classes.resize(k);
  std::vector<double> conf(k);
  double total = 0.0;
  for (double& c : conf) {
    c = uniform(rng);
    total += c;
  }
  const double target = k == u->size() ? 1.0 : uniform(rng);
  if (k > 0) {
    for (double& c : conf) c = c / total * target;
  }
  return TopList(u, std::move(classes), std::move(conf));
}

// Strictly positive random distribution (plain normalized uniforms).
inline Categorical random_positive(const UniversePtr& u, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> raw(u->size());
  double total = 0.0;
  for (double& v : raw) {
    v = uniform(rng) + 1e-3;
    total += v;
  }
  for (double& v : raw) v /= total;
  return Categorical(u, std::move(raw));
}

}  // namespace toplist::testing
