#ifndef VACQ_TESTS_SUPPORT_HPP
#define VACQ_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "vacq/model.hpp"

namespace vacq::testing {

/// Random model with the given phase count; decay strictly decreasing from 1.
inline VacationModel random_model(std::mt19937_64& gen, int phases, double lambda, double mu) {
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<double> cuts(static_cast<std::size_t>(phases - 2));
  for (auto& c : cuts) c = unif(gen);
  std::sort(cuts.begin(), cuts.end(), std::greater<>());
  std::vector<double> decay{1.0};
  double prev = 1.0;
  for (const double c : cuts) {
    const double next = prev * (0.1 + 0.89 * c);  // strictly below prev, bounded away from 0
    decay.push_back(next);
    prev = next;
  }
  return VacationModel(lambda, mu, decay);
}

}  // namespace vacq::testing

#endif
