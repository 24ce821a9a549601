// Copyright 2026 The hamkernel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamkernel/tune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hamkernel {

GridSpec GridSpec::defaults() {
  GridSpec grid;
  constexpr int kLogPoints = 21;
  const double lo = std::log10(0.5);
  const double hi = std::log10(50.0);
  for (int i = 0; i < kLogPoints; ++i) {
    grid.sigmas.push_back(std::pow(10.0, lo + (hi - lo) * i / (kLogPoints - 1)));
  }
  for (double s : {3.0, 12.1, 12.3, 19.5}) grid.sigmas.push_back(s);
  std::sort(grid.sigmas.begin(), grid.sigmas.end());
  grid.lambdas = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 1.0};
  return grid;
}

void GridSpec::validate(std::size_t n_samples) const {
  auto check_list = [](const std::vector<double>& values, const char* name) {
    require(!values.empty(), std::string(name) + " grid is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
      require(std::isfinite(values[i]) && values[i] > 0.0, std::string(name) + " grid values must be positive");
      require(i == 0 || values[i] > values[i - 1], std::string(name) + " grid must be strictly ascending");
    }
  };
  check_list(sigmas, "sigma");
  check_list(lambdas, "lambda");
  require(folds >= 2, "cross-validation needs at least 2 folds");
  require(static_cast<std::size_t>(folds) <= n_samples,
          "fold count " + std::to_string(folds) + " exceeds sample count " + std::to_string(n_samples));
}

Folds kfold_split(std::size_t n_samples, int k, std::uint64_t seed) {
  require(k >= 1, "fold count must be positive");
  require(static_cast<std::size_t>(k) <= n_samples,
          "fold count " + std::to_string(k) + " exceeds sample count " + std::to_string(n_samples));
  std::vector<std::size_t> order(n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Folds folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < order.size(); ++i) folds[i % folds.size()].push_back(order[i]);
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

double cv_score(const Dataset& dataset, const kernels::KernelSpec& spec, double lambda, const Folds& folds) {
  dataset.validate();
  require(!folds.empty(), "cv_score needs at least one fold");
  std::vector<char> held(dataset.size(), 0);
  for (const auto& fold : folds) {
    require(!fold.empty(), "cv_score: empty fold");
    for (auto i : fold) {
      require(i < dataset.size() && !held[i], "cv_score: folds must be disjoint indices into the dataset");
      held[i] = 1;
    }
  }

  double total = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<char> in_fold(dataset.size(), 0);
    for (auto i : folds[f]) in_fold[i] = 1;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (!in_fold[i]) train_idx.push_back(i);
    }
    if (train_idx.empty()) throw CrossValidationError(f, "no training samples left");

    try {
      const TrainedModel model = solve_coefficients(dataset.subset(train_idx), spec, lambda);
      double sse = 0.0;
      for (auto i : folds[f]) sse += (model.field(dataset.points[i]) - dataset.derivatives[i]).squaredNorm();
      total += sse / static_cast<double>(folds[f].size());
    } catch (const SolveError& e) {
      throw CrossValidationError(f, e.what());
    }
  }
  return total / static_cast<double>(folds.size());
}

GridResult grid_search(const Dataset& dataset, kernels::KernelFamily family, const GridSpec& grid) {
  dataset.validate();
  grid.validate(dataset.size());
  const Folds folds = kfold_split(dataset.size(), grid.folds, grid.seed);

  GridResult result;
  result.table.reserve(grid.sigmas.size() * grid.lambdas.size());
  bool have_best = false;
  for (double sigma : grid.sigmas) {
    const kernels::KernelSpec spec{family, sigma, dataset.dim()};
    for (double lambda : grid.lambdas) {
      const double score = cv_score(dataset, spec, lambda, folds);
      result.table.push_back({sigma, lambda, score});
      // Grids are ascending, so ">=" on equal scores prefers the larger
      // lambda, then the larger sigma.
      const bool better = std::isfinite(score) && (!have_best || score < result.score ||
                          (score == result.score &&
                           (lambda > result.lambda || (lambda == result.lambda && sigma >= result.sigma))));
      if (better) {
        result.sigma = sigma;
        result.lambda = lambda;
        result.score = score;
        have_best = true;
      }
    }
  }
  require(have_best, "grid search produced no finite cross-validation score");
  return result;
}

}  // namespace hamkernel
