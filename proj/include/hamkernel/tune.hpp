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

#ifndef HAMKERNEL_TUNE_HPP
#define HAMKERNEL_TUNE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamkernel/kernels.hpp"
#include "hamkernel/regression.hpp"

namespace hamkernel {

using Folds = std::vector<std::vector<std::size_t>>;

struct GridSpec {
  std::vector<double> sigmas;
  std::vector<double> lambdas;
  int folds = 5;
  std::uint64_t seed = 0;

  /// 21 log-spaced widths on [0.5, 50] plus 3, 12.1, 12.3 and 19.5 (25 in
  /// total); lambda in {1e-6, ..., 1}; 5 folds; seed 0.
  static GridSpec defaults();

  /// Lists nonempty, ascending and positive; 2 <= folds <= n_samples.
  void validate(std::size_t n_samples) const;
};

/// Seeded shuffle of 0..n-1 dealt round-robin into k folds, so fold sizes
/// differ by at most one.
Folds kfold_split(std::size_t n_samples, int k, std::uint64_t seed);

/// Training failed on one fold.
class CrossValidationError : public std::runtime_error {
 public:
  CrossValidationError(std::size_t fold, const std::string& reason)
      : std::runtime_error("cross-validation fold " + std::to_string(fold) + ": " + reason), fold_(fold) {}
  std::size_t fold() const { return fold_; }

 private:
  std::size_t fold_;
};

/// (1/k) sum_i MSE(f trained without fold i, fold i), with
/// MSE = mean over held-out samples of |f(x) - y|^2.
double cv_score(const Dataset& dataset, const kernels::KernelSpec& spec, double lambda, const Folds& folds);

struct ScoreRow {
  double sigma;
  double lambda;
  double cv_mse;
};

struct GridResult {
  double sigma = 0.0;
  double lambda = 0.0;
  double score = 0.0;
  /// Sigma-major, in grid order.
  std::vector<ScoreRow> table;
};

/// Exhaustive search for the (sigma, lambda) with the lowest cv_score.
/// Ties go to the larger lambda, then the larger sigma.
GridResult grid_search(const Dataset& dataset, kernels::KernelFamily family, const GridSpec& grid);

}  // namespace hamkernel

#endif  // HAMKERNEL_TUNE_HPP
