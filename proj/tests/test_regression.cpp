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

#include <doctest.h>

#include <cmath>

#include "hamkernel/regression.hpp"
#include "hamkernel/simulate.hpp"
#include "test_support.hpp"

using namespace hamkernel;
using kernels::KernelFamily;
using kernels::KernelSpec;
using hamkernel::testing::PointGen;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Dataset random_dataset(PointGen& gen, std::size_t count, int dim = 2) {
  Dataset d;
  for (std::size_t i = 0; i < count; ++i) {
    d.points.push_back(gen.point(dim));
    d.derivatives.push_back(gen.point(dim));
  }
  return d;
}

Dataset oscillator_dataset(double noise, std::uint64_t seed) {
  const auto sys = HamiltonianSystem::oscillator(0.5, 1.0);
  const std::vector<Vector> ics{vec2(1, 0), vec2(2.25, 0), vec2(3.5, 0)};
  return make_dataset(sys, ics, TimeGrid{0.25, 1.0, Integrator::RK4}, NoiseSpec{noise, seed});
}

const KernelFamily kAllFamilies[] = {KernelFamily::SeparableGaussian, KernelFamily::CurlFree,
                                     KernelFamily::OddCurlFree, KernelFamily::Symplectic,
                                     KernelFamily::OddSymplectic};

}  // namespace

TEST_CASE("dataset validation") {
  Dataset d;
  CHECK_THROWS_AS(d.validate(), ContractError);
  d.points = {vec2(0, 0)};
  CHECK_THROWS_AS(d.validate(), ContractError);
  d.derivatives = {Vector::Zero(3)};
  CHECK_THROWS_AS(d.validate(), ContractError);
  d.derivatives = {vec2(1, 1)};
  CHECK_NOTHROW(d.validate());
}

TEST_CASE("assemble_gram") {
  SUBCASE("odd symplectic at the origin is a zero block") {
    Dataset d{{Vector::Zero(2)}, {vec2(1, 1)}, {}};
    CHECK(assemble_gram(d, KernelSpec{KernelFamily::OddSymplectic, 1.0, 2}).isZero(0.0));
  }
  SUBCASE("single symplectic center gives I / sigma^2") {
    Dataset d{{vec2(0.5, -0.5)}, {vec2(1, 1)}, {}};
    CHECK((assemble_gram(d, KernelSpec{KernelFamily::Symplectic, 2.0, 2}) - 0.25 * Matrix::Identity(2, 2)).norm() <
          1e-15);
  }
  SUBCASE("separable Gram is the scalar Gram tensored with I") {
    PointGen gen(21);
    const Dataset d = random_dataset(gen, 3);
    const double s = 1.3;
    const Matrix gram = assemble_gram(d, KernelSpec{KernelFamily::SeparableGaussian, s, 2});
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double k = hamkernel::testing::ref_gaussian(d.points[i], d.points[j], s);
        CHECK(gram(2 * i, 2 * j) == doctest::Approx(k).epsilon(1e-15));
        CHECK(gram(2 * i + 1, 2 * j + 1) == doctest::Approx(k).epsilon(1e-15));
        CHECK(gram(2 * i, 2 * j + 1) == 0.0);
        CHECK(gram(2 * i + 1, 2 * j) == 0.0);
      }
    }
  }
  SUBCASE("symmetric for every family") {
    PointGen gen(22);
    const Dataset d = random_dataset(gen, 8);
    for (auto fam : kAllFamilies) {
      const Matrix gram = assemble_gram(d, KernelSpec{fam, 1.0, 2});
      CHECK(gram == gram.transpose());
    }
  }
  SUBCASE("dimension mismatch") {
    Dataset d{{Vector::Zero(4)}, {Vector::Zero(4)}, {}};
    CHECK_THROWS_AS(assemble_gram(d, KernelSpec{KernelFamily::Symplectic, 1.0, 2}), ContractError);
  }
}

TEST_CASE("solve_coefficients single-sample closed form") {
  // (1/sigma^2) I a + N lambda a = y with N = 1, sigma = 1, lambda = 0.1.
  Dataset d{{vec2(1, 0)}, {vec2(1, 1)}, {}};
  const TrainedModel m = solve_coefficients(d, KernelSpec{KernelFamily::Symplectic, 1.0, 2}, 0.1);
  CHECK(m.coeffs()[0](0) == doctest::Approx(0.9090909090909091).epsilon(1e-14));
  CHECK(m.coeffs()[0](1) == doctest::Approx(0.9090909090909091).epsilon(1e-14));

  const Vector f = m.field(vec2(1, 0));
  CHECK(f(0) == doctest::Approx(1.0 / 1.1).epsilon(1e-14));
  CHECK(f(1) == doctest::Approx(1.0 / 1.1).epsilon(1e-14));
}

TEST_CASE("solve_coefficients contract") {
  PointGen gen(23);
  Dataset d = random_dataset(gen, 6);
  const KernelSpec spec{KernelFamily::Symplectic, 1.0, 2};
  CHECK_THROWS_AS(solve_coefficients(d, spec, 0.0), ContractError);
  CHECK_THROWS_AS(solve_coefficients(d, spec, -1.0), ContractError);
  CHECK_THROWS_AS(solve_coefficients(d, KernelSpec{KernelFamily::Symplectic, 1.0, 4}, 0.1), ContractError);

  SUBCASE("zero targets give zero coefficients") {
    for (auto& y : d.derivatives) y.setZero();
    for (auto fam : kAllFamilies) {
      const TrainedModel m = solve_coefficients(d, KernelSpec{fam, 1.0, 2}, 1e-3);
      for (const auto& a : m.coeffs()) CHECK(a.isZero(0.0));
    }
  }
  SUBCASE("huge lambda bounds the coefficients") {
    const double lambda = 1e6;
    const TrainedModel m = solve_coefficients(d, spec, lambda);
    double a_norm = 0.0;
    double y_norm = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      a_norm += m.coeffs()[i].squaredNorm();
      y_norm += d.derivatives[i].squaredNorm();
    }
    CHECK(std::sqrt(a_norm) <= std::sqrt(y_norm) / (6.0 * lambda));
  }
}

TEST_CASE("representer residual holds for every family") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Dataset d = oscillator_dataset(0.1, seed);
    for (auto fam : kAllFamilies) {
      for (double lambda : {1e-6, 1e-4, 0.1}) {
        for (double sigma : {0.7, 3.0, 19.5}) {
          const TrainedModel m = solve_coefficients(d, KernelSpec{fam, sigma, 2}, lambda);
          INFO(kernels::to_string(fam) << " sigma " << sigma << " lambda " << lambda);
          CHECK(max_relative_residual(m, d) <= 1e-8);
          CHECK(m.diagnostics().max_relative_residual <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("antipodal centers keep the odd solve well posed") {
  Dataset d{{vec2(1, 0.5), vec2(-1, -0.5)}, {vec2(0.2, -0.3), vec2(-0.2, 0.3)}, {}};
  const TrainedModel m = solve_coefficients(d, KernelSpec{KernelFamily::OddSymplectic, 1.0, 2}, 1e-6);
  CHECK(max_relative_residual(m, d) <= 1e-8);
}

TEST_CASE("linearity in the targets") {
  const Dataset d = oscillator_dataset(0.1, 5);
  Dataset scaled = d;
  const double c = -3.5;
  for (auto& y : scaled.derivatives) y *= c;
  for (auto fam : kAllFamilies) {
    const KernelSpec spec{fam, 2.0, 2};
    const TrainedModel a = solve_coefficients(d, spec, 1e-3);
    const TrainedModel b = solve_coefficients(scaled, spec, 1e-3);
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK((b.coeffs()[i] - c * a.coeffs()[i]).norm() <= 1e-12 * (1.0 + std::abs(c) * a.coeffs()[i].norm()));
    }
  }
}

TEST_CASE("near-interpolation with tiny lambda") {
  PointGen gen(24);
  Dataset d;
  for (int i = 0; i < 5; ++i) {
    d.points.push_back(gen.point(2));
    d.derivatives.push_back(HamiltonianSystem::oscillator(0.5, 1.0).field(d.points.back()));
  }
  const TrainedModel m = solve_coefficients(d, KernelSpec{KernelFamily::SeparableGaussian, 1.0, 2}, 1e-12);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK((m.field(d.points[i]) - d.derivatives[i]).norm() <= 1e-6);
}

TEST_CASE("odd models produce odd fields") {
  PointGen gen(25);
  const Dataset d = oscillator_dataset(0.1, 6);
  for (auto fam : {KernelFamily::OddSymplectic, KernelFamily::OddCurlFree}) {
    const TrainedModel m = solve_coefficients(d, KernelSpec{fam, 5.0, 2}, 1e-4);
    for (int i = 0; i < 1000; ++i) {
      const Vector x = gen.point(2, -6.0, 6.0);
      const Vector fx = m.field(x);
      CHECK((m.field(-x) + fx).norm() <= 1e-12 * (1.0 + fx.norm()));
    }
  }
}

TEST_CASE("learned Hamiltonian generates the learned field") {
  PointGen gen(26);
  const Dataset d = oscillator_dataset(0.1, 7);
  const Matrix j = hamkernel::testing::ref_symplectic(2);
  for (auto fam : {KernelFamily::Symplectic, KernelFamily::OddSymplectic}) {
    for (double sigma : {1.0, 12.1}) {
      const TrainedModel m = solve_coefficients(d, KernelSpec{fam, sigma, 2}, 1e-4);
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const Vector x = gen.point(2, -4.0, 4.0);
        const Vector grad = hamkernel::testing::fd_gradient([&](const Vector& y) { return m.hamiltonian(y); }, x, 1e-5);
        worst = std::max(worst, hamkernel::testing::rel_err(j * grad, m.field(x)));
      }
      INFO(kernels::to_string(fam) << " sigma " << sigma);
      CHECK(worst <= 1e-5);
    }
  }
}

TEST_CASE("learned Hamiltonian properties") {
  PointGen gen(27);
  SUBCASE("zero coefficients give a zero Hamiltonian") {
    const TrainedModel m(KernelSpec{KernelFamily::Symplectic, 1.0, 2}, 0.1, {vec2(1, 2), vec2(-1, 0)},
                         {Vector::Zero(2), Vector::Zero(2)});
    CHECK(m.hamiltonian(gen.point(2)) == 0.0);
  }
  SUBCASE("odd symplectic Hamiltonian is even") {
    const TrainedModel m = solve_coefficients(oscillator_dataset(0.1, 8), KernelSpec{KernelFamily::OddSymplectic, 3.0, 2}, 1e-4);
    for (int i = 0; i < 100; ++i) {
      const Vector x = gen.point(2, -5.0, 5.0);
      CHECK(std::abs(m.hamiltonian(-x) - m.hamiltonian(x)) <= 1e-12);
    }
  }
  SUBCASE("non-symplectic families reject Hamiltonian evaluation") {
    const TrainedModel m =
        solve_coefficients(oscillator_dataset(0.1, 9), KernelSpec{KernelFamily::SeparableGaussian, 3.0, 2}, 1e-4);
    CHECK_THROWS_AS(m.hamiltonian(vec2(0, 0)), ContractError);
    CHECK_THROWS_AS(evaluate_hamiltonian(m, vec2(0, 0)), ContractError);
  }
}

TEST_CASE("pointwise bound by the RKHS norm") {
  PointGen gen(28);
  const Dataset d = oscillator_dataset(0.1, 10);
  for (auto fam : kAllFamilies) {
    const KernelSpec spec{fam, 2.0, 2};
    const TrainedModel m = solve_coefficients(d, spec, 1e-3);
    Vector a(2 * static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) a.segment(2 * static_cast<Eigen::Index>(i), 2) = m.coeffs()[i];
    const double rkhs_norm = std::sqrt(a.dot(assemble_gram(d, spec) * a));
    for (int i = 0; i < 50; ++i) {
      const Vector x = i < static_cast<int>(d.size()) ? d.points[static_cast<std::size_t>(i)] : gen.point(2);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(kernels::evaluate(x, x, spec), Eigen::EigenvaluesOnly);
      const double bound = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff())) * rkhs_norm;
      CHECK(m.field(x).norm() <= bound * (1.0 + 1e-12) + 1e-14);
    }
  }
}

TEST_CASE("evaluate_field rejects wrong dimensions") {
  const TrainedModel m(KernelSpec{KernelFamily::Symplectic, 1.0, 2}, 0.1, {vec2(1, 2)}, {vec2(1, 1)});
  CHECK_THROWS_AS(m.field(Vector::Zero(3)), ContractError);
  CHECK_THROWS_AS(TrainedModel(KernelSpec{KernelFamily::Symplectic, 1.0, 2}, 0.1, {vec2(1, 2)}, {}), ContractError);
  CHECK_THROWS_AS(TrainedModel(KernelSpec{KernelFamily::Symplectic, 1.0, 2}, 0.0, {vec2(1, 2)}, {vec2(1, 1)}),
                  ContractError);
}
