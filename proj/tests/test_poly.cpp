#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "projcone/errors.hpp"
#include "projcone/poly_field.hpp"
#include "test_support.hpp"

using namespace projcone;
namespace pt = projcone::testing;

namespace {

Eigen::Vector2d pt2(double a, double b) { return Eigen::Vector2d(a, b); }

}  // namespace

TEST_CASE("evaluation of simple polynomials") {
  const auto one = PolyField::constant(2, 1.0);
  CHECK(one.eval(pt2(7.0, -2.0)) == 1.0);

  const auto m = PolyField::monomial(2, {2, 1}, 1.0);  // x1^2 x2
  CHECK(m.eval(pt2(2.0, 3.0)) == 12.0);

  const auto p = PolyField::monomial(2, {1, 0}, 3.0) + PolyField::monomial(2, {0, 2}, 1.0);
  CHECK(p.eval(pt2(1.0, 2.0)) == 7.0);

  CHECK_THROWS_AS(p.eval(Eigen::Vector3d(1, 2, 3)), InputError);
}

TEST_CASE("partial derivatives") {
  const auto m = PolyField::monomial(2, {2, 1}, 1.0);
  CHECK(m.partial(0) == PolyField::monomial(2, {1, 1}, 2.0));

  const auto c = PolyField::constant(2, 5.0);
  CHECK(c.partial(1).is_zero());

  const auto p = PolyField::monomial(2, {1, 0}, 3.0) + PolyField::monomial(2, {0, 2}, 1.0);
  CHECK(p.partial(0) == PolyField::constant(2, 3.0));

  CHECK_THROWS_AS(p.partial(2), InputError);
  CHECK_THROWS_AS(p.partial(-1), InputError);
}

TEST_CASE("ring operations and pruning") {
  const auto x1 = PolyField::variable(2, 0);
  CHECK((x1 + (-x1)).is_zero());  // exact cancellation leaves no terms
  CHECK((x1 + (-x1)).terms().empty());

  const auto x2 = PolyField::variable(2, 1);
  CHECK(x1 * x2 == PolyField::monomial(2, {1, 1}, 1.0));

  CHECK(scale(x1 * 2.0, 0.5) == x1);

  CHECK_THROWS_AS(x1 + PolyField::variable(3, 0), InputError);
  CHECK_THROWS_AS(mul(x1, PolyField::variable(3, 0)), InputError);
}

TEST_CASE("evaluation is a ring homomorphism on random inputs") {
  pt::Rng rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const auto p = pt::random_poly(rng, n, 4);
    const auto q = pt::random_poly(rng, n, 4);
    Eigen::VectorXd x(n);
    for (int a = 0; a < n; ++a) x[a] = u(rng);

    const double sum_split = p.eval(x) + q.eval(x);
    const double prod_split = p.eval(x) * q.eval(x);
    CHECK((p + q).eval(x) == doctest::Approx(sum_split).epsilon(1e-12));
    CHECK((p * q).eval(x) == doctest::Approx(prod_split).epsilon(1e-12));
  }
}

TEST_CASE("Leibniz rule holds exactly as term maps") {
  pt::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const auto p = pt::random_poly(rng, n, 3);
    const auto q = pt::random_poly(rng, n, 3);
    for (int axis = 0; axis < n; ++axis) {
      const auto lhs = (p * q).partial(axis);
      const auto rhs = p.partial(axis) * q + p * q.partial(axis);
      CHECK(max_coeff_diff(lhs, rhs) <= 1e-13 * (1.0 + rhs.max_abs_coeff()));
    }
  }
}

TEST_CASE("mixed partials commute exactly") {
  pt::Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto p = pt::random_poly(rng, n, 4);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        CHECK(p.partial(i).partial(j) == p.partial(j).partial(i));
  }
}

TEST_CASE("evaluation is bit-deterministic") {
  pt::Rng rng(5);
  const auto p = pt::random_poly(rng, 3, 4);
  const Eigen::Vector3d x(0.3, -0.7, 0.11);
  const double first = p.eval(x);
  for (int rep = 0; rep < 10; ++rep) CHECK(p.eval(x) == first);
}
