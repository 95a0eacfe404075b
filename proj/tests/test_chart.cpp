#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle_helpers.hpp"
#include "projcone/chart_connection.hpp"
#include "projcone/errors.hpp"
#include "test_support.hpp"

using namespace projcone;
namespace pt = projcone::testing;

namespace {

ChartConnection zero2() { return ChartConnection(2, default_box(2)); }

bool connections_equal(const ChartConnection& a, const ChartConnection& b, double tol) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (max_coeff_diff(a.gamma(i, j, k), b.gamma(i, j, k)) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("symmetrize averages the (j,k) slots") {
  auto c = zero2();
  c.set_gamma(0, 0, 1, PolyField::constant(2, 1.0));  // Gamma^1_{12}=1, Gamma^1_{21}=0
  const auto s = symmetrize(c);
  CHECK(s.gamma(0, 0, 1) == PolyField::constant(2, 0.5));
  CHECK(s.gamma(0, 1, 0) == PolyField::constant(2, 0.5));
  CHECK(s.is_torsion_free());

  // idempotent on symmetric input
  const auto s2 = symmetrize(s);
  CHECK(connections_equal(s, s2, 0.0));

  // antisymmetric part is killed
  ChartConnection c3(3, default_box(3));
  c3.set_gamma(1, 0, 2, PolyField::variable(3, 0));
  c3.set_gamma(1, 2, 0, -PolyField::variable(3, 0));
  const auto s3 = symmetrize(c3);
  CHECK(s3.gamma(1, 0, 2).is_zero());
  CHECK(s3.gamma(1, 2, 0).is_zero());
}

TEST_CASE("projective shift instantiates the formula") {
  OneFormField a(2);
  a.set_component(0, PolyField::variable(2, 0));  // alpha = (x1, 0)
  const auto shifted = projective_shift(zero2(), a);
  CHECK(shifted.gamma(0, 0, 0) == PolyField::variable(2, 0) * 2.0);  // Gamma^1_{11}=2x1
  CHECK(shifted.gamma(1, 0, 1) == PolyField::variable(2, 0));        // Gamma^2_{12}=x1
  CHECK(shifted.gamma(1, 1, 0) == PolyField::variable(2, 0));
  CHECK(shifted.gamma(0, 0, 1).is_zero());
  CHECK(shifted.gamma(0, 1, 1).is_zero());
  CHECK(shifted.gamma(1, 1, 1).is_zero());
  CHECK(shifted.gamma(1, 0, 0).is_zero());
  CHECK(shifted.gamma(0, 1, 0).is_zero());
}

TEST_CASE("shift by zero and shift round trip") {
  pt::Rng rng(11);
  const auto c = pt::random_torsion_free_connection(rng, 2, 2);
  const auto zero_form = OneFormField(2);
  CHECK(connections_equal(projective_shift(c, zero_form), c, 0.0));

  const auto alpha = pt::random_one_form(rng, 2, 2);
  OneFormField neg(2);
  for (int k = 0; k < 2; ++k) neg.set_component(k, -alpha.component(k));
  const auto back = projective_shift(projective_shift(c, alpha), neg);
  CHECK(connections_equal(back, c, 0.0));  // exact term maps: +a then -a cancels
}

TEST_CASE("extract_alpha recovers constructed shifts") {
  OneFormField a(2);
  a.set_component(0, PolyField::constant(2, 1.0));
  a.set_component(1, PolyField::constant(2, 3.0));
  const auto c2 = projective_shift(zero2(), a);
  const auto res = extract_alpha(zero2(), c2);
  CHECK(res.equivalent);
  CHECK(res.alpha.component(0) == PolyField::constant(2, 1.0));
  CHECK(res.alpha.component(1) == PolyField::constant(2, 3.0));

  const auto self = extract_alpha(c2, c2);
  CHECK(self.equivalent);
  CHECK(self.alpha.component(0).is_zero());
  CHECK(self.alpha.component(1).is_zero());
}

TEST_CASE("extract_alpha rejects a non-shift difference") {
  auto c2 = zero2();
  c2.set_gamma_sym(0, 1, 1, PolyField::monomial(2, {2, 0}, 1.0));  // D^1_{22}=x1^2
  const auto res = extract_alpha(zero2(), c2);
  CHECK_FALSE(res.equivalent);
  CHECK(res.residual == doctest::Approx(1.0));  // the x1^2 coefficient survives
}

TEST_CASE("extract_alpha input validation") {
  ChartConnection c3(3, default_box(3));
  CHECK_THROWS_AS(extract_alpha(zero2(), c3), InputError);
  Box other = default_box(2);
  other.hi[0] = 2.0;
  CHECK_THROWS_AS(extract_alpha(zero2(), ChartConnection(2, other)), InputError);
}

TEST_CASE("thomas symbols of a constant-trace example") {
  auto c = zero2();
  c.set_gamma(0, 0, 0, PolyField::constant(2, 3.0));  // Gamma^1_{11}=3
  const auto pi = thomas_symbols(c);
  CHECK(pi.gamma(0, 0, 0) == PolyField::constant(2, 1.0));
  CHECK(pi.gamma(1, 0, 1) == PolyField::constant(2, -1.0));
  CHECK(pi.gamma(1, 1, 0) == PolyField::constant(2, -1.0));
  CHECK(pi.gamma(0, 0, 1).is_zero());
  CHECK(pi.gamma(0, 1, 1).is_zero());
  CHECK(pi.gamma(1, 1, 1).is_zero());
  // trace check
  CHECK((pi.gamma(0, 0, 0) + pi.gamma(1, 1, 0)).is_zero());
}

TEST_CASE("thomas symbols of flat and shifted-flat inputs vanish") {
  const auto pi0 = thomas_symbols(zero2());
  CHECK(connections_equal(pi0, zero2(), 0.0));

  pt::Rng rng(17);
  const auto alpha = pt::random_one_form(rng, 2, 2);
  const auto pi = thomas_symbols(projective_shift(zero2(), alpha));
  CHECK(connections_equal(pi, zero2(), 1e-15 * (1.0 + alpha.max_abs_coeff())));
}

TEST_CASE("thomas symbols: invariance, trace-freeness (randomized)") {
  pt::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const auto c = pt::random_torsion_free_connection(rng, n, 2);
    const auto alpha = pt::random_one_form(rng, n, 2);
    const auto pi1 = thomas_symbols(c);
    const auto pi2 = thomas_symbols(projective_shift(c, alpha));
    const double tol = 1e-12 * (1.0 + c.max_abs_coeff() + alpha.max_abs_coeff());
    CHECK(connections_equal(pi1, pi2, tol));

    for (int k = 0; k < n; ++k) {
      PolyField tr(n);
      for (int l = 0; l < n; ++l) tr += pi1.gamma(l, l, k);
      CHECK(approx_zero_terms(tr, tol));
    }

    // extract_alpha reassembles the shift exactly
    const auto res = extract_alpha(c, projective_shift(c, alpha));
    CHECK(res.equivalent);
    for (int k = 0; k < n; ++k)
      CHECK(max_coeff_diff(res.alpha.component(k), alpha.component(k)) <= tol);
  }
}

TEST_CASE("riemann: zero connection") {
  const auto cf = riemann(zero2());
  for (const auto& p : cf.riemann) CHECK(p.is_zero());
  for (const auto& p : cf.ricci) CHECK(p.is_zero());
  for (const auto& p : cf.nabla_ricci) CHECK(p.is_zero());
}

TEST_CASE("riemann: hand-checked components of the demo family") {
  // Gamma^1_{22} = x1: R^1_{212} = 1 and Ric_{22} = 1
  auto c = zero2();
  c.set_gamma_sym(0, 1, 1, PolyField::variable(2, 0));
  const auto cf = riemann(c);
  CHECK(cf.r(0, 1, 0, 1) == PolyField::constant(2, 1.0));
  CHECK(cf.ric(1, 1) == PolyField::constant(2, 1.0));
  CHECK(cf.ric(0, 0).is_zero());
  CHECK(cf.ric(0, 1).is_zero());
  CHECK(cf.ric(1, 0).is_zero());

  // Gamma^1_{22} = x1^2: Ric_{22} = 2 x1
  auto c2 = zero2();
  c2.set_gamma_sym(0, 1, 1, PolyField::monomial(2, {2, 0}, 1.0));
  const auto cf2 = riemann(c2);
  CHECK(cf2.ric(1, 1) == PolyField::monomial(2, {1, 0}, 2.0));
}

TEST_CASE("riemann sign convention against the holonomy oracle") {
  // Transport around small rectangles only evaluates Gamma pointwise, so it
  // pins the sign convention independently of the analytic formula.
  auto c = zero2();
  c.set_gamma_sym(0, 1, 1, PolyField::variable(2, 0));
  const auto gen = oracle::chart_generator(c);
  const Eigen::Vector2d center(0.3, 0.4);
  const auto dev = oracle::rect_holonomy_deviation(gen, center, 1e-3, 1e-3, 0, 1, 2);
  CHECK(dev(0, 1) == doctest::Approx(1.0).epsilon(1e-6));  // R^1_{2 1 2} = 1
  CHECK(std::abs(dev(1, 0)) < 1e-8);

  pt::Rng rng(31);
  const auto cr = pt::random_torsion_free_connection(rng, 2, 2);
  const auto cf = riemann(cr);
  const Eigen::Vector2d x(0.25, -0.4);
  const auto devr = oracle::rect_holonomy_deviation(oracle::chart_generator(cr), x, 1e-3,
                                                    1e-3, 0, 1, 2);
  for (int i = 0; i < 2; ++i)
    for (int m = 0; m < 2; ++m)
      CHECK(devr(i, m) == doctest::Approx(cf.r(i, m, 0, 1).eval(x)).epsilon(1e-4));
}

TEST_CASE("riemann properties on random connections") {
  pt::Rng rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const auto c = pt::random_torsion_free_connection(rng, n, 2);
    const auto cf = riemann(c);
    const double tol = 1e-11 * (1.0 + c.max_abs_coeff());

    // antisymmetry as exact term maps
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            CHECK(max_coeff_diff(cf.r(i, l, j, k), -cf.r(i, l, k, j)) == 0.0);

    // Ricci symmetry on the special representative
    const auto pi = thomas_symbols(c);
    const auto cfp = riemann(pi);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        CHECK(max_coeff_diff(cfp.ric(j, k), cfp.ric(k, j)) <= tol);

    // first Bianchi identity at random sample points
    for (int s = 0; s < 50; ++s) {
      Eigen::VectorXd x(n);
      for (int a = 0; a < n; ++a) x[a] = u(rng);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              const double cyc = cf.r(i, l, j, k).eval(x) + cf.r(i, j, k, l).eval(x) +
                                 cf.r(i, k, l, j).eval(x);
              CHECK(std::abs(cyc) <= 1e-9);
            }
    }
  }
}

TEST_CASE("finite-difference oracle matches analytic Ricci derivatives") {
  pt::Rng rng(53);
  const auto c = pt::random_torsion_free_connection(rng, 2, 2);
  const auto cf = riemann(c);
  const Eigen::Vector2d x(0.2, -0.3);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      CHECK(oracle::fd_ricci(c, j, k, x) == doctest::Approx(cf.ric(j, k).eval(x)).epsilon(1e-7));
}
