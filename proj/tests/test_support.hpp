#ifndef PROJCONE_TEST_SUPPORT_HPP
#define PROJCONE_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "projcone/chart_connection.hpp"

namespace projcone::testing {

using Rng = std::mt19937_64;

/// All exponent tuples in n variables with total degree <= max_degree,
/// enumerated in a fixed order.
inline std::vector<Exponents> monomials_up_to(int n, int max_degree) {
  std::vector<Exponents> out;
  Exponents exp(static_cast<std::size_t>(n), 0);
  const auto total = [&] {
    int t = 0;
    for (int e : exp) t += e;
    return t;
  };
  while (true) {
    if (total() <= max_degree) out.push_back(exp);
    int a = n - 1;
    while (a >= 0) {
      if (++exp[static_cast<std::size_t>(a)] <= max_degree) break;
      exp[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

/// Dense random polynomial with coefficients uniform in [-1, 1].
inline PolyField random_poly(Rng& rng, int n, int max_degree) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  PolyField p(n);
  for (const auto& exp : monomials_up_to(n, max_degree))
    p += PolyField::monomial(n, exp, coeff(rng));
  return p;
}

inline ChartConnection random_torsion_free_connection(Rng& rng, int n, int max_degree) {
  ChartConnection c(n, default_box(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) c.set_gamma_sym(i, j, k, random_poly(rng, n, max_degree));
  return c;
}

inline OneFormField random_one_form(Rng& rng, int n, int max_degree) {
  OneFormField a(n);
  for (int k = 0; k < n; ++k) a.set_component(k, random_poly(rng, n, max_degree));
  return a;
}

inline Eigen::VectorXd random_point(Rng& rng, const Box& box, double shrink = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd x(box.dims());
  for (int a = 0; a < box.dims(); ++a) {
    const double mid = 0.5 * (box.lo[a] + box.hi[a]);
    const double half = 0.5 * (box.hi[a] - box.lo[a]) * shrink;
    x[a] = mid + half * u(rng);
  }
  return x;
}

inline Eigen::VectorXd random_direction(Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int a = 0; a < n; ++a) v[a] = g(rng);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

}  // namespace projcone::testing

#endif
