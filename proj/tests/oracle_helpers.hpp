#ifndef PROJCONE_ORACLE_HELPERS_HPP
#define PROJCONE_ORACLE_HELPERS_HPP

// Finite-difference and transport oracles used to validate the analytic
// pipelines. Everything here differentiates numerically and integrates with
// its own small RK4, independent of PolyField::partial and of the production
// transport code.

#include <Eigen/Dense>
#include <functional>

#include "projcone/chart_connection.hpp"

namespace projcone::oracle {

using MatrixFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
// Generator of a linear transport ODE T' = -M(x, dir) T along a straight
// segment; dir is the (constant) segment velocity.
using GeneratorFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

inline double central_diff(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x, int axis, double h) {
  Eigen::VectorXd xp = x, xm = x;
  xp[axis] += h;
  xm[axis] -= h;
  return (f(xp) - f(xm)) / (2.0 * h);
}

inline Eigen::MatrixXd transport_segment(const GeneratorFn& gen, const Eigen::VectorXd& a,
                                         const Eigen::VectorXd& b, int steps, int rank) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(rank, rank);
  const Eigen::VectorXd d = b - a;
  const double h = 1.0 / steps;
  auto f = [&](double tau, const Eigen::MatrixXd& M) -> Eigen::MatrixXd {
    return -gen(a + tau * d, d) * M;
  };
  double tau = 0.0;
  for (int m = 0; m < steps; ++m) {
    const Eigen::MatrixXd k1 = f(tau, T);
    const Eigen::MatrixXd k2 = f(tau + 0.5 * h, T + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = f(tau + 0.5 * h, T + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = f(tau + h, T + h * k3);
    T += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tau += h;
  }
  return T;
}

/// (Holonomy - Id)/(h1 h2) around the rectangle centered at `center` in the
/// (j,k) coordinate plane, k-edge traversed first. Converges to the matrix of
/// curvature components [R^A_{B jk}] in the project convention.
inline Eigen::MatrixXd rect_holonomy_deviation(const GeneratorFn& gen,
                                               const Eigen::VectorXd& center, double h1,
                                               double h2, int j, int k, int rank,
                                               int edge_steps = 16) {
  const int n = static_cast<int>(center.size());
  Eigen::VectorXd ej = Eigen::VectorXd::Zero(n), ek = Eigen::VectorXd::Zero(n);
  ej[j] = 1.0;
  ek[k] = 1.0;
  const Eigen::VectorXd p0 = center - 0.5 * h1 * ej - 0.5 * h2 * ek;
  const Eigen::VectorXd p1 = p0 + h2 * ek;
  const Eigen::VectorXd p2 = p1 + h1 * ej;
  const Eigen::VectorXd p3 = p0 + h1 * ej;
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(rank, rank);
  T = transport_segment(gen, p0, p1, edge_steps, rank) * T;
  T = transport_segment(gen, p1, p2, edge_steps, rank) * T;
  T = transport_segment(gen, p2, p3, edge_steps, rank) * T;
  T = transport_segment(gen, p3, p0, edge_steps, rank) * T;
  return (T - Eigen::MatrixXd::Identity(rank, rank)) / (h1 * h2);
}

/// Chart parallel-transport generator M^i_m = Gamma^i_{mj} dir^j, evaluating
/// the Christoffel polynomials pointwise only.
inline GeneratorFn chart_generator(const ChartConnection& c) {
  return [&c](const Eigen::VectorXd& x, const Eigen::VectorXd& d) {
    const int n = c.dim();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += c.gamma(i, m, j).eval(x) * d[j];
        M(i, m) = acc;
      }
    return M;
  };
}

/// Riemann components by finite differences of the Christoffel values only:
/// the derivative terms of the component formula are replaced by central
/// differences, so nothing from PolyField::partial enters.
inline double fd_riemann(const ChartConnection& c, int i, int l, int j, int k,
                         const Eigen::VectorXd& x, double h = 1e-5) {
  auto g = [&](int a, int b, int cc) {
    return [&c, a, b, cc](const Eigen::VectorXd& p) { return c.gamma(a, b, cc).eval(p); };
  };
  double r = central_diff(g(i, k, l), x, j, h) - central_diff(g(i, j, l), x, k, h);
  for (int m = 0; m < c.dim(); ++m)
    r += c.gamma(i, j, m).eval(x) * c.gamma(m, k, l).eval(x) -
         c.gamma(i, k, m).eval(x) * c.gamma(m, j, l).eval(x);
  return r;
}

inline double fd_ricci(const ChartConnection& c, int j, int k, const Eigen::VectorXd& x,
                       double h = 1e-5) {
  double sum = 0.0;
  for (int i = 0; i < c.dim(); ++i) sum += fd_riemann(c, i, j, i, k, x, h);
  return sum;
}

/// Cotton-York by a second finite-difference level over fd_ricci.
inline double fd_cotton(const ChartConnection& c, int j, int k, int l,
                        const Eigen::VectorXd& x, double h_outer = 1e-4,
                        double h_inner = 1e-5) {
  auto ric = [&](int a, int b) {
    return [&c, a, b, h_inner](const Eigen::VectorXd& p) { return fd_ricci(c, a, b, p, h_inner); };
  };
  auto nabla_ric = [&](int a, int b, int cc, const Eigen::VectorXd& p) {
    double d = central_diff(ric(b, cc), p, a, h_outer);
    for (int m = 0; m < c.dim(); ++m)
      d -= c.gamma(m, a, b).eval(p) * fd_ricci(c, m, cc, p, h_inner) +
           c.gamma(m, a, cc).eval(p) * fd_ricci(c, b, m, p, h_inner);
    return d;
  };
  return nabla_ric(j, k, l, x) - nabla_ric(k, j, l, x);
}

/// Minimal self-contained RK4 integrator for state ODEs, used as a reference
/// path for the production geodesic integrators.
inline Eigen::VectorXd rk4_integrate(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, Eigen::VectorXd y,
    double h, int steps) {
  for (int m = 0; m < steps; ++m) {
    const Eigen::VectorXd k1 = f(y);
    const Eigen::VectorXd k2 = f(y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace projcone::oracle

#endif
