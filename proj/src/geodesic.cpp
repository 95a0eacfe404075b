#include "projcone/geodesic.hpp"

#include <cmath>
#include <functional>

#include "projcone/errors.hpp"

namespace projcone {

namespace {

using Rhs = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd rk4_step(const Rhs& f, const Eigen::VectorXd& y, double h) {
  const Eigen::VectorXd k1 = f(y);
  const Eigen::VectorXd k2 = f(y + 0.5 * h * k1);
  const Eigen::VectorXd k3 = f(y + 0.5 * h * k2);
  const Eigen::VectorXd k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double point_segment_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b) {
  const Eigen::VectorXd d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

}  // namespace

GeodesicTrace geodesic_classical(const ChartConnection& c, const Eigen::VectorXd& x0,
                                 const Eigen::VectorXd& v0, double h, int max_steps) {
  const int n = c.dim();
  if (x0.size() != n || v0.size() != n)
    throw InputError("geodesic_classical: point/vector dimension mismatch");
  if (!c.domain().contains(x0)) throw InputError("geodesic_classical: start outside domain");
  if (v0.norm() == 0.0) throw InputError("geodesic_classical: zero initial velocity");
  if (h <= 0.0) throw InputError("geodesic_classical: step must be positive");
  if (max_steps < 0) throw InputError("geodesic_classical: negative step count");

  Rhs rhs = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(2 * n);
    const auto x = y.head(n);
    const auto v = y.tail(n);
    dy.head(n) = v;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const PolyField& g = c.gamma(i, j, k);
          if (!g.is_zero()) acc -= g.eval(x) * v[j] * v[k];
        }
      dy[n + i] = acc;
    }
    return dy;
  };

  GeodesicTrace trace;
  trace.step = h;
  Eigen::VectorXd y(2 * n);
  y.head(n) = x0;
  y.tail(n) = v0;
  trace.params.push_back(0.0);
  trace.points.push_back(x0);
  for (int m = 1; m <= max_steps; ++m) {
    y = rk4_step(rhs, y, h);
    if (!c.domain().contains(y.head(n))) {
      trace.truncated = true;
      break;
    }
    trace.params.push_back(m * h);
    trace.points.push_back(y.head(n));
  }
  return trace;
}

GeodesicTrace geodesic_rho(const ConeConnection& k, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& s0, double h, int max_steps) {
  const int n = k.dim();
  const int N = n + 1;
  if (x0.size() != n) throw InputError("geodesic_rho: point dimension mismatch");
  if (s0.size() != N) throw InputError("geodesic_rho: fiber vector must have n+1 entries");
  if (!k.domain().contains(x0)) throw InputError("geodesic_rho: start outside domain");
  if (s0.tail(n).norm() == 0.0)
    throw InputError("geodesic_rho: horizontal part of the lift is zero");
  if (h <= 0.0) throw InputError("geodesic_rho: step must be positive");
  if (max_steps < 0) throw InputError("geodesic_rho: negative step count");

  // State (x, s); the anchor collapses frame derivatives onto d/dt.
  Rhs rhs = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd dy(n + N);
    const auto x = y.head(n);
    const auto s = y.tail(N);
    dy.head(n) = s.tail(n);
    for (int A = 0; A < N; ++A) {
      double acc = 0.0;
      for (int B = 0; B < N; ++B)
        for (int C = 0; C < N; ++C) {
          const PolyField& g = k.gammahat(A, B, C);
          if (!g.is_zero()) acc -= g.eval(x) * s[B] * s[C];
        }
      dy[n + A] = acc;
    }
    return dy;
  };

  GeodesicTrace trace;
  trace.step = h;
  Eigen::VectorXd y(n + N);
  y.head(n) = x0;
  y.tail(N) = s0;
  trace.params.push_back(0.0);
  trace.points.push_back(x0);
  trace.fibers.push_back(s0);
  for (int m = 1; m <= max_steps; ++m) {
    y = rk4_step(rhs, y, h);
    if (!k.domain().contains(y.head(n))) {
      trace.truncated = true;
      break;
    }
    trace.params.push_back(m * h);
    trace.points.push_back(y.head(n));
    trace.fibers.push_back(y.tail(N));
  }
  return trace;
}

MatchReport compare_unparametrized(const GeodesicTrace& t1, const GeodesicTrace& t2,
                                   double tol) {
  if (t1.size() < 2 || t2.size() < 2)
    throw InputError("compare_unparametrized: traces need at least 2 samples");
  if (t1.points.front().size() != t2.points.front().size())
    throw InputError("compare_unparametrized: traces live in different charts");

  double dist = 0.0;
  for (const auto& p : t1.points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + 1 < t2.points.size(); ++s)
      best = std::min(best, point_segment_distance(p, t2.points[s], t2.points[s + 1]));
    dist = std::max(dist, best);
  }
  return {dist, tol, dist <= tol};
}

}  // namespace projcone
