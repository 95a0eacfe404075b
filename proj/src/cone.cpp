#include "projcone/cone.hpp"

#include <algorithm>
#include <cmath>

#include "projcone/errors.hpp"

namespace projcone {

ConeConnection::ConeConnection(ChartConnection source_pi)
    : n_(source_pi.dim()), source_pi_(std::move(source_pi)) {
  const std::size_t N = static_cast<std::size_t>(n_) + 1;
  gammahat_.assign(N * N * N, PolyField(n_));
}

std::size_t ConeConnection::index(int A, int B, int C) const {
  const int N = n_ + 1;
  if (A < 0 || B < 0 || C < 0 || A >= N || B >= N || C >= N)
    throw InputError("ConeConnection: frame index out of range");
  return static_cast<std::size_t>((A * N + B) * N + C);
}

void ConeConnection::set_gammahat(int A, int B, int C, PolyField p) {
  if (p.vars() != n_) throw InputError("ConeConnection: polynomial variable count mismatch");
  gammahat_[index(A, B, C)] = std::move(p);
}

double ConeConnection::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& p : gammahat_) m = std::max(m, p.max_abs_coeff());
  return m;
}

ConeConnection build_cone(const ChartConnection& c) {
  const int n = c.dim();
  if (n < 2) throw InputError("build_cone: dimension must be at least 2");
  ChartConnection pi = thomas_symbols(c);
  const CurvatureField cf = riemann(pi);

  ConeConnection cone(std::move(pi));
  const double vert = -1.0 / (n + 1);
  const double ric_scale = static_cast<double>(n + 1) / (n - 1);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        cone.set_gammahat(i + 1, j + 1, k + 1, cone.source_pi().gamma(i, j, k));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      cone.set_gammahat(0, j + 1, k + 1, cf.ric(j, k) * ric_scale);
  for (int i = 0; i < n; ++i) {
    cone.set_gammahat(i + 1, 0, i + 1, PolyField::constant(n, vert));
    cone.set_gammahat(i + 1, i + 1, 0, PolyField::constant(n, vert));
  }
  cone.set_gammahat(0, 0, 0, PolyField::constant(n, vert));
  return cone;
}

ConeCurvature cone_curvature(const ConeConnection& k) {
  const int n = k.dim();
  const int N = n + 1;
  ConeCurvature out;
  out.n = n;
  out.rhat.assign(static_cast<std::size_t>(N) * N * N * N, PolyField(n));

  // d_0 == 0: the vertical direction projects to the zero vector.
  auto deriv = [&](const PolyField& p, int B) -> PolyField {
    return B == 0 ? PolyField(n) : p.partial(B - 1);
  };
  auto slot = [&](int A, int D, int B, int C) -> PolyField& {
    return out.rhat[static_cast<std::size_t>(((A * N + D) * N + B) * N + C)];
  };

  for (int A = 0; A < N; ++A)
    for (int D = 0; D < N; ++D)
      for (int B = 0; B < N; ++B)
        for (int C = B + 1; C < N; ++C) {  // antisymmetric in (B,C)
          PolyField r = deriv(k.gammahat(A, C, D), B) - deriv(k.gammahat(A, B, D), C);
          for (int E = 0; E < N; ++E) {
            if (!k.gammahat(A, B, E).is_zero() && !k.gammahat(E, C, D).is_zero())
              r += k.gammahat(A, B, E) * k.gammahat(E, C, D);
            if (!k.gammahat(A, C, E).is_zero() && !k.gammahat(E, B, D).is_zero())
              r -= k.gammahat(A, C, E) * k.gammahat(E, B, D);
          }
          slot(A, D, C, B) = -r;
          slot(A, D, B, C) = std::move(r);
        }
  return out;
}

std::vector<PolyField> cone_ricci(const ConeCurvature& r) {
  const int n = r.n;
  const int N = n + 1;
  std::vector<PolyField> ric(static_cast<std::size_t>(N) * N, PolyField(n));
  for (int B = 0; B < N; ++B)
    for (int C = 0; C < N; ++C) {
      PolyField sum(n);
      for (int A = 0; A < N; ++A) sum += r.r(A, B, A, C);
      ric[static_cast<std::size_t>(B * N + C)] = std::move(sum);
    }
  return ric;
}

namespace {

struct ResidualTracker {
  double max = 0.0;
  Eigen::VectorXd worst;

  void feed(double value, const Eigen::VectorXd& x) {
    const double a = std::abs(value);
    if (a > max) {
      max = a;
      worst = x;
    }
  }
};

}  // namespace

VerificationReport verify_theorem(const ConeConnection& k, const InvariantField& inv,
                                  const std::vector<Eigen::VectorXd>& grid, double tol) {
  if (grid.empty()) throw InputError("verify_theorem: empty grid");
  const int n = k.dim();
  const int N = n + 1;
  if (inv.n != n) throw InputError("verify_theorem: invariant dimension mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        if (!(inv.source_pi.gamma(i, j, kk) == k.source_pi().gamma(i, j, kk)))
          throw InputError("verify_theorem: invariants come from a different representative");

  const ConeCurvature rc = cone_curvature(k);
  const double vert = -1.0 / (n + 1);
  const double cot_scale = static_cast<double>(n + 1) / (n - 1);
  const std::vector<PolyField> rich = cone_ricci(rc);

  ResidualTracker torsion, unit_rules, trace, ricci_flat, decomposition, unit_slot;
  ResidualTracker curvature;  // magnitude, not a residual

  for (const auto& x : grid) {
    for (int A = 0; A < N; ++A)
      for (int B = 0; B < N; ++B)
        for (int C = B + 1; C < N; ++C)
          torsion.feed(k.gammahat(A, B, C).eval(x) - k.gammahat(A, C, B).eval(x), x);

    for (int A = 0; A < N; ++A)
      for (int B = 0; B < N; ++B) {
        const double expected = (A == B) ? vert : 0.0;
        unit_rules.feed(k.gammahat(A, 0, B).eval(x) - expected, x);
      }

    for (int C = 0; C < N; ++C) {
      double tr = 0.0;
      for (int A = 0; A < N; ++A) tr += k.gammahat(A, A, C).eval(x);
      trace.feed(C == 0 ? tr + 1.0 : tr, x);
    }

    for (const auto& p : rich) ricci_flat.feed(p.eval(x), x);

    for (int A = 0; A < N; ++A)
      for (int D = 0; D < N; ++D)
        for (int B = 0; B < N; ++B)
          for (int C = 0; C < N; ++C) {
            const double v = rc.r(A, D, B, C).eval(x);
            curvature.feed(v, x);
            if (D == 0 || B == 0 || C == 0) {
              unit_slot.feed(v, x);
            } else if (A >= 1) {
              decomposition.feed(v - inv.w(A - 1, D - 1, B - 1, C - 1).eval(x), x);
            } else {
              decomposition.feed(v - cot_scale * inv.c(B - 1, C - 1, D - 1).eval(x), x);
            }
          }
  }

  VerificationReport report;
  report.tolerance = tol;
  auto push = [&](const char* name, const ResidualTracker& t, double check_tol) {
    VerificationCheck c;
    c.name = name;
    c.max_residual = t.max;
    c.worst_point = t.worst.size() ? t.worst : grid.front();
    c.tolerance = check_tol;
    c.pass = t.max <= check_tol;
    report.checks.push_back(std::move(c));
  };
  push("torsion_free", torsion, tol);
  push("unit_rules", unit_rules, tol);
  push("trace_identities", trace, tol);
  push("ricci_flat", ricci_flat, tol);
  push("decomposition", decomposition, tol);
  push("unit_slot_curvature", unit_slot, 1e-12);

  report.all_pass = true;
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  report.max_curvature = curvature.max;
  report.max_curvature_point = curvature.worst.size() ? curvature.worst : grid.front();
  return report;
}

}  // namespace projcone
