#include "projcone/develop.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "projcone/errors.hpp"

namespace projcone {

namespace {

// Transport generator along direction d at x: M(A,B) = GH^A_{jB}(x) d^j.
Eigen::MatrixXd transport_generator(const ConeConnection& k, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& d) {
  const int N = k.rank();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (int A = 0; A < N; ++A)
    for (int B = 0; B < N; ++B) {
      double acc = 0.0;
      for (int j = 0; j < k.dim(); ++j) {
        const PolyField& g = k.gammahat(A, j + 1, B);
        if (!g.is_zero()) acc += g.eval(x) * d[j];
      }
      M(A, B) = acc;
    }
  return M;
}

// RK4 on T' = -M(x(tau)) T along the straight segment a -> b.
Eigen::MatrixXd transport_segment(const ConeConnection& k, const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b, int steps) {
  const int N = k.rank();
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(N, N);
  const Eigen::VectorXd d = b - a;
  const double h = 1.0 / steps;
  auto f = [&](double tau, const Eigen::MatrixXd& M) -> Eigen::MatrixXd {
    return -transport_generator(k, a + tau * d, d) * M;
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

std::string point_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

ProjPoint normalize_projective(const Eigen::VectorXd& v) {
  int imax = 0;
  double best = 0.0;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      imax = i;
    }
  if (best == 0.0) throw InputError("normalize_projective: zero vector");
  return ProjPoint{v / v[imax]};
}

TransportFrame horizontal_transport(const ConeConnection& k,
                                    const std::vector<Eigen::VectorXd>& path, double h) {
  if (path.empty()) throw InputError("horizontal_transport: empty path");
  if (h <= 0.0) throw InputError("horizontal_transport: step must be positive");
  for (const auto& p : path)
    if (p.size() != k.dim() || !k.domain().contains(p))
      throw InputError("horizontal_transport: path leaves the domain box");

  const int N = k.rank();
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(N, N);
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const double len = (path[s + 1] - path[s]).norm();
    if (len == 0.0) continue;
    const int steps = std::max(1, static_cast<int>(std::ceil(len / h)));
    T = transport_segment(k, path[s], path[s + 1], steps) * T;
  }

  TransportFrame frame;
  frame.matrix = T;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
  const auto& sv = svd.singularValues();
  frame.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
  return frame;
}

Eigen::MatrixXd loop_holonomy(const ConeConnection& k, const Eigen::VectorXd& center,
                              double h1, double h2, int axis_j, int axis_k) {
  const int n = k.dim();
  if (center.size() != n) throw InputError("loop_holonomy: center dimension mismatch");
  if (h1 <= 0.0 || h2 <= 0.0) throw InputError("loop_holonomy: degenerate rectangle");
  if (axis_j < 0 || axis_k < 0 || axis_j >= n || axis_k >= n || axis_j == axis_k)
    throw InputError("loop_holonomy: invalid axes");

  Eigen::VectorXd ej = Eigen::VectorXd::Zero(n), ek = Eigen::VectorXd::Zero(n);
  ej[axis_j] = 1.0;
  ek[axis_k] = 1.0;
  // Rectangle centered at `center`; traversing the k-edge first makes the
  // deviation converge to +RH(e_j, e_k) in this curvature convention.
  const Eigen::VectorXd p0 = center - 0.5 * h1 * ej - 0.5 * h2 * ek;
  const Eigen::VectorXd p1 = p0 + h2 * ek;
  const Eigen::VectorXd p2 = p1 + h1 * ej;
  const Eigen::VectorXd p3 = p0 + h1 * ej;
  for (const auto& p : {p0, p1, p2, p3})
    if (!k.domain().contains(p)) throw InputError("loop_holonomy: rectangle exits domain");

  const int kSubsteps = 16;
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(k.rank(), k.rank());
  T = transport_segment(k, p0, p1, kSubsteps) * T;
  T = transport_segment(k, p1, p2, kSubsteps) * T;
  T = transport_segment(k, p2, p3, kSubsteps) * T;
  T = transport_segment(k, p3, p0, kSubsteps) * T;
  return (T - Eigen::MatrixXd::Identity(k.rank(), k.rank())) / (h1 * h2);
}

std::vector<ProjPoint> develop(const ConeConnection& k, const Eigen::VectorXd& base,
                               const std::vector<Eigen::VectorXd>& targets,
                               const std::vector<Eigen::VectorXd>& gate_grid,
                               double flat_tol, double h) {
  if (gate_grid.empty()) throw InputError("develop: empty flatness gate grid");
  if (base.size() != k.dim() || !k.domain().contains(base))
    throw InputError("develop: base point outside domain");

  const ConeCurvature rc = cone_curvature(k);
  double worst = 0.0;
  Eigen::VectorXd witness = gate_grid.front();
  for (const auto& x : gate_grid)
    for (const auto& comp : rc.rhat) {
      const double v = std::abs(comp.eval(x));
      if (v > worst) {
        worst = v;
        witness = x;
      }
    }
  if (worst > flat_tol) {
    std::ostringstream os;
    os << "develop: connection is not flat; |RH| = " << worst << " at witness point "
       << point_string(witness);
    throw FlatnessError(os.str(), witness, worst);
  }

  const int N = k.rank();
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(N);
  unit[0] = 1.0;

  std::vector<ProjPoint> out;
  out.reserve(targets.size());
  for (const auto& x : targets) {
    const TransportFrame frame = horizontal_transport(k, {base, x}, h);
    out.push_back(normalize_projective(frame.matrix.partialPivLu().solve(unit)));
  }
  return out;
}

LineCertificate line_certificate(const std::vector<ProjPoint>& points, double tol) {
  if (points.size() < 3) throw InputError("line_certificate: need at least 3 points");
  const Eigen::Index N = points.front().homog.size();
  Eigen::MatrixXd A(static_cast<Eigen::Index>(points.size()), N);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].homog.size() != N)
      throw InputError("line_certificate: mixed homogeneous dimensions");
    A.row(static_cast<Eigen::Index>(i)) = points[i].homog.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double residual = sv(2) / sv(0);
  return {residual <= tol, residual, tol};
}

}  // namespace projcone
