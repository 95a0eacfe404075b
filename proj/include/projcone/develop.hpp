#ifndef PROJCONE_DEVELOP_HPP
#define PROJCONE_DEVELOP_HPP

#include <Eigen/Core>
#include <vector>

#include "projcone/cone.hpp"

namespace projcone {

/// Point of real projective n-space as normalized homogeneous coordinates:
/// max-abs component equal to 1, first component of maximal magnitude positive.
struct ProjPoint {
  Eigen::VectorXd homog;
};

ProjPoint normalize_projective(const Eigen::VectorXd& v);

/// Frame transported along a path: columns are the base-frame vectors
/// expressed in the trivialization at the endpoint.
struct TransportFrame {
  Eigen::MatrixXd matrix;
  double condition = 1.0;
};

/// Parallel transport in E along the horizontal lift of a chart polyline:
/// dt^A/dtau + GH^A_{jB} gdot^j t^B = 0, RK4 with step h per unit length,
/// composed segmentwise. The path must stay inside the domain box.
TransportFrame horizontal_transport(const ConeConnection& k,
                                    const std::vector<Eigen::VectorXd>& path, double h);

/// (Holonomy - Id)/(h1 h2) around the coordinate rectangle centered at
/// `center` in the (axis_j, axis_k) plane, oriented so that the limit h -> 0
/// is the curvature matrix [RH^A_{B jk}] (rows A, columns B).
Eigen::MatrixXd loop_holonomy(const ConeConnection& k, const Eigen::VectorXd& center,
                              double h1, double h2, int axis_j, int axis_k);

/// Developing map into projective n-space: phi(x) = [T_{base->x}^{-1} e_0]
/// where e_0 is the canonical vertical vector at x. Only defined on flat
/// cones; the gate samples |RH| over `gate_grid` and throws FlatnessError
/// with the witness point when it exceeds flat_tol.
std::vector<ProjPoint> develop(const ConeConnection& k, const Eigen::VectorXd& base,
                               const std::vector<Eigen::VectorXd>& targets,
                               const std::vector<Eigen::VectorXd>& gate_grid,
                               double flat_tol = 1e-8, double h = 1e-3);

struct LineCertificate {
  bool pass = false;
  double residual = 0.0;  // third singular value over first
  double tol = 0.0;
};

/// Rank test: the stacked homogeneous representatives span a projective line
/// iff the third singular value is negligible against the first.
LineCertificate line_certificate(const std::vector<ProjPoint>& points, double tol);

}  // namespace projcone

#endif
