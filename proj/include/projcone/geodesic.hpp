#ifndef PROJCONE_GEODESIC_HPP
#define PROJCONE_GEODESIC_HPP

#include <Eigen/Core>
#include <vector>

#include "projcone/chart_connection.hpp"
#include "projcone/cone.hpp"

namespace projcone {

/// Sampled geodesic. For cone traces `fibers` holds the section coordinates
/// s(t) in R^{n+1} (vertical coordinate first); classical traces leave it
/// empty. Integration stops at the last in-domain sample, flagged truncated.
struct GeodesicTrace {
  std::vector<double> params;
  std::vector<Eigen::VectorXd> points;
  std::vector<Eigen::VectorXd> fibers;
  double step = 0.0;
  int integrator_order = 4;
  bool truncated = false;

  bool has_fibers() const { return !fibers.empty(); }
  std::size_t size() const { return params.size(); }
};

/// Classical geodesic ODE  x'' + Gamma(x)(x', x') = 0, fixed-step RK4.
GeodesicTrace geodesic_classical(const ChartConnection& c, const Eigen::VectorXd& x0,
                                 const Eigen::VectorXd& v0, double h, int max_steps);

/// Cone geodesic system  x' = s_horizontal, s' + GH(x)(s, s) = 0 with the
/// full fiber vector s in R^{n+1}. Requires a nonzero horizontal part.
GeodesicTrace geodesic_rho(const ConeConnection& k, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& s0, double h, int max_steps);

struct MatchReport {
  double distance = 0.0;  // one-sided discrete Hausdorff, t1 points vs t2 polyline
  double tol = 0.0;
  bool match = false;
};

/// Unparametrized comparison: largest distance from any sample of t1 to the
/// polyline through t2's samples.
MatchReport compare_unparametrized(const GeodesicTrace& t1, const GeodesicTrace& t2,
                                   double tol);

}  // namespace projcone

#endif
