#ifndef PROJCONE_CONE_HPP
#define PROJCONE_CONE_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "projcone/chart_connection.hpp"
#include "projcone/invariants.hpp"

namespace projcone {

/// The Thomas cone rho-connection on E = chart x R^{n+1}, in the gauge of the
/// trace-free representative Pi. Frame index 0 is the canonical vertical
/// direction (the scaling section), indices 1..n are the horizontal lifts of
/// the chart fields. Components:
///   GH^i_{jk} = Pi^i_{jk},   GH^0_{jk} = (n+1)/(n-1) Ric(Pi)_{jk},
///   GH^i_{0k} = GH^i_{k0} = -delta^i_k/(n+1),   GH^0_{00} = -1/(n+1),
///   all remaining components zero.
class ConeConnection {
 public:
  explicit ConeConnection(ChartConnection source_pi);

  int dim() const { return n_; }        // chart dimension; fiber rank is n+1
  int rank() const { return n_ + 1; }
  const Box& domain() const { return source_pi_.domain(); }
  const ChartConnection& source_pi() const { return source_pi_; }

  /// Frame indices A,B,C in 0..n (0 = vertical direction).
  const PolyField& gammahat(int A, int B, int C) const {
    return gammahat_[index(A, B, C)];
  }
  void set_gammahat(int A, int B, int C, PolyField p);

  double max_abs_coeff() const;

 private:
  std::size_t index(int A, int B, int C) const;

  int n_;
  ChartConnection source_pi_;
  std::vector<PolyField> gammahat_;
};

/// Cone curvature in the bracket-free frame (all frame brackets vanish):
///   RH^A_{DBC} = d_B GH^A_{CD} - d_C GH^A_{BD} + GH^A_{BE} GH^E_{CD}
///              - GH^A_{CE} GH^E_{BD},  with d_0 == 0.
struct ConeCurvature {
  int n = 0;
  std::vector<PolyField> rhat;  // RH^A_{DBC}, indices in 0..n

  const PolyField& r(int A, int D, int B, int C) const {
    const int N = n + 1;
    return rhat[static_cast<std::size_t>(((A * N + D) * N + B) * N + C)];
  }
};

/// Builds the cone connection of a torsion-free chart connection. The
/// construction is projectively invariant: shifted inputs give bitwise
/// identical results up to float associativity.
ConeConnection build_cone(const ChartConnection& c);

ConeCurvature cone_curvature(const ConeConnection& k);

/// RicH_{BC} = sum_A RH^A_{BAC}; identically zero for every built cone.
std::vector<PolyField> cone_ricci(const ConeCurvature& r);

struct VerificationCheck {
  std::string name;
  double max_residual = 0.0;
  Eigen::VectorXd worst_point;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  double tolerance = 0.0;
  bool all_pass = false;
  double max_curvature = 0.0;  // largest |RH| seen on the grid (not a residual)
  Eigen::VectorXd max_curvature_point;
};

/// Grid-sampled residuals for every defining property of the cone connection:
/// torsion-freeness, the vertical-direction rules, the trace identities, the
/// vanishing of the cone Ricci tensor, and the curvature decomposition into
/// Weyl and Cotton-York parts. `inv` must come from the same representative
/// the cone was built over.
VerificationReport verify_theorem(const ConeConnection& k, const InvariantField& inv,
                                  const std::vector<Eigen::VectorXd>& grid,
                                  double tol = 1e-9);

}  // namespace projcone

#endif
