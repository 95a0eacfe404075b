#ifndef PROJCONE_INVARIANTS_HPP
#define PROJCONE_INVARIANTS_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "projcone/chart_connection.hpp"
#include "projcone/grid.hpp"

namespace projcone {

/// Curvature convention string embedded in every report, so consumers can
/// detect convention drift.
const char* convention_header();

/// Projective Weyl and Cotton-York tensors of a trace-free representative.
/// W^i_{ljk} maps W(d_j, d_k) d_l; C_{jk;l} is C(d_j, d_k, d_l).
struct InvariantField {
  int n = 0;
  std::vector<PolyField> weyl;    // W^i_{ljk}
  std::vector<PolyField> cotton;  // C_{jk;l}
  ChartConnection source_pi;      // the representative both were computed from

  const PolyField& w(int i, int l, int j, int k) const {
    return weyl[static_cast<std::size_t>(((i * n + l) * n + j) * n + k)];
  }
  const PolyField& c(int j, int k, int l) const {
    return cotton[static_cast<std::size_t>((j * n + k) * n + l)];
  }
};

/// W^i_{ljk} = R^i_{ljk} + (Ric_{jl} delta^i_k - Ric_{kl} delta^i_j)/(n-1).
/// Requires pi trace-free (throws ContractError otherwise): the formula
/// assumes a symmetric Ricci tensor.
std::vector<PolyField> weyl(const ChartConnection& pi, const CurvatureField& cf);

/// C_{jk;l} = (nabla Ric)_{j;kl} - (nabla Ric)_{k;jl}. Same precondition.
std::vector<PolyField> cotton_york(const ChartConnection& pi, const CurvatureField& cf);

/// Both tensors packaged with their source representative.
InvariantField invariants(const ChartConnection& pi, const CurvatureField& cf);

enum class Verdict { Flat, NonFlat };

struct Witness {
  Eigen::VectorXd point;
  std::string component;
  double value = 0.0;
};

struct InvariantReport {
  Verdict verdict = Verdict::Flat;
  double flat_tol = 1e-8;
  double max_weyl = 0.0;
  double max_cotton = 0.0;
  Witness witness;  // meaningful when NonFlat
  bool weyl_zero_coeffs = false;    // exact coefficient-level vanishing
  bool cotton_zero_coeffs = false;
  int grid_per_axis = 0;
  std::string convention;
};

/// Full classification pipeline: thomas_symbols -> riemann -> W, C, sampled
/// over a uniform grid. FLAT iff both maxima stay within flat_tol.
InvariantReport classify(const ChartConnection& c, int grid_per_axis = 5,
                         double flat_tol = 1e-8);

}  // namespace projcone

#endif
