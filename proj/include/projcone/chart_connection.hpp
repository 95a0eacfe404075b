#ifndef PROJCONE_CHART_CONNECTION_HPP
#define PROJCONE_CHART_CONNECTION_HPP

#include <Eigen/Core>
#include <vector>

#include "projcone/poly_field.hpp"

namespace projcone {

/// Axis-aligned chart domain. Must be non-degenerate (lo_i < hi_i).
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dims() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
  friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// [-1,1]^n, the default chart for builtin connections.
Box default_box(int n);

/// Torsion-free chart connection: Christoffel symbols Gamma^i_{jk} as
/// polynomials in the chart coordinates, with Gamma^i_{jk} = Gamma^i_{kj}.
/// Both (j,k) orderings are stored; set_gamma writes one slot at a time.
class ChartConnection {
 public:
  ChartConnection(int n, Box domain);

  int dim() const { return n_; }
  const Box& domain() const { return domain_; }

  const PolyField& gamma(int i, int j, int k) const { return gamma_[index(i, j, k)]; }
  void set_gamma(int i, int j, int k, PolyField p);
  /// Writes both (j,k) and (k,j); the usual way to populate a torsion-free input.
  void set_gamma_sym(int i, int j, int k, const PolyField& p);

  bool is_torsion_free() const;
  double max_abs_coeff() const;

 private:
  std::size_t index(int i, int j, int k) const;

  int n_;
  Box domain_;
  std::vector<PolyField> gamma_;
};

/// One-form with polynomial components alpha_k.
class OneFormField {
 public:
  explicit OneFormField(int n);

  int dim() const { return n_; }
  const PolyField& component(int k) const;
  void set_component(int k, PolyField p);
  double max_abs_coeff() const;

 private:
  int n_;
  std::vector<PolyField> alpha_;
};

/// Curvature stack of a chart connection. Component convention (fixed for the
/// whole project, and echoed in report headers):
///   R(d_j, d_k) d_l = R^i_{ljk} d_i,
///   R^i_{ljk} = d_j Gamma^i_{kl} - d_k Gamma^i_{jl}
///             + Gamma^i_{jm} Gamma^m_{kl} - Gamma^i_{km} Gamma^m_{jl},
///   Ric_{jk} = sum_i R^i_{jik},
///   (nabla Ric)_{i;jk} = d_i Ric_{jk} - Gamma^m_{ij} Ric_{mk} - Gamma^m_{ik} Ric_{jm}.
struct CurvatureField {
  int n = 0;
  std::vector<PolyField> riemann;      // R^i_{ljk}
  std::vector<PolyField> ricci;        // Ric_{jk}
  std::vector<PolyField> nabla_ricci;  // (nabla Ric)_{i;jk}

  const PolyField& r(int i, int l, int j, int k) const {
    return riemann[static_cast<std::size_t>(((i * n + l) * n + j) * n + k)];
  }
  const PolyField& ric(int j, int k) const {
    return ricci[static_cast<std::size_t>(j * n + k)];
  }
  const PolyField& dric(int i, int j, int k) const {
    return nabla_ricci[static_cast<std::size_t>((i * n + j) * n + k)];
  }
};

/// Symmetric part of the Christoffel array. Preserves geodesics; output is
/// torsion-free and idempotent on symmetric input.
ChartConnection symmetrize(const ChartConnection& c);

/// Gamma'^i_{jk} = Gamma^i_{jk} + alpha_j delta^i_k + alpha_k delta^i_j.
ChartConnection projective_shift(const ChartConnection& c, const OneFormField& a);

struct AlphaExtraction {
  bool equivalent = false;
  OneFormField alpha;
  double residual = 0.0;  // largest coefficient left after removing the shift form
};

/// Decides whether c2 - c1 has the shift form alpha (x) Id + Id (x) alpha and
/// recovers alpha from the trace when it does.
AlphaExtraction extract_alpha(const ChartConnection& c1, const ChartConnection& c2,
                              double rel_tol = 1e-9);

/// Trace-free (special) representative of the projective class:
/// Pi^i_{jk} = Gamma^i_{jk} - (delta^i_j tr_k + delta^i_k tr_j) / (n+1),
/// with tr_k = Gamma^l_{lk}. Satisfies sum_l Pi^l_{lk} = 0 and is invariant
/// under projective shifts.
ChartConnection thomas_symbols(const ChartConnection& c);

/// Riemann, Ricci and covariant-derivative-of-Ricci tensors of a torsion-free
/// connection, in the convention documented on CurvatureField.
CurvatureField riemann(const ChartConnection& c);

}  // namespace projcone

#endif
