#include "projcone/invariants.hpp"

#include <cmath>
#include <string>

#include "projcone/errors.hpp"

namespace projcone {

const char* convention_header() {
  return "R(d_j,d_k)d_l = R^i_{ljk} d_i; "
         "R^i_{ljk} = d_j G^i_{kl} - d_k G^i_{jl} + G^i_{jm} G^m_{kl} - G^i_{km} G^m_{jl}; "
         "Ric_{jk} = sum_i R^i_{jik}; W^i_{ljk} = R^i_{ljk} + (Ric_{jl} d^i_k - Ric_{kl} d^i_j)/(n-1); "
         "C_{jk;l} = (nabla Ric)_{j;kl} - (nabla Ric)_{k;jl}";
}

namespace {

void require_trace_free(const ChartConnection& pi, const char* op) {
  const int n = pi.dim();
  const double tol = 1e-9 * (1.0 + pi.max_abs_coeff());
  for (int k = 0; k < n; ++k) {
    PolyField tr(n);
    for (int l = 0; l < n; ++l) tr += pi.gamma(l, l, k);
    if (!approx_zero_terms(tr, tol))
      throw ContractError(std::string(op) +
                          ": representative is not trace-free; apply thomas_symbols first");
  }
}

}  // namespace

std::vector<PolyField> weyl(const ChartConnection& pi, const CurvatureField& cf) {
  require_trace_free(pi, "weyl");
  const int n = pi.dim();
  const double inv = 1.0 / (n - 1);
  std::vector<PolyField> w(static_cast<std::size_t>(n) * n * n * n, PolyField(n));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          PolyField comp = cf.r(i, l, j, k);
          if (i == k) comp += cf.ric(j, l) * inv;
          if (i == j) comp -= cf.ric(k, l) * inv;
          w[static_cast<std::size_t>(((i * n + l) * n + j) * n + k)] = std::move(comp);
        }
  return w;
}

std::vector<PolyField> cotton_york(const ChartConnection& pi, const CurvatureField& cf) {
  require_trace_free(pi, "cotton_york");
  const int n = pi.dim();
  std::vector<PolyField> c(static_cast<std::size_t>(n) * n * n, PolyField(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        c[static_cast<std::size_t>((j * n + k) * n + l)] = cf.dric(j, k, l) - cf.dric(k, j, l);
  return c;
}

InvariantField invariants(const ChartConnection& pi, const CurvatureField& cf) {
  InvariantField inv{pi.dim(), weyl(pi, cf), cotton_york(pi, cf), pi};
  return inv;
}

InvariantReport classify(const ChartConnection& c, int grid_per_axis, double flat_tol) {
  const int n = c.dim();
  const ChartConnection pi = thomas_symbols(c);
  const CurvatureField cf = riemann(pi);
  const InvariantField inv = invariants(pi, cf);
  const auto grid = make_grid(c.domain(), grid_per_axis);
  if (grid.empty()) throw InputError("classify: empty sampling grid");

  InvariantReport report;
  report.flat_tol = flat_tol;
  report.grid_per_axis = grid_per_axis;
  report.convention = convention_header();

  Witness worst_w, worst_c;
  for (const auto& x : grid) {
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
          for (int k = j + 1; k < n; ++k) {
            const double v = std::abs(inv.w(i, l, j, k).eval(x));
            if (v > report.max_weyl) {
              report.max_weyl = v;
              worst_w = {x,
                         "W^" + std::to_string(i + 1) + "_{" + std::to_string(l + 1) +
                             std::to_string(j + 1) + std::to_string(k + 1) + "}",
                         v};
            }
          }
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = std::abs(inv.c(j, k, l).eval(x));
          if (v > report.max_cotton) {
            report.max_cotton = v;
            worst_c = {x,
                       "C_{" + std::to_string(j + 1) + std::to_string(k + 1) + ";" +
                           std::to_string(l + 1) + "}",
                       v};
          }
        }
  }

  const double coeff_tol = 1e-9 * (1.0 + pi.max_abs_coeff());
  report.weyl_zero_coeffs = true;
  for (const auto& p : inv.weyl)
    if (!approx_zero_terms(p, coeff_tol)) {
      report.weyl_zero_coeffs = false;
      break;
    }
  report.cotton_zero_coeffs = true;
  for (const auto& p : inv.cotton)
    if (!approx_zero_terms(p, coeff_tol)) {
      report.cotton_zero_coeffs = false;
      break;
    }

  if (report.max_weyl <= flat_tol && report.max_cotton <= flat_tol) {
    report.verdict = Verdict::Flat;
  } else {
    report.verdict = Verdict::NonFlat;
    report.witness = (report.max_weyl >= report.max_cotton) ? worst_w : worst_c;
  }
  return report;
}

}  // namespace projcone
