#include "projcone/chart_connection.hpp"

#include <algorithm>
#include <cmath>

#include "projcone/errors.hpp"

namespace projcone {

Box default_box(int n) {
  Box b;
  b.lo = Eigen::VectorXd::Constant(n, -1.0);
  b.hi = Eigen::VectorXd::Constant(n, 1.0);
  return b;
}

ChartConnection::ChartConnection(int n, Box domain) : n_(n), domain_(std::move(domain)) {
  if (n < 2) throw InputError("ChartConnection: dimension must be at least 2");
  if (domain_.lo.size() != n || domain_.hi.size() != n)
    throw InputError("ChartConnection: domain box dimension mismatch");
  if (!(domain_.lo.array() < domain_.hi.array()).all())
    throw InputError("ChartConnection: domain box is degenerate");
  gamma_.assign(static_cast<std::size_t>(n) * n * n, PolyField(n));
}

std::size_t ChartConnection::index(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_)
    throw InputError("ChartConnection: Christoffel index out of range");
  return static_cast<std::size_t>((i * n_ + j) * n_ + k);
}

void ChartConnection::set_gamma(int i, int j, int k, PolyField p) {
  if (p.vars() != n_) throw InputError("ChartConnection: polynomial variable count mismatch");
  gamma_[index(i, j, k)] = std::move(p);
}

void ChartConnection::set_gamma_sym(int i, int j, int k, const PolyField& p) {
  set_gamma(i, j, k, p);
  if (j != k) set_gamma(i, k, j, p);
}

bool ChartConnection::is_torsion_free() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k)
        if (!(gamma(i, j, k) == gamma(i, k, j))) return false;
  return true;
}

double ChartConnection::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& p : gamma_) m = std::max(m, p.max_abs_coeff());
  return m;
}

OneFormField::OneFormField(int n) : n_(n) {
  if (n < 1) throw InputError("OneFormField: dimension must be positive");
  alpha_.assign(static_cast<std::size_t>(n), PolyField(n));
}

const PolyField& OneFormField::component(int k) const {
  if (k < 0 || k >= n_) throw InputError("OneFormField: component index out of range");
  return alpha_[static_cast<std::size_t>(k)];
}

void OneFormField::set_component(int k, PolyField p) {
  if (k < 0 || k >= n_) throw InputError("OneFormField: component index out of range");
  if (p.vars() != n_) throw InputError("OneFormField: polynomial variable count mismatch");
  alpha_[static_cast<std::size_t>(k)] = std::move(p);
}

double OneFormField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& p : alpha_) m = std::max(m, p.max_abs_coeff());
  return m;
}

ChartConnection symmetrize(const ChartConnection& c) {
  const int n = c.dim();
  ChartConnection out(n, c.domain());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        out.set_gamma_sym(i, j, k, (c.gamma(i, j, k) + c.gamma(i, k, j)) * 0.5);
  return out;
}

ChartConnection projective_shift(const ChartConnection& c, const OneFormField& a) {
  const int n = c.dim();
  if (a.dim() != n) throw InputError("projective_shift: one-form dimension mismatch");
  ChartConnection out(n, c.domain());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        PolyField g = c.gamma(i, j, k);
        if (i == k) g += a.component(j);
        if (i == j) g += a.component(k);
        out.set_gamma_sym(i, j, k, g);
      }
  return out;
}

AlphaExtraction extract_alpha(const ChartConnection& c1, const ChartConnection& c2,
                              double rel_tol) {
  const int n = c1.dim();
  if (c2.dim() != n) throw InputError("extract_alpha: connection dimensions differ");
  if (!(c1.domain() == c2.domain())) throw InputError("extract_alpha: domains differ");

  AlphaExtraction result{false, OneFormField(n), 0.0};
  // alpha_k = tr(D)_k / (n+1); the shift form is then subtracted and whatever
  // is left is the obstruction.
  for (int k = 0; k < n; ++k) {
    PolyField tr(n);
    for (int i = 0; i < n; ++i) tr += c2.gamma(i, i, k) - c1.gamma(i, i, k);
    result.alpha.set_component(k, tr * (1.0 / (n + 1)));
  }
  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        PolyField d = c2.gamma(i, j, k) - c1.gamma(i, j, k);
        if (i == k) d -= result.alpha.component(j);
        if (i == j) d -= result.alpha.component(k);
        residual = std::max(residual, d.max_abs_coeff());
      }
  result.residual = residual;
  const double scale = 1.0 + std::max(c1.max_abs_coeff(), c2.max_abs_coeff());
  result.equivalent = residual <= rel_tol * scale;
  return result;
}

ChartConnection thomas_symbols(const ChartConnection& c) {
  const int n = c.dim();
  std::vector<PolyField> trace;
  trace.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    PolyField tr(n);
    for (int l = 0; l < n; ++l) tr += c.gamma(l, l, k);
    trace.push_back(std::move(tr));
  }
  const double inv = 1.0 / (n + 1);
  ChartConnection out(n, c.domain());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        PolyField g = c.gamma(i, j, k);
        if (i == j) g -= trace[static_cast<std::size_t>(k)] * inv;
        if (i == k) g -= trace[static_cast<std::size_t>(j)] * inv;
        out.set_gamma_sym(i, j, k, g);
      }
  return out;
}

CurvatureField riemann(const ChartConnection& c) {
  const int n = c.dim();
  CurvatureField cf;
  cf.n = n;
  cf.riemann.assign(static_cast<std::size_t>(n) * n * n * n, PolyField(n));
  cf.ricci.assign(static_cast<std::size_t>(n) * n, PolyField(n));
  cf.nabla_ricci.assign(static_cast<std::size_t>(n) * n * n, PolyField(n));

  auto rslot = [&](int i, int l, int j, int k) -> PolyField& {
    return cf.riemann[static_cast<std::size_t>(((i * n + l) * n + j) * n + k)];
  };

  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {  // antisymmetric in (j,k); diagonal is zero
          PolyField r = c.gamma(i, k, l).partial(j) - c.gamma(i, j, l).partial(k);
          for (int m = 0; m < n; ++m) {
            if (!c.gamma(i, j, m).is_zero() && !c.gamma(m, k, l).is_zero())
              r += c.gamma(i, j, m) * c.gamma(m, k, l);
            if (!c.gamma(i, k, m).is_zero() && !c.gamma(m, j, l).is_zero())
              r -= c.gamma(i, k, m) * c.gamma(m, j, l);
          }
          rslot(i, l, k, j) = -r;
          rslot(i, l, j, k) = std::move(r);
        }

  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      PolyField ric(n);
      for (int i = 0; i < n; ++i) ric += cf.r(i, j, i, k);
      cf.ricci[static_cast<std::size_t>(j * n + k)] = std::move(ric);
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        PolyField d = cf.ric(j, k).partial(i);
        for (int m = 0; m < n; ++m) {
          if (!c.gamma(m, i, j).is_zero() && !cf.ric(m, k).is_zero())
            d -= c.gamma(m, i, j) * cf.ric(m, k);
          if (!c.gamma(m, i, k).is_zero() && !cf.ric(j, m).is_zero())
            d -= c.gamma(m, i, k) * cf.ric(j, m);
        }
        cf.nabla_ricci[static_cast<std::size_t>((i * n + j) * n + k)] = std::move(d);
      }

  return cf;
}

}  // namespace projcone
