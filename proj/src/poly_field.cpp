#include "projcone/poly_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "projcone/errors.hpp"

namespace projcone {

namespace {

double pow_int(double x, int e) {
  double r = 1.0;
  double b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

PolyField::PolyField(int num_vars) : vars_(num_vars) {
  if (num_vars < 1) throw InputError("PolyField: number of variables must be positive");
}

PolyField PolyField::constant(int num_vars, double value) {
  PolyField p(num_vars);
  p.add_term(Exponents(static_cast<std::size_t>(num_vars), 0), value);
  return p;
}

PolyField PolyField::monomial(int num_vars, Exponents exp, double coeff) {
  PolyField p(num_vars);
  if (static_cast<int>(exp.size()) != num_vars)
    throw InputError("PolyField: exponent tuple length does not match num_vars");
  for (int e : exp)
    if (e < 0) throw InputError("PolyField: exponents must be non-negative");
  if (!std::isfinite(coeff)) throw InputError("PolyField: coefficient must be finite");
  p.add_term(exp, coeff);
  return p;
}

PolyField PolyField::variable(int num_vars, int axis) {
  if (axis < 0 || axis >= num_vars) throw InputError("PolyField: variable axis out of range");
  Exponents exp(static_cast<std::size_t>(num_vars), 0);
  exp[static_cast<std::size_t>(axis)] = 1;
  return monomial(num_vars, std::move(exp), 1.0);
}

int PolyField::total_degree() const {
  int deg = 0;
  for (const auto& [exp, coeff] : terms_)
    deg = std::max(deg, std::accumulate(exp.begin(), exp.end(), 0));
  return deg;
}

double PolyField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [exp, coeff] : terms_) m = std::max(m, std::abs(coeff));
  return m;
}

double PolyField::eval(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != vars_) throw InputError("PolyField::eval: point dimension mismatch");
  double sum = 0.0;  // map iteration is lexicographic, so the order is fixed
  for (const auto& [exp, coeff] : terms_) {
    double term = coeff;
    for (int a = 0; a < vars_; ++a)
      if (exp[static_cast<std::size_t>(a)] > 0)
        term *= pow_int(x[a], exp[static_cast<std::size_t>(a)]);
    sum += term;
  }
  return sum;
}

PolyField PolyField::partial(int axis) const {
  if (axis < 0 || axis >= vars_) throw InputError("PolyField::partial: axis out of range");
  PolyField out(vars_);
  for (const auto& [exp, coeff] : terms_) {
    const int e = exp[static_cast<std::size_t>(axis)];
    if (e == 0) continue;
    Exponents lowered = exp;
    lowered[static_cast<std::size_t>(axis)] = e - 1;
    out.add_term(lowered, coeff * static_cast<double>(e));
  }
  return out;
}

void PolyField::add_term(const Exponents& exp, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exp, 0.0);
  it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

void PolyField::require_same_vars(const PolyField& rhs) const {
  if (vars_ != rhs.vars_) throw InputError("PolyField: operand variable counts differ");
}

PolyField& PolyField::operator+=(const PolyField& rhs) {
  require_same_vars(rhs);
  for (const auto& [exp, coeff] : rhs.terms_) add_term(exp, coeff);
  return *this;
}

PolyField& PolyField::operator-=(const PolyField& rhs) {
  require_same_vars(rhs);
  for (const auto& [exp, coeff] : rhs.terms_) add_term(exp, -coeff);
  return *this;
}

PolyField& PolyField::operator*=(const PolyField& rhs) {
  require_same_vars(rhs);
  PolyField out(vars_);
  Exponents exp(static_cast<std::size_t>(vars_), 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int a = 0; a < vars_; ++a)
        exp[static_cast<std::size_t>(a)] =
            ea[static_cast<std::size_t>(a)] + eb[static_cast<std::size_t>(a)];
      out.add_term(exp, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

PolyField& PolyField::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = (it->second == 0.0) ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

double max_coeff_diff(const PolyField& p, const PolyField& q) {
  double m = 0.0;
  auto ip = p.terms().begin();
  auto iq = q.terms().begin();
  while (ip != p.terms().end() || iq != q.terms().end()) {
    if (iq == q.terms().end() || (ip != p.terms().end() && ip->first < iq->first)) {
      m = std::max(m, std::abs(ip->second));
      ++ip;
    } else if (ip == p.terms().end() || iq->first < ip->first) {
      m = std::max(m, std::abs(iq->second));
      ++iq;
    } else {
      m = std::max(m, std::abs(ip->second - iq->second));
      ++ip;
      ++iq;
    }
  }
  return m;
}

bool approx_equal_terms(const PolyField& p, const PolyField& q, double rel) {
  const double tol = rel * (1.0 + std::max(p.max_abs_coeff(), q.max_abs_coeff()));
  return max_coeff_diff(p, q) <= tol;
}

bool approx_zero_terms(const PolyField& p, double abs_tol) {
  return p.max_abs_coeff() <= abs_tol;
}

}  // namespace projcone
