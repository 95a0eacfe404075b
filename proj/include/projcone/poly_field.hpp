#ifndef PROJCONE_POLY_FIELD_HPP
#define PROJCONE_POLY_FIELD_HPP

#include <Eigen/Core>
#include <map>
#include <vector>

namespace projcone {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with double coefficients, stored as a map
/// from exponent multi-indices to coefficients. Terms are kept in lexicographic
/// exponent order, so evaluation and serialization are bit-reproducible.
/// Coefficients that cancel to exactly 0.0 are pruned; no stored term is zero.
///
/// Values are immutable in practice: every operation returns a new field, and
/// const instances are safe to share across threads.
class PolyField {
 public:
  PolyField() = default;
  explicit PolyField(int num_vars);

  static PolyField constant(int num_vars, double value);
  static PolyField monomial(int num_vars, Exponents exp, double coeff);
  static PolyField variable(int num_vars, int axis);  // the coordinate x_axis (0-based)

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  const std::map<Exponents, double>& terms() const { return terms_; }
  double max_abs_coeff() const;

  double eval(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  PolyField partial(int axis) const;

  PolyField& operator+=(const PolyField& rhs);
  PolyField& operator-=(const PolyField& rhs);
  PolyField& operator*=(const PolyField& rhs);
  PolyField& operator*=(double s);

  friend PolyField operator+(PolyField a, const PolyField& b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField& b) { return a -= b; }
  friend PolyField operator*(PolyField a, const PolyField& b) { return a *= b; }
  friend PolyField operator*(PolyField a, double s) { return a *= s; }
  friend PolyField operator*(double s, PolyField a) { return a *= s; }
  friend PolyField operator-(PolyField a) { return a *= -1.0; }

  /// Exact term-map equality (coefficients compared bitwise).
  friend bool operator==(const PolyField& a, const PolyField& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponents& exp, double coeff);
  void require_same_vars(const PolyField& rhs) const;

  int vars_ = 0;
  std::map<Exponents, double> terms_;
};

// Operation-style spellings, convenient in pipeline code.
inline double eval(const PolyField& p, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return p.eval(x);
}
inline PolyField add(const PolyField& p, const PolyField& q) { return p + q; }
inline PolyField mul(const PolyField& p, const PolyField& q) { return p * q; }
inline PolyField scale(const PolyField& p, double c) { return p * c; }
inline PolyField partial(const PolyField& p, int axis) { return p.partial(axis); }

/// Largest |coefficient| of (p - q), walking both term maps without forming
/// the difference. Zero iff the maps agree exactly.
double max_coeff_diff(const PolyField& p, const PolyField& q);

/// Coefficient-level equality at the project-wide tolerance: every coefficient
/// of the difference within rel * (1 + largest input coefficient magnitude).
bool approx_equal_terms(const PolyField& p, const PolyField& q, double rel = 1e-9);

/// All coefficients of p within rel * (1 + max |coeff of p|) of zero. Because
/// exact cancellations are pruned this usually just means p.is_zero(), but it
/// also tolerates roundoff residue from float pipelines.
bool approx_zero_terms(const PolyField& p, double abs_tol);

}  // namespace projcone

#endif
