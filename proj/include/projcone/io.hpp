#ifndef PROJCONE_IO_HPP
#define PROJCONE_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "projcone/chart_connection.hpp"
#include "projcone/cone.hpp"
#include "projcone/develop.hpp"
#include "projcone/geodesic.hpp"
#include "projcone/invariants.hpp"

namespace projcone {

/// Run-wide knobs shared by the CLI commands.
struct RunConfig {
  double flat_tol = 1e-8;
  double theorem_tol = 1e-9;
  double step = 1e-2;
  double match_tol = 1e-5;
  int grid_per_axis = 5;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: no artifact files, reports go to stdout only

  void validate() const;  // tolerances > 0, grid resolution >= 2
};

/// Shortest round-trip decimal form of a double (also used for CSV cells).
std::string fmt_double(double v);

// --- polynomials ---

/// Polynomial serialization: JSON array of {"coeff": number, "exp": [e1..en]};
/// an empty/omitted array is the zero polynomial.
nlohmann::json poly_to_json(const PolyField& p);
PolyField poly_from_json(const nlohmann::json& j, int num_vars, const std::string& where);

/// Tiny expression syntax for CLI builtin parameters, e.g. "x1", "-2*x1^2*x2",
/// "0.5*x1 + x2^3 - 1". Terms are separated by +/-, factors by '*'.
PolyField parse_poly_expr(const std::string& text, int num_vars);

// --- connection documents ---

/// Parses a connection document (schema 1): either explicit Christoffel data
///   {"schema":1, "n":2, "domain":{"lo":[...],"hi":[...]},
///    "gamma":[{"i":1,"j":2,"k":2,"poly":[...]} ...]}   (1-based, j <= k)
/// or a builtin reference
///   {"schema":1, "builtin":"nonflat_demo", "params":{...}}.
/// Entries are completed symmetrically; duplicate (i,j,k) keys, indices out of
/// range, n < 2 and polynomial degree > 8 are rejected with the JSON location.
ChartConnection parse_connection(const nlohmann::json& doc);
ChartConnection parse_connection_file(const std::string& path);

nlohmann::json serialize_connection(const ChartConnection& c);

/// Builtin catalog: "flat" (params: n), "alpha_shift" (params: n, alpha),
/// "nonflat_demo" (no params; n=2, Gamma^1_{22}=x1^2 on [-1,1]^2).
ChartConnection builtin_connection(const std::string& name, const nlohmann::json& params);

/// CLI builtin syntax NAME[:key=value,...]; alpha components are given as
/// expressions, e.g. "alpha_shift:n=2,alpha1=x1".
ChartConnection parse_builtin_arg(const std::string& arg);

// --- reports ---

nlohmann::json verification_report_to_json(const VerificationReport& report);
nlohmann::json invariant_report_to_json(const InvariantReport& report);
nlohmann::json cone_to_json(const ConeConnection& k);

// --- traces ---

/// CSV with a metadata comment line, a header row t,x1..xn[,s0..sn], then one
/// row per sample in shortest round-trip decimals.
void write_trace_csv(std::ostream& os, const GeodesicTrace& trace);

/// CSV with header x1..xn,h0..hn: target chart coordinates then normalized
/// homogeneous coordinates.
void write_developed_csv(std::ostream& os, const std::vector<Eigen::VectorXd>& targets,
                         const std::vector<ProjPoint>& points);

/// Points file for develop: JSON array of coordinate arrays.
std::vector<Eigen::VectorXd> parse_points_file(const std::string& path, int n);

}  // namespace projcone

#endif
