#include "projcone/io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "projcone/errors.hpp"

namespace projcone {

namespace {

constexpr int kMaxInputDegree = 8;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

int require_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer");
  return j.get<int>();
}

double require_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(where, "value must be finite");
  return v;
}

Eigen::VectorXd require_vector(const nlohmann::json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    parse_fail(where, "expected an array of " + std::to_string(n) + " numbers");
  Eigen::VectorXd v(n);
  for (int a = 0; a < n; ++a)
    v[a] = require_number(j[static_cast<std::size_t>(a)], where + "/" + std::to_string(a));
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (flat_tol <= 0.0 || theorem_tol <= 0.0 || step <= 0.0 || match_tol <= 0.0)
    throw InputError("config: tolerances and step must be positive");
  if (grid_per_axis < 2) throw InputError("config: grid resolution must be at least 2");
}

std::string fmt_double(double v) {
  std::array<char, 32> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), static_cast<std::size_t>(p - buf.data()));
}

nlohmann::json poly_to_json(const PolyField& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [exp, coeff] : p.terms()) {
    nlohmann::json t;
    t["coeff"] = coeff;
    t["exp"] = exp;
    terms.push_back(std::move(t));
  }
  return terms;
}

PolyField poly_from_json(const nlohmann::json& j, int num_vars, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "polynomial must be an array of terms");
  PolyField p(num_vars);
  std::size_t idx = 0;
  for (const auto& term : j) {
    const std::string here = where + "/" + std::to_string(idx++);
    if (!term.is_object() || !term.contains("coeff") || !term.contains("exp"))
      parse_fail(here, "term needs \"coeff\" and \"exp\"");
    const double coeff = require_number(term["coeff"], here + "/coeff");
    const auto& je = term["exp"];
    if (!je.is_array() || static_cast<int>(je.size()) != num_vars)
      parse_fail(here + "/exp", "expected " + std::to_string(num_vars) + " exponents");
    Exponents exp(static_cast<std::size_t>(num_vars));
    int degree = 0;
    for (int a = 0; a < num_vars; ++a) {
      const int e = require_int(je[static_cast<std::size_t>(a)],
                                here + "/exp/" + std::to_string(a));
      if (e < 0) parse_fail(here + "/exp", "exponents must be non-negative");
      exp[static_cast<std::size_t>(a)] = e;
      degree += e;
    }
    if (degree > kMaxInputDegree)
      parse_fail(here, "term degree " + std::to_string(degree) + " exceeds the input cap of " +
                           std::to_string(kMaxInputDegree));
    p += PolyField::monomial(num_vars, std::move(exp), coeff);
  }
  return p;
}

PolyField parse_poly_expr(const std::string& text, int num_vars) {
  PolyField out(num_vars);
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_ws();
  if (pos == text.size()) parse_fail("poly expr", "empty expression");
  bool first = true;
  while (pos < text.size()) {
    skip_ws();
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = (text[pos] == '-') ? -1.0 : 1.0;
      ++pos;
    } else if (!first) {
      parse_fail("poly expr", "expected '+' or '-' between terms in '" + text + "'");
    }
    first = false;
    skip_ws();

    double coeff = sign;
    Exponents exp(static_cast<std::size_t>(num_vars), 0);
    bool saw_factor = false;
    while (true) {
      skip_ws();
      if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) parse_fail("poly expr", "variable index missing after 'x'");
        const int var = std::stoi(text.substr(start, pos - start));
        if (var < 1 || var > num_vars)
          parse_fail("poly expr", "variable x" + std::to_string(var) + " out of range");
        int power = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          start = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (start == pos) parse_fail("poly expr", "exponent missing after '^'");
          power = std::stoi(text.substr(start, pos - start));
        }
        exp[static_cast<std::size_t>(var - 1)] += power;
        saw_factor = true;
      } else {
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) break;
        coeff *= v;
        pos += static_cast<std::size_t>(end - begin);
        saw_factor = true;
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!saw_factor) parse_fail("poly expr", "empty term in '" + text + "'");
    int degree = 0;
    for (int e : exp) degree += e;
    if (degree > kMaxInputDegree)
      parse_fail("poly expr", "term degree exceeds the input cap of " +
                                  std::to_string(kMaxInputDegree));
    out += PolyField::monomial(num_vars, exp, coeff);
  }
  return out;
}

ChartConnection parse_connection(const nlohmann::json& doc) {
  if (!doc.is_object()) parse_fail("/", "connection document must be a JSON object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<int>() != 1)
    parse_fail("/schema", "missing or unsupported schema (expected 1)");

  if (doc.contains("builtin")) {
    if (!doc["builtin"].is_string()) parse_fail("/builtin", "builtin name must be a string");
    return builtin_connection(doc["builtin"].get<std::string>(),
                              doc.value("params", nlohmann::json::object()));
  }

  if (!doc.contains("n")) parse_fail("/n", "missing dimension");
  const int n = require_int(doc["n"], "/n");
  if (n < 2) parse_fail("/n", "dimension must be at least 2");

  Box box = default_box(n);
  if (doc.contains("domain")) {
    const auto& jd = doc["domain"];
    if (!jd.is_object() || !jd.contains("lo") || !jd.contains("hi"))
      parse_fail("/domain", "expected {\"lo\": [...], \"hi\": [...]}");
    box.lo = require_vector(jd["lo"], n, "/domain/lo");
    box.hi = require_vector(jd["hi"], n, "/domain/hi");
    if (!(box.lo.array() < box.hi.array()).all())
      parse_fail("/domain", "box is degenerate (need lo_i < hi_i)");
  }

  ChartConnection c(n, box);
  if (doc.contains("gamma")) {
    const auto& jg = doc["gamma"];
    if (!jg.is_array()) parse_fail("/gamma", "expected an array of Christoffel records");
    std::set<std::array<int, 3>> seen;
    std::size_t idx = 0;
    for (const auto& rec : jg) {
      const std::string here = "/gamma/" + std::to_string(idx++);
      if (!rec.is_object()) parse_fail(here, "expected an object");
      for (const char* key : {"i", "j", "k", "poly"})
        if (!rec.contains(key)) parse_fail(here, std::string("missing \"") + key + "\"");
      const int i = require_int(rec["i"], here + "/i");
      const int j = require_int(rec["j"], here + "/j");
      const int k = require_int(rec["k"], here + "/k");
      for (auto [v, name] : {std::pair{i, "i"}, {j, "j"}, {k, "k"}})
        if (v < 1 || v > n)
          parse_fail(here + "/" + name,
                     "index must be between 1 and " + std::to_string(n));
      if (j > k) parse_fail(here, "use the j <= k convention (j=" + std::to_string(j) +
                                      ", k=" + std::to_string(k) + ")");
      if (!seen.insert({i, j, k}).second)
        parse_fail(here, "duplicate entry for (i,j,k)=(" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
      c.set_gamma_sym(i - 1, j - 1, k - 1, poly_from_json(rec["poly"], n, here + "/poly"));
    }
  }
  return c;
}

ChartConnection parse_connection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open connection file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("connection file " + path + ": " + e.what());
  }
  return parse_connection(doc);
}

nlohmann::json serialize_connection(const ChartConnection& c) {
  const int n = c.dim();
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["n"] = n;
  doc["domain"]["lo"] = std::vector<double>(c.domain().lo.data(), c.domain().lo.data() + n);
  doc["domain"]["hi"] = std::vector<double>(c.domain().hi.data(), c.domain().hi.data() + n);
  nlohmann::json gamma = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        if (c.gamma(i, j, k).is_zero()) continue;
        nlohmann::json rec;
        rec["i"] = i + 1;
        rec["j"] = j + 1;
        rec["k"] = k + 1;
        rec["poly"] = poly_to_json(c.gamma(i, j, k));
        gamma.push_back(std::move(rec));
      }
  doc["gamma"] = std::move(gamma);
  return doc;
}

ChartConnection builtin_connection(const std::string& name, const nlohmann::json& params) {
  if (name == "flat") {
    const int n = params.contains("n") ? require_int(params["n"], "/params/n") : 2;
    if (n < 2) parse_fail("/params/n", "dimension must be at least 2");
    return ChartConnection(n, default_box(n));
  }
  if (name == "alpha_shift") {
    const int n = params.contains("n") ? require_int(params["n"], "/params/n") : 2;
    if (n < 2) parse_fail("/params/n", "dimension must be at least 2");
    OneFormField alpha(n);
    bool any = false;
    if (params.contains("alpha")) {
      const auto& ja = params["alpha"];
      if (!ja.is_array() || static_cast<int>(ja.size()) != n)
        parse_fail("/params/alpha", "expected " + std::to_string(n) + " polynomials");
      for (int k = 0; k < n; ++k) {
        const auto& jk = ja[static_cast<std::size_t>(k)];
        alpha.set_component(
            k, jk.is_string()
                   ? parse_poly_expr(jk.get<std::string>(), n)
                   : poly_from_json(jk, n, "/params/alpha/" + std::to_string(k)));
      }
      any = true;
    }
    if (!any) alpha.set_component(0, PolyField::variable(n, 0));  // default: x1 dx1
    return projective_shift(ChartConnection(n, default_box(n)), alpha);
  }
  if (name == "nonflat_demo") {
    ChartConnection c(2, default_box(2));
    c.set_gamma_sym(0, 1, 1, PolyField::monomial(2, {2, 0}, 1.0));  // Gamma^1_{22} = x1^2
    return c;
  }
  throw InputError("unknown builtin connection: " + name);
}

ChartConnection parse_builtin_arg(const std::string& arg) {
  const auto colon = arg.find(':');
  const std::string name = arg.substr(0, colon);
  nlohmann::json params = nlohmann::json::object();
  std::map<int, std::string> alpha_exprs;
  int n = 2;
  if (colon != std::string::npos) {
    std::string rest = arg.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      const std::string pair = rest.substr(pos, comma - pos);
      pos = comma + 1;
      if (pair.empty()) continue;
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw InputError("builtin parameter '" + pair + "' is not key=value");
      const std::string key = pair.substr(0, eq);
      const std::string value = pair.substr(eq + 1);
      if (key == "n") {
        try {
          n = std::stoi(value);
        } catch (const std::exception&) {
          throw InputError("builtin parameter n must be an integer");
        }
        params["n"] = n;
      } else if (key.rfind("alpha", 0) == 0 && key.size() > 5) {
        int comp = 0;
        try {
          comp = std::stoi(key.substr(5));
        } catch (const std::exception&) {
          throw InputError("bad builtin parameter key: " + key);
        }
        alpha_exprs[comp] = value;
      } else {
        throw InputError("unknown builtin parameter key: " + key);
      }
    }
  }
  if (!alpha_exprs.empty()) {
    std::vector<std::string> alpha(static_cast<std::size_t>(n), "0");
    for (const auto& [comp, expr] : alpha_exprs) {
      if (comp < 1 || comp > n)
        throw InputError("alpha component index out of range: alpha" + std::to_string(comp));
      alpha[static_cast<std::size_t>(comp - 1)] = expr;
    }
    params["alpha"] = alpha;
  }
  return builtin_connection(name, params);
}

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

nlohmann::json verification_report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["convention"] = convention_header();
  j["tolerance"] = report.tolerance;
  j["pass"] = report.all_pass;
  j["max_curvature"] = report.max_curvature;
  j["max_curvature_point"] = vec_json(report.max_curvature_point);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["max_residual"] = c.max_residual;
    jc["worst_point"] = vec_json(c.worst_point);
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

nlohmann::json invariant_report_to_json(const InvariantReport& report) {
  nlohmann::json j;
  j["convention"] = report.convention;
  j["verdict"] = report.verdict == Verdict::Flat ? "FLAT" : "NON_FLAT";
  j["flat_tol"] = report.flat_tol;
  j["max_weyl"] = report.max_weyl;
  j["max_cotton"] = report.max_cotton;
  j["weyl_zero_coeffs"] = report.weyl_zero_coeffs;
  j["cotton_zero_coeffs"] = report.cotton_zero_coeffs;
  j["grid_per_axis"] = report.grid_per_axis;
  if (report.verdict == Verdict::NonFlat) {
    j["witness"]["point"] = vec_json(report.witness.point);
    j["witness"]["component"] = report.witness.component;
    j["witness"]["value"] = report.witness.value;
  }
  return j;
}

nlohmann::json cone_to_json(const ConeConnection& k) {
  const int N = k.rank();
  nlohmann::json j;
  j["schema"] = 1;
  j["n"] = k.dim();
  j["convention"] = convention_header();
  j["frame"] = "index 0 = vertical (scaling) direction, 1..n = horizontal chart lifts";
  nlohmann::json comps = nlohmann::json::array();
  for (int A = 0; A < N; ++A)
    for (int B = 0; B < N; ++B)
      for (int C = B; C < N; ++C) {
        if (k.gammahat(A, B, C).is_zero()) continue;
        nlohmann::json rec;
        rec["a"] = A;
        rec["b"] = B;
        rec["c"] = C;
        rec["poly"] = poly_to_json(k.gammahat(A, B, C));
        comps.push_back(std::move(rec));
      }
  j["gammahat"] = std::move(comps);
  return j;
}

void write_trace_csv(std::ostream& os, const GeodesicTrace& trace) {
  const int n = trace.points.empty() ? 0 : static_cast<int>(trace.points.front().size());
  os << "# integrator=rk4 order=" << trace.integrator_order << " step=" << fmt_double(trace.step)
     << " truncated=" << (trace.truncated ? 1 : 0) << "\n";
  os << "t";
  for (int a = 0; a < n; ++a) os << ",x" << (a + 1);
  if (trace.has_fibers())
    for (int A = 0; A < static_cast<int>(trace.fibers.front().size()); ++A) os << ",s" << A;
  os << "\n";
  for (std::size_t m = 0; m < trace.size(); ++m) {
    os << fmt_double(trace.params[m]);
    for (int a = 0; a < n; ++a) os << "," << fmt_double(trace.points[m][a]);
    if (trace.has_fibers())
      for (int A = 0; A < static_cast<int>(trace.fibers[m].size()); ++A)
        os << "," << fmt_double(trace.fibers[m][A]);
    os << "\n";
  }
}

void write_developed_csv(std::ostream& os, const std::vector<Eigen::VectorXd>& targets,
                         const std::vector<ProjPoint>& points) {
  if (targets.size() != points.size())
    throw InputError("write_developed_csv: target/point count mismatch");
  const int n = targets.empty() ? 0 : static_cast<int>(targets.front().size());
  for (int a = 0; a < n; ++a) os << (a ? "," : "") << "x" << (a + 1);
  for (int A = 0; A <= n; ++A) os << ",h" << A;
  os << "\n";
  for (std::size_t m = 0; m < targets.size(); ++m) {
    for (int a = 0; a < n; ++a) os << (a ? "," : "") << fmt_double(targets[m][a]);
    for (int A = 0; A <= n; ++A) os << "," << fmt_double(points[m].homog[A]);
    os << "\n";
  }
}

std::vector<Eigen::VectorXd> parse_points_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("points file " + path + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("targets")) doc = doc["targets"];
  if (!doc.is_array()) throw InputError("points file: expected a JSON array of points");
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(doc.size());
  std::size_t idx = 0;
  for (const auto& jp : doc)
    pts.push_back(require_vector(jp, n, "/" + std::to_string(idx++)));
  return pts;
}

}  // namespace projcone
