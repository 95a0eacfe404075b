#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "projcone/develop.hpp"
#include "projcone/errors.hpp"
#include "projcone/geodesic.hpp"
#include "projcone/grid.hpp"
#include "projcone/io.hpp"

namespace {

using nlohmann::json;

struct Args {
  std::string conn_file;
  std::string builtin;
  std::string conn2_file;
  std::string builtin2;
  std::string targets_file;
  std::string out_dir = ".";
  std::vector<double> from, dir, fiber, base;
  int steps = 0;  // 0: derived from the step size (unit parameter length)
  bool expect_flat = false;
  projcone::RunConfig cfg;
};

void add_common_options(CLI::App* cmd, Args& a) {
  cmd->add_option("--conn", a.conn_file, "connection JSON document");
  cmd->add_option("--builtin", a.builtin, "builtin connection NAME[:key=value,...]");
  cmd->add_option("--grid", a.cfg.grid_per_axis, "grid points per axis (default 5)");
  cmd->add_option("--flat-tol", a.cfg.flat_tol, "flatness tolerance (default 1e-8)");
  cmd->add_option("--step", a.cfg.step, "ODE step size (default 1e-2)");
  cmd->add_option("--seed", a.cfg.seed, "seed for randomized sampling");
  cmd->add_flag("--expect-flat", a.expect_flat, "exit 1 unless the verdict is FLAT");
  cmd->add_option("--out", a.out_dir, "artifact output directory (default .)");
}

projcone::ChartConnection load_connection(const std::string& file, const std::string& builtin) {
  if (!file.empty() && !builtin.empty())
    throw projcone::InputError("give either --conn or --builtin, not both");
  if (!file.empty()) return projcone::parse_connection_file(file);
  if (!builtin.empty()) return projcone::parse_builtin_arg(builtin);
  throw projcone::InputError("a connection is required (--conn FILE or --builtin NAME)");
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void write_file(const std::string& out_dir, const std::string& name, const std::string& bytes) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
  if (!out) throw projcone::InputError("cannot write artifact: " + name);
  out << bytes;
}

void emit_report(const Args& a, json j, const std::string& command, int n) {
  j["schema"] = 1;
  j["command"] = command;
  j["n"] = n;
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!a.out_dir.empty()) write_file(a.out_dir, "report.json", text);
}

int cmd_check(const Args& a) {
  const auto c = load_connection(a.conn_file, a.builtin);
  const auto cone = projcone::build_cone(c);
  const auto cf = projcone::riemann(cone.source_pi());
  const auto inv = projcone::invariants(cone.source_pi(), cf);
  const auto grid = projcone::make_grid(c.domain(), a.cfg.grid_per_axis);
  const auto report = projcone::verify_theorem(cone, inv, grid, a.cfg.theorem_tol);
  emit_report(a, projcone::verification_report_to_json(report), "check", c.dim());
  return report.all_pass ? 0 : 1;
}

int cmd_invariants(const Args& a, const char* command) {
  const auto c = load_connection(a.conn_file, a.builtin);
  const auto report = projcone::classify(c, a.cfg.grid_per_axis, a.cfg.flat_tol);
  emit_report(a, projcone::invariant_report_to_json(report), command, c.dim());
  if (a.expect_flat && report.verdict == projcone::Verdict::NonFlat) return 1;
  return 0;
}

int cmd_cone(const Args& a) {
  const auto c = load_connection(a.conn_file, a.builtin);
  const auto cone = projcone::build_cone(c);
  json j = projcone::cone_to_json(cone);
  const std::string text = j.dump(2) + "\n";
  if (!a.out_dir.empty()) write_file(a.out_dir, "cone.json", text);
  emit_report(a, std::move(j), "cone", c.dim());
  return 0;
}

int cmd_geodesic(const Args& a) {
  const auto c = load_connection(a.conn_file, a.builtin);
  const int n = c.dim();
  const Eigen::VectorXd x0 = a.from.empty() ? c.domain().center() : to_vec(a.from);
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
  if (a.dir.empty())
    v0[0] = 1.0;
  else
    v0 = to_vec(a.dir);
  const int steps =
      a.steps > 0 ? a.steps : static_cast<int>(std::llround(1.0 / a.cfg.step));
  const auto trace = projcone::geodesic_classical(c, x0, v0, a.cfg.step, steps);

  std::ostringstream csv;
  projcone::write_trace_csv(csv, trace);
  if (!a.out_dir.empty()) write_file(a.out_dir, "trace.csv", csv.str());

  json j;
  j["samples"] = trace.size();
  j["truncated"] = trace.truncated;
  j["t_end"] = trace.params.back();
  j["x_end"] = std::vector<double>(trace.points.back().data(),
                                   trace.points.back().data() + n);
  j["artifact"] = "trace.csv";
  emit_report(a, std::move(j), "geodesic", n);
  return 0;
}

int cmd_rho_geodesic(const Args& a) {
  const auto c = load_connection(a.conn_file, a.builtin);
  const auto cone = projcone::build_cone(c);
  const int n = c.dim();
  const Eigen::VectorXd x0 = a.from.empty() ? c.domain().center() : to_vec(a.from);
  Eigen::VectorXd s0 = Eigen::VectorXd::Zero(n + 1);
  if (!a.fiber.empty()) {
    s0 = to_vec(a.fiber);
  } else if (!a.dir.empty()) {
    s0.tail(n) = to_vec(a.dir);
  } else {
    s0[1] = 1.0;
  }
  const int steps =
      a.steps > 0 ? a.steps : static_cast<int>(std::llround(1.0 / a.cfg.step));
  const auto trace = projcone::geodesic_rho(cone, x0, s0, a.cfg.step, steps);

  std::ostringstream csv;
  projcone::write_trace_csv(csv, trace);
  if (!a.out_dir.empty()) write_file(a.out_dir, "rho_trace.csv", csv.str());

  json j;
  j["samples"] = trace.size();
  j["truncated"] = trace.truncated;
  j["t_end"] = trace.params.back();
  j["x_end"] = std::vector<double>(trace.points.back().data(),
                                   trace.points.back().data() + n);
  j["s_end"] = std::vector<double>(trace.fibers.back().data(),
                                   trace.fibers.back().data() + n + 1);
  j["artifact"] = "rho_trace.csv";
  emit_report(a, std::move(j), "rho-geodesic", n);
  return 0;
}

int cmd_equiv(const Args& a) {
  const auto c = load_connection(a.conn_file, a.builtin);
  projcone::ChartConnection ref =
      (a.conn2_file.empty() && a.builtin2.empty())
          ? projcone::ChartConnection(c.dim(), c.domain())  // default: flat reference
          : load_connection(a.conn2_file, a.builtin2);
  const auto result = projcone::extract_alpha(ref, c);

  json j;
  j["equivalent"] = result.equivalent;
  j["residual"] = result.residual;
  if (result.equivalent) {
    json alpha = json::array();
    for (int k = 0; k < c.dim(); ++k)
      alpha.push_back(projcone::poly_to_json(result.alpha.component(k)));
    j["alpha"] = std::move(alpha);
  }
  emit_report(a, std::move(j), "equiv", c.dim());
  return result.equivalent ? 0 : 1;
}

int cmd_develop(const Args& a) {
  const auto c = load_connection(a.conn_file, a.builtin);
  const auto cone = projcone::build_cone(c);
  const int n = c.dim();
  const Eigen::VectorXd base = a.base.empty() ? c.domain().center() : to_vec(a.base);
  const auto gate_grid = projcone::make_grid(c.domain(), a.cfg.grid_per_axis);
  const std::vector<Eigen::VectorXd> targets =
      a.targets_file.empty() ? gate_grid : projcone::parse_points_file(a.targets_file, n);

  try {
    const auto developed =
        projcone::develop(cone, base, targets, gate_grid, a.cfg.flat_tol, a.cfg.step);
    std::ostringstream csv;
    projcone::write_developed_csv(csv, targets, developed);
    if (!a.out_dir.empty()) write_file(a.out_dir, "developed.csv", csv.str());

    json j;
    j["targets"] = targets.size();
    j["base"] = std::vector<double>(base.data(), base.data() + n);
    j["flat_tol"] = a.cfg.flat_tol;
    j["artifact"] = "developed.csv";
    emit_report(a, std::move(j), "develop", n);
    return 0;
  } catch (const projcone::FlatnessError& e) {
    json j;
    j["refusal"] = e.what();
    j["witness"] = std::vector<double>(e.witness().data(), e.witness().data() + n);
    j["max_curvature"] = e.magnitude();
    j["flat_tol"] = a.cfg.flat_tol;
    emit_report(a, std::move(j), "develop", n);
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projcone: Thomas cone calculus for chart-level projective structures"};
  app.require_subcommand(1);

  Args args;
  std::function<int()> run;

  auto* check = app.add_subcommand("check", "verify the defining cone identities");
  add_common_options(check, args);
  check->callback([&] { run = [&] { return cmd_check(args); }; });

  auto* inv = app.add_subcommand("invariants", "Weyl/Cotton-York invariant report");
  add_common_options(inv, args);
  inv->callback([&] { run = [&] { return cmd_invariants(args, "invariants"); }; });

  auto* conec = app.add_subcommand("cone", "emit the cone connection components");
  add_common_options(conec, args);
  conec->callback([&] { run = [&] { return cmd_cone(args); }; });

  auto* flat = app.add_subcommand("flatness", "projective flatness verdict");
  add_common_options(flat, args);
  flat->callback([&] { run = [&] { return cmd_invariants(args, "flatness"); }; });

  auto* geo = app.add_subcommand("geodesic", "integrate a chart geodesic");
  add_common_options(geo, args);
  geo->add_option("--from", args.from, "start point x0 (default: box center)")->delimiter(',');
  geo->add_option("--dir", args.dir, "initial velocity (default: e_1)")->delimiter(',');
  geo->add_option("--steps", args.steps, "number of RK4 steps (default: 1/step)");
  geo->callback([&] { run = [&] { return cmd_geodesic(args); }; });

  auto* rho = app.add_subcommand("rho-geodesic", "integrate a cone geodesic");
  add_common_options(rho, args);
  rho->add_option("--from", args.from, "start point x0 (default: box center)")->delimiter(',');
  rho->add_option("--dir", args.dir, "horizontal direction (lift gets s0 = (0, dir))")
      ->delimiter(',');
  rho->add_option("--fiber", args.fiber, "full initial lift s0 (n+1 entries, vertical first)")
      ->delimiter(',');
  rho->add_option("--steps", args.steps, "number of RK4 steps (default: 1/step)");
  rho->callback([&] { run = [&] { return cmd_rho_geodesic(args); }; });

  auto* equiv = app.add_subcommand("equiv", "projective equivalence against a reference");
  add_common_options(equiv, args);
  equiv->add_option("--conn2", args.conn2_file, "reference connection document");
  equiv->add_option("--builtin2", args.builtin2, "reference builtin (default: flat)");
  equiv->callback([&] { run = [&] { return cmd_equiv(args); }; });

  auto* dev = app.add_subcommand("develop", "developing map into projective space");
  add_common_options(dev, args);
  dev->add_option("--base", args.base, "base point (default: box center)")->delimiter(',');
  dev->add_option("--targets", args.targets_file, "JSON array of target points");
  dev->callback([&] { run = [&] { return cmd_develop(args); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    args.cfg.validate();
    return run();
  } catch (const projcone::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const projcone::ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
