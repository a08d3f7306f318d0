// jacobi-verify: runs the property suites and prints machine-readable reports.
// Exit codes: 0 all checks pass, 1 some check fails, 2 bad input.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jacobi/verification.hpp"

namespace jv = jacobi::verification;
using namespace jacobi;

namespace {

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw BadInput("cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size()) throw BadInput("cannot parse " + what + " '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_double(t, what));
  return out;
}

/// k=v pairs, comma separated or repeated.
void apply_params(const std::vector<std::string>& args, MetricParams& p) {
  const std::map<std::string, double*> slots = {{"c1", &p.c1},       {"c2", &p.c2},       {"alpha", &p.alpha},
                                                {"beta", &p.beta},   {"gamma", &p.gamma}, {"delta", &p.delta}};
  for (const auto& arg : args)
    for (const auto& kv : split(arg, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw BadInput("parameter '" + kv + "' is not of the form key=value");
      const auto it = slots.find(kv.substr(0, eq));
      if (it == slots.end()) throw BadInput("unknown parameter '" + kv.substr(0, eq) + "'");
      *it->second = parse_double(kv.substr(eq + 1), "parameter value");
    }
}

struct Options {
  jv::Config cfg;
  std::string format = "json";
  std::vector<std::string> params;
  double tol = -1.0;
};

void emit(const std::string& command, const Options& o, const std::vector<jv::CriterionReport>& reps,
          nlohmann::json extra = nullptr) {
  if (o.format == "csv") {
    std::cout << jv::report_csv(reps);
  } else if (o.format == "text") {
    std::cout << jv::report_text(command, o.cfg, reps);
  } else {
    auto j = jv::report_json(command, o.cfg, reps);
    if (!extra.is_null()) j.update(extra);
    std::cout << j.dump(2) << "\n";
  }
}

jv::CriterionReport killing_report(const Options& o, const std::string& metric, const std::string& chart) {
  const MetricSpec spec{metric_from_name(metric), o.cfg.params};
  spec.validate();
  const Space space = spec.space();
  if (!chart.empty() && chart_from_name(chart) != spec.chart())
    throw BadInput("metric " + metric + " lives on chart " + chart_name(spec.chart()));
  auto s = jv::detail::sampler(o.cfg, 106);
  std::vector<Coords<double>> pts;
  for (std::size_t n = 0; n < o.cfg.scaled(200); ++n) pts.push_back(jv::detail::random_point(s, spec.chart()));
  jv::Recorder rec(o.cfg, 0, std::string("killing_") + metric);
  for (int i = 0; i < 6; ++i) {
    const auto X = fvf_closed_form(space, spec.chart(), Generator(i));
    double worst = 0.0;
    for (const auto& x : pts) worst = std::max(worst, killing_residual(spec, X, x));
    rec.at_most(std::string("fvf_") + kGeneratorNames[i], worst, 1e-9);
  }
  return rec.done();
}

jv::CriterionReport tables_report(const Options& o, Space space, double r, std::vector<FamilyMember>& members) {
  const int table = space == Space::xj1 ? 1 : 2;
  members = table_members(table, r, FamilyParams{});
  jv::Recorder rec(o.cfg, 0, "table" + std::to_string(table));
  for (const auto& m : members)
    rec.at_most("row" + std::to_string(m.row) + "_eps" + std::to_string(m.eps1) + "_" + std::to_string(m.eps2),
                table_residual(table, m.X, r), 1e-12);
  return rec.done();
}

nlohmann::json brackets_json(const FrameParams& p, const std::string& mode) {
  nlohmann::json j;
  const auto fb = frame_brackets(p);
  if (mode == "printed" || mode == "both") j["printed"] = fb.printed.table.to_json();
  if (mode == "derived" || mode == "both") j["derived"] = fb.derived.table.to_json();
  if (mode == "both") {
    j["discrepancies"] = nlohmann::json::array();
    for (const auto& d : fb.discrepancies)
      j["discrepancies"].push_back({{"pair", {"L" + std::to_string(d.i + 1), "L" + std::to_string(d.j + 1)}},
                                    {"printed", std::vector<double>(d.printed.data(), d.printed.data() + 6)},
                                    {"derived", std::vector<double>(d.derived.data(), d.derived.data() + 6)}});
  }
  return j;
}

jv::CriterionReport brackets_report(const Options& o, const FrameParams& p, const std::string& mode) {
  jv::Recorder rec(o.cfg, 0, "brackets");
  const auto fb = frame_brackets(p);
  const auto audit = [&](const FrameAlgebra& a, const std::string& name) {
    double worst = 0.0;
    for (const auto& v : jacobi_identity_audit(a.table, 0.0)) worst = std::max(worst, v.residual);
    rec.info(name + "_jacobi_identity_max", worst);
  };
  if (mode != "derived") audit(fb.printed, "printed");
  if (mode != "printed") audit(fb.derived, "derived");
  rec.info("discrepant_pairs", static_cast<double>(fb.discrepancies.size()));
  // The derived table is a Lie algebra by construction; it must satisfy Jacobi exactly.
  double d = 0.0;
  for (const auto& v : jacobi_identity_audit(fb.derived.table, 0.0)) d = std::max(d, v.residual);
  rec.at_most("derived_table_jacobi_identity", d, 1e-12);
  return rec.done();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for the Jacobi group geometry library"};
  app.require_subcommand(1);
  Options o;
  const auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.cfg.seed, "Seed for all random sampling");
    c->add_option("--samples", o.cfg.samples, "Size of the largest random suites");
    c->add_option("--tol", o.tol, "Override every upper-bound tolerance");
    c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--params", o.params, "Parameters as key=value[,key=value...] (c1 c2 alpha beta gamma delta)");
  };

  auto* all = app.add_subcommand("verify-all", "Run every acceptance suite");
  common(all);

  std::string metric = "xj1ext", chart;
  auto* kill = app.add_subcommand("killing", "Killing equation for the six fundamental fields of one metric");
  common(kill);
  kill->add_option("--metric", metric, "Metric name")->capture_default_str();
  kill->add_option("--chart", chart, "Chart name (must be the metric's chart)");

  std::string space = "xj1ext";
  double r_opt = -1.0;
  auto* tab = app.add_subcommand("tables", "Geodesic-vector families with verification flags");
  common(tab);
  tab->add_option("--space", space, "xj1 (Table 1) or xj1ext (Table 2)")->capture_default_str();
  tab->add_option("--r", r_opt, "Ratio r = sqrt(alpha/beta); defaults to the value from --params");

  std::string start, velocity, out_path;
  double t1 = 1.0;
  std::size_t steps = 1000;
  std::string gmetric = "xj1_xypq";
  auto* geo = app.add_subcommand("geodesic", "Integrate a geodesic; csv format prints the trajectory");
  common(geo);
  geo->add_option("--metric", gmetric, "Metric name")->capture_default_str();
  geo->add_option("--start", start, "Start point, comma separated chart coordinates")->required();
  geo->add_option("--velocity", velocity, "Initial velocity, comma separated")->required();
  geo->add_option("--t1", t1, "Final time")->capture_default_str();
  geo->add_option("--steps", steps, "RK4 steps")->capture_default_str();
  geo->add_option("--out", out_path, "Also write the trajectory CSV to this file");

  std::string mode = "both";
  auto* br = app.add_subcommand("brackets", "Printed and derived frame structure constants");
  common(br);
  br->add_option("--mode", mode, "printed, derived or both")->check(CLI::IsMember({"printed", "derived", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_params(o.params, o.cfg.params);
    if (o.tol >= 0.0) o.cfg.tol = o.tol;
    else if (o.tol != -1.0) throw BadInput("--tol must be non-negative");
    o.cfg.validate();

    if (all->parsed()) {
      const auto reps = jv::run_all(o.cfg);
      emit("verify-all", o, reps);
      return jv::all_pass(reps) ? 0 : 1;
    }
    if (kill->parsed()) {
      const std::vector<jv::CriterionReport> reps{killing_report(o, metric, chart)};
      emit("killing", o, reps, {{"metric", metric}});
      return jv::all_pass(reps) ? 0 : 1;
    }
    if (tab->parsed()) {
      const Space sp = space_from_name(space);
      if (sp == Space::group) throw BadInput("tables are defined for xj1 and xj1ext");
      const double r = r_opt > 0.0 ? r_opt : o.cfg.r();
      if (!(r > 0.0) || !std::isfinite(r)) throw BadInput("r must be positive");
      std::vector<FamilyMember> members;
      const std::vector<jv::CriterionReport> reps{tables_report(o, sp, r, members)};
      if (o.format == "csv") {
        std::cout << tables_csv(members);
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& m : members)
          rows.push_back({{"table", m.table}, {"row", m.row}, {"eps1", m.eps1}, {"eps2", m.eps2}, {"X", m.X.c}});
        emit("tables", o, reps, {{"space", space}, {"table_r", r}, {"members", rows}});
      }
      return jv::all_pass(reps) ? 0 : 1;
    }
    if (geo->parsed()) {
      const MetricSpec spec{metric_from_name(gmetric), o.cfg.params};
      const ChartPoint p(spec.chart(), parse_list(start, "start point"));
      const auto tr = geodesic(spec, p, parse_list(velocity, "velocity"), t1, steps);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw BadInput("cannot write " + out_path);
        f << tr.to_csv();
      }
      jv::Recorder rec(o.cfg, 0, "geodesic");
      rec.at_most("relative_energy_drift", tr.relative_energy_drift(), 1e-8);
      const std::vector<jv::CriterionReport> reps{rec.done()};
      if (o.format == "csv") std::cout << tr.to_csv();
      else emit("geodesic", o, reps, {{"metric", gmetric}, {"steps", steps}, {"t1", t1}});
      return jv::all_pass(reps) ? 0 : 1;
    }
    if (br->parsed()) {
      const std::vector<jv::CriterionReport> reps{brackets_report(o, o.cfg.frame(), mode)};
      emit("brackets", o, reps, {{"mode", mode}, {"tables", brackets_json(o.cfg.frame(), mode)}});
      return jv::all_pass(reps) ? 0 : 1;
    }
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownChart& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IncompatibleChart& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
