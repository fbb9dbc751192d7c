// Acceptance gate: one line per criterion, exit 0 only if all hold.
//
// Each criterion exercises the full pipeline through the same entry points
// the command-line tool uses, with every tolerance pinned in this file.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpl/analysis.hpp"
#include "dpl/config.hpp"
#include "dpl/experiments.hpp"
#include "dpl/influence.hpp"
#include "dpl/steady.hpp"
#include "dpl/transient.hpp"

using nlohmann::json;
using namespace dpl;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("criterion %d: %-28s %s (%s)\n", index, name.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string root_dir() {
  static const std::string dir = [] {
    auto d = std::filesystem::temp_directory_path() / "dpl-acceptance";
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d.string();
  }();
  return dir;
}

/// Runs a named preset, returning its summary JSON and wall seconds.
std::pair<json, double> run_preset(const std::string& name) {
  const ExperimentConfig cfg =
      parse_config_text(preset_text(name), "preset " + name);
  const auto t0 = std::chrono::steady_clock::now();
  run_experiment(cfg, root_dir() + "/" + name);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::ifstream in(root_dir() + "/" + name + "/summary.json");
  json j;
  in >> j;
  return {j, wall};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ----------------------------------------------------------------------

void criterion_uniqueness() {
  const auto [j, wall] = run_preset("uniqueness");
  const double maxT = j["max_abs_T"], maxq = j["max_abs_q"];
  const bool pass = maxT <= 1e-12 && maxq <= 1e-12 && wall < 10.0;
  report(1, "zero-data uniqueness", pass,
         "max|T|=" + fmt(maxT) + ", max|q|=" + fmt(maxq) + ", wall=" +
             fmt(wall) + "s<10s");
}

void criterion_conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (const std::string name :
       {std::string("conservation-stable"), std::string("conservation-growth")}) {
    const auto [j, wall] = run_preset(name);
    const std::vector<double> residuals = j["residuals"];
    const std::vector<double> ratios = j["ratios"];
    bool ok = residuals.front() <= 1e-3;
    for (double r : ratios) ok = ok && r >= 3.0 && r <= 5.0;
    pass = pass && ok;
    detail += name.substr(13) + ": res0=" + fmt(residuals.front()) +
              " ratios=";
    for (double r : ratios) detail += fmt(r) + " ";
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  pass = pass && total < 120.0;
  report(2, "balance-identity ladder", pass,
         detail + "wall=" + fmt(total) + "s<120s");
}

void criterion_dependence() {
  bool pass = DelayPair(0.5, 0.1).sigma_sq() == 6.0;
  std::string detail = "sigma^2(0.5,0.1)=6 exact";
  for (const std::string name : {std::string("stable"), std::string("growth")}) {
    const auto [j, wall] = run_preset(name);
    const double margin = j["min_margin"];
    pass = pass && margin >= -1e-8;
    detail += ", " + name + " margin=" + fmt(margin);
  }
  report(3, "dependence bounds", pass, detail);
}

void criterion_influence() {
  const MaterialField unit = MaterialField::uniform(17, 1.0, 1.0);
  const double c0 = speed_bound_stable(unit, DelayPair(1, 1));
  const double cc = characteristic_speed(unit, DelayPair(1, 1));
  bool pass = std::abs(c0 - 1.5811388300841898) <= 1e-12 &&
              std::abs(cc - 1.4142135623730951) <= 1e-12;
  std::string detail = "c0=" + fmt(c0) + ", c_char=" + fmt(cc);
  for (const std::string name :
       {std::string("influence-stable"), std::string("influence-growth")}) {
    const auto [j, wall] = run_preset(name);
    const double excess = j["worst_excess"];
    const double c_emp = j["c_empirical"], c_char = j["c_char"],
                 c_bound = j["c_bound"];
    const bool ok = excess <= 1e-8 && !j["truncated"].get<bool>() &&
                    std::isfinite(c_emp) && c_emp <= 1.1 * c_char &&
                    1.1 * c_char <= c_bound;
    pass = pass && ok;
    detail += ", " + name.substr(10) + ": excess=" + fmt(excess) +
              " c_emp=" + fmt(c_emp);
  }
  report(4, "influence cone", pass, detail);
}

void criterion_steady_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [j, wall] = run_preset("steady-decay");
  bool pass = true;
  std::string detail;
  std::size_t n_freq = 0;
  for (const auto& f : j["frequencies"]) {
    if (f["certified"].is_null()) continue;  // above the critical frequency
    ++n_freq;
    pass = pass && f["certified"].get<bool>();
    detail += "w=" + fmt(f["omega"].get<double>()) + " margin=" +
              fmt(f["min_margin"].get<double>()) + " ";
  }
  pass = pass && n_freq == 3;
  const std::vector<double> orders = j["identity_orders"];
  for (double o : orders) pass = pass && o >= 1.8;
  detail += "orders=";
  for (double o : orders) detail += fmt(o) + " ";
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  pass = pass && total < 60.0 * 3;
  report(5, "steady decay", pass, detail + "wall=" + fmt(total) + "s");
}

void criterion_classical_limit() {
  const double W = 3.141592653589793, L = 4 * W, omega = 0.5;
  const StripGeometry geom(W, L, 129, 513);
  const MaterialField m = MaterialField::uniform(geom.n_nodes(), 1, 1);
  const SteadyAmplitude sol = assemble_and_solve(
      geom, m, DelayPair(0, 0), omega, Profile::parse("sine(1)", 0.0, W));

  const std::complex<double> mu = std::sqrt(std::complex<double>(1.0, omega));
  const std::size_t j_mid = 256;
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 129; ++i) {
    const std::complex<double> exact =
        std::sin(3.141592653589793 * geom.x1(i) / W) *
        std::sinh(mu * (L - geom.x3(j_mid))) / std::sinh(mu * L);
    worst = std::max(worst, std::abs(sol.theta[geom.index(i, j_mid)] - exact));
    scale = std::max(scale, std::abs(exact));
  }
  const double rel = worst / scale;
  report(6, "classical-limit oracle", rel <= 1e-3,
         "mid-strip rel err=" + fmt(rel) + "<=1e-3");
}

void criterion_superposition() {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(0.3, 1.7);
  const Geometry1D geom(1.0, 1.0, 128);
  const auto xs = geom.nodes();

  auto random_data = [&] {
    ProblemData d;
    const double cT = -0.2 + 0.4 * U(rng), wT = 0.05 + 0.1 * U(rng),
                 aT = U(rng);
    const double aq = U(rng), ar = U(rng), omega = 2.0 * U(rng);
    d.T0.resize(xs.size());
    d.q0.resize(xs.size());
    d.qdot0.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      d.T0[i] = aT * std::exp(-(x - cT) * (x - cT) / (2 * wT * wT));
      d.q0[i] = aq * std::sin(3.141592653589793 * x);
      d.qdot0[i] = 0.3 * aq * std::sin(2 * 3.141592653589793 * x);
    }
    d.supply = [ar, omega](double x, double t) {
      return ar * x * std::cos(omega * t);
    };
    return d;
  };

  const ProblemData d1 = random_data();
  const ProblemData d2 = random_data();
  ProblemData sum;
  sum.T0.resize(xs.size());
  sum.q0.resize(xs.size());
  sum.qdot0.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sum.T0[i] = d1.T0[i] + d2.T0[i];
    sum.q0[i] = d1.q0[i] + d2.q0[i];
    sum.qdot0[i] = d1.qdot0[i] + d2.qdot0[i];
  }
  const SupplyFn s1 = d1.supply, s2 = d2.supply;
  sum.supply = [s1, s2](double x, double t) { return s1(x, t) + s2(x, t); };

  auto run_one = [&](ProblemData data) {
    Problem p(geom, MaterialField::uniform(xs.size(), 1.0, 1.0),
              DelayPair(0.7, 0.4), std::move(data),
              BoundaryCondition::temperature_zero(),
              BoundaryCondition::temperature_zero());
    TransientSolver solver(std::move(p));
    StepControl ctl;
    ctl.t_end = 0.8;
    return solver.run(ctl).final_state;
  };

  const TransientState r1 = run_one(d1);
  const TransientState r2 = run_one(d2);
  const TransientState r12 = run_one(sum);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(r12.T[i] - r1.T[i] - r2.T[i]));
    worst = std::max(worst, std::abs(r12.q[i] - r1.q[i] - r2.q[i]));
    scale = std::max({scale, std::abs(r12.T[i]), std::abs(r12.q[i])});
  }
  const double rel = worst / std::max(scale, 1e-300);
  report(7, "superposition", rel <= 1e-10,
         "rel defect=" + fmt(rel) + "<=1e-10");
}

}  // namespace

int main() {
  try {
    criterion_uniqueness();
    criterion_conservation();
    criterion_dependence();
    criterion_influence();
    criterion_steady_decay();
    criterion_classical_limit();
    criterion_superposition();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("acceptance: %d/7 criteria passed\n", 7 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
