#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dpl/config.hpp"
#include "dpl/errors.hpp"
#include "dpl/experiments.hpp"
#include "dpl/io.hpp"

namespace {

/// Output root: --out beats DPL_OUT_ROOT beats ./out.
std::string resolve_root(const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("DPL_OUT_ROOT"); env && *env) return env;
  return "out";
}

int run_command(const std::vector<std::string>& specs, int jobs,
                const std::string& cli_out) {
  std::vector<dpl::ExperimentConfig> configs;
  for (const auto& spec : specs) {
    if (std::filesystem::exists(spec)) {
      configs.push_back(dpl::load_config(spec));
    } else {
      // Not a file: accept a built-in preset name.
      configs.push_back(
          dpl::parse_config_text(dpl::preset_text(spec), "preset " + spec));
    }
  }

  const std::string root = resolve_root(cli_out);
  std::vector<dpl::ExperimentResult> results(configs.size());
  std::atomic<std::size_t> next{0};
  std::mutex io_mutex;

  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < configs.size();
         i = next.fetch_add(1)) {
      const auto& cfg = configs[i];
      const std::string dir =
          root + "/" + (cfg.output_dir.empty() ? cfg.name : cfg.output_dir);
      dpl::ExperimentResult r;
      try {
        r = dpl::run_experiment(cfg, dir);
      } catch (const dpl::Error& e) {
        r.name = cfg.name;
        r.kind = cfg.kind;
        r.passed = false;
        r.exit_code = 2;
        r.note(std::string("configuration error: ") + e.what());
      }
      std::lock_guard<std::mutex> lock(io_mutex);
      std::cout << r.name << " (" << r.kind << "): "
                << (r.passed ? "PASS" : "FAIL") << "\n";
      for (const auto& line : r.lines) std::cout << "  " << line << "\n";
      std::cout << "  artifacts: " << dir << "\n";
      results[i] = std::move(r);
    }
  };

  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int exit_code = 0;
  for (const auto& r : results) exit_code = std::max(exit_code, r.exit_code);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the lagged heat-conduction model"};
  app.require_subcommand(1);

  std::vector<std::string> specs;
  int jobs = 1;
  std::string out_dir;
  auto* run = app.add_subcommand(
      "run", "Run experiments from config files or preset names");
  run->add_option("specs", specs, "Config paths or preset names")->required();
  run->add_option("--jobs", jobs, "Parallel experiments")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output root directory");

  std::string plot_dir;
  auto* plots = app.add_subcommand(
      "plots", "Write gnuplot scripts next to experiment CSV outputs");
  plots->add_option("dir", plot_dir, "Directory holding experiment outputs")
      ->required();

  std::string write_dir;
  auto* presets_cmd =
      app.add_subcommand("presets", "List built-in experiment configs");
  presets_cmd->add_option("--write", write_dir,
                          "Also write each preset as <name>.cfg here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return run_command(specs, jobs, out_dir);
    if (plots->parsed()) {
      dpl::emit_plots(plot_dir);
      std::cout << "plot scripts written under " << plot_dir << "\n";
      return 0;
    }
    for (const auto& [name, text] : dpl::presets()) {
      std::cout << name << "\n";
      if (!write_dir.empty()) {
        dpl::ensure_directory(write_dir);
        dpl::write_text_file(write_dir + "/" + name + ".cfg", text);
      }
    }
    return 0;
  } catch (const dpl::DivergenceError& e) {
    std::cerr << "numerical divergence: " << e.what()
              << "\nadvice: lower dt or the safety factors in [experiment]\n";
    return 3;
  } catch (const dpl::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const dpl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
