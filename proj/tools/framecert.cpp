#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framecert/gallery.hpp"
#include "framecert/matrix_io.hpp"
#include "framecert/scenario.hpp"

namespace fs = std::filesystem;
using namespace framecert;

namespace {

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  os << text;
}

struct Overrides {
  double rtol = -1.0;
  long long seed = -1;

  void apply(Scenario& sc) const {
    if (rtol > 0.0) sc.rtol = rtol;
    if (seed >= 0) sc.seed = static_cast<unsigned long long>(seed);
  }
};

int cmd_run(const std::string& config, const Overrides& ov,
            const std::string& out_path) {
  Scenario sc;
  try {
    sc = parse_scenario_file(config);
  } catch (const MissingFixtureError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  ov.apply(sc);
  RunResult result = run_scenario(sc, fs::path(config).parent_path().string());
  std::string text;
  for (const std::string& rec : result.records) text += rec + "\n";
  write_output(out_path, text);
  if (!result.error.empty()) std::cerr << result.error << "\n";
  return result.exit_code;
}

int cmd_sweep(const std::string& config, const std::string& param,
              const std::vector<std::string>& values, const Overrides& ov,
              const std::string& out_path) {
  Scenario sc;
  try {
    sc = parse_scenario_file(config);
  } catch (const MissingFixtureError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  ov.apply(sc);
  try {
    SweepResult result =
        sweep_scenario(sc, param, values, fs::path(config).parent_path().string());
    write_output(out_path, result.csv());
    return result.exit_code;
  } catch (const ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

struct GenParams {
  double T = 50.0;
  int n_t = 2000;
  int d = 4;
  int n = 64;
  std::string window = "gauss";
  int g_mode = 0;
  double p = 3.0;
  double alpha = 17.0 / 8.0;
  double beta = 1.0 / 3.0;
};

Vector make_window(int n, const std::string& window) {
  Vector g = Vector::Zero(n);
  if (window == "delta") {
    g[0] = 1.0;
  } else if (window == "gauss") {
    const double sigma = n / 8.0;
    for (int j = 0; j < n; ++j) {
      double dist = std::min(j, n - j);
      g[j] = std::exp(-dist * dist / (2.0 * sigma * sigma));
    }
  } else {
    throw std::invalid_argument("unknown window '" + window + "'");
  }
  return g;
}

int cmd_gen(const std::string& example, const GenParams& gp,
            const std::string& out_dir) {
  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  try {
    if (example == "exponential") {
      FamilyWithOperator fam = gen_exponential_family(gp.T, gp.n_t, gp.d);
      write_family_file((dir / "theta.txt").string(), fam.theta);
      write_family_file((dir / "psi.txt").string(), fam.psi);
      write_matrix_file((dir / "operator.txt").string(), fam.a_n);
    } else if (example == "stft") {
      FamilyWithOperator fam = gen_stft_weak_frame(gp.n, make_window(gp.n, gp.window));
      write_family_file((dir / "theta.txt").string(), fam.theta);
      write_family_file((dir / "psi.txt").string(), fam.psi);
      write_matrix_file((dir / "operator.txt").string(), fam.a_n);
    } else if (example == "multiplication") {
      Vector g(gp.n);
      for (int j = 0; j < gp.n; ++j)
        g[j] = std::exp(Complex(0, 2.0 * std::numbers::pi * gp.g_mode * j / gp.n));
      MultiplicationFrame fam = gen_multiplication_frame(g, gp.T, gp.n_t, gp.d);
      write_family_file((dir / "psi.txt").string(), fam.psi);
      write_matrix_file((dir / "operator.txt").string(), fam.mg);
    } else if (example == "divergence") {
      DivergenceSpec spec = gen_divergence_example(gp.p, gp.alpha, gp.beta);
      std::ofstream os((dir / "divergence.cfg").string(), std::ios::binary);
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "[scenario]\nid = divergence\nkind = divergence_probe\n"
                    "p = %.17g\nalpha = %.17g\nbeta = %.17g\n",
                    spec.p, spec.alpha, spec.beta);
      os << buf;
    } else {
      std::cerr << "unknown example '" << example << "'\n";
      return 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame certification scenarios: run, sweep, and fixture generation"};
  app.require_subcommand(1);

  Overrides ov;
  std::string config, out_path, param, example, out_dir;
  std::vector<std::string> values;
  GenParams gp;

  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config, "scenario config file")->required();
  run->add_option("--seed", ov.seed, "override the scenario seed");
  run->add_option("--rtol", ov.rtol, "override the relative tolerance");
  run->add_option("--out", out_path, "write the JSON-lines report to a file");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one scenario parameter");
  sweep->add_option("config", config, "scenario config file")->required();
  sweep->add_option("--param", param, "parameter to sweep")->required();
  sweep->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seed", ov.seed, "override the scenario seed");
  sweep->add_option("--rtol", ov.rtol, "override the relative tolerance");
  sweep->add_option("--out", out_path, "write the CSV table to a file");

  CLI::App* gen = app.add_subcommand("gen", "generate a gallery fixture");
  gen->add_option("example", example,
                  "exponential | stft | multiplication | divergence")
      ->required();
  gen->add_option("-o,--out-dir", out_dir, "output directory")->required();
  gen->add_option("--T", gp.T, "frequency half-window");
  gen->add_option("--nt", gp.n_t, "number of quadrature points");
  gen->add_option("--d", gp.d, "number of retained modes");
  gen->add_option("--n", gp.n, "grid size (power of 2)");
  gen->add_option("--window", gp.window, "stft window: gauss | delta");
  gen->add_option("--g-mode", gp.g_mode, "multiplication symbol mode index");
  gen->add_option("--p", gp.p, "divergence parameter p");
  gen->add_option("--alpha", gp.alpha, "divergence parameter alpha");
  gen->add_option("--beta", gp.beta, "divergence parameter beta");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config, ov, out_path);
  if (sweep->parsed()) return cmd_sweep(config, param, values, ov, out_path);
  return cmd_gen(example, gp, out_dir);
}
