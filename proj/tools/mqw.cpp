// Command line front end for magnetic hypercube walk experiments.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mqw/experiment.hpp"
#include "mqw/io.hpp"

namespace {

struct Flags {
  std::string config;
  int n = 0;
  std::string coin;
  std::string coin_file;
  int coin_dim = 0;
  std::string nu;
  std::string potential_file;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string task;
  int steps = 0;
  std::string initial;
  std::string out;
  std::string format;
  double tol_spectrum = 0.0;
  double tol_construct = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate magnetic quantum walks on the hypercube and check their spectral theory"};
  Flags f;
  app.add_option("--config", f.config, "JSON config file; flags given on the command line override it");
  app.add_option("--n", f.n, "Hypercube order (vertices are subsets of {0..n})");
  app.add_option("--coin", f.coin, "grover | hadamard-partition | fourier | identity | random");
  app.add_option("--coin-file", f.coin_file, "Coin system JSON file");
  app.add_option("--coin-dim", f.coin_dim, "Coin dimension for the random coin (default n+1)");
  app.add_option("--nu", f.nu, "null | random | comma separated phases nu_0,...,nu_n");
  app.add_option("--potential-file", f.potential_file, "Full antisymmetric potential table JSON");
  app.add_option("--samples", f.samples, "Random potentials drawn for the stability check");
  app.add_option("--seed", f.seed, "Seed of the single experiment generator");
  app.add_option("--task", f.task,
                 "simulate | spectrum | verify-point | verify-aev | verify-stability | verify-all");
  app.add_option("--steps", f.steps, "Walk steps for simulate");
  app.add_option("--initial", f.initial,
                 "vertex:<mask>[:<coin>] | uniform:<mask> | eigen:<mask>[:<coin>]");
  app.add_option("--out", f.out, "Report path (stdout when omitted)");
  app.add_option("--format", f.format, "json | csv");
  app.add_option("--tol-spectrum", f.tol_spectrum, "Spectral comparison and clustering tolerance");
  app.add_option("--tol-construct", f.tol_construct, "Exact construction tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto given = [&](const char* name) { return app.count(name) > 0; };
  mqw::ExperimentConfig config;
  try {
    if (given("--config")) {
      config = mqw::config_from_json(mqw::io::read_json_file(f.config));
    }
    if (given("--n")) config.n = f.n;
    if (given("--coin")) config.coin = f.coin;
    if (given("--coin-file")) config.coin_file = f.coin_file;
    if (given("--coin-dim")) config.coin_dim = f.coin_dim;
    if (given("--nu")) config.nu = f.nu;
    if (given("--potential-file")) config.potential_file = f.potential_file;
    if (given("--samples")) config.samples = f.samples;
    if (given("--seed")) config.seed = f.seed;
    if (given("--task")) config.task = mqw::parse_task(f.task);
    if (given("--steps")) config.steps = f.steps;
    if (given("--initial")) config.initial = f.initial;
    if (given("--out")) config.out = f.out;
    if (given("--format")) config.format = mqw::parse_format(f.format);
    if (given("--tol-spectrum")) config.tol_spectrum = f.tol_spectrum;
    if (given("--tol-construct")) config.tol_construct = f.tol_construct;
  } catch (const mqw::ConfigError& e) {
    std::cerr << "mqw: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mqw: config: " << e.what() << '\n';
    return 2;
  }

  return mqw::run_and_write(config, std::cout, std::cerr);
}
