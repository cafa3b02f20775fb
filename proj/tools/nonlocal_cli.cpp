#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "nonlocal/config.hpp"
#include "nonlocal/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Config-driven nonlocal derivative experiments"};
  app.set_version_flag("--version", std::string("nonlocal ") + nonlocal::kVersion);

  std::string config_path;
  nonlocal::RunOptions opts;
  std::uint64_t seed = 0;
  int quad_order = 0;
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--out", opts.out, "CSV output path (default: config output, else stdout)");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  auto* quad_opt = app.add_option("--quad-order", quad_order, "stencil order")
                       ->check(CLI::IsMember({1, 2}));
  app.add_option("--threads", opts.threads, "worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--dump-matrix", opts.dump_matrix, "write the first operator as COO text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << '\n';
    return 2;
  }
  if (*seed_opt) opts.seed = seed;
  if (*quad_opt) opts.quad_order = quad_order;

  nonlocal::ExperimentConfig config;
  try {
    config = nonlocal::load_config(config_path);
  } catch (const nonlocal::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return 2;
  }
  return nonlocal::run(std::move(config), opts, std::cout, std::cerr);
}
