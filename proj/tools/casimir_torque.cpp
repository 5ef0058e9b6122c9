#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "casimir/cli.hpp"

int main(int argc, char** argv) {
  using namespace casimir;

  CLI::App app{"Casimir torque and lateral force between corrugated plates"};
  std::string subcommand;
  std::string config_path;
  cli::RunOptions options;
  std::string k_min;
  std::string k_max;

  app.add_option("subcommand", subcommand, "What to compute")->required()->check(CLI::IsMember(cli::subcommands()));
  app.add_option("-c,--config", config_path, "Configuration file ('-' reads standard input)");
  app.add_option("--k-min", k_min, "sweep-k lower bound, e.g. 0.1/um (default 0.1/L)");
  app.add_option("--k-max", k_max, "sweep-k upper bound (default 10/L)");
  app.add_option("--k-count", options.k_count, "sweep-k number of log-spaced points")->check(CLI::Range(2, 100000));
  app.add_option("--b-steps", options.b_steps, "landscape grid points along b")->check(CLI::Range(2, 100000));
  app.add_option("--theta-steps", options.theta_steps, "landscape grid points along theta")->check(CLI::Range(2, 100000));
  app.add_option("--workers", options.workers, "threads for sweep-k")->check(CLI::Range(1, 256));
  app.add_flag("--stamp", options.stamp, "prefix CSV output with a '# generated <time>' comment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (subcommand == "check") return cli::run_check(std::cout);

  if (config_path.empty()) {
    std::cerr << "error: " << subcommand << " needs --config\n";
    return 2;
  }
  std::stringstream text;
  if (config_path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return 2;
    }
    text << in.rdbuf();
  }

  cli::RunConfig config;
  try {
    config = cli::parse_config(text.str());
    if (!k_min.empty()) options.k_min = cli::parse_wavenumber(k_min);
    if (!k_max.empty()) options.k_max = cli::parse_wavenumber(k_max);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return cli::run(subcommand, config, options, std::cout, std::cerr);
}
