#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pzeta/cli.hpp"

int main(int argc, char** argv) {
  using namespace pzeta::cli;

  CLI::App app{"Locate, count and profile the zeros of Dirichlet partial sums F_X(s).", "pzeta"};
  app.set_version_flag("--version", std::string(pzeta::tool_version));
  app.set_config("--config", "", "Read options from a TOML/INI file");

  std::string command;
  std::string xs, ts, sigmas;
  std::optional<double> u;
  std::optional<long> y;
  RunConfig config;

  std::vector<std::string> names(std::begin(command_names), std::end(command_names));
  app.add_option("command", command, "bounds | zeros | count | stats | littlewood | mollifier | sweep | verify")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--X", xs, "X value(s): list or ranges a:b[:step]");
  app.add_option("--T", ts, "Height(s) T: list or ranges a:b[:step]");
  app.add_option("--sigma", sigmas, "sigma value(s): list or ranges a:b[:step]");
  app.add_option("--U", u, "Left edge parameter U (default X)");
  app.add_option("--Y", y, "Mollifier length Y (default X)");
  app.add_option("--eval-tol", config.eval_tol, "Relative negligibility threshold for |F_X|")->capture_default_str();
  app.add_option("--residual-tol", config.residual_tol, "Relative Newton residual tolerance")->capture_default_str();
  app.add_option("--quad-tol", config.quad_tol, "Absolute quadrature tolerance (0: 1e-6*T)")->capture_default_str();
  app.add_option("--format", config.format, "csv | json | auto")
      ->check(CLI::IsMember({"csv", "json", "auto"}))
      ->capture_default_str();
  app.add_option("-o,--output", config.output_path, "Output file (default stdout)");
  app.add_option("--workers", config.workers, "Worker threads for sweep (0: all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    config.command = *parse_command(command);
    config.xs = parse_integer_grid(xs);
    config.ts = parse_real_grid(ts);
    config.sigmas = parse_real_grid(sigmas);
  } catch (const pzeta::Error& e) {
    std::cerr << error_payload(e.code(), e.what(), e.location()).dump() << '\n';
    return 1;
  }
  config.u = u;
  config.y = y;
  return run(std::move(config), std::cout, std::cerr);
}
