#include "zetavoa/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace zetavoa;

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for zeta-regularized Virasoro and vertex operator identities"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig flags;
  std::string config_path, format;
  std::vector<int> x0, x1, x2;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file; flags given here override it");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", flags.output, "write the result to this file");
    sub->add_option("--max", flags.max, "table size, r bound or weak-commutativity search bound");
    sub->add_option("--weight", flags.weight, "Fock space weight bound W");
    sub->add_option("--window", flags.window, "symmetric exponent or mode window");
    sub->add_option("--x0", x0, "x0 window lo hi")->expected(2);
    sub->add_option("--x1", x1, "x1 window lo hi")->expected(2);
    sub->add_option("--x2", x2, "x2 window lo hi")->expected(2);
    sub->add_option("--m", flags.m, "first mode index; omitted means sweep --range");
    sub->add_option("--n", flags.n, "second mode index; omitted means sweep --range");
    sub->add_option("--r", flags.r, "first operator order");
    sub->add_option("--s", flags.s, "second operator order");
    sub->add_option("--range", flags.range, "sweep |m|, |n| up to this bound");
    sub->add_option("--mmax", flags.mmax, "largest m for the purity interpolation");
    sub->add_option("--p", flags.pmax, "test polynomials t^p for |p| up to this bound");
    sub->add_option("--ydeg", flags.ydeg, "y-degree D");
    sub->add_option("--convention", flags.convention, "neg-powers-y1 or neg-powers-y2; omitted runs both");
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [name, sub] : subs)
    if (sub->parsed()) flags.command = name;
  auto to_pair = [](const std::vector<int>& v) -> std::optional<std::array<int, 2>> {
    if (v.empty()) return std::nullopt;
    return std::array<int, 2>{v[0], v[1]};
  };
  flags.x0 = to_pair(x0);
  flags.x1 = to_pair(x1);
  flags.x2 = to_pair(x2);

  RunConfig config = flags;
  try {
    if (!config_path.empty()) {
      RunConfig file = config_from_file(config_path);
      if (!file.command.empty() && file.command != flags.command)
        throw ConfigError("config command '" + file.command + "' does not match '" + flags.command + "'");
      config = overlay(file, flags);
      if (flags.output.empty()) config.output = file.output;
      if (format.empty()) config.format = file.format;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!format.empty()) config.format = format == "json" ? OutputFormat::json : OutputFormat::text;
  return run(config);
}
