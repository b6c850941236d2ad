// lieharm: run one declarative job and write a JSON report.
//
//   lieharm verify-family --config job.json --seed 7 --out report.json
//   lieharm --list

#include "lieharm/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace rn = lieharm::runner;

namespace {

struct Options {
  std::string config;
  std::string seed;
  std::string out;
  std::vector<std::string> tols;
};

int execute(rn::JobKind kind, const Options& o) {
  rn::JobConfig cfg;
  try {
    std::optional<std::uint64_t> seed;
    if (!o.seed.empty()) {
      std::size_t used = 0;
      try {
        seed = std::stoull(o.seed, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != o.seed.size() || o.seed.front() == '-') throw rn::ConfigError("--seed: expected a non-negative integer");
    }
    cfg = rn::load_config(o.config, seed);
    if (cfg.kind != kind)
      throw rn::ConfigError(std::string("config field 'kind': '") + rn::to_string(cfg.kind) +
                            "' does not match subcommand '" + rn::to_string(kind) + "'");
    for (const auto& t : o.tols) rn::apply_tolerance_override(cfg, t);
    if (!o.out.empty()) cfg.output = o.out;
  } catch (const rn::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  rn::Report report;
  try {
    report = rn::run(cfg);
  } catch (const rn::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string body = report.to_json().dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cerr << report.summary();
    std::cout << body;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      std::cerr << "cannot write report to '" << cfg.output << "'\n";
      return 1;
    }
    f << body;
    std::cout << report.summary();
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic morphisms and foliations on Lie groups: verification jobs"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "Print the built-in groups as JSON");

  Options opts;
  std::vector<std::pair<CLI::App*, rn::JobKind>> subs;
  for (rn::JobKind k : {rn::JobKind::CheckAlgebra, rn::JobKind::Construct, rn::JobKind::VerifyFamily,
                        rn::JobKind::SecondConstruction, rn::JobKind::FoliationScan, rn::JobKind::Curvature}) {
    CLI::App* sub = app.add_subcommand(rn::to_string(k));
    sub->add_option("--config", opts.config, "Job config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Override the config seed");
    sub->add_option("--out", opts.out, "Report path (default: stdout)");
    sub->add_option("--tol", opts.tols, "Tolerance override name=value (repeatable)");
    subs.emplace_back(sub, k);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (list) {
    std::cout << rn::list_builtins().dump(2) << '\n';
    return 0;
  }
  for (const auto& [sub, kind] : subs)
    if (sub->parsed()) return execute(kind, opts);
  std::cerr << app.help();
  return 2;
}
