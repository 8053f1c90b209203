// geophase: command-line front end for the rotating-field spin model and the
// flux ring. Exit codes: 0 ok, 1 tolerance breach, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "geophase/commands.hpp"

namespace {

struct Options {
  double B = 1.0;
  double theta = geophase::pi / 3.0;
  std::optional<double> omega0;
  std::optional<double> eta;
  double hbar = 1.0;
  std::string out;
  std::string format;  // empty: command default
  std::uint64_t seed = 42;

  std::optional<double> t_end;
  int samples = 101;
  std::size_t nsteps = 100000;

  double eta_min = 1e-3;
  double eta_max = 1e3;
  int points = 60;
  std::string spacing = "log";
  unsigned threads = 0;

  int count = 100;
  int harmonics = geophase::GaugeFunction::max_harmonics;
  bool non_periodic = false;

  std::string branch = "plus";

  int sites = 256;
  double hopping = 1.0;
  double flux_ratio = 0.0;
  double width = 8.0;
  std::vector<double> ks;
};

geophase::ModelParams model_params(const Options& o) {
  geophase::ModelParams p{o.B, o.theta, 1.0, o.hbar};
  if (o.eta) {
    p = geophase::ModelParams::from_eta(o.B, o.theta, *o.eta, o.hbar);
  } else if (o.omega0) {
    p.omega0 = *o.omega0;
  }
  p.validate();
  return p;
}

double end_time(const Options& o, const geophase::ModelParams& p) {
  if (o.t_end) return *o.t_end;
  return p.period();
}

int emit(const geophase::CommandResult& r, const Options& o, const std::string& default_format) {
  const std::string fmt = o.format.empty() ? default_format : o.format;
  const std::string text = fmt == "json" ? geophase::to_json(r.table) : geophase::to_csv(r.table);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << o.out << " for writing\n";
      return 2;
    }
    f << text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases of a spin in a rotating field, and the Aharonov-Bohm ring"};
  app.set_config("--config", "", "flat key = value file mirroring flag names");
  app.require_subcommand(1);

  Options o;
  app.add_option("--B", o.B, "field magnitude (energy units)")->capture_default_str();
  app.add_option("--theta", o.theta, "field polar angle in radians")->capture_default_str();
  auto* om = app.add_option("--omega0", o.omega0, "rotation frequency (default 1)");
  auto* et = app.add_option("--eta", o.eta, "adiabaticity ratio hbar*omega0/B");
  om->excludes(et);
  et->excludes(om);
  app.add_option("--hbar", o.hbar)->capture_default_str();
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", o.seed)->capture_default_str();

  app.add_option("--t-end", o.t_end, "end time (default one period)");
  app.add_option("--samples", o.samples)->capture_default_str();
  app.add_option("--nsteps", o.nsteps)->capture_default_str();

  app.add_option("--eta-min", o.eta_min)->capture_default_str();
  app.add_option("--eta-max", o.eta_max)->capture_default_str();
  app.add_option("--points", o.points)->capture_default_str();
  app.add_option("--spacing", o.spacing)->check(CLI::IsMember({"log", "linear"}));
  app.add_option("--threads", o.threads, "sweep workers (0 = hardware)");

  app.add_option("--count", o.count)->capture_default_str();
  app.add_option("--harmonics", o.harmonics)->check(CLI::Range(0, 8));
  app.add_flag("--non-periodic", o.non_periodic, "add a linear drift to each gauge function");

  app.add_option("--branch", o.branch)->check(CLI::IsMember({"plus", "minus"}));

  app.add_option("--sites", o.sites)->capture_default_str();
  app.add_option("--hopping", o.hopping)->capture_default_str();
  app.add_option("--flux-ratio", o.flux_ratio)->capture_default_str();
  app.add_option("--width", o.width, "packet width in sites")->capture_default_str();
  app.add_option("--k", o.ks, "carrier wavenumber (repeatable)");

  auto* exact = app.add_subcommand("exact", "closed-form amplitudes of both branches");
  auto* evolve = app.add_subcommand("evolve", "numerical propagator vs closed form");
  auto* sweep = app.add_subcommand("sweep", "adiabaticity sweep");
  auto* gauge = app.add_subcommand("gauge-check", "hidden gauge transformation battery");
  auto* interfere = app.add_subcommand("interfere", "|psi(T) + psi(0)|^2 vs closed form");
  auto* ring = app.add_subcommand("ab-ring", "two-arm phase on a flux-threaded ring");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (exact->parsed()) {
      const auto p = model_params(o);
      return emit(geophase::cmd_exact(p, end_time(o, p), o.samples), o, "csv");
    }
    if (evolve->parsed()) {
      const auto p = model_params(o);
      return emit(geophase::cmd_evolve(p, o.nsteps, end_time(o, p)), o, "csv");
    }
    if (sweep->parsed()) {
      geophase::SweepSpec spec{o.theta,  o.eta_min, o.eta_max,
                               o.points, o.spacing == "log" ? geophase::Spacing::Log
                                                            : geophase::Spacing::Linear,
                               o.B,      o.hbar};
      return emit(geophase::cmd_sweep(spec, o.threads), o, "csv");
    }
    if (gauge->parsed()) {
      return emit(geophase::cmd_gauge_check(model_params(o), o.seed, o.count, o.harmonics,
                                            o.non_periodic),
                  o, "json");
    }
    if (interfere->parsed()) {
      const auto br = o.branch == "plus" ? geophase::Branch::Plus : geophase::Branch::Minus;
      return emit(geophase::cmd_interfere(model_params(o), br), o, "csv");
    }
    if (ring->parsed()) {
      std::vector<double> ks = o.ks;
      if (ks.empty())
        ks = {geophase::pi / 8, geophase::pi / 4, geophase::pi / 2, 5 * geophase::pi / 8};
      geophase::RingConfig cfg{o.sites, o.hopping, o.flux_ratio, o.hbar};
      return emit(geophase::cmd_ab_ring(cfg, ks, o.width), o, "csv");
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
