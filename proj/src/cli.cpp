#include "isospin/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isospin/bipartite.hpp"
#include "isospin/channels.hpp"
#include "isospin/entropy.hpp"
#include "isospin/error.hpp"
#include "isospin/io.hpp"
#include "isospin/verify.hpp"

namespace isospin {

namespace {

enum class ChannelKind { PhiHalf, PhiOne, PhiOneMagnetic, TransposeDepolarizing };
enum class Units { Nats, Bits };
enum class Format { Json, Csv, Text };

struct CliConfig {
  std::string command;
  ChannelKind channel = ChannelKind::PhiHalf;
  std::optional<int> dim;
  std::string channel_file;
  std::uint64_t seed = 42;
  int restarts = 64;
  double tol = 1e-10;
  int grid = 101;
  Units units = Units::Nats;
  std::string output;
  std::optional<Format> format;
  bool three_copies = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void add_common_options(CLI::App& sub, CliConfig& cfg) {
  const std::map<std::string, ChannelKind> channels{
      {"phi-half", ChannelKind::PhiHalf},
      {"phi-one", ChannelKind::PhiOne},
      {"phi-one-magnetic", ChannelKind::PhiOneMagnetic},
      {"transpose-depolarizing", ChannelKind::TransposeDepolarizing}};
  const std::map<std::string, Units> units{{"nats", Units::Nats}, {"bits", Units::Bits}};
  const std::map<std::string, Format> formats{
      {"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};

  sub.add_option("--channel", cfg.channel, "Channel to build")
      ->transform(CLI::CheckedTransformer(channels, CLI::ignore_case));
  sub.add_option("--dim", cfg.dim, "Dimension for transpose-depolarizing (2..8)");
  sub.add_option("--channel-file", cfg.channel_file, "Import a channel from a JSON file");
  sub.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  sub.add_option("--restarts", cfg.restarts, "Optimizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub.add_option("--tol", cfg.tol, "Simplex convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub.add_option("--grid", cfg.grid, "Curve grid points (>= 3)")->capture_default_str();
  sub.add_option("--units", cfg.units, "nats or bits")
      ->transform(CLI::CheckedTransformer(units, CLI::ignore_case));
  sub.add_option("--output,-o", cfg.output, "Write to this file instead of stdout");
  sub.add_option("--format", cfg.format, "json, csv or text")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

KrausChannel make_channel(const CliConfig& cfg) {
  if (!cfg.channel_file.empty()) {
    std::ifstream in(cfg.channel_file);
    if (!in) throw UsageError("cannot open " + cfg.channel_file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::InvalidFormat, e.what());
    }
    return channel_from_json(j);
  }
  switch (cfg.channel) {
    case ChannelKind::PhiHalf: return build_isotropic(Spin::Half);
    case ChannelKind::PhiOne: return build_isotropic(Spin::One, SpinBasis::Cartesian);
    case ChannelKind::PhiOneMagnetic: return build_isotropic(Spin::One, SpinBasis::Magnetic);
    case ChannelKind::TransposeDepolarizing:
      return build_transpose_depolarizing(static_cast<std::size_t>(*cfg.dim));
  }
  throw UsageError("unknown channel");
}

void validate(const CliConfig& cfg, const CLI::App& sub) {
  const bool td = cfg.channel == ChannelKind::TransposeDepolarizing;
  if (td && !cfg.dim) throw UsageError("--dim is required for transpose-depolarizing");
  if (!td && cfg.dim) throw UsageError("--dim is only valid with transpose-depolarizing");
  if (!cfg.channel_file.empty() && (sub.count("--channel") > 0 || cfg.dim))
    throw UsageError("--channel-file cannot be combined with --channel or --dim");
  if (cfg.grid < 3) throw UsageError("--grid must be at least 3");
}

double unit_scale(Units u) { return u == Units::Bits ? 1.0 / std::log(2.0) : 1.0; }
std::string unit_name(Units u) { return u == Units::Bits ? "bits" : "nats"; }

void write(const CliConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << text;
}

int cmd_info(const CliConfig& cfg, std::ostream& out) {
  const KrausChannel ch = make_channel(cfg);
  Json j;
  j["label"] = ch.label();
  j["dim"] = ch.dim();
  j["kraus_operators"] = ch.kraus().size();
  j["trace_preservation_residual"] = ch.trace_preservation_residual();
  j["unitality_residual"] = ch.unitality_residual();
  if (ch.dim() <= 8) j["choi_min_eigenvalue"] = choi_min_eigenvalue(ch);
  if (ch.symmetry()) j["covariance_residual"] = check_covariance(ch, 100, cfg.seed);
  if (cfg.format == Format::Text) {
    std::ostringstream s;
    for (auto it = j.begin(); it != j.end(); ++it)
      s << it.key() << " = " << (it->is_number_float() ? fmt(it->get<double>()) : it->dump()) << '\n';
    write(cfg, out, s.str());
  } else {
    write(cfg, out, dump_json(j) + "\n");
  }
  return 0;
}

EntropyReport run_min_entropy(const CliConfig& cfg, const KrausChannel& ch) {
  MinEntropyOptions o;
  o.restarts = cfg.restarts;
  o.tolerance = cfg.tol;
  o.seed = cfg.seed;
  return min_output_entropy(ch, o);
}

int cmd_min_entropy(const CliConfig& cfg, std::ostream& out) {
  const KrausChannel ch = make_channel(cfg);
  const EntropyReport r = run_min_entropy(cfg, ch);
  const bool bits = cfg.units == Units::Bits;
  if (cfg.format == Format::Text) {
    write(cfg, out,
          "min_entropy_" + unit_name(cfg.units) + " = " + fmt(r.min_entropy * unit_scale(cfg.units)) +
              "\nrestarts = " + std::to_string(r.restarts) +
              "\nconverged = " + std::to_string(r.converged_restarts) + "\n");
  } else {
    write(cfg, out, dump_json(entropy_report_to_json(r, bits)) + "\n");
  }
  return 0;
}

int cmd_capacity(const CliConfig& cfg, std::ostream& out) {
  const KrausChannel ch = make_channel(cfg);
  const double residual = check_covariance(ch, 100, cfg.seed);
  const EntropyReport r = run_min_entropy(cfg, ch);
  const double chi = holevo_covariant(ch, r, residual);
  const double scale = unit_scale(cfg.units);
  const std::string u = unit_name(cfg.units);
  Json j;
  j["channel"] = ch.label();
  j["chi_" + u] = chi * scale;
  j["min_entropy_" + u] = r.min_entropy * scale;
  j["covariance_residual"] = residual;
  j["restarts"] = r.restarts;
  j["seed"] = cfg.seed;
  if (cfg.format == Format::Text)
    write(cfg, out, "chi_" + u + " = " + fmt(chi * scale) + "\n");
  else
    write(cfg, out, dump_json(j) + "\n");
  return 0;
}

int cmd_curve(const CliConfig& cfg, const CLI::App& sub, std::ostream& out) {
  if ((sub.count("--channel") > 0 && cfg.channel != ChannelKind::PhiHalf) ||
      !cfg.channel_file.empty())
    throw UsageError("curve is defined for phi-half only");
  const auto points = entropy_curve(cfg.grid);
  const bool bits = cfg.units == Units::Bits;
  if (cfg.format.value_or(Format::Csv) == Format::Json) {
    Json arr = Json::array();
    for (const auto& p : points)
      arr.push_back(Json{{"lambda1", p.lambda1},
                         {"eigenvalues", Json(std::vector<double>(p.eigenvalues.begin(), p.eigenvalues.end()))},
                         {"entropy_" + unit_name(cfg.units), p.entropy_nats * unit_scale(cfg.units)}});
    write(cfg, out, dump_json(arr) + "\n");
  } else {
    std::ostringstream s;
    write_curve_csv(s, points, bits);
    write(cfg, out, s.str());
  }
  return 0;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  RunAllOptions o;
  o.seed = cfg.seed;
  o.restarts = cfg.restarts;
  o.include_three_copies = cfg.three_copies;
  const auto results = run_all(o);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (cfg.format == Format::Text) {
    std::ostringstream s;
    for (const auto& r : results)
      s << (r.passed ? "PASS " : "FAIL ") << r.name << " residual=" << fmt(r.residual)
        << " tolerance=" << fmt(r.tolerance) << '\n';
    s << (all ? "all checks passed" : "some checks FAILED") << '\n';
    write(cfg, out, s.str());
  } else {
    write(cfg, out, dump_json(check_results_to_json(results)) + "\n");
  }
  return all ? 0 : 1;
}

int cmd_export(const CliConfig& cfg, std::ostream& out) {
  write(cfg, out, dump_json(channel_to_json(make_channel(cfg))) + "\n");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Isotropic spin channels: minimum output entropy, capacities and checks"};
  app.require_subcommand(1, 1);

  auto* info = app.add_subcommand("info", "Describe a channel");
  auto* moe = app.add_subcommand("min-entropy", "Minimum output entropy");
  auto* cap = app.add_subcommand("capacity", "Holevo capacity of a covariant channel");
  auto* curve = app.add_subcommand("curve", "Product-channel entropy over the Schmidt simplex");
  auto* verify = app.add_subcommand("verify", "Run every verification check");
  auto* exp = app.add_subcommand("export-channel", "Write a channel as JSON");
  for (auto* sub : {info, moe, cap, curve, verify, exp}) add_common_options(*sub, cfg);
  verify->add_flag("--three-copies", cfg.three_copies, "Also probe h(Phi^3) = 3 h(Phi) for phi-half");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    validate(cfg, *sub);
    if (sub == info) return cmd_info(cfg, out);
    if (sub == moe) return cmd_min_entropy(cfg, out);
    if (sub == cap) return cmd_capacity(cfg, out);
    if (sub == curve) return cmd_curve(cfg, *sub, out);
    if (sub == verify) return cmd_verify(cfg, out);
    return cmd_export(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace isospin
