#include "brownian/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brownian/defaults.hpp"
#include "brownian/modulus.hpp"
#include "brownian/noise.hpp"
#include "brownian/path.hpp"
#include "brownian/suites.hpp"

namespace brownian::cli {

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 0;
  std::uint32_t horizon = 0;
  std::uint32_t level = 0;
  std::uint64_t paths = 0;
  std::string out;
  std::string format;
  unsigned workers = 0;
  double noise_scale = 1.0;

  // verify-modulus
  std::uint32_t measurement_level = defaults::kMeasurementLevel;
  // verify-etemadi / verify-modulus / bounds
  std::vector<double> alphas;
  std::vector<std::uint32_t> rademacher_steps;
  std::vector<std::uint32_t> gaussian_steps;
  // bounds
  std::uint32_t from = 1;
  std::uint32_t to = defaults::kBoundTableMax;
};

std::shared_ptr<const NoiseGenerator> generator_for(const Options& o) {
  if (o.noise_scale == 1.0) return default_generator();
  return std::make_shared<const ScaledGenerator>(default_generator(), o.noise_scale);
}

Json base_config(const std::string& subcommand) {
  Json c;
  c["tool"] = "brownian";
  c["defaults_version"] = std::string(defaults::kVersion);
  c["subcommand"] = subcommand;
  return c;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw IoFailure("failed writing " + path);
}

std::string with_seed_suffix(const std::string& path, std::uint64_t seed) {
  const std::filesystem::path p(path);
  auto name = p.stem().string() + "_" + std::to_string(seed) + p.extension().string();
  return (p.parent_path() / name).string();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ",";
    s += format_round_trip(x);
  }
  return s;
}

template <typename T>
std::string join_ints(const std::vector<T>& v) {
  std::string s;
  for (T x : v) {
    if (!s.empty()) s += ",";
    s += std::to_string(x);
  }
  return s;
}

std::string scale_flag(const Options& o) {
  return o.noise_scale == 1.0 ? "" : " --noise-scale " + format_round_trip(o.noise_scale);
}

int emit_report(const StatReport& report, const Options& o, std::ostream& out) {
  const std::string text = o.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  write_text(o.out, text, out);
  return report.pass() ? kOk : kChecksFailed;
}

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.paths > 1 && o.out.empty()) throw UsageFailure("--paths > 1 requires --out");
  const auto generator = generator_for(o);
  for (std::uint64_t i = 0; i < o.paths; ++i) {
    const std::uint64_t seed = o.seed + i;
    const NoiseSource src(seed, generator);
    const DyadicPath path = construct(o.horizon, o.level, src);

    Json config = base_config("generate");
    config["seed"] = seed;
    config["horizon"] = o.horizon;
    config["level"] = o.level;
    config["generator"] = src.generator_id();
    if (o.noise_scale != 1.0) config["noise_scale"] = o.noise_scale;
    config["command"] = "brownian generate --seed " + std::to_string(seed) + " --horizon " +
                        std::to_string(o.horizon) + " --level " + std::to_string(o.level) + " --format " +
                        o.format + scale_flag(o);

    std::ostringstream text;
    if (o.format == "json") {
      Json doc;
      doc["config"] = config;
      Json points = Json::array();
      const auto values = path.values();
      for (std::size_t k = 0; k < values.size(); ++k) {
        points.push_back(Json{{"t", path.time_at(k).to_decimal()}, {"value", values[k]}});
      }
      doc["points"] = std::move(points);
      text << doc.dump(2) << '\n';
    } else {
      text << "# " << config.dump() << '\n';
      write_csv(text, path);
    }
    write_text(o.paths > 1 ? with_seed_suffix(o.out, seed) : o.out, text.str(), out);
  }
  return kOk;
}

int cmd_verify_law(const Options& o, std::ostream& out) {
  if (o.paths < defaults::kLawMinPaths) {
    throw UsageFailure("verify-law needs --paths >= " + std::to_string(defaults::kLawMinPaths));
  }
  LawSuiteConfig config = LawSuiteConfig::registered();
  config.horizon = o.horizon;
  config.level = o.level;
  config.paths = o.paths;
  config.base_seed = o.seed;
  StatReport report;
  try {
    report = run_law_suite(config, RunOptions{generator_for(o), o.workers});
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(std::string(e.what()) + " (registered points need horizon >= 2 and level >= 6)");
  }
  Json echo = base_config("verify-law");
  echo["seed"] = o.seed;
  if (o.noise_scale != 1.0) echo["noise_scale"] = o.noise_scale;
  echo["command"] = "brownian verify-law --seed " + std::to_string(o.seed) + " --horizon " +
                    std::to_string(o.horizon) + " --level " + std::to_string(o.level) + " --paths " +
                    std::to_string(o.paths) + " --format " + o.format + scale_flag(o);
  echo.update(report.config);
  report.config = std::move(echo);
  return emit_report(report, o, out);
}

int cmd_verify_modulus(const Options& o, std::ostream& out) {
  ModulusSuiteConfig config;
  config.level = o.level;
  config.measurement_level = o.measurement_level;
  config.paths = o.paths;
  config.base_seed = o.seed;
  if (!o.alphas.empty()) config.alphas = o.alphas;
  const std::uint32_t required = modulus_min_horizon(o.level);
  config.horizon = o.horizon == 0 ? required : o.horizon;
  if (config.horizon < required) {
    throw UsageFailure("verify-modulus at level " + std::to_string(o.level) + " needs --horizon >= " +
                       std::to_string(required));
  }
  if (o.measurement_level < o.level) throw UsageFailure("--measure-level must be >= --level");
  if (o.measurement_level > kMaxLevel) throw UsageFailure("--measure-level exceeds " + std::to_string(kMaxLevel));
  for (double a : config.alphas) {
    if (!(a > 0.0)) throw UsageFailure("--alpha values must be positive");
  }
  StatReport report = run_modulus_suite(config, RunOptions{generator_for(o), o.workers});
  Json echo = base_config("verify-modulus");
  echo["seed"] = o.seed;
  if (o.noise_scale != 1.0) echo["noise_scale"] = o.noise_scale;
  echo["command"] = "brownian verify-modulus --seed " + std::to_string(o.seed) + " --horizon " +
                    std::to_string(config.horizon) + " --level " + std::to_string(o.level) + " --measure-level " +
                    std::to_string(o.measurement_level) + " --paths " + std::to_string(o.paths) + " --alpha " +
                    join(config.alphas) + " --format " + o.format + scale_flag(o);
  echo.update(report.config);
  report.config = std::move(echo);
  return emit_report(report, o, out);
}

int cmd_verify_etemadi(const Options& o, std::ostream& out) {
  EtemadiSuiteConfig config;
  config.alphas = o.alphas;
  config.rademacher_steps = o.rademacher_steps;
  config.gaussian_steps = o.gaussian_steps;
  config.trials = o.paths;
  config.seed = o.seed;
  for (double a : config.alphas) {
    if (!(a >= 0.0)) throw UsageFailure("--alpha values must be non-negative");
  }
  for (auto n : config.rademacher_steps) {
    if (n == 0 || n > 23) throw UsageFailure("--rademacher-steps must lie in 1..23 (2^n <= 10^7 sequences)");
  }
  for (auto n : config.gaussian_steps) {
    if (n == 0) throw UsageFailure("--gaussian-steps must be positive");
  }
  if (config.trials < 1000) throw UsageFailure("--paths (trials) must be >= 1000");
  StatReport report = run_etemadi_suite(config, o.workers);
  Json echo = base_config("verify-etemadi");
  echo["command"] = "brownian verify-etemadi --seed " + std::to_string(o.seed) + " --paths " +
                    std::to_string(o.paths) + " --alpha " + join(config.alphas) + " --rademacher-steps " +
                    join_ints(config.rademacher_steps) + " --gaussian-steps " + join_ints(config.gaussian_steps) +
                    " --format " + o.format;
  echo.update(report.config);
  report.config = std::move(echo);
  return emit_report(report, o, out);
}

int cmd_bounds(const Options& o, std::ostream& out) {
  if (o.from == 0 || o.to < o.from) throw UsageFailure("bounds needs 1 <= --from <= --to");
  if (o.to > 1000) throw UsageFailure("--to must be <= 1000");
  for (double a : o.alphas) {
    if (!(a > 0.0)) throw UsageFailure("--alpha values must be positive");
  }
  const Json rows = bound_table(o.from, o.to, o.alphas);
  Json config = base_config("bounds");
  config["from"] = o.from;
  config["to"] = o.to;
  config["alphas"] = o.alphas;
  config["command"] = "brownian bounds --from " + std::to_string(o.from) + " --to " + std::to_string(o.to) +
                      " --alpha " + join(o.alphas) + " --format " + o.format;

  std::ostringstream text;
  if (o.format == "json") {
    text << Json{{"config", config}, {"rows", rows}}.dump(2) << '\n';
  } else {
    text << "# " << config.dump() << '\n';
    text << "n";
    for (double a : o.alphas) text << ",interval_tail_bound(alpha=" << format_round_trip(a) << ")";
    text << ",modulus_tail_term,partial_sum\n";
    for (const auto& row : rows) {
      const auto n = row["n"].get<std::uint32_t>();
      text << n;
      for (double a : o.alphas) text << ',' << format_round_trip(interval_tail_bound(n, a));
      text << ',' << format_round_trip(row["modulus_tail_term"].get<double>()) << ','
           << format_round_trip(row["partial_sum"].get<double>()) << '\n';
    }
  }
  write_text(o.out, text.str(), out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dyadic midpoint-displacement Brownian motion: path generation and law verification", "brownian"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Write path file(s) on the dyadic grid");
  auto* law = app.add_subcommand("verify-law", "Moment, covariance and KS checks of the law of B");
  auto* modulus = app.add_subcommand("verify-modulus", "Empirical modulus tails against their bounds");
  auto* etemadi = app.add_subcommand("verify-etemadi", "Etemadi's maximal inequality, exact and Monte Carlo");
  auto* bounds = app.add_subcommand("bounds", "Tables of the modulus bound terms");

  // Subcommands share one Options; per-subcommand defaults are filled in after parsing.
  for (auto* sub : {generate, law, modulus, etemadi}) {
    sub->add_option("--seed", o.seed, "Base seed; every random draw is a function of it")->required();
  }
  for (auto* sub : {generate, law, modulus, etemadi, bounds}) {
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  }
  for (auto* sub : {generate, law, modulus, etemadi}) {
    sub->add_option("--paths", o.paths, "Number of paths (trials for verify-etemadi)");
    sub->add_option("--workers", o.workers, "Worker threads (0 = all cores); does not affect output");
  }
  for (auto* sub : {generate, law, modulus}) {
    sub->add_option("--horizon", o.horizon, "Integer horizon T");
    sub->add_option("--level", o.level, "Dyadic level n")->check(CLI::Range(0u, kMaxLevel));
    sub->add_option("--noise-scale", o.noise_scale, "Multiply every noise draw (fault injection)")->group("");
  }
  modulus->add_option("--measure-level", o.measurement_level, "Grid level at which suprema are taken");
  std::vector<std::string> alphas_raw;
  for (auto* sub : {modulus, etemadi, bounds}) {
    sub->add_option("--alpha", alphas_raw, "Alpha grid (comma or space separated)")
        ->delimiter(',')
        ->expected(0, CLI::detail::expected_max_vector_size);
  }
  etemadi->add_option("--rademacher-steps", o.rademacher_steps, "Step counts for exact enumeration")->delimiter(',');
  etemadi->add_option("--gaussian-steps", o.gaussian_steps, "Step counts for Monte Carlo")->delimiter(',');
  bounds->add_option("--from", o.from, "First n");
  bounds->add_option("--to", o.to, "Last n");

  o.level = ~0u;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto count_alpha = [&](CLI::App* sub) { return sub->count("--alpha"); };
  auto alpha_grid = [&] {
    std::vector<double> grid;
    for (const auto& text : alphas_raw) {
      if (text.empty()) continue;
      std::size_t used = 0;
      double a = 0.0;
      try {
        a = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size()) throw UsageFailure("--alpha value '" + text + "' is not a number");
      grid.push_back(a);
    }
    if (grid.empty()) throw UsageFailure("--alpha given with an empty grid");
    return grid;
  };

  try {
    if (generate->parsed()) {
      if (o.format.empty()) o.format = "csv";
      if (o.horizon == 0) o.horizon = 1;
      if (o.level == ~0u) o.level = 0;
      if (o.paths == 0) o.paths = 1;
      return cmd_generate(o, out);
    }
    if (law->parsed()) {
      if (o.format.empty()) o.format = "json";
      if (o.horizon == 0) o.horizon = defaults::kLawHorizon;
      if (o.level == ~0u) o.level = defaults::kLawLevel;
      if (o.paths == 0) o.paths = defaults::kLawPaths;
      return cmd_verify_law(o, out);
    }
    if (modulus->parsed()) {
      if (o.format.empty()) o.format = "json";
      if (o.level == ~0u) o.level = defaults::kModulusLevel;
      if (o.paths == 0) o.paths = defaults::kModulusPaths;
      if (count_alpha(modulus) > 0) {
        o.alphas = alpha_grid();
      }
      return cmd_verify_modulus(o, out);
    }
    if (etemadi->parsed()) {
      if (o.format.empty()) o.format = "json";
      if (o.paths == 0) o.paths = defaults::kEtemadiTrials;
      if (count_alpha(etemadi) > 0) {
        o.alphas = alpha_grid();
      } else {
        o.alphas = EtemadiSuiteConfig::default_alphas();
      }
      if (etemadi->count("--rademacher-steps") == 0) {
        o.rademacher_steps.assign(defaults::kRademacherSteps.begin(), defaults::kRademacherSteps.end());
      }
      if (etemadi->count("--gaussian-steps") == 0) {
        o.gaussian_steps.assign(defaults::kGaussianSteps.begin(), defaults::kGaussianSteps.end());
      }
      return cmd_verify_etemadi(o, out);
    }
    if (bounds->parsed()) {
      if (o.format.empty()) o.format = "csv";
      if (count_alpha(bounds) > 0) {
        o.alphas = alpha_grid();
      } else {
        o.alphas.assign(defaults::kModulusAlphas.begin(), defaults::kModulusAlphas.end());
      }
      return cmd_bounds(o, out);
    }
  } catch (const UsageFailure& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace brownian::cli
