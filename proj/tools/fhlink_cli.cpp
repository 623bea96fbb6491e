// Command-line front end for the frequency-hopping link simulator.
//
//   fhlink preset <name> [--seed N] [--threads N] [--out-dir DIR]
//                        [--trials-scale X]
//   fhlink run <config-file> [--seed N] [--threads N] [--out-dir DIR]
//                            [--trials-scale X]
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 file I/O
// failure, 4 internal error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fhlink/fhlink.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return ss.str();
}

void print_manifest_summary(const fhlink::RunManifest& m) {
  std::cout << "seed " << m.seed << ", " << m.trials << " trials in "
            << m.wall_seconds << " s\n";
  for (const std::string& out : m.outputs) std::cout << "  wrote " << out
                                                     << '\n';
  std::cout << "  digest " << m.config_digest << '\n';
}

// I/O problems surface as std::runtime_error from the writer/reader helpers;
// everything argument-shaped surfaces as std::invalid_argument or
// std::domain_error from validate()/constructors.
int classify_and_report(const std::exception& e) {
  if (dynamic_cast<const std::invalid_argument*>(&e) ||
      dynamic_cast<const std::domain_error*>(&e)) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (dynamic_cast<const std::runtime_error*>(&e)) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  std::cerr << "internal error: " << e.what() << '\n';
  return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo studies of frequency-hopping links under "
               "full-duplex relay interference"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
  double trials_scale = 1.0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Root seed for all random streams")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--threads", threads,
                    "Worker threads (results are thread-count invariant)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", out_dir, "Directory for CSV and manifest");
    cmd->add_option("--trials-scale", trials_scale,
                    "Multiplier applied to every Monte Carlo trial count")
        ->check(CLI::PositiveNumber);
  };

  std::string preset_name;
  CLI::App* preset_cmd =
      app.add_subcommand("preset", "Run a named study end to end");
  preset_cmd->add_option("name", preset_name, "Study name (fig2..fig14, lln, timing)")
      ->required();
  add_common(preset_cmd);

  std::string config_path;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run a BER experiment from a config file");
  run_cmd->add_option("config", config_path, "Path to key=value config file")
      ->required();
  add_common(run_cmd);

  CLI::App* list_cmd = app.add_subcommand("list", "List available studies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (list_cmd->parsed()) {
      for (const std::string& n : fhlink::preset_names()) std::cout << n << '\n';
      return kExitOk;
    }
    if (preset_cmd->parsed()) {
      fhlink::RunManifest m = fhlink::run_preset(preset_name, seed, out_dir,
                                                 threads, trials_scale);
      print_manifest_summary(m);
      return kExitOk;
    }
    // run subcommand
    std::string text;
    try {
      text = read_text_file(config_path);
    } catch (const std::runtime_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitIo;
    }
    fhlink::ExperimentSpec spec = fhlink::parse_config(text);
    if (seed_given) spec.seed = seed;
    spec.threads = threads;
    if (trials_scale != 1.0) {
      double scaled = static_cast<double>(spec.trials) * trials_scale;
      spec.trials = scaled < 1.0 ? 1 : static_cast<std::uint64_t>(scaled + 0.5);
    }
    spec.validate();
    fhlink::RunManifest m = fhlink::run_config(spec, out_dir);
    print_manifest_summary(m);
    return kExitOk;
  } catch (const std::exception& e) {
    return classify_and_report(e);
  } catch (...) {
    std::cerr << "internal error: unknown exception\n";
    return kExitInternal;
  }
}
