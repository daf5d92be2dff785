// lcube - decides the causal direction of bivariate data by comparing
// two-part MDL code lengths of cubic regression splines fit in both
// directions, plus a benchmark harness around that decision rule.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lcube/lcube.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_infer(const std::string& path, int x_col, int y_col, int m_max,
              bool even_only) {
  lcube::PairSample pair = lcube::load_pair_file(path, x_col, y_col);
  const lcube::DirectionResult r =
      lcube::decide_direction(pair.x, pair.y, m_max, even_only);
  std::printf("pair:        %s (n = %zu)\n", pair.id.c_str(), pair.x.size());
  std::printf("score(X>Y):  %.6f  (best m = %d)\n", r.score_xy, r.best_m_xy);
  std::printf("score(Y>X):  %.6f  (best m = %d)\n", r.score_yx, r.best_m_yx);
  std::printf("decision:    %s\n", lcube::direction_name(r.decision));
  std::printf("confidence:  %.6f\n", r.confidence);
  return r.decision == lcube::Direction::Undecided ? 2 : 0;
}

int cmd_eval(const std::string& dir, const std::string& meta, int m_max,
             bool even_only, int jobs, const std::string& out_path) {
  lcube::LoadedDataset loaded = lcube::load_dataset(dir, meta);
  lcube::EvalConfig config{m_max, even_only, jobs};
  const lcube::RunReport report =
      lcube::evaluate_dataset(loaded.dataset, config, std::move(loaded.skipped));

  std::printf("%-24s %6s %10s %8s %8s %9s\n", "dataset", "pairs", "undecided",
              "ACC%", "AUDRC%", "time[s]");
  std::printf("%-24s %6d %10d %8.1f %8.1f %9.2f\n", report.dataset.c_str(),
              report.summary.n_pairs, report.summary.n_undecided,
              100.0 * report.summary.accuracy, 100.0 * report.summary.audrc,
              report.wall_seconds);
  if (!report.skipped.empty()) {
    std::printf("skipped %zu pair(s):\n", report.skipped.size());
    for (const auto& s : report.skipped)
      std::printf("  %s: %s\n", s.id.c_str(), s.reason.c_str());
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw lcube::Error("cannot write " + out_path);
    out << lcube::report_to_json(report).dump(2) << '\n';
    std::printf("report written to %s\n", out_path.c_str());
  }
  return report.summary.n_pairs == 0 ? 1 : 0;
}

int cmd_gen(const std::string& family_name, int pairs, int samples, double noise,
            std::uint64_t seed, const std::string& out_dir, bool force) {
  const auto family = lcube::family_from_name(family_name);
  if (!family) throw lcube::Error("unknown family: " + family_name);
  if (fs::exists(out_dir) && !fs::is_empty(out_dir) && !force)
    throw lcube::Error(out_dir + " is not empty (use --force to overwrite)");
  lcube::GeneratorConfig config{*family, pairs, samples, noise, seed};
  const lcube::Dataset dataset = lcube::generate_dataset(config);
  lcube::write_dataset(dataset, out_dir);
  std::printf("wrote %d pairs x %d samples (%s, noise %g, seed %llu) to %s\n",
              pairs, samples, lcube::family_name(*family), noise,
              static_cast<unsigned long long>(seed), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate causal direction via MDL cubic-spline scores"};
  app.set_version_flag("--version", lcube::kVersion);
  app.require_subcommand(1);

  std::string in_path, meta_path, out_path, family = "an";
  int x_col = 0, y_col = 1, m_max = 10, pairs = 100, samples = 1000;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  bool even_only = false, force = false;
  double noise = 0.05;
  std::uint64_t seed = 1;

  auto* infer = app.add_subcommand("infer", "Decide the direction of one pair file");
  infer->add_option("file", in_path, "pair file (numeric columns)")->required();
  infer->add_option("--x-col", x_col, "0-based x column")->capture_default_str();
  infer->add_option("--y-col", y_col, "0-based y column")->capture_default_str();
  infer->add_option("--m-max", m_max, "max knot count")->check(CLI::PositiveNumber)
      ->capture_default_str();
  infer->add_flag("--even-only", even_only, "search even knot counts only");

  auto* eval = app.add_subcommand("eval", "Evaluate every pair in a directory");
  eval->add_option("dir", in_path, "dataset directory")->required();
  eval->add_option("--meta", meta_path,
                   "meta file (default: <dir>/pairmeta.txt when present)");
  eval->add_option("--m-max", m_max, "max knot count")->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_flag("--even-only", even_only, "search even knot counts only");
  eval->add_option("--jobs", jobs, "worker threads")->envname("LCUBE_JOBS")
      ->check(CLI::PositiveNumber)->capture_default_str();
  eval->add_option("--out", out_path, "write JSON report here");

  auto* gen = app.add_subcommand("gen", "Generate a seeded synthetic dataset");
  gen->add_option("--family", family, "an|ans|ls|lss|mnu")
      ->check(CLI::IsMember({"an", "ans", "ls", "lss", "mnu"}))
      ->capture_default_str();
  gen->add_option("--pairs", pairs, "number of pairs")->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--samples", samples, "samples per pair")
      ->check(CLI::Range(8, 1 << 24))->capture_default_str();
  gen->add_option("--noise", noise, "noise level")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", out_path, "output directory")->required();
  gen->add_flag("--force", force, "overwrite a non-empty output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (infer->parsed()) return cmd_infer(in_path, x_col, y_col, m_max, even_only);
    if (eval->parsed())
      return cmd_eval(in_path, meta_path, m_max, even_only, jobs, out_path);
    return cmd_gen(family, pairs, samples, noise, seed, out_path, force);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
