// ehspin: command-line front end for the verification suites.
//
//   ehspin check-clifford
//   ehspin check-geometry --d 3 --B 16
//   ehspin check-parallel --d 2 --B 1
//   ehspin check-harmonic --d 3 --B 16 --m-range -2,2 --n-range -2,2
//   ehspin classify --d 3 --m-range -3,3 --n-range -3,3 --format csv
//   ehspin sample --d 3 --B 16 --m 0 --n 0 --grid 9,9,1,1 --format csv --out mode.csv
//
// Exit status: 0 when every check passes (expected failures must fail),
// 1 when some check does not, 2 on invalid input or a refused request.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ehspin/suites.hpp"

namespace {

struct Options {
  ehspin::RunConfig config;
  std::vector<int> grid{5, 5, 3, 3};
  std::vector<int> m_range{-2, 2};
  std::vector<int> n_range{-2, 2};
  double tol = 0;
  std::string out;
  std::string format = "json";
  int m = 0;
  int n = 0;
  std::vector<double> amplitudes;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--d", o.config.d, "quotient order (2 = Eguchi-Hanson)")->capture_default_str();
  cmd->add_option("--B", o.config.B, "metric constant B > 0")->capture_default_str();
  cmd->add_option("--h", o.config.h, "finite-difference step")->capture_default_str();
  cmd->add_option("--tol", o.tol, "override the suite's primary tolerance");
  cmd->add_option("--grid", o.grid, "sample counts nr,ntheta,nphi,npsi")->delimiter(',')->expected(4);
  cmd->add_option("--seed", o.config.seed, "seed for random sample points")->capture_default_str();
  cmd->add_option("--points", o.config.points, "random sample points per property")->capture_default_str();
  cmd->add_option("--threads", o.config.threads, "worker threads")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (relative paths resolve against $EHSPIN_OUTPUT_DIR)");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--r-range", "r range as multiples of r0: lo,hi")
      ->delimiter(',')
      ->expected(2)
      ->each([&o, i = 0](const std::string& s) mutable {
        (i++ == 0 ? o.config.box.r_min_factor : o.config.box.r_max_factor) = std::stod(s);
      });
  cmd->add_option("--theta-range", "theta range: lo,hi")
      ->delimiter(',')
      ->expected(2)
      ->each([&o, i = 0](const std::string& s) mutable {
        (i++ == 0 ? o.config.box.theta_min : o.config.box.theta_max) = std::stod(s);
      });
}

void add_mode_ranges(CLI::App* cmd, Options& o) {
  cmd->add_option("--m-range", o.m_range, "m range lo,hi")->delimiter(',')->expected(2);
  cmd->add_option("--n-range", o.n_range, "n range lo,hi")->delimiter(',')->expected(2);
}

void finalize(Options& o, const CLI::App* cmd) {
  std::copy(o.grid.begin(), o.grid.end(), o.config.grid.begin());
  o.config.m_range = {o.m_range[0], o.m_range[1]};
  o.config.n_range = {o.n_range[0], o.n_range[1]};
  if (cmd->count("--tol")) o.config.tol = o.tol;
  if (o.config.threads < 1) o.config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("EHSPIN_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path.string());
  file << text;
  std::cerr << "wrote " << path.string() << '\n';
}

int emit_report(const ehspin::VerificationReport& rep, const Options& o) {
  emit(o.format == "csv" ? ehspin::to_csv(rep) : nlohmann::json(rep).dump(2) + "\n", o.out);
  for (const auto& c : rep.checks) {
    if (!c.ok())
      std::cerr << "FAILED " << rep.suite << ": " << c.name << " residual=" << c.residual << " tol=" << c.tol
                << (c.expected_fail ? " (expected to fail but passed)" : "") << '\n';
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of spin geometry on metrics of Eguchi-Hanson type"};
  app.set_config("--config", "", "config file with the same keys as the flags; flags win");
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  Options o;
  auto* clifford = app.add_subcommand("check-clifford", "gamma-matrix identities");
  auto* geometry = app.add_subcommand("check-geometry", "frame, structure equations and curvature");
  auto* parallel = app.add_subcommand("check-parallel", "parallel spinors on the d = 2 metric");
  auto* harmonic = app.add_subcommand("check-harmonic", "separated harmonic modes for d > 2");
  auto* classify = app.add_subcommand("classify", "singularity case table over a range of modes");
  auto* sample = app.add_subcommand("sample", "export a mode on a grid");
  for (auto* cmd : {clifford, geometry, parallel, harmonic, classify, sample}) add_common(cmd, o);
  add_mode_ranges(harmonic, o);
  add_mode_ranges(classify, o);
  sample->add_option("--m", o.m, "mode index m")->capture_default_str();
  sample->add_option("--n", o.n, "mode index n")->capture_default_str();
  sample->add_option("--C", o.amplitudes, "amplitudes re1,im1,...,re4,im4")->delimiter(',')->expected(8);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    finalize(o, cmd);
    if (cmd == clifford) return emit_report(ehspin::cmd_check_clifford(o.config), o);
    if (cmd == geometry) return emit_report(ehspin::cmd_check_geometry(o.config), o);
    if (cmd == parallel) return emit_report(ehspin::cmd_check_parallel(o.config), o);
    if (cmd == harmonic) return emit_report(ehspin::cmd_check_harmonic(o.config), o);
    if (cmd == classify) {
      const auto table = ehspin::cmd_classify(o.config.d, o.config.m_range, o.config.n_range);
      emit(o.format == "csv" ? ehspin::to_csv(table) : ehspin::to_json(table).dump(2) + "\n", o.out);
      return table.ok() ? 0 : 1;
    }
    ehspin::ModeIndices<double> mode;
    mode.m = o.m;
    mode.n = o.n;
    if (!o.amplitudes.empty())
      for (int i = 0; i < 4; ++i) mode.C[i] = {o.amplitudes[2 * i], o.amplitudes[2 * i + 1]};
    const auto grid = ehspin::cmd_sample(o.config, mode);
    emit(o.format == "csv" ? ehspin::to_csv(grid) : ehspin::to_json(grid).dump(2) + "\n", o.out);
    const double tol = o.config.tol.value_or(1e-6);
    for (const auto& row : grid.rows)
      if (!(row.residual < tol)) return 1;
    return 0;
  } catch (const ehspin::SuiteRefused& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
