// Verification suites behind the command-line front end. Each suite samples
// points from a seeded generator, evaluates residuals, and returns a report.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ehspin/geometry.hpp"
#include "ehspin/report.hpp"
#include "ehspin/singularity.hpp"

namespace ehspin {

/// Coordinate box for sample points. r bounds are multiples of r0; the psi
/// bounds are offsets from 0 and from the psi period 4 pi / d.
struct SampleBox {
  double r_min_factor = 1.2;
  double r_max_factor = 3.0;
  double theta_min = 0.3;
  double theta_max = 3.141592653589793 - 0.3;
  double phi_min = 0.2;
  double phi_max = 2 * 3.141592653589793 - 0.2;
  double psi_margin = 0.1;
};

struct RunConfig {
  int d = 2;
  double B = 1.0;
  /// Sample counts along (r, theta, phi, psi) for grid sweeps.
  std::array<int, 4> grid{5, 5, 3, 3};
  SampleBox box;
  double h = 1e-4;
  /// Overrides the primary tolerance of a suite when set.
  std::optional<double> tol;
  /// Random sample points per property.
  int points = 100;
  std::uint64_t seed = 20240917;
  int threads = 1;
  std::pair<int, int> m_range{-2, 2};
  std::pair<int, int> n_range{-2, 2};

  /// Throws std::invalid_argument when h, tol, counts or the box are unusable.
  void validate() const;
  MetricParams<double> metric() const { return MetricParams<double>(d, B); }
};

nlohmann::json to_json(const RunConfig& c);

/// Uniform points in the box, reproducible from the seed.
std::vector<Point<double>> random_points(const MetricParams<double>& params, const SampleBox& box, int count,
                                         std::uint64_t seed);

/// Tensor grid with counts[a] nodes along each axis (a single node sits mid-range).
std::vector<Point<double>> grid_points(const MetricParams<double>& params, const SampleBox& box,
                                       const std::array<int, 4>& counts);

/// Raised when a suite is asked to verify something that cannot hold for the
/// requested metric (e.g. parallel spinors on a non-Ricci-flat member).
class SuiteRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

VerificationReport cmd_check_clifford(const RunConfig& config);
VerificationReport cmd_check_geometry(const RunConfig& config);
VerificationReport cmd_check_parallel(const RunConfig& config);
VerificationReport cmd_check_harmonic(const RunConfig& config);

struct ClassificationRow {
  int d = 0;
  int m = 0;
  int n = 0;
  SingularityReport report;
  /// Number of case conditions that hold; the table partitions when this is 1.
  int cases_matched = 0;
  /// Singular components read off the signs of the angular exponents.
  std::vector<int> exponent_x1x2;
  std::vector<int> exponent_x3x0;
  bool oracle_agrees = false;
};

struct ClassificationTable {
  std::vector<ClassificationRow> rows;
  bool ok() const;
};

ClassificationTable cmd_classify(int d, std::pair<int, int> m_range, std::pair<int, int> n_range);

nlohmann::json to_json(const ClassificationTable& t);
std::string to_csv(const ClassificationTable& t);

struct SampleRow {
  Point<double> point;
  Spinor<double> value;
  double norm = 0;
  double residual = 0;
};

struct SampleGrid {
  int d = 0;
  double B = 0;
  int m = 0;
  int n = 0;
  std::vector<SampleRow> rows;
};

/// Closed-form mode values, |Phi| and the relative Dirac residual on the grid.
SampleGrid cmd_sample(const RunConfig& config, const ModeIndices<double>& mode);

nlohmann::json to_json(const SampleGrid& g);
std::string to_csv(const SampleGrid& g);

}  // namespace ehspin
