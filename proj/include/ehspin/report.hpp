// Verification reports: one record per check, serialized as JSON or CSV.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ehspin {

/// How a check's residual is compared with its threshold.
enum class Relation { below, above };

struct CheckRecord {
  std::string name;
  /// The property the check certifies.
  std::string anchor;
  double residual = 0;
  double tol = 0;
  Relation relation = Relation::below;
  /// Observed convergence order under step halving, when measured.
  std::optional<double> order;
  std::optional<double> min_order;
  /// The property is known not to hold; the check must fail.
  bool expected_fail = false;
  bool pass = false;

  /// pass <=> residual on the right side of tol (and order >= min_order).
  void evaluate();
  /// A passing check, or a failing check that was expected to fail.
  bool ok() const { return pass != expected_fail; }
};

CheckRecord make_check(std::string name, std::string anchor, double residual, double tol,
                       Relation relation = Relation::below);

struct VerificationReport {
  std::string suite;
  std::string anchor;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  double elapsed_ms = 0;

  bool ok() const;
  void add(CheckRecord check);
};

void to_json(nlohmann::json& j, const CheckRecord& c);
void from_json(const nlohmann::json& j, CheckRecord& c);
void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

/// One header row, then one row per check.
std::string to_csv(const VerificationReport& r);

}  // namespace ehspin
