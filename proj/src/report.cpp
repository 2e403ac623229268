#include "ehspin/report.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace ehspin {

void CheckRecord::evaluate() {
  const bool within = relation == Relation::below ? residual < tol : residual > tol;
  const bool order_ok = !min_order || (order && *order >= *min_order);
  pass = std::isfinite(residual) && within && order_ok;
}

CheckRecord make_check(std::string name, std::string anchor, double residual, double tol, Relation relation) {
  CheckRecord c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.residual = residual;
  c.tol = tol;
  c.relation = relation;
  c.evaluate();
  return c;
}

bool VerificationReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

void VerificationReport::add(CheckRecord check) {
  check.evaluate();
  checks.push_back(std::move(check));
}

namespace {

// JSON has no representation for inf/nan; store them as strings.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

void to_json(nlohmann::json& j, const CheckRecord& c) {
  j = nlohmann::json{{"name", c.name},
                     {"anchor", c.anchor},
                     {"residual", number(c.residual)},
                     {"tol", c.tol},
                     {"relation", c.relation == Relation::below ? "below" : "above"},
                     {"order", c.order ? number(*c.order) : nlohmann::json(nullptr)},
                     {"min_order", c.min_order ? nlohmann::json(*c.min_order) : nlohmann::json(nullptr)},
                     {"expected_fail", c.expected_fail},
                     {"pass", c.pass}};
}

void from_json(const nlohmann::json& j, CheckRecord& c) {
  j.at("name").get_to(c.name);
  j.at("anchor").get_to(c.anchor);
  c.residual = read_number(j.at("residual"));
  j.at("tol").get_to(c.tol);
  c.relation = j.at("relation").get<std::string>() == "above" ? Relation::above : Relation::below;
  c.order = j.at("order").is_null() ? std::nullopt : std::optional<double>(read_number(j.at("order")));
  c.min_order = j.at("min_order").is_null() ? std::nullopt : std::optional<double>(j.at("min_order").get<double>());
  j.at("expected_fail").get_to(c.expected_fail);
  j.at("pass").get_to(c.pass);
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"suite", r.suite},     {"anchor", r.anchor}, {"seed", r.seed},
                     {"config", r.config},   {"checks", r.checks}, {"elapsed_ms", r.elapsed_ms},
                     {"passed", r.ok()}};
}

void from_json(const nlohmann::json& j, VerificationReport& r) {
  j.at("suite").get_to(r.suite);
  j.at("anchor").get_to(r.anchor);
  j.at("seed").get_to(r.seed);
  r.config = j.at("config");
  j.at("checks").get_to(r.checks);
  j.at("elapsed_ms").get_to(r.elapsed_ms);
}

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "suite,name,residual,tol,relation,order,expected_fail,pass\n";
  for (const auto& c : r.checks) {
    os << csv_field(r.suite) << ',' << csv_field(c.name) << ',' << c.residual << ',' << c.tol << ','
       << (c.relation == Relation::below ? "below" : "above") << ',';
    if (c.order) os << *c.order;
    os << ',' << (c.expected_fail ? 1 : 0) << ',' << (c.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace ehspin
