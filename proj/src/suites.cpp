#include "ehspin/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "ehspin/clifford.hpp"
#include "ehspin/solutions.hpp"
#include "ehspin/spinor_calculus.hpp"

namespace ehspin {
namespace {

constexpr char kAnchorClifford[] = "Spin(4) representation of e_1..e_4";
constexpr char kAnchorFrame[] = "orthonormal frame and coframe of the metric family";
constexpr char kAnchorConnection[] = "connection 1-forms solve d e^i = -omega^i_j ^ e^j";
constexpr char kAnchorRicciFlat[] = "d = 2 member is Ricci-flat";
constexpr char kAnchorScalarFlat[] = "metric family is scalar-flat";
constexpr char kAnchorAsd[] = "d = 2 curvature is anti-self-dual";
constexpr char kAnchorParallel[] = "parallel spinors are the constants (c1, c2, 0, 0)";
constexpr char kAnchorHarmonic[] = "separated modes solve the Dirac equation";
constexpr char kAnchorRadial[] = "radial equations of the separated system";
constexpr char kAnchorAngular[] = "angular equations of the separated system";
constexpr char kAnchorSeparation[] = "separated system L = R = 0";

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Evaluates fn(i) for i < count on up to `threads` workers. Results land in
/// index order, so reductions over them do not depend on scheduling.
template <typename Fn>
auto parallel_map(std::size_t count, int threads, Fn fn) {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(count);
  const auto workers = static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(count, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <typename T>
T max_of(const std::vector<T>& xs) {
  T best = 0;
  for (const auto& x : xs) best = std::max(best, x);
  return best;
}

double convergence_order(double coarse, double fine) {
  if (!(coarse > 0) || !(fine > 0)) return NAN;
  return std::log2(coarse / fine);
}

/// 53-bit uniform double in [0, 1); the mapping is fixed so sample points do
/// not depend on the standard library's distribution implementation.
double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double primary_tol(const RunConfig& c, double fallback) { return c.tol.value_or(fallback); }

nlohmann::json report_config(const RunConfig& c) { return to_json(c); }

std::vector<int> exponent_singular(int d, int m, int n, bool at_sin_locus) {
  std::vector<int> comps;
  for (int i = 1; i <= 4; ++i) {
    const auto x = angular_exponents<double>(d, m, n, i);
    if ((at_sin_locus ? x.sin_power : x.cos_power) < 0) comps.push_back(i);
  }
  return comps;
}

std::string join(const std::vector<int>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

}  // namespace

void RunConfig::validate() const {
  if (!(h > 0)) throw std::invalid_argument("h must be positive");
  if (tol && !(*tol > 0)) throw std::invalid_argument("tol must be positive");
  if (points < 1) throw std::invalid_argument("points must be >= 1");
  for (int c : grid)
    if (c < 1) throw std::invalid_argument("grid counts must be >= 1");
  if (!(box.r_min_factor > 1) || !(box.r_max_factor >= box.r_min_factor))
    throw std::invalid_argument("r range must satisfy 1 < r_min_factor <= r_max_factor");
  if (!(box.theta_min > kDomainGuard) || !(box.theta_max < 3.141592653589793 - kDomainGuard) ||
      !(box.theta_min <= box.theta_max))
    throw std::invalid_argument("theta range must lie inside the guarded interval");
  if (m_range.first > m_range.second || n_range.first > n_range.second)
    throw std::invalid_argument("empty mode range");
  (void)metric();  // validates d and B
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{{"d", c.d},
                   {"B", c.B},
                   {"grid", c.grid},
                   {"h", c.h},
                   {"points", c.points},
                   {"seed", c.seed},
                   {"m_range", {c.m_range.first, c.m_range.second}},
                   {"n_range", {c.n_range.first, c.n_range.second}},
                   {"box",
                    {{"r_min_factor", c.box.r_min_factor},
                     {"r_max_factor", c.box.r_max_factor},
                     {"theta_min", c.box.theta_min},
                     {"theta_max", c.box.theta_max},
                     {"phi_min", c.box.phi_min},
                     {"phi_max", c.box.phi_max},
                     {"psi_margin", c.box.psi_margin}}}};
  j["tol"] = c.tol ? nlohmann::json(*c.tol) : nlohmann::json(nullptr);
  return j;
}

std::vector<Point<double>> random_points(const MetricParams<double>& params, const SampleBox& box, int count,
                                         std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit_uniform(gen); };
  const double psi_hi = params.psi_period() - box.psi_margin;
  std::vector<Point<double>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Point<double> p;
    p.r = params.r0() * between(box.r_min_factor, box.r_max_factor);
    p.theta = between(box.theta_min, box.theta_max);
    p.phi = between(box.phi_min, box.phi_max);
    p.psi = between(box.psi_margin, psi_hi);
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point<double>> grid_points(const MetricParams<double>& params, const SampleBox& box,
                                       const std::array<int, 4>& counts) {
  auto nodes = [](double lo, double hi, int n) {
    std::vector<double> xs;
    if (n == 1) return std::vector<double>{(lo + hi) / 2};
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
    return xs;
  };
  const auto rs = nodes(params.r0() * box.r_min_factor, params.r0() * box.r_max_factor, counts[0]);
  const auto ts = nodes(box.theta_min, box.theta_max, counts[1]);
  const auto fs = nodes(box.phi_min, box.phi_max, counts[2]);
  const auto ps = nodes(box.psi_margin, params.psi_period() - box.psi_margin, counts[3]);
  std::vector<Point<double>> pts;
  for (double r : rs)
    for (double t : ts)
      for (double f : fs)
        for (double s : ps) pts.push_back({r, t, f, s});
  return pts;
}

VerificationReport cmd_check_clifford(const RunConfig& config) {
  const auto start = Clock::now();
  VerificationReport rep;
  rep.suite = "check-clifford";
  rep.anchor = kAnchorClifford;
  rep.seed = config.seed;
  rep.config = report_config(config);
  const double tol = primary_tol(config, 1e-14);
  const auto g = gammas<double>();
  const Matrix4c<double> id = Matrix4c<double>::Identity();

  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const Matrix4c<double> expected = (i == j ? -2.0 : 0.0) * id;
      const double res = (g[i] * g[j] + g[j] * g[i] - expected).cwiseAbs().maxCoeff();
      rep.add(make_check("anticommutator_" + std::to_string(i + 1) + std::to_string(j + 1), kAnchorClifford, res,
                         tol));
    }
  }
  for (int k = 0; k < 4; ++k) {
    const double res = (g[k].adjoint() + g[k]).cwiseAbs().maxCoeff();
    rep.add(make_check("anti_hermitian_" + std::to_string(k + 1), kAnchorClifford, res, tol));
  }
  const Matrix4c<double> chi = chirality<double>();
  Matrix4c<double> off = chi;
  off.diagonal().setZero();
  rep.add(make_check("chirality_diagonal", kAnchorClifford, off.cwiseAbs().maxCoeff(), tol));
  rep.elapsed_ms = elapsed_ms(start);
  return rep;
}

VerificationReport cmd_check_geometry(const RunConfig& config) {
  config.validate();
  const auto start = Clock::now();
  const auto params = config.metric();
  VerificationReport rep;
  rep.suite = "check-geometry";
  rep.anchor = params.ricci_flat() ? kAnchorRicciFlat : kAnchorScalarFlat;
  rep.seed = config.seed;
  rep.config = report_config(config);

  const auto pts = random_points(params, config.box, config.points, config.seed);
  const double h = config.h;

  struct PointResult {
    double orthonormality, duality, reassembly, antisymmetry, structure, structure_fine, ricci, scalar, asd;
  };
  const auto results = parallel_map(pts.size(), config.threads, [&](std::size_t idx) {
    const auto& p = pts[idx];
    PointResult out{};
    const Mat4<double> e = frame(params, p);
    const Mat4<double> c = coframe(params, p);
    const Mat4<double> g = metric(params, p);
    out.orthonormality = (e * g * e.transpose() - Mat4<double>::Identity()).cwiseAbs().maxCoeff();
    out.duality = (c * e.transpose() - Mat4<double>::Identity()).cwiseAbs().maxCoeff();
    out.reassembly = (c.transpose() * c - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
    const auto w = connection_forms(params, p);
    for (const auto& m : w.frame) out.antisymmetry = std::max(out.antisymmetry, (m + m.transpose()).cwiseAbs().maxCoeff());
    out.structure = structure_residual(params, p, h).value;
    out.structure_fine = structure_residual(params, p, h / 2).value;
    const auto curv = curvature_forms(params, p, h);
    const auto rs = ricci_from_curvature(curv);
    out.ricci = rs.ricci.cwiseAbs().maxCoeff();
    out.scalar = std::abs(rs.scalar);
    out.asd = anti_self_duality_residual(curv);
    return out;
  });

  auto worst = [&](double PointResult::*field) {
    double m = 0;
    for (const auto& r : results) m = std::max(m, r.*field);
    return m;
  };

  rep.add(make_check("frame_orthonormality", kAnchorFrame, worst(&PointResult::orthonormality), 1e-12));
  rep.add(make_check("coframe_duality", kAnchorFrame, worst(&PointResult::duality), 1e-12));
  rep.add(make_check("metric_reassembly", kAnchorFrame, worst(&PointResult::reassembly), 1e-12));
  rep.add(make_check("connection_antisymmetry", kAnchorConnection, worst(&PointResult::antisymmetry), 1e-15));

  CheckRecord structure = make_check("structure_equations", kAnchorConnection, worst(&PointResult::structure), 1e-6);
  structure.order = convergence_order(worst(&PointResult::structure), worst(&PointResult::structure_fine));
  structure.min_order = 1.9;
  rep.add(structure);

  const double curv_tol = primary_tol(config, 1e-5);
  CheckRecord ricci = make_check("ricci_flat", kAnchorRicciFlat, worst(&PointResult::ricci), curv_tol);
  ricci.expected_fail = !params.ricci_flat();
  rep.add(ricci);
  rep.add(make_check("scalar_flat", kAnchorScalarFlat, worst(&PointResult::scalar), curv_tol));
  if (params.ricci_flat()) rep.add(make_check("anti_self_dual", kAnchorAsd, worst(&PointResult::asd), curv_tol));

  rep.elapsed_ms = elapsed_ms(start);
  return rep;
}

VerificationReport cmd_check_parallel(const RunConfig& config) {
  config.validate();
  if (config.d != 2)
    throw SuiteRefused("parallel spinors force Ricci-flatness, and only the d = 2 member is Ricci-flat; "
                       "the d = " + std::to_string(config.d) + " metric is scalar-flat but not Ricci-flat");
  const auto start = Clock::now();
  const auto params = config.metric();
  VerificationReport rep;
  rep.suite = "check-parallel";
  rep.anchor = kAnchorParallel;
  rep.seed = config.seed;
  rep.config = report_config(config);

  const auto pts = random_points(params, config.box, config.points, config.seed);
  const double tol = primary_tol(config, 1e-8);
  using C = Complex<double>;
  const std::array<std::pair<const char*, std::pair<C, C>>, 3> cases{{
      {"parallel_(1,0)", {C(1), C(0)}},
      {"parallel_(0,1)", {C(0), C(1)}},
      {"parallel_(1,i)", {C(1), C(0, 1)}},
  }};
  for (const auto& [name, amps] : cases) {
    const auto field = parallel_spinor(params, amps.first, amps.second);
    const auto res = parallel_map(pts.size(), config.threads, [&](std::size_t i) {
      return std::pair{max_covariant_derivative(params, field, pts[i], config.h),
                       dirac(params, field, pts[i], config.h).norm()};
    });
    double nabla = 0, dir = 0;
    for (const auto& [a, b] : res) {
      nabla = std::max(nabla, a);
      dir = std::max(dir, b);
    }
    rep.add(make_check(name, kAnchorParallel, nabla, tol));
    rep.add(make_check(std::string(name) + "_harmonic", kAnchorParallel, dir, tol));
  }
  rep.add(make_check("non_parallel_witness", kAnchorParallel, non_parallel_witness(params), 0.01, Relation::above));
  rep.elapsed_ms = elapsed_ms(start);
  return rep;
}

VerificationReport cmd_check_harmonic(const RunConfig& config) {
  config.validate();
  if (config.d <= 2)
    throw SuiteRefused("closed-form harmonic modes are available for d > 2 only");
  const auto start = Clock::now();
  const auto params = config.metric();
  VerificationReport rep;
  rep.suite = "check-harmonic";
  rep.anchor = kAnchorHarmonic;
  rep.seed = config.seed;
  rep.config = report_config(config);

  const auto pts = grid_points(params, config.box, config.grid);
  std::vector<double> rs, thetas;
  for (const auto& p : pts) {
    if (std::find(rs.begin(), rs.end(), p.r) == rs.end()) rs.push_back(p.r);
    if (std::find(thetas.begin(), thetas.end(), p.theta) == thetas.end()) thetas.push_back(p.theta);
  }
  const double tol = primary_tol(config, 1e-6);
  const int d = params.d();
  std::mt19937_64 gen(config.seed);
  auto amplitude = [&] {
    const double re = 2 * unit_uniform(gen) - 1, im = 2 * unit_uniform(gen) - 1;
    return Complex<double>(re + (re >= 0 ? 0.25 : -0.25), im);
  };

  auto dirac_sweep = [&](const SpinorField<double>& field, double h) {
    return max_of(parallel_map(pts.size(), config.threads, [&](std::size_t i) {
      return dirac_with_scale(params, field, pts[i], h).relative_residual();
    }));
  };

  for (int m = config.m_range.first; m <= config.m_range.second; ++m) {
    double radial = 0;
    for (int i = 1; i <= 4; ++i)
      for (double r : rs) radial = std::max(radial, radial_ode_residual(params, m, i, r));
    rep.add(make_check("radial_ode_m=" + std::to_string(m), kAnchorRadial, radial, 1e-8));

    for (int n = config.n_range.first; n <= config.n_range.second; ++n) {
      const std::string tag = "m=" + std::to_string(m) + "_n=" + std::to_string(n);
      ModeIndices<double> mode{m, n, {amplitude(), amplitude(), amplitude(), amplitude()}};
      const auto field = harmonic_mode(params, mode);

      CheckRecord check = make_check("dirac_" + tag, kAnchorHarmonic, dirac_sweep(field, config.h), tol);
      check.order = convergence_order(check.residual, dirac_sweep(field, config.h / 2));
      check.min_order = 1.9;
      rep.add(check);

      double angular = 0;
      for (int i = 1; i <= 4; ++i)
        for (double t : thetas) angular = std::max(angular, angular_ode_residual<double>(d, m, n, i, t));
      rep.add(make_check("angular_ode_" + tag, kAnchorAngular, angular, 1e-8));

      double sep = 0;
      for (double r : rs) {
        for (double t : thetas) {
          const auto lr = separated_LR(params, mode, r, t);
          sep = std::max(sep, lr.relative_residual());
        }
      }
      rep.add(make_check("separation_" + tag, kAnchorSeparation, sep, 1e-7));
    }
  }

  // Harness sanity: shifting one exponent must break both residuals.
  {
    const int m = config.m_range.first, n = config.n_range.first;
    std::array<RadialExponents<double>, 4> radial;
    std::array<AngularExponents<double>, 4> angular;
    for (int i = 0; i < 4; ++i) {
      radial[i] = radial_exponents<double>(d, m, i + 1);
      angular[i] = angular_exponents<double>(d, m, n, i + 1);
    }
    radial[0].lower += 0.1;
    double radial_res = 0;
    for (double r : rs) radial_res = std::max(radial_res, radial_ode_residual(params, m, 1, radial[0], r));
    CheckRecord mutated = make_check("mutated_exponent_radial_ode", kAnchorRadial, radial_res, 1e-8);
    mutated.expected_fail = true;
    rep.add(mutated);

    const auto field = separated_field(params, m, n, profile_from_exponents(params, radial, angular),
                                       {Complex<double>(1), Complex<double>(1), Complex<double>(1), Complex<double>(1)});
    CheckRecord mutated_dirac = make_check("mutated_exponent_dirac", kAnchorHarmonic, dirac_sweep(field, config.h), tol);
    mutated_dirac.expected_fail = true;
    rep.add(mutated_dirac);
  }

  rep.elapsed_ms = elapsed_ms(start);
  return rep;
}

bool ClassificationTable::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.cases_matched == 1 && r.oracle_agrees; });
}

ClassificationTable cmd_classify(int d, std::pair<int, int> m_range, std::pair<int, int> n_range) {
  require_quotient_order(d);
  ClassificationTable table;
  for (int m = m_range.first; m <= m_range.second; ++m) {
    for (int n = n_range.first; n <= n_range.second; ++n) {
      ClassificationRow row;
      row.d = d;
      row.m = m;
      row.n = n;
      row.cases_matched = static_cast<int>(matching_cases(d, m, n).size());
      row.report = classify(d, m, n);
      row.exponent_x1x2 = exponent_singular(d, m, n, true);
      row.exponent_x3x0 = exponent_singular(d, m, n, false);
      row.oracle_agrees =
          row.exponent_x1x2 == row.report.singular_at_x1x2 && row.exponent_x3x0 == row.report.singular_at_x3x0;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

nlohmann::json to_json(const ClassificationTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    std::vector<std::string> planes;
    for (auto p : r.report.norm_singular_planes) planes.push_back(to_string(p));
    rows.push_back({{"d", r.d},
                    {"m", r.m},
                    {"n", r.n},
                    {"case", r.report.case_label},
                    {"a_m_minus", r.report.exponents.a_m_minus},
                    {"a_m_plus", r.report.exponents.a_m_plus},
                    {"a_mn_minus", r.report.exponents.a_mn_minus},
                    {"a_mn_plus", r.report.exponents.a_mn_plus},
                    {"b_mn_minus", r.report.exponents.b_mn_minus},
                    {"b_mn_plus", r.report.exponents.b_mn_plus},
                    {"singular_at_x1x2", r.report.singular_at_x1x2},
                    {"singular_at_x3x0", r.report.singular_at_x3x0},
                    {"radial_exponents", r.report.radial_exponents},
                    {"radial_singular", r.report.radial_singular},
                    {"radial_singular_components", r.report.radial_singular_components},
                    {"radial_claim_needs_generic_amplitudes", r.report.radial_claim_needs_generic_amplitudes},
                    {"norm_singular_planes", planes},
                    {"cases_matched", r.cases_matched},
                    {"oracle_agrees", r.oracle_agrees}});
  }
  return {{"rows", rows}, {"partition", t.ok()}};
}

std::string to_csv(const ClassificationTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << "d,m,n,case,a_m_minus,a_m_plus,a_mn_minus,b_mn_minus,singular_at_x1x2,singular_at_x3x0,"
        "radial_singular_components,cases_matched,oracle_agrees\n";
  for (const auto& r : t.rows) {
    const auto& e = r.report.exponents;
    os << r.d << ',' << r.m << ',' << r.n << ',' << r.report.case_label << ',' << e.a_m_minus << ',' << e.a_m_plus
       << ',' << e.a_mn_minus << ',' << e.b_mn_minus << ',' << join(r.report.singular_at_x1x2) << ','
       << join(r.report.singular_at_x3x0) << ',' << join(r.report.radial_singular_components) << ','
       << r.cases_matched << ',' << (r.oracle_agrees ? 1 : 0) << '\n';
  }
  return os.str();
}

SampleGrid cmd_sample(const RunConfig& config, const ModeIndices<double>& mode) {
  config.validate();
  const auto params = config.metric();
  const auto field = harmonic_mode(params, mode);
  const auto pts = grid_points(params, config.box, config.grid);
  SampleGrid grid{params.d(), params.B(), mode.m, mode.n, {}};
  grid.rows = parallel_map(pts.size(), config.threads, [&](std::size_t i) {
    SampleRow row;
    row.point = pts[i];
    row.value = field(pts[i]);
    row.norm = spinor_norm(row.value);
    row.residual = dirac_with_scale(params, field, pts[i], config.h).relative_residual();
    return row;
  });
  return grid;
}

nlohmann::json to_json(const SampleGrid& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : g.rows) {
    nlohmann::json phi = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) phi.push_back({r.value(i).real(), r.value(i).imag()});
    rows.push_back({{"r", r.point.r},
                    {"theta", r.point.theta},
                    {"phi", r.point.phi},
                    {"psi", r.point.psi},
                    {"Phi", phi},
                    {"norm", r.norm},
                    {"residual", r.residual}});
  }
  return {{"d", g.d}, {"B", g.B}, {"m", g.m}, {"n", g.n}, {"rows", rows}};
}

std::string to_csv(const SampleGrid& g) {
  std::ostringstream os;
  os.precision(17);
  os << "r,theta,phi,psi,re1,im1,re2,im2,re3,im3,re4,im4,norm,residual\n";
  for (const auto& r : g.rows) {
    os << r.point.r << ',' << r.point.theta << ',' << r.point.phi << ',' << r.point.psi;
    for (int i = 0; i < 4; ++i) os << ',' << r.value(i).real() << ',' << r.value(i).imag();
    os << ',' << r.norm << ',' << r.residual << '\n';
  }
  return os.str();
}

}  // namespace ehspin
