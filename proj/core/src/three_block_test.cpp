#include "ktgraph/three_block_test.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ktgraph/concentration.hpp"
#include "ktgraph/errors.hpp"

namespace ktg {

void ThreeBlockSpec::validate() const {
  if (n == 0 || n % 3 != 0) throw InvalidInput("three-block model needs n divisible by 3");
  if (!(q > 0.0 && q < p && p < 1.0)) throw InvalidInput("three-block model needs 0 < q < p < 1");
  if (!(signal_eps >= 0.0 && signal_eps < p - q)) {
    throw InvalidInput("three-block signal_eps must lie in [0, p - q)");
  }
}

BlockModel ThreeBlockSpec::block_model(bool alternative) const {
  validate();
  const double e = alternative ? signal_eps : 0.0;
  BlockModel model;
  model.B.resize(3, 3);
  model.B << p, q + e, q,
      q + e, p, q,
      q, q, p;
  model.block_sizes.assign(3, n / 3);
  return model;
}

double ThreeBlockSpec::max_expected_degree(bool alternative) const {
  return static_cast<double>(n) / 3.0 * (p + 2.0 * q + (alternative ? signal_eps : 0.0));
}

std::array<double, 3> three_block_signal_eigenvalues(const ThreeBlockSpec& spec, bool alternative) {
  spec.validate();
  const double third = static_cast<double>(spec.n) / 3.0;
  const double p = spec.p;
  const double q = spec.q;
  if (!alternative) return {third * (p - q), third * (p - q), third * (p + 2.0 * q)};
  const double e = spec.signal_eps;
  const double root = std::sqrt(9.0 * q * q + 2.0 * q * e + e * e);
  const double sixth = static_cast<double>(spec.n) / 6.0;
  return {third * (p - q - e), sixth * (2.0 * p + q + e - root), sixth * (2.0 * p + q + e + root)};
}

double solve_t(double target_prob, std::size_t d, std::size_t n) {
  if (d == 0) throw InvalidInput("solve_t needs d >= 1");
  const double norm_tail = 2.0 * std::exp(-static_cast<double>(n) / 20.0);
  if (!(target_prob < 1.0 - norm_tail)) {
    std::ostringstream msg;
    msg << "target probability " << target_prob << " is unreachable: it must be below 1 - 2exp(-n/20) = "
        << 1.0 - norm_tail;
    throw InvalidInput(msg.str());
  }
  const double weight = 2.0 * static_cast<double>(d + d * (d - 1) / 2);
  auto floor = [&](double t) { return 1.0 - weight * std::exp(-t * t) - norm_tail; };
  double lo = 0.0;
  double hi = 1.0;
  while (floor(hi) < target_prob) hi *= 2.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (floor(mid) >= target_prob ? hi : lo) = mid;
  }
  return hi;
}

std::string to_string(IntervalMethod method) {
  return method == IntervalMethod::kato_temple ? "kato_temple" : "weyl_lu_peng";
}

IntervalMethod interval_method_from_string(const std::string& name) {
  if (name == "kato_temple") return IntervalMethod::kato_temple;
  if (name == "weyl_lu_peng") return IntervalMethod::weyl_lu_peng;
  throw InvalidInput("unknown interval method '" + name + "'");
}

ConfidenceInterval lambda1_confidence_interval(const ThreeBlockSpec& spec, bool alternative, double t,
                                               IntervalMethod method) {
  const std::array<double, 3> values = three_block_signal_eigenvalues(spec, alternative);
  ConfidenceInterval ci;
  ci.center = values[0];
  if (method == IntervalMethod::weyl_lu_peng) {
    const double half = lu_peng_norm_estimate(spec.max_expected_degree(alternative));
    ci.lo = ci.center - half;
    ci.hi = ci.center + half;
    return ci;
  }
  const SpectralNormTail tail =
      spectral_norm_tail(ConcentrationProfile::ierm(), spec.n, spec.n, 1.0, true);
  const LocalSpectrum local({values.begin(), values.end()}, SpectralWindow(tail.threshold));
  const DeviationBound bound = deviation_bound(1, local, t, NoiseNormEstimate::analytic(tail));
  ci.lo = bound.lower;
  ci.hi = bound.upper;
  return ci;
}

namespace {

bool disjoint(std::size_t n, double p, double q, double eps, IntervalMethod method, double t) {
  ThreeBlockSpec spec{n, p, q, eps};
  const ConfidenceInterval null_ci = lambda1_confidence_interval(spec, false, t, method);
  const ConfidenceInterval alt_ci = lambda1_confidence_interval(spec, true, t, method);
  return alt_ci.hi < null_ci.lo || null_ci.hi < alt_ci.lo;
}

}  // namespace

double epsilon_n(std::size_t n, double p, double q, IntervalMethod method, double t,
                 const EpsilonSearch& search) {
  ThreeBlockSpec{n, p, q, search.max_eps}.validate();
  if (!disjoint(n, p, q, search.max_eps, method, t)) {
    std::ostringstream msg;
    msg << "intervals under the null and alternative still overlap at eps = " << search.max_eps;
    throw DomainError(msg.str());
  }
  double lo = 0.0;
  double hi = search.max_eps;
  while (hi - lo > search.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (disjoint(n, p, q, mid, method, t) ? hi : lo) = mid;
  }
  for (std::size_t i = 0; i <= search.verify_points; ++i) {
    const double eps = hi + (search.max_eps - hi) * static_cast<double>(i) / static_cast<double>(search.verify_points);
    if (!disjoint(n, p, q, eps, method, t)) {
      std::ostringstream msg;
      msg << "intervals overlap again at eps = " << eps << " after separating at " << hi;
      throw DomainError(msg.str());
    }
  }
  return hi;
}

double epsilon_n(std::size_t n, double p, double q, IntervalMethod method) {
  return epsilon_n(n, p, q, method, solve_t(0.99, 3, n));
}

std::vector<Table1Row> table1(const std::vector<std::size_t>& sizes, double p, double q, double target_prob) {
  std::vector<Table1Row> rows;
  rows.reserve(sizes.size());
  for (std::size_t n : sizes) {
    Table1Row row;
    row.n = n;
    row.t = solve_t(target_prob, 3, n);
    row.eps_weyl_lu_peng = epsilon_n(n, p, q, IntervalMethod::weyl_lu_peng, row.t);
    row.eps_kato_temple = epsilon_n(n, p, q, IntervalMethod::kato_temple, row.t);
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const Table1Row& row) {
  return {{"n", row.n},
          {"t", row.t},
          {"epsilon_n", {{"weyl_lu_peng", row.eps_weyl_lu_peng}, {"kato_temple", row.eps_kato_temple}}}};
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out = "n,eps_weyl_lu_peng,eps_kato_temple\n";
  char line[96];
  for (const Table1Row& row : rows) {
    std::snprintf(line, sizeof line, "%zu,%.4f,%.4f\n", row.n, row.eps_weyl_lu_peng, row.eps_kato_temple);
    out += line;
  }
  return out;
}

}  // namespace ktg
