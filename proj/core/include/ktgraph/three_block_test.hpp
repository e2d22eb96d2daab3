#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ktgraph/graph_models.hpp"
#include "ktgraph/kato_temple.hpp"

namespace ktg {

/// Three equal blocks with within-block probability p and between-block q.
/// The alternative adds signal_eps to the block (1,2) affinity.
struct ThreeBlockSpec {
  std::size_t n = 6000;
  double p = 0.81;
  double q = 0.2025;
  double signal_eps = 0.0;

  void validate() const;
  BlockModel block_model(bool alternative) const;
  /// Maximum expected degree (n/3)(p + 2q [+ eps]).
  double max_expected_degree(bool alternative) const;
};

/// Closed-form signal eigenvalues, ascending. Null: ((n/3)(p-q) twice,
/// (n/3)(p+2q)). Alternative: (n/3)(p-q-eps) and
/// (n/6)(2p + q + eps -+ sqrt(9q^2 + 2q eps + eps^2)).
std::array<double, 3> three_block_signal_eigenvalues(const ThreeBlockSpec& spec, bool alternative);

/// Minimal t (bisection to 1e-6) with
///   1 - (d + C(d,2)) 2 exp(-t^2) - 2 exp(-n/20) >= target_prob.
/// InvalidInput when target_prob is not below 1 - 2 exp(-n/20).
double solve_t(double target_prob, std::size_t d, std::size_t n);

enum class IntervalMethod { kato_temple, weyl_lu_peng };

std::string to_string(IntervalMethod method);
IntervalMethod interval_method_from_string(const std::string& name);

struct ConfidenceInterval {
  double center = 0.0;  // Lambda_1 = smallest signal eigenvalue of P
  double lo = 0.0;
  double hi = 0.0;
};

/// Interval for the smallest signal eigenvalue.
/// kato_temple: all three signal eigenvalues in the window (3 sqrt(n), inf),
/// analytic norm 3 sqrt(n), so lo = Lambda_1 - 7t and hi = Lambda_1 + t + zeta_plus.
/// weyl_lu_peng: Lambda_1 -+ 2 sqrt(max expected degree).
ConfidenceInterval lambda1_confidence_interval(const ThreeBlockSpec& spec, bool alternative, double t,
                                               IntervalMethod method);

struct EpsilonSearch {
  double max_eps = 0.2;
  double tolerance = 1e-5;
  std::size_t verify_points = 200;  // grid on [eps_n, max_eps] rechecked for disjointness
};

/// Smallest eps at which the null and alternative intervals are disjoint and
/// stay disjoint up to max_eps. t defaults to solve_t(0.99, 3, n).
/// DomainError when the intervals still overlap at max_eps.
double epsilon_n(std::size_t n, double p, double q, IntervalMethod method, double t,
                 const EpsilonSearch& search = {});
double epsilon_n(std::size_t n, double p, double q, IntervalMethod method);

struct Table1Row {
  std::size_t n = 0;
  double t = 0.0;
  double eps_weyl_lu_peng = 0.0;
  double eps_kato_temple = 0.0;
};

std::vector<Table1Row> table1(const std::vector<std::size_t>& sizes = {6000, 9000, 12000, 15000},
                              double p = 0.81, double q = 0.2025, double target_prob = 0.99);

nlohmann::json to_json(const Table1Row& row);
/// Header "n,eps_weyl_lu_peng,eps_kato_temple" then one line per row.
std::string table1_csv(const std::vector<Table1Row>& rows);

}  // namespace ktg
