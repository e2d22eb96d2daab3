#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "ktgraph/graph_models.hpp"

namespace ktg {

/// Bilinear tail profile: P[|<Eu, v>| > t] <= C exp(-c t^gamma) for all unit u, v.
struct ConcentrationProfile {
  double C;
  double c;
  double gamma;

  /// Throws InvalidInput unless all three are strictly positive and finite.
  void validate() const;

  /// Independent-edge adjacency noise A - P: (2, 1, 2).
  static constexpr ConcentrationProfile ierm() { return {2.0, 1.0, 2.0}; }
  /// I.i.d. standard normal entries: (2, 1/2, 2).
  static constexpr ConcentrationProfile gaussian() { return {2.0, 0.5, 2.0}; }
};

struct SpectralNormTail {
  double threshold;    // (2 + net_eps) * max(m, n)^(1/gamma)
  double probability;  // min(1, C exp(-c_eps * max(m, n)))
  double net_eps;
  double c_eps;        // c (1 + net_eps/2)^gamma - (2 or 1) log 9
};

/// min(1, 2 exp(-t^2)). Throws InvalidInput for t <= 0.
double hoeffding_bilinear_tail(double t);

/// min(1, C exp(-c t^gamma)).
double ccgamma_tail(const ConcentrationProfile& profile, double t);

/// Profile of the Hermitian dilation of a (C, c, gamma) matrix: (2C, c / 2^gamma, gamma).
ConcentrationProfile dilate_profile(const ConcentrationProfile& profile);

/// Smallest net_eps for which c_eps > 0 (zero when every positive value works).
double minimal_net_eps(const ConcentrationProfile& profile, bool symmetric);

/// Spectral-norm tail bound from a 1/4-net union bound. With `symmetric`
/// (requires m == n) only one net is needed and 2 log 9 becomes log 9.
/// Throws DomainError naming the minimal admissible net_eps when c_eps <= 0.
SpectralNormTail spectral_norm_tail(const ConcentrationProfile& profile, std::size_t m, std::size_t n,
                                    double net_eps, bool symmetric);

/// Asymptotic plug-in ||A - E[A]||_2 ~ 2 sqrt(max expected degree), with the
/// o(1) correction dropped.
double lu_peng_norm_estimate(double max_expected_degree);

struct BilinearCheck {
  double rate;     // fraction of replicates with |<(A-P)u, v>| > t
  double standard_error;  // binomial standard error of the rate
  std::size_t replicates;
};

/// Monte Carlo exceedance rate of the bilinear form, replicate r drawing from
/// RandomStream::derive(seed, r).
BilinearCheck empirical_bilinear_check(const EdgeProbabilityMatrix& P, const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& v, double t, std::size_t replicates,
                                       std::uint64_t seed, unsigned threads = 1);

}  // namespace ktg
