#include "ktgraph/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ktgraph/errors.hpp"
#include "ktgraph/parallel.hpp"

namespace ktg {

namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

void ConcentrationProfile::validate() const {
  const auto ok = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!ok(C) || !ok(c) || !ok(gamma)) {
    throw InvalidInput("concentration profile (C, c, gamma) must be strictly positive and finite");
  }
}

double hoeffding_bilinear_tail(double t) {
  if (!(t > 0.0)) throw InvalidInput("tail bound needs t > 0");
  return clamp_probability(2.0 * std::exp(-t * t));
}

double ccgamma_tail(const ConcentrationProfile& profile, double t) {
  profile.validate();
  if (!(t > 0.0)) throw InvalidInput("tail bound needs t > 0");
  return clamp_probability(profile.C * std::exp(-profile.c * std::pow(t, profile.gamma)));
}

ConcentrationProfile dilate_profile(const ConcentrationProfile& profile) {
  profile.validate();
  return {2.0 * profile.C, profile.c / std::pow(2.0, profile.gamma), profile.gamma};
}

double minimal_net_eps(const ConcentrationProfile& profile, bool symmetric) {
  profile.validate();
  const double net_cost = (symmetric ? 1.0 : 2.0) * std::log(9.0);
  // c (1 + eps/2)^gamma > net_cost  <=>  eps > 2 ((net_cost / c)^(1/gamma) - 1)
  return std::max(0.0, 2.0 * (std::pow(net_cost / profile.c, 1.0 / profile.gamma) - 1.0));
}

SpectralNormTail spectral_norm_tail(const ConcentrationProfile& profile, std::size_t m, std::size_t n,
                                    double net_eps, bool symmetric) {
  profile.validate();
  if (m == 0 || n == 0) throw InvalidInput("spectral_norm_tail needs positive dimensions");
  if (symmetric && m != n) throw InvalidInput("the symmetric refinement needs a square matrix (m == n)");
  if (!(net_eps > 0.0)) throw InvalidInput("net_eps must be positive");

  const double net_cost = (symmetric ? 1.0 : 2.0) * std::log(9.0);
  const double c_eps = profile.c * std::pow(1.0 + net_eps / 2.0, profile.gamma) - net_cost;
  if (!(c_eps > 0.0)) {
    std::ostringstream msg;
    msg << "net_eps = " << net_eps << " is inadmissible for this profile (c_eps = " << c_eps
        << " <= 0); net_eps must exceed " << minimal_net_eps(profile, symmetric);
    throw DomainError(msg.str());
  }
  const double dim = static_cast<double>(std::max(m, n));
  return {(2.0 + net_eps) * std::pow(dim, 1.0 / profile.gamma),
          clamp_probability(profile.C * std::exp(-c_eps * dim)), net_eps, c_eps};
}

double lu_peng_norm_estimate(double max_expected_degree) {
  if (!(max_expected_degree >= 0.0)) throw InvalidInput("maximum expected degree must be nonnegative");
  return 2.0 * std::sqrt(max_expected_degree);
}

BilinearCheck empirical_bilinear_check(const EdgeProbabilityMatrix& P, const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& v, double t, std::size_t replicates,
                                       std::uint64_t seed, unsigned threads) {
  if (replicates == 0) throw InvalidInput("empirical_bilinear_check needs at least one replicate");
  const auto n = static_cast<Eigen::Index>(P.n());
  if (u.size() != n || v.size() != n) throw InvalidInput("test vectors must match the matrix dimension");

  std::vector<char> exceeded(replicates, 0);
  parallel_for(replicates, threads, [&](std::size_t r) {
    RandomStream rng = RandomStream::derive(seed, r);
    const AdjacencyMatrix A = sample_adjacency(P, rng);
    const double form = u.dot((A.matrix() - P.matrix()) * v);
    exceeded[r] = std::abs(form) > t ? 1 : 0;
  });
  const auto hits = static_cast<double>(std::count(exceeded.begin(), exceeded.end(), 1));
  const double R = static_cast<double>(replicates);
  const double rate = hits / R;
  return {rate, std::sqrt(rate * (1.0 - rate) / R), replicates};
}

}  // namespace ktg
