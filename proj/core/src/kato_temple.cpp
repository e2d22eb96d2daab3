#include "ktgraph/kato_temple.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ktgraph/errors.hpp"

namespace ktg {

namespace {

void require_index(std::size_t k, std::size_t d) {
  if (k < 1 || k > d) {
    std::ostringstream msg;
    msg << "pair index k = " << k << " must lie in [1, " << d << "]";
    throw InvalidInput(msg.str());
  }
}

void require_positive_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("deviation scale t must be positive and finite");
}

double pair_count(std::size_t j) { return static_cast<double>(j + binomial_coefficient(j, 2)); }

double floor_probability(std::size_t pairs, double tail) {
  return std::clamp(1.0 - pair_count(pairs) * tail, 0.0, 1.0);
}

// Shared zeta arithmetic; `floor_profile` supplies the union-bound tail.
DeviationBound assemble(std::size_t k, const LocalSpectrum& local, double t, const NoiseNormEstimate& e_norm,
                        const ConcentrationProfile& floor_profile) {
  const std::size_t d = local.d();
  require_index(k, d);
  require_positive_t(t);
  const std::size_t l = d - k + 1;

  DeviationBound b;
  b.k = k;
  b.d = d;
  b.t = t;
  b.reference_value = local.value(k);
  b.window = local.window();
  b.e_norm = e_norm;
  b.floor_profile = floor_profile;
  b.zeta_plus = zeta_plus(k, local, t, e_norm);
  b.infinite_beta = local.window().unbounded();
  if (b.infinite_beta) {
    b.zeta_minus = infinite_beta_lower_deficit(k, d, t) - t;
  } else {
    b.zeta_minus = zeta_minus(k, local, t, e_norm);
  }
  b.lower = b.reference_value - t - b.zeta_minus;
  b.upper = b.reference_value + t + b.zeta_plus;

  const double tail = floor_profile.C * std::exp(-floor_profile.c * std::pow(t, floor_profile.gamma));
  b.prob_lower = floor_probability(l, tail);
  b.prob_upper = floor_probability(k, tail);
  b.prob_joint = floor_probability(d, tail);
  b.vacuous = b.prob_joint == 0.0;
  return b;
}

}  // namespace

double kato_lower_point(double eta, double residual_eps, double alpha) {
  if (!(alpha < eta)) throw InvalidInput("kato_lower_point needs alpha < eta");
  if (!(residual_eps >= 0.0)) throw InvalidInput("residual must be nonnegative");
  if (alpha == -kInfinity) return eta;
  return eta + residual_eps * residual_eps / (eta - alpha);
}

double kato_upper_point(double eta, double residual_eps, double beta) {
  if (!(beta > eta)) throw InvalidInput("kato_upper_point needs beta > eta");
  if (!(residual_eps >= 0.0)) throw InvalidInput("residual must be nonnegative");
  if (beta == kInfinity) return eta;
  return eta - residual_eps * residual_eps / (beta - eta);
}

Bracket kato_temple_bracket(double eta, double residual_eps, const SpectralWindow& window) {
  const double alpha = window.alpha();
  const double beta = window.beta();
  if (!(alpha < eta && eta < beta)) {
    throw InvalidInput("Kato-Temple bracket needs alpha < eta < beta");
  }
  if (!(residual_eps >= 0.0)) throw InvalidInput("residual must be nonnegative");
  const double eps2 = residual_eps * residual_eps;
  if (!window.unbounded() && !(eps2 < (beta - eta) * (eta - alpha))) {
    std::ostringstream msg;
    msg << "Kato-Temple hypothesis fails: eps^2 = " << eps2 << " is not below (beta - eta)(eta - alpha) = "
        << (beta - eta) * (eta - alpha);
    throw DomainError(msg.str());
  }
  return {kato_upper_point(eta, residual_eps, beta), kato_lower_point(eta, residual_eps, alpha)};
}

LocalSpectrum::LocalSpectrum(std::vector<double> values, SpectralWindow window)
    : values_(std::move(values)), window_(window) {
  if (values_.empty()) throw InvalidInput("local spectrum needs at least one value in the window");
  if (!std::is_sorted(values_.begin(), values_.end())) throw InvalidInput("local spectrum must be ascending");
  if (!window_.contains(values_.front()) || !window_.contains(values_.back())) {
    throw InvalidInput("local spectrum values must lie strictly inside the window");
  }
}

LocalSpectrum LocalSpectrum::from_spectrum(const Spectrum& spectrum, const SpectralWindow& window) {
  return LocalSpectrum(locate_in_window(spectrum, window).values, window);
}

double LocalSpectrum::value(std::size_t k) const {
  require_index(k, d());
  return values_[k - 1];
}

std::string to_string(NormSource source) {
  switch (source) {
    case NormSource::empirical: return "empirical";
    case NormSource::analytic: return "analytic";
    case NormSource::plug_in: return "plug_in";
  }
  return "unknown";
}

NoiseNormEstimate NoiseNormEstimate::empirical(double norm) {
  if (!(norm >= 0.0)) throw InvalidInput("noise norm must be nonnegative");
  return {norm, NormSource::empirical};
}

NoiseNormEstimate NoiseNormEstimate::analytic(const SpectralNormTail& tail) {
  return {tail.threshold, NormSource::analytic};
}

NoiseNormEstimate NoiseNormEstimate::plug_in(double max_expected_degree) {
  return {lu_peng_norm_estimate(max_expected_degree), NormSource::plug_in};
}

std::uint64_t binomial_coefficient(std::size_t n, std::size_t k) {
  if (n > 64) throw InvalidInput("binomial coefficients are only supported for n <= 64");
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    result = result / i * (n - k + i) + result % i * (n - k + i) / i;
  }
  return result;
}

double max_admissible_t_upper(std::size_t k, const LocalSpectrum& local) {
  require_index(k, local.d());
  const double kk = static_cast<double>(k * (k - 1) + 1);
  return (local.value(1) - local.window().alpha()) / kk;
}

double max_admissible_t_lower(std::size_t k, const LocalSpectrum& local) {
  require_index(k, local.d());
  const std::size_t l = local.d() - k + 1;
  const double ll = static_cast<double>(l * (l - 1) + 1);
  return (local.window().beta() - local.value(local.d())) / ll;
}

double zeta_plus(std::size_t k, const LocalSpectrum& local, double t, const NoiseNormEstimate& e_norm) {
  require_index(k, local.d());
  require_positive_t(t);
  const double kf = static_cast<double>(k);
  const double pairs = kf * (kf - 1.0);
  const double alpha = local.window().alpha();
  const double denominator = local.value(1) - alpha - (pairs + 1.0) * t;
  if (!(denominator > 0.0)) {
    const double t_max = max_admissible_t_upper(k, local);
    std::ostringstream msg;
    msg << "t = " << t << " is inadmissible for the upper bound of pair k = " << k
        << " (denominator " << denominator << "); t must be below " << t_max;
    throw AdmissibilityError(msg.str(), t_max);
  }
  const double e2 = e_norm.value * e_norm.value;
  const double numerator = kf * e2 + (3.0 * local.value(k) - alpha + 3.0 * t) * pairs * t;
  return numerator / denominator;
}

double zeta_minus(std::size_t k, const LocalSpectrum& local, double t, const NoiseNormEstimate& e_norm) {
  require_index(k, local.d());
  require_positive_t(t);
  if (local.window().unbounded()) {
    throw InvalidInput("zeta_minus needs a finite beta; use infinite_beta_lower_deficit for beta = inf");
  }
  const std::size_t d = local.d();
  const double lf = static_cast<double>(d - k + 1);
  const double pairs = lf * (lf - 1.0);
  const double beta = local.window().beta();
  const double lambda_k = local.value(k);
  const double lambda_d = local.value(d);
  const double denominator = beta - lambda_d - (pairs + 1.0) * t;
  if (!(denominator > 0.0)) {
    const double t_max = max_admissible_t_lower(k, local);
    std::ostringstream msg;
    msg << "t = " << t << " is inadmissible for the lower bound of pair k = " << k
        << " (denominator " << denominator << "); t must be below " << t_max;
    throw AdmissibilityError(msg.str(), t_max);
  }
  const double e2 = e_norm.value * e_norm.value;
  const double numerator = lf * e2 + ((beta - lambda_k) + (lambda_d - lambda_k) + 3.0 * t) * pairs * t;
  return numerator / denominator;
}

double infinite_beta_lower_deficit(std::size_t k, std::size_t d, double t) {
  require_index(k, d);
  require_positive_t(t);
  const double l = static_cast<double>(d - k + 1);
  return (l * (l - 1.0) + 1.0) * t;
}

DeviationBound deviation_bound(std::size_t k, const LocalSpectrum& local, double t,
                               const NoiseNormEstimate& e_norm) {
  return assemble(k, local, t, e_norm, ConcentrationProfile::ierm());
}

DeviationBound sv_deviation_bound(std::size_t k, const LocalSpectrum& local, double t,
                                  const NoiseNormEstimate& e_norm, const ConcentrationProfile& profile) {
  return assemble(k, local, t, e_norm, dilate_profile(profile));
}

DeviationBound unconditional_bound(const LocalSpectrum& local, double t, const SpectralNormTail& norm_tail,
                                   const DeviationBound& conditional) {
  if (conditional.e_norm.source != NormSource::analytic) {
    throw InvalidInput("unconditional assembly needs a conditional bound built with the analytic norm threshold");
  }
  const double scale = std::max(1.0, std::abs(norm_tail.threshold));
  if (std::abs(conditional.e_norm.value - norm_tail.threshold) > 1e-12 * scale) {
    throw InvalidInput("conditional bound used a norm threshold different from the supplied tail bound");
  }
  if (conditional.d != local.d() || conditional.t != t) {
    throw InvalidInput("conditional bound does not match the local spectrum and t");
  }
  DeviationBound b = conditional;
  b.unconditional = true;
  b.norm_tail_probability = norm_tail.probability;
  b.prob_lower = std::clamp(conditional.prob_lower - norm_tail.probability, 0.0, 1.0);
  b.prob_upper = std::clamp(conditional.prob_upper - norm_tail.probability, 0.0, 1.0);
  b.prob_joint = std::clamp(conditional.prob_joint - norm_tail.probability, 0.0, 1.0);
  b.vacuous = b.prob_joint == 0.0;
  return b;
}

SpectralWindow weyl_window_selection(const Spectrum& reference, const NoiseNormEstimate& e_norm,
                                     std::size_t first, std::size_t last, double margin) {
  const auto& v = reference.values;
  if (first > last || last >= v.size()) throw InvalidInput("level index range is out of bounds");
  if (!(margin > 0.0)) throw InvalidInput("Weyl window margin must be positive");
  const double e = e_norm.value;
  const double required_gap = 2.0 * e + margin;
  const double lo = v[first];
  const double hi = v[last];

  double alpha = 0.0;
  if (first > 0) {
    const double gap = lo - v[first - 1];
    if (!(gap > required_gap)) {
      std::ostringstream msg;
      msg << "level is separated from the one below by " << gap << "; Weyl localization needs more than "
          << required_gap;
      throw DomainError(msg.str());
    }
    alpha = v[first - 1] + e + margin;
  } else {
    alpha = lo - e - margin;
    if (!(alpha > 0.0)) {
      std::ostringstream msg;
      msg << "lowest level " << lo << " is within ||E|| + margin = " << e + margin
          << " of the origin; no positive window isolates it";
      throw DomainError(msg.str());
    }
  }

  double beta = kInfinity;
  if (last + 1 < v.size()) {
    const double gap = v[last + 1] - hi;
    if (!(gap > required_gap)) {
      std::ostringstream msg;
      msg << "level is separated from the one above by " << gap << "; Weyl localization needs more than "
          << required_gap;
      throw DomainError(msg.str());
    }
    beta = v[last + 1] - e - margin;
  }
  return SpectralWindow(alpha, beta);
}

double weyl_bound(const NoiseNormEstimate& e_norm) { return e_norm.value; }

SpectralWindow unconditional_window(double sigma0, double sigma1) {
  if (!(sigma0 >= 0.0) || !(sigma1 > sigma0)) {
    throw InvalidInput("unconditional window needs 0 <= sigma0 < sigma1");
  }
  const double alpha = (sigma1 - sigma0) / 2.0;
  if (!(sigma0 < alpha)) {
    std::ostringstream msg;
    msg << "alpha = (sigma1 - sigma0)/2 = " << alpha << " does not exceed sigma0 = " << sigma0
        << ", so the window would not exclude the non-signal spectrum";
    throw DomainError(msg.str());
  }
  return SpectralWindow(alpha, kInfinity);
}

nlohmann::json to_json(const SpectralWindow& window) {
  nlohmann::json beta = window.unbounded() ? nlohmann::json("inf") : nlohmann::json(window.beta());
  return {{"alpha", window.alpha()}, {"beta", beta}};
}

nlohmann::json to_json(const DeviationBound& b) {
  return {{"k", b.k},
          {"d", b.d},
          {"t", b.t},
          {"reference_value", b.reference_value},
          {"zeta_plus", b.zeta_plus},
          {"zeta_minus", b.zeta_minus},
          {"lower", b.lower},
          {"upper", b.upper},
          {"prob_lower", b.prob_lower},
          {"prob_upper", b.prob_upper},
          {"prob_joint", b.prob_joint},
          {"vacuous", b.vacuous},
          {"infinite_beta", b.infinite_beta},
          {"unconditional", b.unconditional},
          {"norm_tail_probability", b.norm_tail_probability},
          {"window", to_json(b.window)},
          {"e_norm", {{"source", to_string(b.e_norm.source)}, {"value", b.e_norm.value}}},
          {"floor_profile", {{"C", b.floor_profile.C}, {"c", b.floor_profile.c}, {"gamma", b.floor_profile.gamma}}}};
}

}  // namespace ktg
