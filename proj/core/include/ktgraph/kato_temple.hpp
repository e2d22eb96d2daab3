#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ktgraph/concentration.hpp"
#include "ktgraph/spectral_core.hpp"

namespace ktg {

// ---------------------------------------------------------------------------
// Classical Kato bounds for a self-adjoint H, a unit vector w, the Rayleigh
// quotient eta = <Hw, w> and the residual eps = ||(H - eta) w||.
// ---------------------------------------------------------------------------

/// eta + eps^2 / (eta - alpha): (alpha, this] meets the spectrum of H.
/// alpha may be -inf, in which case eta is returned.
double kato_lower_point(double eta, double residual_eps, double alpha);

/// eta - eps^2 / (beta - eta): [this, beta) meets the spectrum of H.
/// beta may be +inf, in which case eta is returned.
double kato_upper_point(double eta, double residual_eps, double beta);

struct Bracket {
  double lo;
  double hi;
};

/// Kato-Temple bracket [eta - eps^2/(beta - eta), eta + eps^2/(eta - alpha)].
/// It contains lambda(H) when lambda(H) is the only spectral point of H in
/// the window; that isolation is the caller's responsibility.
///
/// Throws InvalidInput when alpha < eta < beta fails and DomainError when
/// eps^2 >= (beta - eta)(eta - alpha).
Bracket kato_temple_bracket(double eta, double residual_eps, const SpectralWindow& window);

// ---------------------------------------------------------------------------
// Local spectra and noise norms.
// ---------------------------------------------------------------------------

/// The d reference eigenvalues (or singular values) inside a window, ascending.
class LocalSpectrum {
 public:
  /// Throws InvalidInput unless the values are nonempty, ascending and
  /// strictly inside the window.
  LocalSpectrum(std::vector<double> values, SpectralWindow window);
  static LocalSpectrum from_spectrum(const Spectrum& spectrum, const SpectralWindow& window);

  std::size_t d() const noexcept { return values_.size(); }
  /// 1-based, matching lambda_1 <= ... <= lambda_d.
  double value(std::size_t k) const;
  const std::vector<double>& values() const noexcept { return values_; }
  const SpectralWindow& window() const noexcept { return window_; }

 private:
  std::vector<double> values_;
  SpectralWindow window_;
};

enum class NormSource { empirical, analytic, plug_in };

std::string to_string(NormSource source);

/// The value used for ||E||_2 in the bounds and where it came from.
struct NoiseNormEstimate {
  double value;
  NormSource source;

  /// ||E||_2 computed from a realized noise matrix.
  static NoiseNormEstimate empirical(double norm);
  /// The high-probability threshold of a spectral-norm tail bound.
  static NoiseNormEstimate analytic(const SpectralNormTail& tail);
  /// 2 sqrt(Delta) from the maximum expected degree.
  static NoiseNormEstimate plug_in(double max_expected_degree);
};

// ---------------------------------------------------------------------------
// Deviation bounds for the k-th local eigenvalue pair.
// ---------------------------------------------------------------------------

/// Exact binomial coefficient; InvalidInput for n > 64.
std::uint64_t binomial_coefficient(std::size_t n, std::size_t k);

/// Supremum of t keeping the zeta_plus denominator positive: (lambda_1 - alpha) / (k(k-1)+1).
double max_admissible_t_upper(std::size_t k, const LocalSpectrum& local);
/// Supremum of t keeping the zeta_minus denominator positive: (beta - lambda_d) / (l(l-1)+1).
double max_admissible_t_lower(std::size_t k, const LocalSpectrum& local);

/// Upper excess beyond lambda_k + t:
///   (k ||E||^2 + (3 lambda_k - alpha + 3t) k(k-1) t) / (lambda_1 - alpha - (k(k-1)+1) t).
/// Throws AdmissibilityError when the denominator is not positive.
double zeta_plus(std::size_t k, const LocalSpectrum& local, double t, const NoiseNormEstimate& e_norm);

/// Lower deficit beyond lambda_k - t, with l = d - k + 1:
///   (l ||E||^2 + ((beta - lambda_k) + (lambda_d - lambda_k) + 3t) l(l-1) t)
///     / (beta - lambda_d - (l(l-1)+1) t).
/// Needs a finite beta (see infinite_beta_lower_deficit). Throws
/// AdmissibilityError when the denominator is not positive.
double zeta_minus(std::size_t k, const LocalSpectrum& local, double t, const NoiseNormEstimate& e_norm);

/// Total lower deficit (l(l-1)+1) t when beta = inf. It replaces t + zeta_minus.
double infinite_beta_lower_deficit(std::size_t k, std::size_t d, double t);

struct DeviationBound {
  std::size_t k = 0;
  std::size_t d = 0;
  double t = 0.0;
  double reference_value = 0.0;  // lambda_k(P) or sigma_k(M)
  double zeta_plus = 0.0;
  double zeta_minus = 0.0;       // l(l-1) t on the beta = inf path
  double lower = 0.0;            // reference - t - zeta_minus
  double upper = 0.0;            // reference + t + zeta_plus
  double prob_lower = 0.0;
  double prob_upper = 0.0;
  double prob_joint = 0.0;
  bool vacuous = false;          // prob_joint clamped to 0
  bool infinite_beta = false;
  bool unconditional = false;
  double norm_tail_probability = 0.0;
  SpectralWindow window{1.0};
  NoiseNormEstimate e_norm{0.0, NormSource::empirical};
  ConcentrationProfile floor_profile = ConcentrationProfile::ierm();  // profile behind the floors
};

/// Adjacency-noise bound with floors 1 - (j + C(j,2)) 2 exp(-t^2), j in {l, k, d}.
DeviationBound deviation_bound(std::size_t k, const LocalSpectrum& local, double t,
                               const NoiseNormEstimate& e_norm);

/// Singular-value bound for (C, c, gamma)-concentrated noise; the floors use
/// the dilated profile (2C, c / 2^gamma, gamma).
DeviationBound sv_deviation_bound(std::size_t k, const LocalSpectrum& local, double t,
                                  const NoiseNormEstimate& e_norm, const ConcentrationProfile& profile);

/// Removes the conditioning on ||E||_2 <= threshold: every floor drops by the
/// tail probability. The conditional bound must have used the analytic norm
/// equal to `norm_tail.threshold` (InvalidInput otherwise).
DeviationBound unconditional_bound(const LocalSpectrum& local, double t, const SpectralNormTail& norm_tail,
                                   const DeviationBound& conditional);

/// Window (alpha, beta) that Weyl's inequality guarantees to hold exactly the
/// perturbed values of reference.values[first..last] (0-based, inclusive):
/// alpha = prev + ||E|| + margin, beta = next - ||E|| - margin, beta = inf for
/// the top level. Each neighbouring gap must exceed 2 ||E|| + margin
/// (DomainError reporting the required gap otherwise).
SpectralWindow weyl_window_selection(const Spectrum& reference, const NoiseNormEstimate& e_norm,
                                     std::size_t first, std::size_t last, double margin = 1.0);

/// Uniform Weyl deviation |lambda_k(A) - lambda_k(P)| <= ||E||_2.
double weyl_bound(const NoiseNormEstimate& e_norm);

/// Window (alpha, inf) with alpha = (sigma1 - sigma0) / 2 for the unconditional
/// large-n regime, where sigma0 is the largest non-signal singular value
/// (0 for low rank P) and sigma1 the smallest signal one.
SpectralWindow unconditional_window(double sigma0, double sigma1);

nlohmann::json to_json(const SpectralWindow& window);
nlohmann::json to_json(const DeviationBound& bound);

}  // namespace ktg
