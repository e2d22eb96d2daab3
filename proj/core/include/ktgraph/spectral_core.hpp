#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ktgraph/errors.hpp"

namespace ktg {

enum class SpectrumKind { eigenvalues, singular_values };

/// Ascending eigenvalues or singular values, repeated by multiplicity.
struct Spectrum {
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::eigenvalues;

  std::size_t size() const noexcept { return values.size(); }
  double largest() const { return values.back(); }
  /// The `count` largest values, ascending.
  std::vector<double> top(std::size_t count) const;
};

/// Open interval (alpha, beta) in the positive half line; beta may be +inf.
class SpectralWindow {
 public:
  /// Throws InvalidInput unless 0 < alpha < beta.
  SpectralWindow(double alpha, double beta = kInfinity);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  bool unbounded() const noexcept { return beta_ == kInfinity; }
  /// Strict containment, no tolerance.
  bool contains(double x) const noexcept { return alpha_ < x && x < beta_; }

 private:
  double alpha_;
  double beta_;
};

struct WindowContents {
  std::size_t count = 0;
  std::vector<std::size_t> indices;  // positions in the ascending spectrum
  std::vector<double> values;        // ascending
};

struct EigenPairs {
  Spectrum spectrum;
  Eigen::MatrixXd vectors;  // column i pairs with spectrum.values[i]
};

/// Rejects input that is not symmetric within 1e-12 entrywise.
Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& S);
EigenPairs symmetric_eigenpairs(const Eigen::MatrixXd& S);

/// [[0, M], [M^T, 0]].
Eigen::MatrixXd hermitian_dilation(const Eigen::MatrixXd& M);

/// Direct factorization (divide-and-conquer SVD).
Spectrum singular_values(const Eigen::MatrixXd& M);
/// The min(m,n) largest eigenvalues of the dilation.
Spectrum singular_values_via_dilation(const Eigen::MatrixXd& M);

/// (u, v) / sqrt(2); rejects inputs whose norms differ from 1 by more than 1e-10.
Eigen::VectorXd dilation_vector(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

WindowContents locate_in_window(const Spectrum& spectrum, const SpectralWindow& window);

/// ||M||_2.
double spectral_norm(const Eigen::MatrixXd& M);
/// ||S||_2 for symmetric S from its extreme eigenvalues.
double symmetric_spectral_norm(const Eigen::MatrixXd& S);

}  // namespace ktg
