#include "ktgraph/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ktg {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kUnitTolerance = 1e-10;

void require_symmetric(const Eigen::MatrixXd& S) {
  if (S.rows() != S.cols()) throw InvalidInput("symmetric eigensolver needs a square matrix");
  for (Eigen::Index j = 0; j < S.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (std::abs(S(i, j) - S(j, i)) > kSymmetryTolerance) {
        std::ostringstream msg;
        msg << "matrix is not symmetric: |S(" << i << "," << j << ") - S(" << j << "," << i
            << ")| = " << std::abs(S(i, j) - S(j, i));
        throw InvalidInput(msg.str());
      }
    }
  }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

std::vector<double> Spectrum::top(std::size_t count) const {
  count = std::min(count, values.size());
  return {values.end() - static_cast<std::ptrdiff_t>(count), values.end()};
}

SpectralWindow::SpectralWindow(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || std::isinf(alpha)) {
    throw InvalidInput("spectral window needs a finite alpha > 0 (windows containing the origin are not supported)");
  }
  if (!(alpha < beta)) throw InvalidInput("spectral window needs alpha < beta");
}

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& S) {
  require_symmetric(S);
  if (S.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("symmetric eigensolver did not converge");
  return {to_vector(solver.eigenvalues()), SpectrumKind::eigenvalues};
}

EigenPairs symmetric_eigenpairs(const Eigen::MatrixXd& S) {
  require_symmetric(S);
  if (S.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw DomainError("symmetric eigensolver did not converge");
  return {{to_vector(solver.eigenvalues()), SpectrumKind::eigenvalues}, solver.eigenvectors()};
}

Eigen::MatrixXd hermitian_dilation(const Eigen::MatrixXd& M) {
  const Eigen::Index m = M.rows();
  const Eigen::Index n = M.cols();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m + n, m + n);
  D.topRightCorner(m, n) = M;
  D.bottomLeftCorner(n, m) = M.transpose();
  return D;
}

Spectrum singular_values(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return {{}, SpectrumKind::singular_values};
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  std::vector<double> values = to_vector(svd.singularValues());
  std::sort(values.begin(), values.end());
  return {std::move(values), SpectrumKind::singular_values};
}

Spectrum singular_values_via_dilation(const Eigen::MatrixXd& M) {
  const auto count = static_cast<std::size_t>(std::min(M.rows(), M.cols()));
  if (count == 0) return {{}, SpectrumKind::singular_values};
  std::vector<double> values = symmetric_eigenvalues(hermitian_dilation(M)).top(count);
  // Zero singular values surface as eigenvalues of either sign at rounding level.
  for (double& v : values) v = std::max(v, 0.0);
  std::sort(values.begin(), values.end());
  return {std::move(values), SpectrumKind::singular_values};
}

Eigen::VectorXd dilation_vector(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (std::abs(u.norm() - 1.0) > kUnitTolerance || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw InvalidInput("dilation_vector needs unit-norm u and v");
  }
  Eigen::VectorXd w(u.size() + v.size());
  w << u, v;
  return w / std::sqrt(2.0);
}

WindowContents locate_in_window(const Spectrum& spectrum, const SpectralWindow& window) {
  WindowContents out;
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    if (window.contains(spectrum.values[i])) {
      out.indices.push_back(i);
      out.values.push_back(spectrum.values[i]);
    }
  }
  out.count = out.values.size();
  return out;
}

double spectral_norm(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return singular_values(M).largest();
}

double symmetric_spectral_norm(const Eigen::MatrixXd& S) {
  const Spectrum s = symmetric_eigenvalues(S);
  if (s.values.empty()) return 0.0;
  return std::max(std::abs(s.values.front()), std::abs(s.values.back()));
}

}  // namespace ktg
