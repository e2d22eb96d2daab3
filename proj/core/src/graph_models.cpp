#include "ktgraph/graph_models.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "ktgraph/errors.hpp"

namespace ktg {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
}

}  // namespace

EdgeProbabilityMatrix::EdgeProbabilityMatrix(Eigen::MatrixXd entries, bool allow_loops)
    : entries_(std::move(entries)), allow_loops_(allow_loops) {
  require_square(entries_, "edge probability matrix");
  const Eigen::Index n = entries_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "edge probability P(" << i << "," << j << ") = " << v << " is outside [0,1]";
        throw InvalidInput(msg.str());
      }
      if (j > i && v != entries_(j, i)) {
        std::ostringstream msg;
        msg << "edge probability matrix is not symmetric at (" << i << "," << j << ")";
        throw InvalidInput(msg.str());
      }
    }
  }
  if (!allow_loops_) entries_.diagonal().setZero();
}

EdgeProbabilityMatrix EdgeProbabilityMatrix::hollow() const {
  return EdgeProbabilityMatrix(entries_, false);
}

double EdgeProbabilityMatrix::max_expected_degree() const {
  return entries_.size() == 0 ? 0.0 : entries_.rowwise().sum().maxCoeff();
}

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  require_square(entries_, "adjacency matrix");
  const Eigen::Index n = entries_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = entries_(i, j);
      if (v != 0.0 && v != 1.0) throw InvalidInput("adjacency matrix entries must be 0 or 1");
      if (v != entries_(j, i)) throw InvalidInput("adjacency matrix must be symmetric");
    }
  }
}

AdjacencyMatrix AdjacencyMatrix::hollow() const {
  Eigen::MatrixXd copy = entries_;
  copy.diagonal().setZero();
  return AdjacencyMatrix(std::move(copy));
}

std::size_t BlockModel::n() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void BlockModel::validate() const {
  if (block_sizes.empty()) throw InvalidInput("block model needs at least one block");
  if (B.rows() != B.cols() || static_cast<std::size_t>(B.rows()) != block_sizes.size()) {
    std::ostringstream msg;
    msg << "block matrix is " << B.rows() << "x" << B.cols() << " but " << block_sizes.size()
        << " block sizes were given";
    throw InvalidInput(msg.str());
  }
  for (std::size_t k = 0; k < block_sizes.size(); ++k) {
    if (block_sizes[k] == 0) throw InvalidInput("block sizes must be positive");
  }
  const Eigen::Index K = B.rows();
  for (Eigen::Index a = 0; a < K; ++a) {
    for (Eigen::Index b = 0; b < K; ++b) {
      if (!(B(a, b) >= 0.0 && B(a, b) <= 1.0)) throw InvalidInput("block probabilities must lie in [0,1]");
      if (B(a, b) != B(b, a)) throw InvalidInput("block matrix must be symmetric");
    }
  }
}

void SpikeModelSpec::validate() const {
  if (low_multiplicity == 0 || mid_multiplicity == 0 || top_multiplicity == 0) {
    throw InvalidInput("spike model multiplicities must be at least 1");
  }
  if (!(kappa > 0.0) || !(tau > 0.0)) throw InvalidInput("spike model gaps kappa and tau must be positive");
}

std::vector<double> SpikeModelSpec::singular_values() const {
  std::vector<double> values;
  values.reserve(q());
  values.insert(values.end(), low_multiplicity, 1.0);
  values.insert(values.end(), mid_multiplicity, kappa + 1.0);
  values.insert(values.end(), top_multiplicity, tau + kappa + 1.0);
  return values;
}

std::vector<double> SpikeModelSpec::levels() const { return {1.0, kappa + 1.0, tau + kappa + 1.0}; }

EdgeProbabilityMatrix sbm_probability_matrix(const BlockModel& model, bool allow_loops) {
  model.validate();
  const std::size_t n = model.n();
  std::vector<Eigen::Index> block_of(n);
  std::size_t v = 0;
  for (std::size_t k = 0; k < model.block_sizes.size(); ++k) {
    for (std::size_t c = 0; c < model.block_sizes[k]; ++c) block_of[v++] = static_cast<Eigen::Index>(k);
  }
  Eigen::MatrixXd P(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = model.B(block_of[i], block_of[j]);
    }
  }
  return EdgeProbabilityMatrix(std::move(P), allow_loops);
}

EdgeProbabilityMatrix erdos_renyi_probability_matrix(std::size_t n, double p, bool allow_loops) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("Erdos-Renyi probability must lie in [0,1]");
  const auto size = static_cast<Eigen::Index>(n);
  return EdgeProbabilityMatrix(Eigen::MatrixXd::Constant(size, size, p), allow_loops);
}

EdgeProbabilityMatrix rdpg_probability_matrix(const Eigen::MatrixXd& latent_positions) {
  Eigen::MatrixXd P = latent_positions * latent_positions.transpose();
  // Gram matrices are symmetric in exact arithmetic; enforce it bitwise.
  P = (0.5 * (P + P.transpose())).eval();
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    for (Eigen::Index j = i; j < P.cols(); ++j) {
      const double v = P(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "latent positions give <x_" << i << ", x_" << j << "> = " << v
            << ", outside [0,1]";
        throw InvalidInput(msg.str());
      }
    }
  }
  return EdgeProbabilityMatrix(std::move(P), true);
}

AdjacencyMatrix sample_adjacency(const EdgeProbabilityMatrix& P, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(P.n());
  const Eigen::MatrixXd& probs = P.matrix();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (rng.bernoulli(probs(i, j))) {
        A(i, j) = 1.0;
        A(j, i) = 1.0;
      }
    }
    if (P.allow_loops() && rng.bernoulli(probs(j, j))) A(j, j) = 1.0;
  }
  return AdjacencyMatrix(std::move(A));
}

SpikeSample spike_model_matrices(const SpikeModelSpec& spec, RandomStream& rng) {
  spec.validate();
  const auto q = static_cast<Eigen::Index>(spec.q());
  const std::vector<double> sv = spec.singular_values();
  SpikeSample sample;
  sample.signal = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index i = 0; i < q; ++i) sample.signal(i, i) = sv[static_cast<std::size_t>(i)];
  sample.noise.resize(q, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    for (Eigen::Index i = 0; i < q; ++i) sample.noise(i, j) = rng.normal();
  }
  return sample;
}

Eigen::Matrix3d three_block_latent_positions(double p, double q) {
  if (!(p >= q && q >= 0.0 && p + 2.0 * q >= 0.0)) {
    throw InvalidInput("three-block latent positions need p >= q >= 0");
  }
  // Spectral factorization of B0 = (p-q) I + q 11^T: eigenvalue p+2q on
  // 1/sqrt(3), eigenvalue p-q on the complementary plane.
  const double a = std::sqrt(p - q);
  const double c = std::sqrt((p + 2.0 * q) / 3.0);
  Eigen::Matrix3d X;
  X << a / std::sqrt(2.0), a / std::sqrt(6.0), c,
      -a / std::sqrt(2.0), a / std::sqrt(6.0), c,
      0.0, -2.0 * a / std::sqrt(6.0), c;
  return X;
}

BlockSpectrum sbm_block_spectrum(const BlockModel& model) {
  model.validate();
  const Eigen::Index K = model.B.rows();
  Eigen::VectorXd root_sizes(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    root_sizes(k) = std::sqrt(static_cast<double>(model.block_sizes[static_cast<std::size_t>(k)]));
  }
  const Eigen::MatrixXd reduced = root_sizes.asDiagonal() * model.B * root_sizes.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced);

  BlockSpectrum out;
  out.values = solver.eigenvalues();
  const auto n = static_cast<Eigen::Index>(model.n());
  out.vectors = Eigen::MatrixXd::Zero(n, K);
  Eigen::Index row = 0;
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto size = static_cast<Eigen::Index>(model.block_sizes[static_cast<std::size_t>(k)]);
    for (Eigen::Index c = 0; c < size; ++c, ++row) {
      out.vectors.row(row) = solver.eigenvectors().row(k) / root_sizes(k);
    }
  }
  return out;
}

}  // namespace ktg
