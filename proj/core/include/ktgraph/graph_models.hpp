#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ktgraph/random.hpp"

namespace ktg {

/// Symmetric matrix of Bernoulli edge parameters, the parameter of an
/// inhomogeneous Erdos-Renyi model G(n, P).
///
/// With `allow_loops` (the default) the diagonal is kept, so P == E[A]
/// exactly, including self-loops. Without it the diagonal is zeroed; the
/// sampled graphs are then hollow and E[A] still equals the stored P, but the
/// spectrum no longer matches the block-constant closed forms of the model.
class EdgeProbabilityMatrix {
 public:
  /// Validates symmetry (exact) and the [0,1] range. Throws InvalidInput.
  explicit EdgeProbabilityMatrix(Eigen::MatrixXd entries, bool allow_loops = true);

  std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  bool allow_loops() const noexcept { return allow_loops_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Copy with the diagonal zeroed and allow_loops cleared.
  EdgeProbabilityMatrix hollow() const;

  /// Maximum expected degree: the largest row sum.
  double max_expected_degree() const;

 private:
  Eigen::MatrixXd entries_;
  bool allow_loops_;
};

/// Symmetric binary adjacency matrix. Entries are stored as doubles so that
/// the matrix feeds the eigensolvers directly.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(Eigen::MatrixXd entries);

  std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  bool edge(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0;
  }
  bool is_hollow() const { return entries_.diagonal().isZero(0.0); }
  AdjacencyMatrix hollow() const;

 private:
  Eigen::MatrixXd entries_;
};

struct BlockModel {
  Eigen::MatrixXd B;                     // K x K block probabilities
  std::vector<std::size_t> block_sizes;  // contiguous blocks, in index order

  std::size_t n() const;
  std::size_t blocks() const { return block_sizes.size(); }
  /// Throws InvalidInput on any violated invariant.
  void validate() const;
};

/// High-rank spike model: singular values 1, kappa+1, tau+kappa+1 with
/// multiplicities low, mid, top (the m, n, p of the JSON form).
struct SpikeModelSpec {
  std::size_t low_multiplicity = 1;
  std::size_t mid_multiplicity = 1;
  std::size_t top_multiplicity = 1;
  double kappa = 1.0;
  double tau = 1.0;

  std::size_t q() const { return low_multiplicity + mid_multiplicity + top_multiplicity; }
  void validate() const;
  /// Ascending singular values of M with multiplicity.
  std::vector<double> singular_values() const;
  /// The three distinct levels {1, kappa+1, tau+kappa+1}.
  std::vector<double> levels() const;
};

struct SpikeSample {
  Eigen::MatrixXd signal;  // M, diagonal
  Eigen::MatrixXd noise;   // E, i.i.d. standard normal
};

/// Block-constant P with contiguous block assignment; the diagonal holds
/// B[k][k] unless allow_loops is false.
EdgeProbabilityMatrix sbm_probability_matrix(const BlockModel& model, bool allow_loops = true);

EdgeProbabilityMatrix erdos_renyi_probability_matrix(std::size_t n, double p, bool allow_loops = true);

/// P = X X^T. Rejects (naming the offending entry) instead of clipping when
/// any entry leaves [0,1].
EdgeProbabilityMatrix rdpg_probability_matrix(const Eigen::MatrixXd& latent_positions);

/// Samples the upper triangle independently (diagonal iff P allows loops) and
/// mirrors it.
AdjacencyMatrix sample_adjacency(const EdgeProbabilityMatrix& P, RandomStream& rng);

SpikeSample spike_model_matrices(const SpikeModelSpec& spec, RandomStream& rng);

/// Exact latent positions for the three-block affinity model with diagonal p
/// and off-diagonal q; row k is the position of block k. X X^T == B0.
Eigen::Matrix3d three_block_latent_positions(double p, double q);

/// Spectrum and eigenvectors of a block-constant P (with loops), computed
/// from the K x K reduction diag(sqrt s) B diag(sqrt s). Eigenpairs are
/// ascending; vectors are n x K and orthonormal.
struct BlockSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
BlockSpectrum sbm_block_spectrum(const BlockModel& model);

}  // namespace ktg
