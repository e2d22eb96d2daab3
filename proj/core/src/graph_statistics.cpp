#include "ktgraph/graph_statistics.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ktgraph/errors.hpp"

namespace ktg {

namespace {

class NeighbourBits {
 public:
  explicit NeighbourBits(const AdjacencyMatrix& A) : n_(A.n()), words_((A.n() + 63) / 64), bits_(n_ * words_, 0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && A.edge(i, j)) bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
  }

  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::size_t words() const { return words_; }

  std::uint64_t common(std::size_t i, std::size_t j) const {
    const std::uint64_t* a = row(i);
    const std::uint64_t* b = row(j);
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
    return total;
  }

  std::uint64_t degree(std::size_t i) const {
    const std::uint64_t* a = row(i);
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += static_cast<std::uint64_t>(std::popcount(a[w]));
    return total;
  }

  bool has(std::size_t i, std::size_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1U; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

void check_enumeration_guard(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) {
    std::ostringstream msg;
    msg << "subset size m = " << m << " must lie in [1, " << n << "]";
    throw InvalidInput(msg.str());
  }
  if (n > kMaxEnumerationVertices || m > kMaxEnumerationSubset) {
    std::ostringstream msg;
    msg << "exhaustive subset enumeration is limited to n <= " << kMaxEnumerationVertices << " and m <= "
        << kMaxEnumerationSubset << " (got n = " << n << ", m = " << m << "); larger searches are combinatorially prohibitive";
    throw InvalidInput(msg.str());
  }
}

// Calls visit(subset) for every m-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t m, Visit&& visit) {
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t edge_count(const AdjacencyMatrix& A) {
  const NeighbourBits bits(A);
  std::uint64_t twice = 0;
  for (std::size_t i = 0; i < A.n(); ++i) twice += bits.degree(i);
  return twice / 2;
}

std::uint64_t triangle_count(const AdjacencyMatrix& A) {
  const NeighbourBits bits(A);
  // Each triangle is seen once from each of its three edges.
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < A.n(); ++i) {
    for (std::size_t j = i + 1; j < A.n(); ++j) {
      if (bits.has(i, j)) total += bits.common(i, j);
    }
  }
  return total / 3;
}

std::uint64_t max_degree(const AdjacencyMatrix& A) {
  const NeighbourBits bits(A);
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < A.n(); ++i) best = std::max(best, bits.degree(i));
  return best;
}

std::uint64_t scan_statistic(const AdjacencyMatrix& A) {
  const NeighbourBits bits(A);
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < A.n(); ++i) {
    std::uint64_t ordered_pairs = 0;
    for (std::size_t j = 0; j < A.n(); ++j) {
      if (bits.has(i, j)) ordered_pairs += bits.common(i, j);
    }
    best = std::max(best, ordered_pairs);
  }
  return best;
}

double largest_eigenvalue(const AdjacencyMatrix& A) {
  if (A.n() == 0) return 0.0;
  Eigen::MatrixXd hollow = A.matrix();
  hollow.diagonal().setZero();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hollow, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(hollow.rows() - 1);
}

std::uint64_t modified_scan(const AdjacencyMatrix& A, std::size_t m) {
  check_enumeration_guard(A.n(), m);
  const NeighbourBits bits(A);
  std::uint64_t best = 0;
  for_each_subset(A.n(), m, [&](const std::vector<std::size_t>& S) {
    std::uint64_t edges = 0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) edges += bits.has(S[a], S[b]);
    }
    best = std::max(best, edges);
  });
  return best;
}

double local_eigenvalue_statistic(const AdjacencyMatrix& A, std::size_t m) {
  check_enumeration_guard(A.n(), m);
  const NeighbourBits bits(A);
  using Small = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxEnumerationSubset, kMaxEnumerationSubset>;
  const auto size = static_cast<Eigen::Index>(m);
  Small sub(size, size);
  Eigen::SelfAdjointEigenSolver<Small> solver(size);
  double best = 0.0;
  for_each_subset(A.n(), m, [&](const std::vector<std::size_t>& S) {
    bool any_edge = false;
    for (Eigen::Index a = 0; a < size; ++a) {
      sub(a, a) = 0.0;
      for (Eigen::Index b = a + 1; b < size; ++b) {
        const double v = bits.has(S[static_cast<std::size_t>(a)], S[static_cast<std::size_t>(b)]) ? 1.0 : 0.0;
        sub(a, b) = v;
        sub(b, a) = v;
        any_edge = any_edge || v != 0.0;
      }
    }
    // An edgeless subgraph has lambda_max = 0, which never beats best.
    if (!any_edge) return;
    solver.compute(sub, Eigen::EigenvaluesOnly);
    best = std::max(best, solver.eigenvalues()(size - 1));
  });
  return best;
}

}  // namespace ktg
