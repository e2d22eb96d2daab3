#pragma once

#include <cstddef>
#include <cstdint>

#include "ktgraph/graph_models.hpp"

namespace ktg {

// All statistics treat A as a simple graph: the diagonal is ignored.

/// T_2 = sum_{i<j} A_ij.
std::uint64_t edge_count(const AdjacencyMatrix& A);

/// T_3 = trace(A^3) / 6, counted with neighbourhood bitsets.
std::uint64_t triangle_count(const AdjacencyMatrix& A);

/// delta(A) = max_i sum_j A_ij.
std::uint64_t max_degree(const AdjacencyMatrix& A);

/// Psi(A) = max_i sum_{j,k in N(i)} A_jk over ordered pairs, i.e. twice the
/// number of edges inside the neighbourhood of i.
std::uint64_t scan_statistic(const AdjacencyMatrix& A);

/// Largest eigenvalue of the hollow adjacency matrix.
double largest_eigenvalue(const AdjacencyMatrix& A);

inline constexpr std::size_t kMaxEnumerationVertices = 24;
inline constexpr std::size_t kMaxEnumerationSubset = 8;

/// Upsilon_m(A) = max over |S| = m of T_2(A|S), by exhaustive enumeration.
/// InvalidInput when n > 24, m > 8 or m outside [1, n].
std::uint64_t modified_scan(const AdjacencyMatrix& A, std::size_t m);

/// Lambda_m(A) = max over |S| = m of lambda_max(A|S), same guard.
double local_eigenvalue_statistic(const AdjacencyMatrix& A, std::size_t m);

}  // namespace ktg
