#pragma once

#include "gsp/types.hpp"

#include <vector>

namespace gsp {

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 1.0;
};

// Weighted graph on vertices 0..n-1. Undirected graphs keep each edge once
// and expand it symmetrically when the dense weight matrix is formed.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges, bool directed);

  int size() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }

  Mat weights() const;
  // Binary pattern sign(W).
  Mat adjacency_pattern() const;
  Vec degrees() const;

  bool connected() const;
  // Shortest hop counts from `source`, -1 where unreachable.
  std::vector<int> hop_distances(int source) const;

 private:
  int n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
};

Graph from_edge_list(const std::vector<Edge>& rows, int n, bool directed);

// Nonzero entries of a dense weight matrix become edges. Undirected input
// must be symmetric.
Graph from_dense(const Mat& w, bool directed);

struct Position {
  double x = 0.0;
  double y = 0.0;
  double altitude = 0.0;
};

// W_mn = exp(-alpha * r_mn - beta * h_mn), r horizontal distance, h altitude
// difference; pairs with weight <= threshold are dropped.
Graph geometric_weights(const std::vector<Position>& positions, double alpha, double beta,
                        double threshold);

enum class OperatorKind {
  Adjacency,
  NormalizedAdjacency,
  Laplacian,
  NormalizedLaplacian,
  RandomWalk,
  GRW,
  IsometricSVD
};

const char* to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

struct OperatorMatrix {
  OperatorKind kind = OperatorKind::Laplacian;
  Mat values;
};

OperatorMatrix operator_matrix(const Graph& g, OperatorKind kind);

// Nearest proper rotation to `a`: S = U Q V^T from the SVD of a, with the
// last (smallest singular value) direction flipped when det(U V^T) = -1.
OperatorMatrix isometric_shift(const Mat& a);

// Binary matrices A_1..A_{width-1}; A_d marks pairs at hop distance exactly d.
struct ReachMatrices {
  int width = 0;
  std::vector<Mat> matrices;  // matrices[d-1] == A_d
};

ReachMatrices reach_matrices(const Graph& g, int width);

struct SpectralBasis {
  Vec eigenvalues;  // ascending
  Mat vectors;      // column k is u_k
  OperatorKind kind = OperatorKind::Laplacian;
  // cluster[k] == cluster[j] when eigenvalues k and j are numerically equal.
  std::vector<int> cluster;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double lambda_max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
  bool degenerate() const;
};

struct EigSymOptions {
  double tolerance = 1e-12;  // off-diagonal Frobenius norm, relative to ||M||_F
  int max_sweeps = 100;
  double symmetry_tolerance = 1e-10;
  double cluster_tolerance = 1e-9;  // relative to max |lambda|
};

// Cyclic Jacobi eigensolver. Eigenvalues ascending; each eigenvector is
// flipped so its largest-magnitude component (lowest index on ties) is positive.
SpectralBasis eig_sym(const Mat& m, const EigSymOptions& opts = {});

SpectralBasis spectral_basis(const OperatorMatrix& op, const EigSymOptions& opts = {});

}  // namespace gsp
