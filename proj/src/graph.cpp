#include "gsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>
#include <utility>

namespace gsp {

Graph::Graph(int n, std::vector<Edge> edges, bool directed)
    : n_(n), directed_(directed), edges_(std::move(edges)) {
  require(n >= 1, "graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges_) {
    require(e.src >= 0 && e.src < n && e.dst >= 0 && e.dst < n,
            "edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                ") has a vertex index outside [0," + std::to_string(n) + ")");
    require(std::isfinite(e.weight), "edge weight must be finite");
    require(e.weight >= 0.0, "edge weight must be nonnegative");
    require(e.src != e.dst, "self-loop at vertex " + std::to_string(e.src));
    auto key = directed ? std::make_pair(e.src, e.dst)
                        : std::make_pair(std::min(e.src, e.dst), std::max(e.src, e.dst));
    require(seen.insert(key).second, "duplicate edge (" + std::to_string(e.src) + "," +
                                         std::to_string(e.dst) + ")");
  }
}

Mat Graph::weights() const {
  Mat w = Mat::Zero(n_, n_);
  for (const auto& e : edges_) {
    w(e.src, e.dst) = e.weight;
    if (!directed_) w(e.dst, e.src) = e.weight;
  }
  return w;
}

Mat Graph::adjacency_pattern() const {
  Mat w = weights();
  return w.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

Vec Graph::degrees() const { return weights().rowwise().sum(); }

std::vector<int> Graph::hop_distances(int source) const {
  require(source >= 0 && source < n_, "source vertex out of range");
  std::vector<std::vector<int>> nbr(n_);
  for (const auto& e : edges_) {
    if (e.weight <= 0.0) continue;
    nbr[e.src].push_back(e.dst);
    if (!directed_) nbr[e.dst].push_back(e.src);
  }
  std::vector<int> dist(n_, -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : nbr[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

bool Graph::connected() const {
  if (directed_) {
    // weak connectivity
    std::set<std::pair<int, int>> keys;
    std::vector<Edge> und;
    for (const auto& e : edges_) {
      auto k = std::make_pair(std::min(e.src, e.dst), std::max(e.src, e.dst));
      if (keys.insert(k).second) und.push_back({k.first, k.second, e.weight});
    }
    return Graph(n_, und, false).connected();
  }
  auto d = hop_distances(0);
  return std::all_of(d.begin(), d.end(), [](int v) { return v >= 0; });
}

Graph from_edge_list(const std::vector<Edge>& rows, int n, bool directed) {
  return Graph(n, rows, directed);
}

Graph from_dense(const Mat& w, bool directed) {
  require(w.rows() == w.cols(), "weight matrix must be square");
  const int n = static_cast<int>(w.rows());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) {
        require(w(i, i) == 0.0, "weight matrix has a nonzero diagonal (self-loop)");
        continue;
      }
      if (!directed) require(w(i, j) == w(j, i), "undirected weight matrix must be symmetric");
      if (w(i, j) != 0.0) edges.push_back({i, j, w(i, j)});
    }
    if (!directed) require(w(i, i) == 0.0, "weight matrix has a nonzero diagonal (self-loop)");
  }
  return Graph(n, std::move(edges), directed);
}

Graph geometric_weights(const std::vector<Position>& positions, double alpha, double beta,
                        double threshold) {
  require(positions.size() >= 2, "need at least two positions");
  require(alpha >= 0.0 && beta >= 0.0, "alpha and beta must be nonnegative");
  const int n = static_cast<int>(positions.size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = positions[i];
      const auto& b = positions[j];
      double r = std::hypot(a.x - b.x, a.y - b.y);
      double h = std::abs(a.altitude - b.altitude);
      double w = std::exp(-alpha * r - beta * h);
      if (w > threshold) edges.push_back({i, j, w});
    }
  }
  return Graph(n, std::move(edges), false);
}

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Adjacency: return "adjacency";
    case OperatorKind::NormalizedAdjacency: return "normalized-adjacency";
    case OperatorKind::Laplacian: return "laplacian";
    case OperatorKind::NormalizedLaplacian: return "normalized-laplacian";
    case OperatorKind::RandomWalk: return "random-walk";
    case OperatorKind::GRW: return "grw";
    case OperatorKind::IsometricSVD: return "isometric";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& name) {
  for (auto k : {OperatorKind::Adjacency, OperatorKind::NormalizedAdjacency, OperatorKind::Laplacian,
                 OperatorKind::NormalizedLaplacian, OperatorKind::RandomWalk, OperatorKind::GRW,
                 OperatorKind::IsometricSVD}) {
    if (name == to_string(k)) return k;
  }
  throw ValidationError("unknown operator kind '" + name + "'");
}

namespace {

double spectral_radius(const Mat& a, bool symmetric) {
  if (symmetric) {
    auto b = eig_sym(a);
    return std::max(std::abs(b.eigenvalues(0)), std::abs(b.lambda_max()));
  }
  Eigen::EigenSolver<Mat> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

OperatorMatrix operator_matrix(const Graph& g, OperatorKind kind) {
  const int n = g.size();
  Mat w = g.weights();
  Vec d = w.rowwise().sum();
  Mat eye = Mat::Identity(n, n);
  OperatorMatrix out{kind, {}};
  switch (kind) {
    case OperatorKind::Adjacency:
      out.values = w;
      break;
    case OperatorKind::NormalizedAdjacency: {
      double rho = spectral_radius(w, !g.directed());
      require(rho > 0.0, "normalized adjacency undefined for a graph without edges");
      out.values = w / rho;
      break;
    }
    case OperatorKind::Laplacian:
      out.values = Mat(d.asDiagonal()) - w;
      break;
    case OperatorKind::NormalizedLaplacian: {
      Vec s = d.unaryExpr([](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : 0.0; });
      out.values = -(s.asDiagonal() * w * s.asDiagonal());
      for (int i = 0; i < n; ++i) out.values(i, i) = d(i) > 0.0 ? 1.0 : 0.0;
      break;
    }
    case OperatorKind::RandomWalk:
      for (int i = 0; i < n; ++i) {
        require(d(i) > 0.0, "random-walk operator undefined: vertex " + std::to_string(i) +
                                " has zero degree");
      }
      out.values = d.cwiseInverse().asDiagonal() * w;
      break;
    case OperatorKind::GRW: {
      Vec inv = (d.array() + 1.0).inverse();
      out.values = inv.asDiagonal() * (eye + w);
      break;
    }
    case OperatorKind::IsometricSVD:
      return isometric_shift(w);
  }
  return out;
}

OperatorMatrix isometric_shift(const Mat& a) {
  require(a.rows() == a.cols() && a.rows() > 0, "isometric shift needs a square matrix");
  require(a.allFinite(), "isometric shift: matrix has non-finite entries");
  const int n = static_cast<int>(a.rows());

  // Right singular vectors from A^T A, descending singular values.
  SpectralBasis right = eig_sym(a.transpose() * a);
  Mat v(n, n);
  Vec sigma(n);
  for (int i = 0; i < n; ++i) {
    v.col(i) = right.vectors.col(n - 1 - i);
    sigma(i) = std::sqrt(std::max(0.0, right.eigenvalues(n - 1 - i)));
  }
  // sigma from eigenvalues of A^T A carries absolute error near eps sigma_0^2 / sigma,
  // so directions below this cutoff are rebuilt from the orthogonal complement.
  const double cutoff = 1e-6 * sigma(0);

  Mat u = Mat::Zero(n, n);
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    if (sigma(i) > cutoff && sigma(i) > 0.0) {
      u.col(i) = a * v.col(i) / sigma(i);
      ++filled;
    }
  }
  // Orthonormal extension for the null space, drawn from A A^T eigenvectors
  // (smallest first) and the standard basis as a last resort.
  if (filled < n) {
    SpectralBasis left = eig_sym(a * a.transpose());
    std::vector<Vec> candidates;
    for (int i = 0; i < n; ++i) candidates.push_back(left.vectors.col(i));
    for (int i = 0; i < n; ++i) candidates.push_back(Vec::Unit(n, i));
    std::size_t next = 0;
    for (int i = filled; i < n; ++i) {
      while (next < candidates.size()) {
        Vec c = candidates[next++];
        for (int rep = 0; rep < 2; ++rep) {
          for (int j = 0; j < i; ++j) c -= u.col(j).dot(c) * u.col(j);
        }
        double nc = c.norm();
        if (nc > 1e-8) {
          u.col(i) = c / nc;
          break;
        }
      }
    }
  }

  // A v / sigma loses orthogonality for small sigma; two Gram-Schmidt passes
  // in descending-sigma order leave the dominant directions untouched.
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) u.col(i) -= u.col(j).dot(u.col(i)) * u.col(j);
      u.col(i).normalize();
    }
  }

  double det = (u * v.transpose()).determinant();
  Vec q = Vec::Ones(n);
  q(n - 1) = det < 0.0 ? -1.0 : 1.0;
  return {OperatorKind::IsometricSVD, u * q.asDiagonal() * v.transpose()};
}

ReachMatrices reach_matrices(const Graph& g, int width) {
  require(width >= 2, "window width D must be at least 2");
  require(!g.directed(), "reach matrices are defined for undirected graphs only");
  const int n = g.size();
  Mat a = g.adjacency_pattern();
  ReachMatrices out;
  out.width = width;
  // `covered` holds I + A_1 + ... + A_{d-1}. Masking with the whole union,
  // not just A_{d-1}, keeps shorter distances from leaking into A_d.
  Mat covered = Mat::Identity(n, n) + a;
  out.matrices.push_back(a);
  for (int d = 2; d < width; ++d) {
    const Mat& prev = out.matrices.back();
    Mat walk = a * prev;
    Mat next(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) next(i, j) = (walk(i, j) > 0.0 && covered(i, j) == 0.0) ? 1.0 : 0.0;
    }
    covered += next;
    out.matrices.push_back(std::move(next));
  }
  return out;
}

bool SpectralBasis::degenerate() const {
  for (std::size_t i = 1; i < cluster.size(); ++i) {
    if (cluster[i] == cluster[i - 1]) return true;
  }
  return false;
}

SpectralBasis spectral_basis(const OperatorMatrix& op, const EigSymOptions& opts) {
  SpectralBasis b = eig_sym(op.values, opts);
  b.kind = op.kind;
  return b;
}

}  // namespace gsp
