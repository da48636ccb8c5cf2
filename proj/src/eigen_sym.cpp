#include "gsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gsp {

namespace {

double off_diagonal_norm(const Mat& a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q); v accumulates the rotations.
void rotate(Mat& a, Mat& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const auto n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SpectralBasis eig_sym(const Mat& m, const EigSymOptions& opts) {
  require(m.rows() == m.cols(), "eig_sym: matrix must be square");
  require(m.allFinite(), "eig_sym: matrix has non-finite entries");
  const auto n = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  require(asym <= opts.symmetry_tolerance * scale,
          "eig_sym: matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");

  Mat a = 0.5 * (m + m.transpose());
  Mat v = Mat::Identity(n, n);
  const double target = opts.tolerance * a.norm();
  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) {
    throw ConvergenceError("eig_sym: no convergence after " + std::to_string(opts.max_sweeps) +
                           " sweeps");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  SpectralBasis out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    Vec col = v.col(order[k]);
    // Sign rule: largest-magnitude component positive, lowest index on ties.
    const double biggest = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) >= biggest - 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
    out.vectors.col(k) = col;
  }

  const double lam_scale = n ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double ctol = opts.cluster_tolerance * lam_scale;
  out.cluster.assign(static_cast<std::size_t>(n), 0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const bool same = out.eigenvalues(k) - out.eigenvalues(k - 1) <= ctol;
    out.cluster[k] = same ? out.cluster[k - 1] : out.cluster[k - 1] + 1;
  }
  return out;
}

}  // namespace gsp
