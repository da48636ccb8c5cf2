#include "gsp/sampling.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace gsp {

namespace {

void check_indices(const std::vector<int>& idx, int n, const char* what) {
  std::set<int> seen;
  for (int i : idx) {
    require(i >= 0 && i < n, std::string(what) + " index " + std::to_string(i) + " out of range");
    require(seen.insert(i).second, std::string(what) + " index " + std::to_string(i) + " repeated");
  }
}

Mat columns(const Mat& a, const std::vector<int>& idx) {
  Mat out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(idx[j]);
  return out;
}

Vec column_norms(const Mat& a) { return a.colwise().norm().transpose(); }

// Least squares on the chosen columns; throws when they are rank deficient.
Vec refit(const Mat& sub, const Vec& y, double* condition) {
  Eigen::JacobiSVD<Mat> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  const double tol = std::max(sub.rows(), sub.cols()) * std::numeric_limits<double>::epsilon() *
                     (s.size() ? s(0) : 0.0);
  require(s.size() > 0 && s(s.size() - 1) > tol,
          "measurement matrix restricted to the support is rank deficient");
  if (condition) {
    const double ratio = s(0) / s(s.size() - 1);
    *condition = ratio * ratio;
  }
  return svd.solve(y);
}

}  // namespace

Mat sampled_basis(const SpectralBasis& b, const std::vector<int>& vertices) {
  check_indices(vertices, b.size(), "vertex");
  Mat a(static_cast<Eigen::Index>(vertices.size()), b.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = b.vectors.row(vertices[i]);
  return a;
}

Recovery reconstruct_known_support(const Mat& sensing, const Vec& y, const std::vector<int>& support) {
  require(sensing.rows() == y.size(), "measurement count does not match sensing matrix rows");
  check_indices(support, static_cast<int>(sensing.cols()), "support");
  require(!support.empty(), "support must not be empty");
  require(y.size() >= static_cast<Eigen::Index>(support.size()),
          "fewer measurements than support entries");
  Recovery r;
  r.support = support;
  Vec xk = refit(columns(sensing, support), y, &r.condition);
  r.spectrum = Vec::Zero(sensing.cols());
  for (std::size_t j = 0; j < support.size(); ++j) r.spectrum(support[j]) = xk(static_cast<Eigen::Index>(j));
  return r;
}

Recovery reconstruct_known_support(const MeasurementSet& m, const SpectralBasis& b,
                                   const std::vector<int>& support) {
  require(m.values.size() == static_cast<Eigen::Index>(m.vertices.size()),
          "measurement values and vertices differ in count");
  Recovery r = reconstruct_known_support(sampled_basis(b, m.vertices), m.values, support);
  r.signal = b.vectors * r.spectrum;
  return r;
}

PursuitResult mp_recover(const Mat& sensing, const Vec& y, const PursuitOptions& opts) {
  require(sensing.rows() == y.size(), "measurement count does not match sensing matrix rows");
  require(opts.sparsity < 0 || opts.sparsity < sensing.rows(),
          "sparsity must be below the number of measurements");
  const double eps = opts.epsilon >= 0.0 ? opts.epsilon : 1e-6 * y.norm();
  const int max_atoms = opts.sparsity >= 1 ? opts.sparsity
                                           : static_cast<int>(std::min(sensing.rows() - 1, sensing.cols()));
  Vec norms = column_norms(sensing);
  Vec weight(norms.size());
  for (Eigen::Index k = 0; k < norms.size(); ++k) {
    weight(k) = (opts.raw_correlation || norms(k) == 0.0) ? 1.0 : 1.0 / norms(k);
  }

  PursuitResult out;
  out.spectrum = Vec::Zero(sensing.cols());
  Vec residual = y;
  out.residual_norms.push_back(residual.norm());
  std::vector<char> used(static_cast<std::size_t>(sensing.cols()), 0);
  while (static_cast<int>(out.support.size()) < max_atoms && residual.norm() >= eps) {
    Vec corr = (sensing.transpose() * residual).cwiseAbs().cwiseProduct(weight);
    int pick = -1;
    double best = -1.0;
    for (Eigen::Index k = 0; k < corr.size(); ++k) {
      if (!used[k] && norms(k) > 0.0 && corr(k) > best) {
        best = corr(k);
        pick = static_cast<int>(k);
      }
    }
    if (pick < 0 || best <= 0.0) {
      out.stagnated = true;
      break;
    }
    used[pick] = 1;
    out.support.push_back(pick);
    Vec xk;
    try {
      xk = refit(columns(sensing, out.support), y, nullptr);
    } catch (const ValidationError&) {
      out.support.pop_back();
      out.stagnated = true;
      break;
    }
    Vec next = y - columns(sensing, out.support) * xk;
    if (next.norm() >= residual.norm() * (1.0 - 1e-14) && next.norm() >= eps) {
      // No progress: keep the better earlier fit and report it.
      out.support.pop_back();
      out.stagnated = true;
      break;
    }
    residual = next;
    out.residual_norms.push_back(residual.norm());
    out.spectrum.setZero();
    for (std::size_t j = 0; j < out.support.size(); ++j) out.spectrum(out.support[j]) = xk(static_cast<Eigen::Index>(j));
  }
  if (opts.sparsity >= 1 && static_cast<int>(out.support.size()) < opts.sparsity &&
      residual.norm() >= eps) {
    out.stagnated = true;
  }
  return out;
}

PursuitResult mp_recover(const MeasurementSet& m, const SpectralBasis& b, const PursuitOptions& opts) {
  require(m.values.size() == static_cast<Eigen::Index>(m.vertices.size()),
          "measurement values and vertices differ in count");
  PursuitResult r = mp_recover(sampled_basis(b, m.vertices), m.values, opts);
  r.signal = b.vectors * r.spectrum;
  return r;
}

Coherence coherence(const Mat& sensing) {
  require(sensing.rows() >= 1 && sensing.cols() >= 2, "coherence needs at least two columns");
  Vec norms = column_norms(sensing);
  Coherence c;
  for (Eigen::Index k = 0; k < sensing.cols(); ++k) {
    for (Eigen::Index j = k + 1; j < sensing.cols(); ++j) {
      double v;
      if (norms(k) == 0.0 || norms(j) == 0.0) {
        v = 1.0;  // an empty column cannot be told apart from anything
      } else {
        v = std::abs(sensing.col(k).dot(sensing.col(j))) / (norms(k) * norms(j));
      }
      c.mu = std::max(c.mu, std::min(v, 1.0));
    }
  }
  c.k_max = c.mu <= 1e-10 ? std::numeric_limits<double>::infinity() : 0.5 * (1.0 + 1.0 / c.mu);
  return c;
}

Coherence coherence_bound(const SpectralBasis& b, const std::vector<int>& vertices) {
  require(!vertices.empty(), "coherence needs a nonempty vertex subset");
  return coherence(sampled_basis(b, vertices));
}

Vec support_matrix_reconstruct(const Vec& sampled_signal, const Vec& vertex_mask,
                               const Vec& spectral_mask, const SpectralBasis& b) {
  const auto n = b.size();
  require(sampled_signal.size() == n && vertex_mask.size() == n && spectral_mask.size() == n,
          "support-matrix inputs must all have the basis size");
  for (Eigen::Index i = 0; i < n; ++i) {
    require(vertex_mask(i) == 0.0 || vertex_mask(i) == 1.0, "vertex mask must be 0/1");
    require(spectral_mask(i) == 0.0 || spectral_mask(i) == 1.0, "spectral mask must be 0/1");
    require(vertex_mask(i) == 1.0 || sampled_signal(i) == 0.0,
            "sampled signal is nonzero at an unsampled vertex " + std::to_string(i));
  }
  Mat buc = vertex_mask.asDiagonal() * b.vectors * spectral_mask.asDiagonal();
  Eigen::JacobiSVD<Mat> svd(buc, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  svd.setThreshold(std::max(1e-12, static_cast<double>(n) * std::numeric_limits<double>::epsilon()));
  const int k = static_cast<int>(spectral_mask.sum());
  require(smax > 0.0 && svd.rank() == k, "rank(BUC) = " + std::to_string(svd.rank()) +
                                             " differs from the support size " + std::to_string(k));
  return svd.solve(sampled_signal);
}

Vec random_measurements(const Vec& x, const Mat& measurement) {
  require(measurement.cols() == x.size(), "measurement matrix columns do not match signal length");
  return measurement * x;
}

AggregateMeasurements aggregate_measurements(const Vec& x, const Mat& shift, int vertex, int count) {
  require(shift.rows() == shift.cols() && shift.rows() == x.size(),
          "aggregate sampling: shift and signal sizes differ");
  const auto n = x.size();
  require(vertex >= 0 && vertex < n, "aggregate sampling vertex out of range");
  require(count >= 1 && count <= n, "aggregate sampling count must lie in [1, N]");
  AggregateMeasurements out;
  out.rows.resize(count, n);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Unit(n, vertex);
  for (int m = 0; m < count; ++m) {
    out.rows.row(m) = row;
    row = row * shift;
  }
  out.values = out.rows * x;
  return out;
}

double ric_bruteforce(const Mat& sensing, int sparsity, bool raw) {
  const auto n = sensing.cols();
  require(sparsity >= 1, "sparsity must be at least 1");
  require(n <= 16, "restricted isometry enumeration refused for N = " + std::to_string(n) +
                       " (limit 16)");
  const int width = std::min<int>(2 * sparsity, static_cast<int>(n));
  Mat a = sensing;
  if (!raw) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double norm = a.col(k).norm();
      if (norm > 0.0) a.col(k) /= norm;
    }
  }
  double delta = 0.0;
  std::vector<int> pick(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) pick[i] = i;
  while (true) {
    Mat sub = columns(a, pick);
    const Vec d = eig_sym(sub.transpose() * sub).eigenvalues;
    delta = std::max({delta, 1.0 - d(0), d(d.size() - 1) - 1.0});
    int i = width - 1;
    while (i >= 0 && pick[i] == static_cast<int>(n) - width + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < width; ++j) pick[j] = pick[j - 1] + 1;
  }
  return delta;
}

double ric_bruteforce(const SpectralBasis& b, const std::vector<int>& vertices, int sparsity, bool raw) {
  return ric_bruteforce(sampled_basis(b, vertices), sparsity, raw);
}

}  // namespace gsp
