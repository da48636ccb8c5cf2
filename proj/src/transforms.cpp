#include "gsp/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gsp {

namespace {

void check_length(const Vec& v, const SpectralBasis& b, const char* what) {
  require(v.size() == b.size(), std::string(what) + ": length " + std::to_string(v.size()) +
                                    " does not match basis size " + std::to_string(b.size()));
}

}  // namespace

Vec gdft(const Vec& x, const SpectralBasis& b) {
  check_length(x, b, "gdft");
  return b.vectors.transpose() * x;
}

Vec igdft(const Vec& spectrum, const SpectralBasis& b) {
  check_length(spectrum, b, "igdft");
  return b.vectors * spectrum;
}

Vec adjacency_variation(const SpectralBasis& b) {
  const double lmax = b.lambda_max();
  require(lmax != 0.0, "variation ordering undefined when lambda_max = 0");
  return (1.0 - b.eigenvalues.array() / lmax).square().matrix();
}

std::vector<int> adjacency_variation_order(const SpectralBasis& b) {
  Vec e = adjacency_variation(b);
  std::vector<int> order(static_cast<std::size_t>(e.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return e(i) < e(j); });
  return order;
}

Vec graph_convolution(const Vec& x, const Vec& h, const SpectralBasis& b) {
  check_length(x, b, "graph_convolution");
  check_length(h, b, "graph_convolution");
  Vec xs = gdft(x, b);
  Vec hs = gdft(h, b);
  return igdft(xs.cwiseProduct(hs), b);
}

Vec spectral_shift(const Vec& spectrum, int i, const SpectralBasis& b) {
  check_length(spectrum, b, "spectral_shift");
  require(i >= 0 && i < b.size(), "spectral shift index out of range");
  Vec y = igdft(spectrum, b);
  Vec weighted = y.cwiseProduct(b.vectors.col(i));
  return b.vectors.transpose() * weighted;
}

Mat vandermonde(const Vec& lambdas, int cols) {
  Mat v(lambdas.size(), cols);
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    double p = 1.0;
    for (int m = 0; m < cols; ++m) {
      v(k, m) = p;
      p *= lambdas(k);
    }
  }
  return v;
}

ZCoefficients signal_to_z_coeffs(const Vec& x, const SpectralBasis& b) {
  check_length(x, b, "signal_to_z_coeffs");
  const Vec& lam = b.eigenvalues;
  const double tol = 1e-9 * std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index k = 1; k < lam.size(); ++k) {
    require(lam(k) - lam(k - 1) > tol,
            "z-coefficients need distinct eigenvalues (repeated value near " +
                std::to_string(lam(k)) + ")");
  }
  const int n = b.size();
  Mat v = vandermonde(lam, n);
  Eigen::JacobiSVD<Mat> svd(v);
  const Vec& s = svd.singularValues();
  ZCoefficients out;
  out.condition = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
  out.ill_conditioned = out.condition > 1e12;
  out.taps = v.partialPivLu().solve(gdft(x, b));
  return out;
}

}  // namespace gsp
