#pragma once

#include "gsp/graph.hpp"

#include <functional>

namespace gsp {

// y = sum_m taps(m) S^m x by repeated sparse products; S^m is never formed.
Vec apply_taps(const Vec& taps, const Mat& shift, const Vec& x);

// H(lambda) = sum_m taps(m) lambda^m at each lambda.
Vec tap_response(const Vec& taps, const Vec& lambdas);

// U diag(response) U^T x.
Vec apply_response(const Vec& response, const SpectralBasis& b, const Vec& x);

enum class DesignMode { Exact, LeastSquares };

// Taps of length `order` fitting g at the eigenvalues. Eigenvalues closer
// than 1e-9 * max|lambda| are merged first. Exact mode needs `order` equal to
// the distinct count; least squares uses an SVD pseudo-inverse.
Vec design_response(const Vec& g, const Vec& lambdas, int order, DesignMode mode);

// Distinct eigenvalues (first of each cluster) and the index of each
// input eigenvalue's representative.
std::vector<int> distinct_eigenvalue_groups(const Vec& lambdas, Vec* distinct);

struct ChebyshevSeries {
  Vec coeffs;  // c_0..c_{M-1}; the series uses c_0 / 2
  double lambda_min = 0.0;
  double lambda_max = 1.0;

  int terms() const { return static_cast<int>(coeffs.size()); }
  double operator()(double lambda) const;
  // Power-series coefficients in lambda.
  Vec monomial() const;
};

struct ChebyshevFitOptions {
  int nodes = 2048;
  // Width of a moving-average smoothing of the target in lambda; turns jumps
  // into linear ramps. Zero disables it.
  double ramp_width = 0.0;
};

// Coefficients c_m = (2/pi) int_0^pi cos(m t) G(lambda(cos t)) dt by the
// midpoint rule; `order` is the polynomial degree M-1.
ChebyshevSeries chebyshev_fit(const std::function<double(double)>& response, double lambda_min,
                              double lambda_max, int order, const ChebyshevFitOptions& opts = {});

// Three-term recursion on vectors.
Vec chebyshev_apply(const ChebyshevSeries& series, const Mat& op, const Vec& x);

// 1 / g elementwise.
Vec inverse_transfer(const Vec& g);

struct DenoiseParams {
  double alpha = 0.0;
  double beta = 0.0;
  bool quadratic = false;  // 1/(1 + 2 alpha lambda^2)
};

Vec denoise_response(const Vec& lambdas, const DenoiseParams& p);
Vec denoise(const Vec& x, const SpectralBasis& laplacian_basis, const DenoiseParams& p);

// ((1 + beta lambda)(1 - alpha lambda))^iterations.
Vec taubin_response(const Vec& lambdas, double alpha, double beta, int iterations);
Vec taubin(const Vec& x, const Mat& laplacian, double alpha, double beta, int iterations);

// G = H p_s / (H^2 p_s + p_eps).
Vec wiener_gain(const Vec& h, const Vec& p_signal, const Vec& p_noise);

}  // namespace gsp
