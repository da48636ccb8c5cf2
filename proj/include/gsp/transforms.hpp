#pragma once

#include "gsp/graph.hpp"

#include <vector>

namespace gsp {

Vec gdft(const Vec& x, const SpectralBasis& b);
Vec igdft(const Vec& spectrum, const SpectralBasis& b);

// |1 - lambda/lambda_max|^2 for each adjacency eigenvalue.
Vec adjacency_variation(const SpectralBasis& b);
// Indices from smoothest (lambda = lambda_max) to fastest varying.
std::vector<int> adjacency_variation_order(const SpectralBasis& b);

// igdft(X .* H): product of spectra in the common basis.
Vec graph_convolution(const Vec& x, const Vec& h, const SpectralBasis& b);

// Y_i(k) = sum_n y(n) u_i(n) u_k(n) with y = igdft(Y).
Vec spectral_shift(const Vec& spectrum, int i, const SpectralBasis& b);

struct ZCoefficients {
  Vec taps;
  double condition = 0.0;
  bool ill_conditioned = false;  // Vandermonde condition above 1e12
};

// Taps h with sum_m h_m lambda_k^m = X(k) for every k.
ZCoefficients signal_to_z_coeffs(const Vec& x, const SpectralBasis& b);

// Vandermonde matrix V(k, m) = lambda_k^m, m < cols.
Mat vandermonde(const Vec& lambdas, int cols);

}  // namespace gsp
