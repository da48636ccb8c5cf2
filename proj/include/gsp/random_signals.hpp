#pragma once

#include "gsp/graph.hpp"

#include <cstdint>

namespace gsp {

// Counter-based generator: draw i of stream s is a pure function of
// (seed, s, i), so realizations are reproducible regardless of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal by Box-Muller.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// rows x cols matrix of N(0, 1/rows) entries, column-major draw order.
Mat gaussian_matrix(int rows, int cols, std::uint64_t seed);

// Column r is H(S) e_r with e_r white Gaussian from stream r.
Mat generate_gwss(const Vec& taps, const Mat& shift, int n_realizations, std::uint64_t seed);

// Column r is U diag(response) U^T e_r.
Mat generate_gwss_spectral(const Vec& response, const SpectralBasis& b, int n_realizations,
                           std::uint64_t seed);

// Mean over columns of (U^T x)^2.
Vec periodogram(const Mat& realizations, const SpectralBasis& b);

// (1/R) sum_r x_r x_r^T for zero-mean realizations.
Mat sample_covariance(const Mat& realizations);

// ||offdiag(U^T R U)||_F / ||U^T R U||_F.
double stationarity_check(const Mat& covariance, const SpectralBasis& b);

}  // namespace gsp
