#include "gsp/random_signals.hpp"

#include "gsp/filters.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gsp {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vec white(int n, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Vec e(n);
  for (int i = 0; i < n; ++i) e(i) = rng.normal();
  return e;
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t key = mix(seed_ ^ mix(stream_ + 0x632be59bd9b4e019ULL));
  return mix(key ^ mix(counter_++));
}

double CounterRng::uniform() {
  // 53 random bits mapped to the centre of their cell, never 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Mat gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  require(rows >= 1 && cols >= 1, "Gaussian matrix needs positive dimensions");
  CounterRng rng(seed);
  Mat m(rows, cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = scale * rng.normal();
  }
  return m;
}

Mat generate_gwss(const Vec& taps, const Mat& shift, int n_realizations, std::uint64_t seed) {
  require(n_realizations >= 1, "GWSS generation needs at least one realization");
  require(shift.rows() == shift.cols(), "shift operator must be square");
  const int n = static_cast<int>(shift.rows());
  Mat out(n, n_realizations);
  for (int r = 0; r < n_realizations; ++r) {
    out.col(r) = apply_taps(taps, shift, white(n, seed, static_cast<std::uint64_t>(r)));
  }
  return out;
}

Mat generate_gwss_spectral(const Vec& response, const SpectralBasis& b, int n_realizations,
                           std::uint64_t seed) {
  require(n_realizations >= 1, "GWSS generation needs at least one realization");
  require(response.size() == b.size(), "spectral response does not match basis size");
  Mat out(b.size(), n_realizations);
  for (int r = 0; r < n_realizations; ++r) {
    out.col(r) = apply_response(response, b, white(b.size(), seed, static_cast<std::uint64_t>(r)));
  }
  return out;
}

Vec periodogram(const Mat& realizations, const SpectralBasis& b) {
  require(realizations.cols() >= 1, "periodogram needs at least one realization");
  require(realizations.rows() == b.size(), "realization length does not match basis size");
  Mat spectra = b.vectors.transpose() * realizations;
  return spectra.array().square().rowwise().mean().matrix();
}

Mat sample_covariance(const Mat& realizations) {
  require(realizations.cols() >= 1, "covariance needs at least one realization");
  return realizations * realizations.transpose() / static_cast<double>(realizations.cols());
}

double stationarity_check(const Mat& covariance, const SpectralBasis& b) {
  require(covariance.rows() == b.size() && covariance.cols() == b.size(),
          "covariance does not match basis size");
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  require((covariance - covariance.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
          "covariance matrix is not symmetric");
  Mat p = b.vectors.transpose() * covariance * b.vectors;
  const double total = p.norm();
  require(total > 0.0, "stationarity ratio undefined for a zero covariance");
  const double diag = p.diagonal().norm();
  return std::sqrt(std::max(0.0, total * total - diag * diag)) / total;
}

}  // namespace gsp
