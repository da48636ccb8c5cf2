#pragma once

#include "gsp/graph.hpp"

#include <limits>

namespace gsp {

struct MeasurementSet {
  std::vector<int> vertices;
  Vec values;
};

// Rows of U at the sampled vertices: the matrix mapping a spectrum to the samples.
Mat sampled_basis(const SpectralBasis& b, const std::vector<int>& vertices);

struct Recovery {
  std::vector<int> support;
  Vec spectrum;
  Vec signal;
  double condition = 0.0;  // cond(A_K^T A_K)
};

// X_K = pinv(A_MK) y with zeros off the support, x = U X.
Recovery reconstruct_known_support(const MeasurementSet& m, const SpectralBasis& b,
                                   const std::vector<int>& support);

// Same for a general sensing matrix A (measurements = A X).
Recovery reconstruct_known_support(const Mat& sensing, const Vec& y, const std::vector<int>& support);

struct PursuitOptions {
  int sparsity = -1;      // stop after this many atoms when >= 1
  double epsilon = -1.0;  // residual bound; negative means 1e-6 ||y||
  bool raw_correlation = false;
};

struct PursuitResult {
  std::vector<int> support;
  Vec spectrum;
  Vec signal;  // empty for a general sensing matrix
  std::vector<double> residual_norms;
  bool stagnated = false;
};

// Greedy support growth with a least-squares refit over the support after
// every pick. Atoms are chosen by correlation with unit-norm columns; ties go
// to the lowest spectral index.
PursuitResult mp_recover(const Mat& sensing, const Vec& y, const PursuitOptions& opts);
PursuitResult mp_recover(const MeasurementSet& m, const SpectralBasis& b, const PursuitOptions& opts);

struct Coherence {
  double mu = 0.0;
  // Uniqueness threshold (1 + 1/mu) / 2; +inf when mu vanishes.
  double k_max = std::numeric_limits<double>::infinity();
};

// Largest |<a_k, a_j>| over distinct unit-normalized columns.
Coherence coherence(const Mat& sensing);
Coherence coherence_bound(const SpectralBasis& b, const std::vector<int>& vertices);

// X = pinv(B U C) x_s with B, C diagonal indicators given as 0/1 vectors.
Vec support_matrix_reconstruct(const Vec& sampled_signal, const Vec& vertex_mask,
                               const Vec& spectral_mask, const SpectralBasis& b);

Vec random_measurements(const Vec& x, const Mat& measurement);

struct AggregateMeasurements {
  Mat rows;  // row m is row `vertex` of S^m
  Vec values;
};

// y(m) = (S^m x)(vertex), m = 0..count-1.
AggregateMeasurements aggregate_measurements(const Vec& x, const Mat& shift, int vertex, int count);

// Restricted isometry constant delta_2K by enumerating every set of 2K
// columns. Columns are unit-normalized unless `raw` is set. Refuses N > 16.
double ric_bruteforce(const Mat& sensing, int sparsity, bool raw = false);
double ric_bruteforce(const SpectralBasis& b, const std::vector<int>& vertices, int sparsity,
                      bool raw = false);

}  // namespace gsp
