#pragma once

#include "gsp/filters.hpp"
#include "gsp/graph.hpp"

#include <complex>
#include <functional>
#include <string>

namespace gsp {

// ---- localization windows ----------------------------------------------

enum class WindowNormalization { None, UnitSum, UnitEnergy };

struct WindowBank {
  Mat h;  // column m is the window h_m(n) centred at vertex m
  bool exceeds_diameter = false;
};

// h_m(n) = sum_k C exp(-lambda_k tau) u_k(m) u_k(n).
WindowBank spectral_window_bank(const SpectralBasis& b, double tau, double amplitude = 1.0);

// h_m(n) = g(d_mn) for d_mn < D, from the reach matrices; `basic` holds g(0..D-1).
// Flags (without failing) a width reaching past the graph diameter.
WindowBank vertex_window_bank(const Graph& g, const Vec& basic);

// Hann samples g(d) = (1 + cos(pi d / D)) / 2, d = 0..D-1.
Vec hann_window(int width);

// UnitSum scales so sum_m h_m(n) = 1 for every n; UnitEnergy so sum_m h_m(n)^2 = 1.
WindowBank normalize_windows(const WindowBank& w, WindowNormalization mode);

// S(m, k) = sum_n x(n) h_m(n) u_k(n); rows are vertices, columns spectral indices.
Mat lgft_windowed(const Vec& x, const WindowBank& w, const SpectralBasis& b);

// ---- band-pass transfer functions --------------------------------------

enum class BandShape { Binomial, RaisedCosine, Meyer, Wavelet };
enum class BandNormalization { SumOne, SumSquaresOne };

const char* to_string(BandShape shape);

struct BandFilterSet {
  BandShape shape = BandShape::RaisedCosine;
  BandNormalization normalization = BandNormalization::SumOne;
  double lambda_max = 1.0;
  // Raised-cosine and Meyer bands: edges e_0 < ... < e_K, band k rising on
  // (e_{k-1}, e_k] and falling on (e_k, e_{k+1}].
  Vec edges;
  // Wavelet bands: progression M and scales s_i = M^i / lambda_max.
  double progression = 2.0;
  Vec scales;
  // Spectral position each band is centred on; drives the eigenvalue-axis relabel.
  Vec centers;
  Vec lambdas;  // sampling points
  Mat values;   // (K+1) x N, values(k, p) = H_k(lambda_p)

  int bands() const { return static_cast<int>(values.rows()); }
};

// Meyer mapping v(x) = x^4 (35 - 84x + 70x^2 - 20x^3) on [0, 1].
double meyer_map(double x);

// Uniform edges e_j = j lambda_max / K.
Vec uniform_edges(int k, double lambda_max);

// Edges from chained interval lists a_k, b_k, c_k (k = 1..K-1 style). Rejects
// lists where b_k != a_{k+1} or c_k != b_{k+1}.
Vec edges_from_intervals(const Vec& a, const Vec& b, const Vec& c);

// Edges that are dense where the signal spectrum carries energy: the inverse of
// F = 0.8 E(lambda) + 0.2 lambda / lambda_max with E the smoothed cumulative energy.
Vec adaptive_edges(const Vec& spectrum, const Vec& lambdas, int k, double lambda_max);

BandFilterSet binomial_bands(int k, const Vec& lambdas, double lambda_max,
                             BandNormalization norm = BandNormalization::SumOne);

// Raised cosine (Hann) or Meyer bands on the given edges. SumOne squares the
// sine/cosine halves; SumSquaresOne leaves them unsquared.
BandFilterSet edge_bands(BandShape shape, const Vec& edges, const Vec& lambdas,
                         BandNormalization norm);

// Meyer-like wavelets: band 0 is the scale function G, band i is H(s_i lambda).
BandFilterSet wavelet_bands(double progression, int scales, const Vec& lambdas, double lambda_max);

// H_k(lambda) for an arbitrary lambda (used by polynomial fits).
double band_value(const BandFilterSet& set, int k, double lambda);

// Column k = H_k(L) x = U H_k(Lambda) U^T x.
Mat lgft_bands(const Vec& x, const BandFilterSet& bands, const SpectralBasis& b);

// Chebyshev series with `terms` coefficients for each band on [0, lambda_max].
std::vector<ChebyshevSeries> chebyshev_bands(const BandFilterSet& bands, int terms,
                                             const ChebyshevFitOptions& opts = {});

// Column k = P_k(L) x without any eigendecomposition.
Mat lgft_bands_chebyshev(const Vec& x, const std::vector<ChebyshevSeries>& series, const Mat& laplacian);

struct SgwtSpec {
  double progression = 2.0;
  int scales = 9;
};

// Column 0 is the scale-function channel, column i the wavelet channel at s_i.
Mat sgwt(const Vec& x, const SgwtSpec& spec, const SpectralBasis& b);
Mat sgwt_chebyshev(const Vec& x, const SgwtSpec& spec, const Mat& laplacian, double lambda_max,
                   int terms);

// ---- inversion -----------------------------------------------------------

// With `strict`, a violated normalization beyond 1e-6 throws and reports the
// measured deviation; otherwise the general (vertex or spectrally weighted)
// formula is used.
Vec invert_windowed_sum(const Mat& s, const WindowBank& w, const SpectralBasis& b, bool strict = true);
Vec invert_windowed_kernel(const Mat& s, const WindowBank& w, const SpectralBasis& b,
                           bool strict = true);
Vec invert_bands_sum(const Mat& s, const BandFilterSet& bands, const SpectralBasis& b,
                     bool strict = true);
Vec invert_bands_kernel(const Mat& s, const BandFilterSet& bands, const SpectralBasis& b,
                        bool strict = true);

// Largest |sum_m h_m(n) - 1|, |sum_m h_m(n)^2 - 1|, |sum_k H_k - 1|, |sum_k H_k^2 - 1|.
double window_sum_deviation(const WindowBank& w);
double window_energy_deviation(const WindowBank& w);
double band_sum_deviation(const BandFilterSet& bands);
double band_energy_deviation(const BandFilterSet& bands);

// ---- frames, spectrograms, concentration ---------------------------------

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// min and max over lambda_p of sum_k H_k^2(lambda_p).
FrameBounds frame_bounds(const BandFilterSet& bands);

struct Spectrogram {
  Mat power;
  Vec vertex_marginal;    // sum over columns
  Vec spectral_marginal;  // sum over rows
  double total = 0.0;
};

Spectrogram spectrogram(const Mat& s);

// ||S||_1 / ||S||_F.
double concentration(const Mat& s);

struct TauSearchOptions {
  double amplitude = 1.0;
  double step = 5.0;
  double tau0 = 1.0;
  double tau1 = 2.0;
  int max_iter = 50;
  double tolerance = 1e-3;
  int grid_points = 32;
  double grid_min = 0.01;
  double grid_max = 100.0;
};

struct TauSearch {
  double tau = 0.0;
  double measure = 0.0;
  Mat map;
  bool converged = false;
  bool used_grid = false;
  std::vector<std::pair<double, double>> history;  // (tau, measure)
};

// tau_k = tau_{k-1} - step (M(tau_{k-1}) - M(tau_{k-2})); falls back to a
// log-spaced grid scan when the iteration does not settle.
TauSearch optimize_tau(const Vec& x, const SpectralBasis& b, const TauSearchOptions& opts = {});

// Zero entries with |S| < threshold.
Mat threshold_map(const Mat& s, double threshold);

// Threshold then invert a band map with the kernel formula (SumSquaresOne)
// or the sum formula (SumOne), chosen from the bank's normalization.
Vec vertex_varying_filter(const Mat& s, double threshold, const BandFilterSet& bands,
                          const SpectralBasis& b);

// ---- energy distributions and local smoothness ---------------------------

// E(n, k) = x(n) X(k) u_k(n).
Mat energy_distribution(const Vec& x, const SpectralBasis& b);

struct LocalSmoothness {
  Vec values;                // NaN where undefined
  std::vector<bool> defined;  // |x(n)| > 1e-12
};

// lambda(n) = (L x)(n) / x(n).
LocalSmoothness local_smoothness(const Vec& x, const Mat& laplacian);

// Row-wise argmax, lowest index on ties.
std::vector<int> estimate_via_distribution(const Mat& distribution);

// sum_k lambda_k E(n, k) / sum_k E(n, k), NaN where the denominator vanishes.
Vec center_of_mass(const Mat& distribution, const Vec& lambdas);

struct RidKernel {
  std::string name;
  int size = 0;  // 0 for kernels defined at any size
  std::function<double(int p, int k, int q)> phi;
  bool is_sinc = false;
};

// phi(p, k, q) = 1 / (number of k in the window) for |k - p| <= |p - q|,
// with the window clipped to [0, n).
RidKernel sinc_kernel(int n);
// phi(p, k, q) = delta(q - k): reproduces the energy distribution.
RidKernel rihaczek_kernel();
// Checks sum_k phi(p, k, q) = 1 and phi(p, k, p) = delta(p - k) on size n.
RidKernel custom_kernel(int n, std::function<double(int, int, int)> phi, std::string name = "custom");

// G(n, k) = sum_p sum_q X(p) X(q) u_p(n) u_q(n) phi(p, k, q).
Mat rid(const Vec& x, const SpectralBasis& b, const RidKernel& kernel);
// Sinc kernel of matching size.
Mat rid(const Vec& x, const SpectralBasis& b);

// 1 / max_{k,m} |u_k(m)|^2.
double uncertainty_bound(const SpectralBasis& b);
double uncertainty_bound(const Eigen::MatrixXcd& basis);

// Per row, the total magnitude moved to the largest-magnitude column.
Mat reassign_to_band_max(const Mat& s);

// N x N map: column p copies band k when lambda_p falls in that band's
// interval between neighbouring band centres.
Mat relabel_to_eigen_axis(const Mat& s, const BandFilterSet& bands);

}  // namespace gsp
