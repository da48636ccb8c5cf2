#include "gsp/vertex_frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace gsp {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kInversionTolerance = 1e-6;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_signal(const Vec& x, const SpectralBasis& b) {
  require(x.size() == b.size(), "signal length " + std::to_string(x.size()) +
                                    " does not match basis size " + std::to_string(b.size()));
}

void check_windows(const WindowBank& w, const SpectralBasis& b) {
  require(w.h.rows() == b.size() && w.h.cols() == b.size(), "window bank does not match basis size");
}

void check_bands(const BandFilterSet& bands, const SpectralBasis& b) {
  require(bands.values.cols() == b.size(), "band set is not sampled on this basis");
  require(bands.bands() >= 1, "band set is empty");
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Rising and falling halves of raised-cosine and Meyer bands.
double band_half(const BandFilterSet& set, double x, bool rising) {
  x = std::clamp(x, 0.0, 1.0);
  const double v = set.shape == BandShape::Meyer ? meyer_map(x) : x;
  const double h = rising ? std::sin(kHalfPi * v) : std::cos(kHalfPi * v);
  return set.normalization == BandNormalization::SumOne ? h * h : h;
}

double edge_band_value(const BandFilterSet& set, int k, double lambda) {
  const Vec& e = set.edges;
  const int last = static_cast<int>(e.size()) - 1;
  const double lam = std::clamp(lambda, e(0), e(last));
  if (k == 0) {
    if (lam <= e(0)) return 1.0;
    if (lam <= e(1)) return band_half(set, (lam - e(0)) / (e(1) - e(0)), false);
    return 0.0;
  }
  const double a = e(k - 1);
  const double b = e(k);
  if (lam > a && lam <= b) return band_half(set, (lam - a) / (b - a), true);
  if (k == last) return 0.0;
  const double c = e(k + 1);
  if (lam > b && lam <= c) return band_half(set, (lam - b) / (c - b), false);
  return 0.0;
}

double wavelet_band_value(const BandFilterSet& set, int k, double lambda) {
  const double m = set.progression;
  const double q = 1.0 / (m - 1.0);
  const double lam = std::clamp(lambda, 0.0, set.lambda_max);
  const int scales = static_cast<int>(set.scales.size());
  if (k == 0) {
    // Scale function: the complement of the last wavelet's rising half.
    const double y = set.scales(scales - 1) * lam;
    if (y <= 1.0) return 1.0;
    if (y <= m) return std::cos(kHalfPi * meyer_map(q * (y - 1.0)));
    return 0.0;
  }
  const double y = set.scales(k - 1) * lam;
  if (y > 1.0 && y <= m) return std::sin(kHalfPi * meyer_map(q * (y - 1.0)));
  if (k >= 2 && y > m && y <= m * m) return std::cos(kHalfPi * meyer_map(q * (y / m - 1.0)));
  return 0.0;
}

void sample_bands(BandFilterSet& set) {
  const int count = set.shape == BandShape::Wavelet ? static_cast<int>(set.scales.size()) + 1
                    : set.shape == BandShape::Binomial ? static_cast<int>(set.centers.size())
                                                       : static_cast<int>(set.edges.size());
  set.values.resize(count, set.lambdas.size());
  for (int k = 0; k < count; ++k) {
    for (Eigen::Index p = 0; p < set.lambdas.size(); ++p) {
      set.values(k, p) = band_value(set, k, set.lambdas(p));
    }
  }
}

void check_lambdas(const Vec& lambdas, double lambda_max) {
  require(lambda_max > 0.0, "band filters need lambda_max > 0");
  require(lambdas.allFinite(), "eigenvalues must be finite");
}

std::string deviation_message(const char* what, double deviation) {
  return std::string(what) + " violated: measured deviation " + std::to_string(deviation) +
         " exceeds " + std::to_string(kInversionTolerance);
}

}  // namespace

// ---- windows ---------------------------------------------------------------

WindowBank spectral_window_bank(const SpectralBasis& b, double tau, double amplitude) {
  require(tau > 0.0 && std::isfinite(tau), "spectral window needs tau > 0");
  require(std::isfinite(amplitude), "window amplitude must be finite");
  Vec response = (amplitude * (-tau * b.eigenvalues.array()).exp()).matrix();
  WindowBank w;
  w.h = b.vectors * response.asDiagonal() * b.vectors.transpose();
  return w;
}

WindowBank vertex_window_bank(const Graph& g, const Vec& basic) {
  require(basic.size() >= 1, "vertex window width must be at least 1");
  require(basic.allFinite(), "vertex window samples must be finite");
  require(!g.directed(), "vertex-neighbourhood windows need an undirected graph");
  const int n = g.size();
  const int width = static_cast<int>(basic.size());
  WindowBank w;
  w.h = basic(0) * Mat::Identity(n, n);
  if (width >= 2) {
    ReachMatrices reach = reach_matrices(g, width);
    for (int d = 1; d < width; ++d) w.h += basic(d) * reach.matrices[d - 1];
  }
  int diameter = 0;
  for (int v = 0; v < n; ++v) {
    for (int d : g.hop_distances(v)) diameter = std::max(diameter, d);
  }
  w.exceeds_diameter = width - 1 > diameter;
  return w;
}

Vec hann_window(int width) {
  require(width >= 1, "Hann window width must be at least 1");
  Vec g(width);
  for (int d = 0; d < width; ++d) g(d) = 0.5 * (1.0 + std::cos(std::numbers::pi * d / width));
  return g;
}

WindowBank normalize_windows(const WindowBank& w, WindowNormalization mode) {
  WindowBank out = w;
  if (mode == WindowNormalization::None) return out;
  for (Eigen::Index n = 0; n < w.h.rows(); ++n) {
    const double scale = mode == WindowNormalization::UnitSum ? w.h.row(n).sum() : w.h.row(n).norm();
    require(std::abs(scale) > 1e-300,
            "window normalization undefined: vertex " + std::to_string(n) + " has zero window mass");
    out.h.row(n) /= scale;
  }
  return out;
}

Mat lgft_windowed(const Vec& x, const WindowBank& w, const SpectralBasis& b) {
  check_signal(x, b);
  check_windows(w, b);
  return w.h.transpose() * x.asDiagonal() * b.vectors;
}

// ---- band filters ------------------------------------------------------------

const char* to_string(BandShape shape) {
  switch (shape) {
    case BandShape::Binomial: return "binomial";
    case BandShape::RaisedCosine: return "hann";
    case BandShape::Meyer: return "meyer";
    case BandShape::Wavelet: return "wavelet";
  }
  return "unknown";
}

double meyer_map(double x) {
  return x * x * x * x * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
}

Vec uniform_edges(int k, double lambda_max) {
  require(k >= 1, "band count K must be at least 1");
  require(lambda_max > 0.0, "band edges need lambda_max > 0");
  Vec e(k + 1);
  for (int j = 0; j <= k; ++j) e(j) = lambda_max * j / k;
  e(k) = lambda_max;
  return e;
}

Vec edges_from_intervals(const Vec& a, const Vec& b, const Vec& c) {
  require(a.size() >= 1 && a.size() == b.size() && a.size() == c.size(),
          "interval lists must be nonempty and of equal length");
  const auto count = a.size();
  for (Eigen::Index k = 0; k + 1 < count; ++k) {
    require(b(k) == a(k + 1) && c(k) == b(k + 1),
            "band bounds are not chained at k = " + std::to_string(k + 1));
  }
  Vec e(count + 2);
  e(0) = a(0);
  for (Eigen::Index k = 0; k < count; ++k) e(k + 1) = b(k);
  e(count + 1) = c(count - 1);
  for (Eigen::Index j = 1; j < e.size(); ++j) {
    require(e(j) > e(j - 1), "band bounds must be strictly increasing");
  }
  return e;
}

Vec adaptive_edges(const Vec& spectrum, const Vec& lambdas, int k, double lambda_max) {
  require(k >= 1, "band count K must be at least 1");
  require(spectrum.size() == lambdas.size() && spectrum.size() >= 1,
          "spectrum and eigenvalues must have the same nonzero length");
  require(lambda_max > 0.0, "adaptive edges need lambda_max > 0");
  const double energy = spectrum.squaredNorm();
  const double spread = lambda_max / (4.0 * k);
  // Cumulative energy with each eigenvalue's share spread over a small
  // interval, mixed with a linear term so the map is strictly increasing.
  auto cumulative = [&](double lam) {
    double e = 0.0;
    if (energy > 0.0) {
      for (Eigen::Index p = 0; p < lambdas.size(); ++p) {
        const double t = std::clamp((lam - lambdas(p) + 0.5 * spread) / spread, 0.0, 1.0);
        e += spectrum(p) * spectrum(p) * t;
      }
      e /= energy;
    }
    return 0.8 * e + 0.2 * lam / lambda_max;
  };
  const double f0 = cumulative(0.0);
  const double f1 = cumulative(lambda_max);
  Vec edges(k + 1);
  edges(0) = 0.0;
  edges(k) = lambda_max;
  for (int j = 1; j < k; ++j) {
    const double target = f0 + (f1 - f0) * j / k;
    double lo = 0.0, hi = lambda_max;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cumulative(mid) < target ? lo : hi) = mid;
    }
    edges(j) = 0.5 * (lo + hi);
  }
  // Keep a minimum spacing so no band collapses.
  const double gap = lambda_max / (100.0 * k);
  for (int j = 1; j <= k; ++j) edges(j) = std::max(edges(j), edges(j - 1) + gap);
  edges(k) = lambda_max;
  for (int j = k - 1; j >= 1; --j) edges(j) = std::min(edges(j), edges(j + 1) - gap);
  return edges;
}

BandFilterSet binomial_bands(int k, const Vec& lambdas, double lambda_max, BandNormalization norm) {
  require(k >= 1, "band count K must be at least 1");
  check_lambdas(lambdas, lambda_max);
  BandFilterSet set;
  set.shape = BandShape::Binomial;
  set.normalization = norm;
  set.lambda_max = lambda_max;
  set.edges = uniform_edges(k, lambda_max);
  set.centers = set.edges;
  set.lambdas = lambdas;
  sample_bands(set);
  return set;
}

BandFilterSet edge_bands(BandShape shape, const Vec& edges, const Vec& lambdas, BandNormalization norm) {
  require(shape == BandShape::RaisedCosine || shape == BandShape::Meyer,
          "edge bands are raised-cosine or Meyer shaped");
  require(edges.size() >= 2, "band count K must be at least 1");
  for (Eigen::Index j = 1; j < edges.size(); ++j) {
    require(edges(j) > edges(j - 1), "band edges must be strictly increasing");
  }
  check_lambdas(lambdas, edges(edges.size() - 1));
  BandFilterSet set;
  set.shape = shape;
  set.normalization = norm;
  set.lambda_max = edges(edges.size() - 1);
  set.edges = edges;
  set.centers = edges;
  set.lambdas = lambdas;
  sample_bands(set);
  return set;
}

BandFilterSet wavelet_bands(double progression, int scales, const Vec& lambdas, double lambda_max) {
  require(progression > 1.0, "wavelet progression M must exceed 1");
  require(scales >= 1, "wavelet scale count K must be at least 1");
  check_lambdas(lambdas, lambda_max);
  BandFilterSet set;
  set.shape = BandShape::Wavelet;
  set.normalization = BandNormalization::SumSquaresOne;
  set.lambda_max = lambda_max;
  set.progression = progression;
  set.scales.resize(scales);
  set.centers.resize(scales + 1);
  set.centers(0) = 0.0;
  for (int i = 1; i <= scales; ++i) {
    set.scales(i - 1) = std::pow(progression, i) / lambda_max;
    set.centers(i) = progression / set.scales(i - 1);
  }
  set.lambdas = lambdas;
  sample_bands(set);
  return set;
}

double band_value(const BandFilterSet& set, int k, double lambda) {
  switch (set.shape) {
    case BandShape::Binomial: {
      const int count = static_cast<int>(set.edges.size()) - 1;
      require(k >= 0 && k <= count, "band index out of range");
      const double t = std::clamp(lambda / set.lambda_max, 0.0, 1.0);
      const double h = binomial(count, k) * std::pow(1.0 - t, count - k) * std::pow(t, k);
      return set.normalization == BandNormalization::SumOne ? h : std::sqrt(h);
    }
    case BandShape::RaisedCosine:
    case BandShape::Meyer:
      require(k >= 0 && k < set.edges.size(), "band index out of range");
      return edge_band_value(set, k, lambda);
    case BandShape::Wavelet:
      require(k >= 0 && k <= set.scales.size(), "band index out of range");
      return wavelet_band_value(set, k, lambda);
  }
  return 0.0;
}

Mat lgft_bands(const Vec& x, const BandFilterSet& bands, const SpectralBasis& b) {
  check_signal(x, b);
  check_bands(bands, b);
  Vec spectrum = b.vectors.transpose() * x;
  Mat weighted = bands.values.transpose().array().colwise() * spectrum.array();
  return b.vectors * weighted;
}

std::vector<ChebyshevSeries> chebyshev_bands(const BandFilterSet& bands, int terms,
                                             const ChebyshevFitOptions& opts) {
  require(terms >= 1, "Chebyshev order must be at least one term");
  const int count = bands.shape == BandShape::Wavelet ? static_cast<int>(bands.scales.size()) + 1
                                                      : static_cast<int>(bands.edges.size());
  std::vector<ChebyshevSeries> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out.push_back(chebyshev_fit([&](double lam) { return band_value(bands, k, lam); }, 0.0,
                                bands.lambda_max, terms - 1, opts));
  }
  return out;
}

Mat lgft_bands_chebyshev(const Vec& x, const std::vector<ChebyshevSeries>& series, const Mat& laplacian) {
  require(!series.empty(), "no Chebyshev series given");
  Mat out(x.size(), static_cast<Eigen::Index>(series.size()));
  for (std::size_t k = 0; k < series.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = chebyshev_apply(series[k], laplacian, x);
  }
  return out;
}

Mat sgwt(const Vec& x, const SgwtSpec& spec, const SpectralBasis& b) {
  return lgft_bands(x, wavelet_bands(spec.progression, spec.scales, b.eigenvalues, b.lambda_max()), b);
}

Mat sgwt_chebyshev(const Vec& x, const SgwtSpec& spec, const Mat& laplacian, double lambda_max,
                   int terms) {
  BandFilterSet set = wavelet_bands(spec.progression, spec.scales, Vec(), lambda_max);
  return lgft_bands_chebyshev(x, chebyshev_bands(set, terms), laplacian);
}

// ---- inversion -------------------------------------------------------------

double window_sum_deviation(const WindowBank& w) {
  return (w.h.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

double window_energy_deviation(const WindowBank& w) {
  return (w.h.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff();
}

double band_sum_deviation(const BandFilterSet& bands) {
  return (bands.values.colwise().sum().array() - 1.0).abs().maxCoeff();
}

double band_energy_deviation(const BandFilterSet& bands) {
  return (bands.values.colwise().squaredNorm().array() - 1.0).abs().maxCoeff();
}

Vec invert_windowed_sum(const Mat& s, const WindowBank& w, const SpectralBasis& b, bool strict) {
  check_windows(w, b);
  require(s.rows() == b.size() && s.cols() == b.size(), "windowed LGFT map must be N x N");
  if (strict) {
    const double dev = window_sum_deviation(w);
    require(dev <= kInversionTolerance, deviation_message("window sum condition", dev));
  }
  Vec y = b.vectors * s.colwise().sum().transpose();
  if (strict) return y;
  Vec mass = w.h.rowwise().sum();
  for (Eigen::Index n = 0; n < mass.size(); ++n) {
    require(std::abs(mass(n)) > 1e-12, "window sum vanishes at vertex " + std::to_string(n));
  }
  return y.cwiseQuotient(mass);
}

Vec invert_windowed_kernel(const Mat& s, const WindowBank& w, const SpectralBasis& b, bool strict) {
  check_windows(w, b);
  require(s.rows() == b.size() && s.cols() == b.size(), "windowed LGFT map must be N x N");
  if (strict) {
    const double dev = window_energy_deviation(w);
    require(dev <= kInversionTolerance, deviation_message("window energy condition", dev));
  }
  // Column m of `local` is x .* h_m recovered by an inverse transform.
  Mat local = b.vectors * s.transpose();
  Vec y = w.h.cwiseProduct(local).rowwise().sum();
  if (strict) return y;
  Vec energy = w.h.rowwise().squaredNorm();
  for (Eigen::Index n = 0; n < energy.size(); ++n) {
    require(energy(n) > 1e-24, "window energy vanishes at vertex " + std::to_string(n));
  }
  return y.cwiseQuotient(energy);
}

Vec invert_bands_sum(const Mat& s, const BandFilterSet& bands, const SpectralBasis& b, bool strict) {
  check_bands(bands, b);
  require(s.rows() == b.size() && s.cols() == bands.bands(), "band map shape does not match bands");
  if (strict) {
    const double dev = band_sum_deviation(bands);
    require(dev <= kInversionTolerance, deviation_message("band sum condition", dev));
    return s.rowwise().sum();
  }
  Vec total = bands.values.colwise().sum().transpose();
  for (Eigen::Index p = 0; p < total.size(); ++p) {
    require(std::abs(total(p)) > 1e-12, "band sum vanishes at eigenvalue index " + std::to_string(p));
  }
  Vec spectrum = b.vectors.transpose() * s.rowwise().sum();
  return b.vectors * spectrum.cwiseQuotient(total);
}

Vec invert_bands_kernel(const Mat& s, const BandFilterSet& bands, const SpectralBasis& b, bool strict) {
  check_bands(bands, b);
  require(s.rows() == b.size() && s.cols() == bands.bands(), "band map shape does not match bands");
  if (strict) {
    const double dev = band_energy_deviation(bands);
    require(dev <= kInversionTolerance, deviation_message("band energy condition", dev));
  }
  Mat spectra = b.vectors.transpose() * s;  // column k = H_k .* X
  Vec spectrum = (spectra.array() * bands.values.transpose().array()).rowwise().sum();
  if (!strict) {
    Vec energy = bands.values.colwise().squaredNorm().transpose();
    for (Eigen::Index p = 0; p < energy.size(); ++p) {
      require(energy(p) > 1e-24, "band energy vanishes at eigenvalue index " + std::to_string(p));
    }
    spectrum = spectrum.cwiseQuotient(energy);
  }
  return b.vectors * spectrum;
}

// ---- frames, spectrograms, concentration -------------------------------------

FrameBounds frame_bounds(const BandFilterSet& bands) {
  require(bands.bands() >= 1 && bands.values.cols() >= 1, "frame bounds need a nonempty band set");
  Vec g = bands.values.colwise().squaredNorm().transpose();
  return {g.minCoeff(), g.maxCoeff()};
}

Spectrogram spectrogram(const Mat& s) {
  Spectrogram out;
  out.power = s.array().square().matrix();
  out.vertex_marginal = out.power.rowwise().sum();
  out.spectral_marginal = out.power.colwise().sum().transpose();
  out.total = out.power.sum();
  return out;
}

double concentration(const Mat& s) {
  const double frob = s.norm();
  require(frob > 0.0, "concentration undefined for an all-zero map");
  return s.cwiseAbs().sum() / frob;
}

TauSearch optimize_tau(const Vec& x, const SpectralBasis& b, const TauSearchOptions& opts) {
  require(opts.tau0 > 0.0 && opts.tau1 > 0.0 && opts.tau0 != opts.tau1,
          "tau search needs two distinct positive starting values");
  require(opts.max_iter >= 1 && opts.grid_points >= 2, "tau search needs iterations and grid points");
  TauSearch out;
  auto measure = [&](double tau) {
    const double m = concentration(lgft_windowed(x, spectral_window_bank(b, tau, opts.amplitude), b));
    out.history.emplace_back(tau, m);
    return m;
  };
  double prev2 = opts.tau0, prev1 = opts.tau1;
  double m2 = measure(prev2), m1 = measure(prev1);
  for (int it = 0; it < opts.max_iter; ++it) {
    const double next = prev1 - opts.step * (m1 - m2);
    if (!(next > 0.0) || !std::isfinite(next)) break;
    const double m = measure(next);
    if (std::abs(next - prev1) < opts.tolerance) {
      out.converged = true;
      break;
    }
    prev2 = prev1;
    m2 = m1;
    prev1 = next;
    m1 = m;
  }
  if (!out.converged) {
    out.used_grid = true;
    const double lo = std::log(opts.grid_min), hi = std::log(opts.grid_max);
    for (int j = 0; j < opts.grid_points; ++j) measure(std::exp(lo + (hi - lo) * j / (opts.grid_points - 1)));
  }
  auto best = std::min_element(out.history.begin(), out.history.end(),
                               [](const auto& p, const auto& q) { return p.second < q.second; });
  out.tau = best->first;
  out.measure = best->second;
  out.map = lgft_windowed(x, spectral_window_bank(b, out.tau, opts.amplitude), b);
  return out;
}

Mat threshold_map(const Mat& s, double threshold) {
  require(threshold >= 0.0, "threshold must be nonnegative");
  return (s.array().abs() < threshold).select(0.0, s);
}

Vec vertex_varying_filter(const Mat& s, double threshold, const BandFilterSet& bands,
                          const SpectralBasis& b) {
  Mat kept = threshold_map(s, threshold);
  if (bands.normalization == BandNormalization::SumSquaresOne) return invert_bands_kernel(kept, bands, b);
  return invert_bands_sum(kept, bands, b);
}

// ---- distributions -------------------------------------------------------------

Mat energy_distribution(const Vec& x, const SpectralBasis& b) {
  check_signal(x, b);
  Vec spectrum = b.vectors.transpose() * x;
  return x.asDiagonal() * b.vectors * spectrum.asDiagonal();
}

LocalSmoothness local_smoothness(const Vec& x, const Mat& laplacian) {
  require(laplacian.rows() == laplacian.cols() && laplacian.rows() == x.size(),
          "local smoothness: operator and signal sizes differ");
  Vec lx = laplacian * x;
  LocalSmoothness out;
  out.values.resize(x.size());
  out.defined.assign(static_cast<std::size_t>(x.size()), false);
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    if (std::abs(x(n)) > 1e-12) {
      out.values(n) = lx(n) / x(n);
      out.defined[n] = true;
    } else {
      out.values(n) = kNaN;
    }
  }
  return out;
}

std::vector<int> estimate_via_distribution(const Mat& distribution) {
  std::vector<int> out(static_cast<std::size_t>(distribution.rows()));
  for (Eigen::Index n = 0; n < distribution.rows(); ++n) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < distribution.cols(); ++k) {
      if (distribution(n, k) > distribution(n, best)) best = k;
    }
    out[n] = static_cast<int>(best);
  }
  return out;
}

Vec center_of_mass(const Mat& distribution, const Vec& lambdas) {
  require(distribution.cols() == lambdas.size(), "distribution columns do not match eigenvalues");
  Vec out(distribution.rows());
  for (Eigen::Index n = 0; n < distribution.rows(); ++n) {
    const double mass = distribution.row(n).sum();
    out(n) = std::abs(mass) > 1e-24 ? distribution.row(n).dot(lambdas) / mass : kNaN;
  }
  return out;
}

RidKernel sinc_kernel(int n) {
  require(n >= 1, "kernel size must be positive");
  RidKernel kernel;
  kernel.name = "sinc";
  kernel.size = n;
  kernel.is_sinc = true;
  kernel.phi = [n](int p, int k, int q) {
    const int d = std::abs(p - q);
    if (std::abs(k - p) > d) return 0.0;
    const int lo = std::max(0, p - d), hi = std::min(n - 1, p + d);
    return 1.0 / (hi - lo + 1);
  };
  return kernel;
}

RidKernel rihaczek_kernel() {
  RidKernel kernel;
  kernel.name = "rihaczek";
  kernel.phi = [](int, int k, int q) { return k == q ? 1.0 : 0.0; };
  return kernel;
}

RidKernel custom_kernel(int n, std::function<double(int, int, int)> phi, std::string name) {
  require(n >= 1, "kernel size must be positive");
  require(static_cast<bool>(phi), "kernel function is empty");
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      double total = 0.0;
      for (int k = 0; k < n; ++k) {
        const double v = phi(p, k, q);
        require(std::isfinite(v), "kernel value is not finite");
        total += v;
        if (p == q) {
          require(std::abs(v - (k == p ? 1.0 : 0.0)) <= 1e-12,
                  "kernel breaks the frequency marginal at p = " + std::to_string(p));
        }
      }
      require(std::abs(total - 1.0) <= 1e-12, "kernel breaks the vertex marginal at (p, q) = (" +
                                                  std::to_string(p) + ", " + std::to_string(q) + ")");
    }
  }
  RidKernel kernel;
  kernel.name = std::move(name);
  kernel.size = n;
  kernel.phi = std::move(phi);
  return kernel;
}

Mat rid(const Vec& x, const SpectralBasis& b, const RidKernel& kernel) {
  check_signal(x, b);
  const int n = b.size();
  require(kernel.size == 0 || kernel.size == n, "kernel size does not match basis size");
  require(static_cast<bool>(kernel.phi), "kernel function is empty");
  Vec spectrum = b.vectors.transpose() * x;
  Mat atoms = b.vectors * spectrum.asDiagonal();  // column p = X(p) u_p
  if (kernel.is_sinc) {
    // Accumulate each (p, |p - q|) contribution over its k window with a
    // difference array along k.
    Mat diff = Mat::Zero(n, n + 1);
    for (int p = 0; p < n; ++p) {
      for (int d = 0; d < n; ++d) {
        Vec partner = Vec::Zero(n);
        bool any = false;
        if (p - d >= 0) {
          partner += atoms.col(p - d);
          any = true;
        }
        if (d > 0 && p + d < n) {
          partner += atoms.col(p + d);
          any = true;
        }
        if (!any) continue;
        const int lo = std::max(0, p - d), hi = std::min(n - 1, p + d);
        Vec term = atoms.col(p).cwiseProduct(partner) / static_cast<double>(hi - lo + 1);
        diff.col(lo) += term;
        diff.col(hi + 1) -= term;
      }
    }
    Mat out(n, n);
    Vec running = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      running += diff.col(k);
      out.col(k) = running;
    }
    return out;
  }
  Mat out = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      Vec term = atoms.col(p).cwiseProduct(atoms.col(q));
      for (int k = 0; k < n; ++k) {
        const double w = kernel.phi(p, k, q);
        if (w != 0.0) out.col(k) += w * term;
      }
    }
  }
  return out;
}

Mat rid(const Vec& x, const SpectralBasis& b) { return rid(x, b, sinc_kernel(b.size())); }

double uncertainty_bound(const SpectralBasis& b) {
  require(b.size() >= 1, "uncertainty bound needs a nonempty basis");
  return 1.0 / b.vectors.array().square().maxCoeff();
}

double uncertainty_bound(const Eigen::MatrixXcd& basis) {
  require(basis.size() >= 1, "uncertainty bound needs a nonempty basis");
  return 1.0 / basis.cwiseAbs2().maxCoeff();
}

Mat reassign_to_band_max(const Mat& s) {
  Mat out = Mat::Zero(s.rows(), s.cols());
  for (Eigen::Index m = 0; m < s.rows(); ++m) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < s.cols(); ++k) {
      if (std::abs(s(m, k)) > std::abs(s(m, best))) best = k;
    }
    if (s.cols() > 0) out(m, best) = s.row(m).cwiseAbs().sum();
  }
  return out;
}

Mat relabel_to_eigen_axis(const Mat& s, const BandFilterSet& bands) {
  require(s.cols() == bands.centers.size(), "map columns do not match band count");
  const auto count = bands.centers.size();
  std::vector<int> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return bands.centers(i) < bands.centers(j); });
  const auto n = bands.lambdas.size();
  Mat out(s.rows(), n);
  for (Eigen::Index p = 0; p < n; ++p) {
    // Band j owns (mid(j-1, j), mid(j, j+1)] in centre order.
    std::size_t j = 0;
    while (j + 1 < order.size() &&
           bands.lambdas(p) > 0.5 * (bands.centers(order[j]) + bands.centers(order[j + 1]))) {
      ++j;
    }
    out.col(p) = s.col(order[j]);
  }
  return out;
}

}  // namespace gsp
