#include "gsp/filters.hpp"

#include "gsp/transforms.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gsp {

namespace {

using Sparse = Eigen::SparseMatrix<double>;

Sparse to_sparse(const Mat& m) { return m.sparseView(); }

void check_square(const Mat& op, const Vec& x, const char* what) {
  require(op.rows() == op.cols(), std::string(what) + ": operator must be square");
  require(op.rows() == x.size(), std::string(what) + ": signal length " +
                                     std::to_string(x.size()) + " does not match operator size " +
                                     std::to_string(op.rows()));
}

}  // namespace

Vec apply_taps(const Vec& taps, const Mat& shift, const Vec& x) {
  require(taps.size() >= 1, "filter needs at least one tap");
  check_square(shift, x, "apply_taps");
  Sparse s = to_sparse(shift);
  Vec power = x;
  Vec y = taps(0) * x;
  for (Eigen::Index m = 1; m < taps.size(); ++m) {
    power = s * power;
    y += taps(m) * power;
  }
  return y;
}

Vec tap_response(const Vec& taps, const Vec& lambdas) {
  Vec h(lambdas.size());
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    double acc = 0.0;
    for (Eigen::Index m = taps.size() - 1; m >= 0; --m) acc = acc * lambdas(k) + taps(m);
    h(k) = acc;
  }
  return h;
}

Vec apply_response(const Vec& response, const SpectralBasis& b, const Vec& x) {
  require(response.size() == b.size() && x.size() == b.size(),
          "apply_response: sizes of response, basis and signal differ");
  return b.vectors * response.cwiseProduct(b.vectors.transpose() * x);
}

std::vector<int> distinct_eigenvalue_groups(const Vec& lambdas, Vec* distinct) {
  const double tol = 1e-9 * std::max(lambdas.size() ? lambdas.cwiseAbs().maxCoeff() : 0.0, 1e-300);
  std::vector<double> reps;
  std::vector<int> group(static_cast<std::size_t>(lambdas.size()));
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    int found = -1;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (std::abs(reps[r] - lambdas(k)) <= tol) {
        found = static_cast<int>(r);
        break;
      }
    }
    if (found < 0) {
      reps.push_back(lambdas(k));
      found = static_cast<int>(reps.size()) - 1;
    }
    group[k] = found;
  }
  if (distinct) *distinct = Eigen::Map<Vec>(reps.data(), static_cast<Eigen::Index>(reps.size()));
  return group;
}

Vec design_response(const Vec& g, const Vec& lambdas, int order, DesignMode mode) {
  require(g.size() == lambdas.size(), "response and eigenvalue lists differ in length");
  require(order >= 1, "filter order must be at least 1");
  require(order <= lambdas.size(), "filter order " + std::to_string(order) +
                                       " exceeds the number of eigenvalues " +
                                       std::to_string(lambdas.size()));
  require(g.allFinite() && lambdas.allFinite(), "design inputs must be finite");

  Vec distinct;
  auto group = distinct_eigenvalue_groups(lambdas, &distinct);
  const auto nd = distinct.size();

  if (mode == DesignMode::Exact) {
    require(order == nd, "exact design needs order equal to the number of distinct eigenvalues (" +
                             std::to_string(nd) + ")");
    Vec target = Vec::Constant(nd, std::numeric_limits<double>::quiet_NaN());
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      double& t = target(group[k]);
      if (std::isnan(t)) {
        t = g(k);
      } else {
        require(std::abs(t - g(k)) <= 1e-12 * std::max(1.0, std::abs(t)),
                "exact design: repeated eigenvalue carries two different response values");
      }
    }
    Mat v = vandermonde(distinct, order);
    Eigen::FullPivLU<Mat> lu(v);
    require(lu.isInvertible(), "exact design: Vandermonde system is singular");
    return v.partialPivLu().solve(target);
  }

  Mat v = vandermonde(lambdas, order);
  Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double eps = std::numeric_limits<double>::epsilon();
  svd.setThreshold(static_cast<double>(std::max<Eigen::Index>(v.rows(), v.cols())) * eps);
  return svd.solve(g);
}

double ChebyshevSeries::operator()(double lambda) const {
  const double a = 2.0 / (lambda_max - lambda_min);
  const double b = -(lambda_max + lambda_min) / (lambda_max - lambda_min);
  const double z = a * lambda + b;
  if (coeffs.size() == 0) return 0.0;
  double t0 = 1.0, t1 = z;
  double sum = 0.5 * coeffs(0);
  if (coeffs.size() > 1) sum += coeffs(1) * t1;
  for (Eigen::Index m = 2; m < coeffs.size(); ++m) {
    double t2 = 2.0 * z * t1 - t0;
    sum += coeffs(m) * t2;
    t0 = t1;
    t1 = t2;
  }
  return sum;
}

Vec ChebyshevSeries::monomial() const {
  const auto m = coeffs.size();
  Vec out = Vec::Zero(std::max<Eigen::Index>(m, 1));
  if (m == 0) return out;
  const double a = 2.0 / (lambda_max - lambda_min);
  const double b = -(lambda_max + lambda_min) / (lambda_max - lambda_min);
  // Power-series forms of T_{m-2}, T_{m-1} in lambda.
  Vec t0 = Vec::Zero(m), t1 = Vec::Zero(m);
  t0(0) = 1.0;
  out += 0.5 * coeffs(0) * t0;
  if (m > 1) {
    t1(0) = b;
    t1(1) = a;
    out += coeffs(1) * t1;
  }
  for (Eigen::Index k = 2; k < m; ++k) {
    Vec t2 = -t0;
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
      t2(j) += 2.0 * b * t1(j);
      t2(j + 1) += 2.0 * a * t1(j);
    }
    out += coeffs(k) * t2;
    t0 = t1;
    t1 = t2;
  }
  return out;
}

ChebyshevSeries chebyshev_fit(const std::function<double(double)>& response, double lambda_min,
                              double lambda_max, int order, const ChebyshevFitOptions& opts) {
  require(order >= 0, "Chebyshev order must be nonnegative");
  require(lambda_max > lambda_min, "Chebyshev interval needs lambda_max > lambda_min");
  require(opts.nodes >= 1, "quadrature needs at least one node");
  require(opts.ramp_width >= 0.0, "ramp width must be nonnegative");

  auto target = [&](double lam) {
    if (opts.ramp_width <= 0.0) return response(lam);
    constexpr int kSub = 64;
    double acc = 0.0;
    for (int j = 0; j < kSub; ++j) {
      acc += response(lam + opts.ramp_width * ((j + 0.5) / kSub - 0.5));
    }
    return acc / kSub;
  };

  const int q = opts.nodes;
  Vec theta(q), samples(q);
  for (int j = 0; j < q; ++j) {
    theta(j) = (j + 0.5) * std::numbers::pi / q;
    const double z = std::cos(theta(j));
    const double lam = 0.5 * (z * (lambda_max - lambda_min) + lambda_max + lambda_min);
    samples(j) = target(lam);
    if (!std::isfinite(samples(j))) {
      throw ValidationError("desired response is not finite at lambda = " + std::to_string(lam));
    }
  }
  ChebyshevSeries s;
  s.lambda_min = lambda_min;
  s.lambda_max = lambda_max;
  s.coeffs.resize(order + 1);
  for (int m = 0; m <= order; ++m) {
    double acc = 0.0;
    for (int j = 0; j < q; ++j) acc += std::cos(m * theta(j)) * samples(j);
    s.coeffs(m) = 2.0 * acc / q;
  }
  return s;
}

Vec chebyshev_apply(const ChebyshevSeries& series, const Mat& op, const Vec& x) {
  check_square(op, x, "chebyshev_apply");
  require(series.terms() >= 1, "Chebyshev series is empty");
  const double a = 2.0 / (series.lambda_max - series.lambda_min);
  const double b = -(series.lambda_max + series.lambda_min) / (series.lambda_max - series.lambda_min);
  Sparse s = to_sparse(op);
  Vec t0 = x;
  Vec y = 0.5 * series.coeffs(0) * t0;
  if (series.terms() == 1) return y;
  Vec t1 = a * (s * x) + b * x;
  y += series.coeffs(1) * t1;
  for (int m = 2; m < series.terms(); ++m) {
    Vec t2 = 2.0 * (a * (s * t1) + b * t1) - t0;
    y += series.coeffs(m) * t2;
    t0.swap(t1);
    t1.swap(t2);
  }
  return y;
}

Vec inverse_transfer(const Vec& g) {
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    require(std::abs(g(k)) > 1e-12, "inverse system undefined: response is zero at index " +
                                        std::to_string(k));
  }
  return g.cwiseInverse();
}

Vec denoise_response(const Vec& lambdas, const DenoiseParams& p) {
  require(p.beta >= 0.0, "denoise: beta must be nonnegative");
  require(!(p.quadratic && p.beta != 0.0), "denoise: quadratic and beta variants are exclusive");
  Vec denom;
  if (p.beta == 0.0) {
    require(p.alpha >= 0.0, "denoise: alpha must be nonnegative");
    Vec power = p.quadratic ? Vec(lambdas.array().square()) : lambdas;
    denom = (1.0 + 2.0 * p.alpha * power.array()).matrix();
  } else {
    // Negative alpha is allowed here so a chosen component can pass
    // unattenuated (alpha = -beta * lambda_1), as long as the response stays
    // finite and positive on the spectrum.
    denom = (1.0 + 2.0 * p.alpha * lambdas.array() + 2.0 * p.beta * lambdas.array().square()).matrix();
    if (p.alpha < 0.0) {
      require(denom.minCoeff() > 1e-12,
              "denoise: negative alpha makes the response non-positive on this spectrum");
    }
  }
  return denom.cwiseInverse();
}

Vec denoise(const Vec& x, const SpectralBasis& laplacian_basis, const DenoiseParams& p) {
  return apply_response(denoise_response(laplacian_basis.eigenvalues, p), laplacian_basis, x);
}

Vec taubin_response(const Vec& lambdas, double alpha, double beta, int iterations) {
  require(iterations >= 1, "Taubin smoothing needs at least one iteration");
  Vec step = ((1.0 + beta * lambdas.array()) * (1.0 - alpha * lambdas.array())).matrix();
  return step.array().pow(static_cast<double>(iterations)).matrix();
}

Vec taubin(const Vec& x, const Mat& laplacian, double alpha, double beta, int iterations) {
  require(iterations >= 1, "Taubin smoothing needs at least one iteration");
  check_square(laplacian, x, "taubin");
  Sparse l = to_sparse(laplacian);
  Vec y = x;
  for (int k = 0; k < iterations; ++k) {
    Vec shrink = y - alpha * (l * y);
    y = shrink + beta * (l * shrink);
  }
  return y;
}

Vec wiener_gain(const Vec& h, const Vec& p_signal, const Vec& p_noise) {
  require(h.size() == p_signal.size() && h.size() == p_noise.size(),
          "Wiener gain: input lengths differ");
  Vec g(h.size());
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    const double den = h(k) * h(k) * p_signal(k) + p_noise(k);
    require(den > 0.0, "Wiener gain: zero denominator at index " + std::to_string(k));
    g(k) = h(k) * p_signal(k) / den;
  }
  return g;
}

}  // namespace gsp
