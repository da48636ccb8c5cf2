#include "gsp/filters.hpp"
#include "gsp/fixtures.hpp"
#include "gsp/vertex_frequency.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace gsp;

namespace {

Mat laplacian_of(const Mat& w) { return operator_matrix(from_dense(w, false), OperatorKind::Laplacian).values; }

// Random orthogonal matrix from a QR factorization.
Mat random_orthogonal(int n, std::mt19937_64& rng) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = oracle::random_vector(n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(n, n);
}

// Chebyshev series evaluated through T_m(z) = cos(m acos z).
double chebyshev_oracle(const ChebyshevSeries& s, double lambda) {
  const double z = std::clamp((2.0 * lambda - s.lambda_max - s.lambda_min) / (s.lambda_max - s.lambda_min), -1.0, 1.0);
  double acc = 0.5 * s.coeffs(0);
  for (int m = 1; m < s.terms(); ++m) acc += s.coeffs(m) * std::cos(m * std::acos(z));
  return acc;
}

double step_at_fifth(double lambda) { return lambda >= 1.11 ? 1.0 : 0.0; }

}  // namespace

TEST(ApplyTaps, IdentityTap) {
  std::mt19937_64 rng(1);
  Mat w = oracle::random_symmetric_weights(7, 0.4, rng);
  Vec x = oracle::random_vector(7, rng);
  EXPECT_EQ(apply_taps(Vec::Ones(1), w, x), x);
}

TEST(ApplyTaps, FirstOrderMovingAverage) {
  std::mt19937_64 rng(2);
  Mat a = oracle::random_symmetric_weights(8, 0.4, rng);
  Vec x = oracle::random_vector(8, rng);
  Vec taps{{1.0, 0.5}};
  EXPECT_LE((apply_taps(taps, a, x) - (x + 0.5 * a * x)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyTaps, MatchesSpectralOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = oracle::random_symmetric_weights(12, 0.3, rng);
    Vec taps = oracle::random_vector(5, rng);
    Vec x = oracle::random_vector(12, rng);
    auto h = [&](double l) {
      double acc = 0.0;
      for (int m = taps.size() - 1; m >= 0; --m) acc = acc * l + taps(m);
      return acc;
    };
    Vec expected = oracle::spectral_apply(a, h, x);
    EXPECT_LE(oracle::rel_error(apply_taps(taps, a, x), expected), 1e-9);
  }
}

TEST(ApplyTaps, DimensionMismatch) {
  EXPECT_THROW(apply_taps(Vec::Ones(2), Mat::Identity(3, 3), Vec::Ones(4)), ValidationError);
}

TEST(DesignResponse, LeastSquaresPrintedTaps) {
  Vec lambdas = load_fixture("adria8-lambdas").col(0);
  Vec g = load_fixture("adria8-response").col(0);
  Vec taps = design_response(g, lambdas, 4, DesignMode::LeastSquares);
  const double printed[] = {0.1734, 0.3532, 0.0800, -0.0336};
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(taps(m), printed[m], 1e-3);
}

TEST(DesignResponse, ExactInterpolation) {
  Vec lambdas = load_fixture("adria8-lambdas").col(0);
  Vec g = load_fixture("adria8-response").col(0);
  Vec taps = design_response(g, lambdas, 8, DesignMode::Exact);
  EXPECT_LE((tap_response(taps, lambdas) - g).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(DesignResponse, TwoByTwoHandSolve) {
  Vec taps = design_response(Vec{{1.0, 0.0}}, Vec{{0.0, 2.0}}, 2, DesignMode::Exact);
  EXPECT_NEAR(taps(0), 1.0, 1e-14);
  EXPECT_NEAR(taps(1), -0.5, 1e-14);
}

TEST(DesignResponse, Errors) {
  Vec lambdas{{0.0, 1.0, 2.0}};
  Vec g{{1.0, 0.0, 1.0}};
  EXPECT_THROW(design_response(g, lambdas, 4, DesignMode::LeastSquares), ValidationError);
  EXPECT_THROW(design_response(g, lambdas, 2, DesignMode::Exact), ValidationError);
  // Repeated eigenvalue carrying two responses cannot be interpolated.
  EXPECT_THROW(design_response(Vec{{1.0, 0.0}}, Vec{{1.0, 1.0}}, 1, DesignMode::Exact), ValidationError);
}

TEST(DesignResponse, LeastSquaresBeatsRandomCandidates) {
  std::mt19937_64 rng(4);
  Vec lambdas = load_fixture("adria8-lambdas").col(0);
  Vec g = load_fixture("adria8-response").col(0);
  for (int order = 1; order <= 7; ++order) {
    Vec taps = design_response(g, lambdas, order, DesignMode::LeastSquares);
    const double best = (tap_response(taps, lambdas) - g).norm();
    for (int c = 0; c < 50; ++c) {
      Vec cand = taps + 0.05 * oracle::random_vector(order, rng);
      EXPECT_LE(best, (tap_response(cand, lambdas) - g).norm() + 1e-12);
    }
  }
}

TEST(DesignResponse, EquivalentFiltersOnDegenerateSpectrum) {
  // Circle of 6: Laplacian eigenvalues {0, 1, 1, 3, 3, 4}; minimal polynomial
  // has degree 4, so adding a multiple of it leaves the filter unchanged.
  Mat l = oracle::laplacian(oracle::cycle_weights(6));
  std::mt19937_64 rng(5);
  Vec h1 = oracle::random_vector(6, rng);
  // (l)(l - 1)(l - 3)(l - 4) = l^4 - 8 l^3 + 19 l^2 - 12 l.
  Vec minimal{{0.0, -12.0, 19.0, -8.0, 1.0, 0.0}};
  Vec h2 = h1 + 0.7 * minimal;
  Vec distinct;
  distinct_eigenvalue_groups(oracle::eigen(l).values, &distinct);
  EXPECT_EQ(distinct.size(), 4);
  for (int t = 0; t < 5; ++t) {
    Vec x = oracle::random_vector(6, rng);
    EXPECT_LE((apply_taps(h1, l, x) - apply_taps(h2, l, x)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ChebyshevFit, PrintedStepCoefficients) {
  ChebyshevSeries s = chebyshev_fit(step_at_fifth, -2.0, 3.19, 3);
  EXPECT_NEAR(0.5 * s.coeffs(0), 0.43, 0.01);
  EXPECT_NEAR(s.coeffs(1), 0.62, 0.01);
  EXPECT_NEAR(s.coeffs(2), 0.12, 0.01);
  EXPECT_NEAR(s.coeffs(3), -0.18, 0.01);
  Vec mono = s.monomial();
  const double printed[] = {0.07, 0.36, 0.11, -0.04};
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(mono(m), printed[m], 0.01);
}

TEST(ChebyshevFit, ConstantAndLinear) {
  ChebyshevSeries one = chebyshev_fit([](double) { return 1.0; }, -3.0, 5.0, 6);
  EXPECT_NEAR(one.coeffs(0), 2.0, 1e-12);
  EXPECT_LE(one.coeffs.tail(6).cwiseAbs().maxCoeff(), 1e-12);
  ChebyshevSeries lin = chebyshev_fit([](double l) { return l; }, -1.0, 1.0, 5);
  EXPECT_NEAR(lin.coeffs(1), 1.0, 1e-12);
  EXPECT_NEAR(lin.coeffs(0), 0.0, 1e-12);
  EXPECT_LE(lin.coeffs.tail(4).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ChebyshevFit, Errors) {
  EXPECT_THROW(chebyshev_fit([](double) { return std::nan(""); }, 0.0, 1.0, 2), ValidationError);
  EXPECT_THROW(chebyshev_fit([](double) { return 1.0; }, 1.0, 1.0, 2), ValidationError);
  EXPECT_THROW(chebyshev_fit([](double) { return 1.0; }, 0.0, 1.0, -1), ValidationError);
}

TEST(ChebyshevFit, RampSmoothsAJump) {
  ChebyshevFitOptions opts;
  opts.ramp_width = 0.5;
  ChebyshevSeries s = chebyshev_fit(step_at_fifth, -2.0, 3.19, 40, opts);
  EXPECT_NEAR(s(1.11), 0.5, 0.02);
  EXPECT_NEAR(s(1.11 + 0.4), 1.0, 0.02);
  EXPECT_NEAR(s(1.11 - 0.4), 0.0, 0.02);
}

TEST(ChebyshevApply, ConstantSeriesIsIdentity) {
  std::mt19937_64 rng(6);
  Mat l = laplacian_of(oracle::random_symmetric_weights(9, 0.4, rng));
  ChebyshevSeries one = chebyshev_fit([](double) { return 1.0; }, 0.0, 10.0, 4);
  Vec x = oracle::random_vector(9, rng);
  EXPECT_LE((chebyshev_apply(one, l, x) - x).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ChebyshevApply, PrintedSeriesEqualsMonomialForm) {
  std::mt19937_64 rng(7);
  Vec lambdas = load_fixture("adria8-lambdas").col(0);
  Mat q = random_orthogonal(8, rng);
  Mat op = q * lambdas.asDiagonal() * q.transpose();
  op = 0.5 * (op + op.transpose());
  ChebyshevSeries s = chebyshev_fit(step_at_fifth, -2.0, 3.19, 3);
  Vec x = oracle::random_vector(8, rng);
  Vec y = chebyshev_apply(s, op, x);
  Vec expected = oracle::spectral_apply(op, [&](double l) { return chebyshev_oracle(s, l); }, x);
  EXPECT_LE((y - expected).cwiseAbs().maxCoeff(), 1e-9 * x.norm());
  // The monomial coefficients reproduce the same operator polynomial.
  Vec mono = s.monomial();
  Vec direct = mono(0) * x + mono(1) * op * x + mono(2) * op * op * x + mono(3) * op * op * op * x;
  EXPECT_LE((y - direct).cwiseAbs().maxCoeff(), 1e-9 * x.norm());
}

TEST(ChebyshevApply, RandomSeriesMatchesSpectralOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Mat l = laplacian_of(oracle::random_symmetric_weights(16, 0.3, rng));
    const double lmax = oracle::eigen(l).values.maxCoeff();
    ChebyshevSeries s;
    s.coeffs = oracle::random_vector(12, rng);
    s.lambda_min = 0.0;
    s.lambda_max = lmax;
    Vec x = oracle::random_vector(16, rng);
    Vec expected = oracle::spectral_apply(l, [&](double lam) { return chebyshev_oracle(s, lam); }, x);
    EXPECT_LE(oracle::rel_error(chebyshev_apply(s, l, x), expected), 1e-8);
  }
}

TEST(ChebyshevApply, ErrorShrinksWithOrderOnHannBand) {
  SwissRoll roll = swiss_roll();
  Mat l = operator_matrix(roll.graph, OperatorKind::Laplacian).values;
  SpectralBasis b = spectral_basis(operator_matrix(roll.graph, OperatorKind::Laplacian));
  BandFilterSet bands = edge_bands(BandShape::RaisedCosine, uniform_edges(10, b.lambda_max()),
                                   b.eigenvalues, BandNormalization::SumOne);
  std::mt19937_64 rng(9);
  Vec x = oracle::random_vector(b.size(), rng);
  for (int k : {0, 3, 7}) {
    Vec exact = b.vectors * bands.values.row(k).transpose().cwiseProduct(b.vectors.transpose() * x);
    double previous = std::numeric_limits<double>::infinity();
    for (int terms : {5, 10, 20, 40, 80}) {
      ChebyshevSeries s = chebyshev_fit([&](double lam) { return band_value(bands, k, lam); }, 0.0,
                                        b.lambda_max(), terms - 1);
      const double err = oracle::rel_error(chebyshev_apply(s, l, x), exact);
      EXPECT_LE(err, previous) << "band " << k << " terms " << terms;
      previous = err;
    }
  }
}

TEST(InverseTransfer, Reciprocal) {
  EXPECT_EQ(inverse_transfer(Vec::Ones(4)), Vec::Ones(4));
  Vec lam{{0.0, 0.5, 1.7, 3.0}};
  Vec g = (1.0 + lam.array()).matrix();
  EXPECT_LE((g.cwiseProduct(inverse_transfer(g)) - Vec::Ones(4)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(inverse_transfer(Vec{{1.0, 0.0}}), ValidationError);
}

TEST(Denoise, ZeroAlphaIsAllPass) {
  std::mt19937_64 rng(10);
  SpectralBasis b = eig_sym(laplacian_of(oracle::random_symmetric_weights(10, 0.4, rng)));
  Vec x = oracle::random_vector(10, rng);
  EXPECT_LE((denoise(x, b, {}) - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Denoise, LargeAlphaTendsToMean) {
  std::mt19937_64 rng(11);
  SpectralBasis b = eig_sym(laplacian_of(oracle::random_symmetric_weights(10, 0.4, rng)));
  Vec x = oracle::random_vector(10, rng);
  Vec y = denoise(x, b, {1e9, 0.0, false});
  EXPECT_LE((y - Vec::Constant(10, x.mean())).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Denoise, CombinedVariantPassesChosenComponent) {
  std::mt19937_64 rng(12);
  Mat l = laplacian_of(oracle::random_symmetric_weights(10, 0.4, rng));
  SpectralBasis b = eig_sym(l);
  const double l1 = b.eigenvalues(1);
  const double beta = 1.0 / (l1 * l1);
  DenoiseParams p{-beta * l1, beta, false};
  Vec h = denoise_response(b.eigenvalues, p);
  EXPECT_NEAR(h(1), 1.0, 1e-12);
  EXPECT_NEAR(h(0), 1.0, 1e-15);
  for (int k = 0; k < b.size(); ++k) {
    const double lam = b.eigenvalues(k);
    EXPECT_NEAR(h(k), 1.0 / (1.0 + 2.0 * p.alpha * lam + 2.0 * beta * lam * lam), 1e-12);
  }
  EXPECT_LE((denoise(b.vectors.col(1), b, p) - b.vectors.col(1)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Denoise, QuadraticVariantAndErrors) {
  Vec lam{{0.0, 1.0, 2.0}};
  Vec h = denoise_response(lam, {0.5, 0.0, true});
  EXPECT_NEAR(h(2), 1.0 / (1.0 + 4.0), 1e-15);
  EXPECT_THROW(denoise_response(lam, {-0.1, 0.0, false}), ValidationError);
  EXPECT_THROW(denoise_response(lam, {0.1, -1.0, false}), ValidationError);
  EXPECT_THROW(denoise_response(lam, {0.1, 1.0, true}), ValidationError);
}

TEST(Denoise, ReducesLaplacianQuadraticForm) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Mat l = laplacian_of(oracle::random_symmetric_weights(12, 0.3, rng));
    SpectralBasis b = eig_sym(l);
    Vec x = oracle::random_vector(12, rng);
    for (double alpha : {0.01, 0.3, 5.0}) {
      Vec y = denoise(x, b, {alpha, 0.0, false});
      EXPECT_LE(y.dot(l * y), x.dot(l * x));
    }
  }
}

TEST(Taubin, ConstantSignalUnchanged) {
  std::mt19937_64 rng(14);
  Mat l = laplacian_of(oracle::random_symmetric_weights(9, 0.4, rng));
  Vec c = Vec::Constant(9, 1.7);
  EXPECT_LE((taubin(c, l, 0.1798, 0.2193, 30) - c).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(taubin_response(Vec::Zero(1), 0.3, 0.9, 17)(0), 1.0);
}

TEST(Taubin, EigenvectorPropagation) {
  std::mt19937_64 rng(15);
  Mat l = laplacian_of(oracle::random_symmetric_weights(9, 0.4, rng));
  oracle::Eig e = oracle::eigen(l);
  const double alpha = 0.1798, beta = 0.2193;
  for (int k = 0; k < 9; ++k) {
    const double rho = (1.0 + beta * e.values(k)) * (1.0 - alpha * e.values(k));
    Vec y = taubin(e.vectors.col(k), l, alpha, beta, 5);
    EXPECT_LE((y - std::pow(rho, 5) * e.vectors.col(k)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Taubin, MatchesSpectralOracle) {
  std::mt19937_64 rng(16);
  Mat l = laplacian_of(oracle::random_symmetric_weights(14, 0.3, rng));
  Vec x = oracle::random_vector(14, rng);
  for (int iters : {1, 5, 30}) {
    auto h = [&](double lam) { return std::pow((1.0 + 0.2193 * lam) * (1.0 - 0.1798 * lam), iters); };
    EXPECT_LE(oracle::rel_error(taubin(x, l, 0.1798, 0.2193, iters), oracle::spectral_apply(l, h, x)), 1e-8);
  }
  EXPECT_THROW(taubin(x, l, 0.1, 0.2, 0), ValidationError);
}

TEST(Taubin, ResponseSharpensWithIterations) {
  const double alpha = 0.1798, beta = 0.2193;
  Vec lam = Vec::LinSpaced(201, 0.0, 2.0);
  std::vector<Vec> curves;
  for (int k : {1, 5, 30, 150}) curves.push_back(taubin_response(lam, alpha, beta, k));
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double rho = (1.0 + beta * lam(i)) * (1.0 - alpha * lam(i));
    for (std::size_t c = 1; c < curves.size(); ++c) {
      if (std::abs(rho) < 1.0) {
        EXPECT_LE(std::abs(curves[c](i)), std::abs(curves[c - 1](i)));  // stop band decays
      } else {
        EXPECT_GE(curves[c](i), curves[c - 1](i));  // pass band holds or lifts
      }
    }
  }
}

TEST(WienerGain, ClosedForms) {
  Vec h{{0.5, 2.0, -1.0}};
  Vec ps{{1.0, 2.0, 3.0}};
  EXPECT_LE((wiener_gain(h, ps, Vec::Zero(3)) - h.cwiseInverse()).cwiseAbs().maxCoeff(), 1e-15);
  Vec pe{{0.5, 1.0, 3.0}};
  Vec g = wiener_gain(Vec::Ones(3), ps, pe);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(g(k), ps(k) / (ps(k) + pe(k)), 1e-15);
  EXPECT_EQ(wiener_gain(Vec::Ones(3), ps, ps), Vec::Constant(3, 0.5));
  EXPECT_THROW(wiener_gain(Vec::Zero(1), Vec::Ones(1), Vec::Zero(1)), ValidationError);
}
