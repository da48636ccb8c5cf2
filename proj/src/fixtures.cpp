#include "gsp/fixtures.hpp"

#include "gsp/io.hpp"
#include "gsp/random_signals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <numeric>

#ifndef GSP_FIXTURE_DIR
#define GSP_FIXTURE_DIR "data/fixtures"
#endif

namespace gsp {

namespace {

const std::vector<std::string> kFixtures = {"montenegro16-W", "montenegro16-L", "adria8-lambdas",
                                            "adria8-response"};

// Arc length of the spiral r = t from 0 to t.
double arc_length(double t) { return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t)); }

constexpr int kNeighbours = 5;

}  // namespace

std::string fixture_dir() {
  if (const char* env = std::getenv("GSP_FIXTURE_DIR"); env && *env) return env;
  return GSP_FIXTURE_DIR;
}

std::vector<std::string> fixture_names() { return kFixtures; }

Mat load_fixture(const std::string& name) {
  require(std::find(kFixtures.begin(), kFixtures.end(), name) != kFixtures.end(),
          "unknown fixture '" + name + "'");
  return read_matrix((std::filesystem::path(fixture_dir()) / (name + ".csv")).string());
}

SwissRoll swiss_roll(int n, std::uint64_t seed) {
  require(n > kNeighbours, "Swiss roll needs more than " + std::to_string(kNeighbours) + " points");
  CounterRng rng(seed);
  Vec t(n), z(n), arc(n);
  for (int i = 0; i < n; ++i) {
    t(i) = std::numbers::pi * (1.5 + 3.0 * rng.uniform());
    z(i) = 15.0 * rng.uniform();
    arc(i) = arc_length(t(i));
  }
  Mat dist(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist(i, j) = std::hypot(arc(i) - arc(j), z(i) - z(j));
  }

  // Symmetric k-nearest-neighbour pattern; Gaussian kernel exp(-d^2 / (2 sigma^2))
  // with sigma the median k-th neighbour distance.
  Mat pattern = Mat::Zero(n, n);
  std::vector<double> kth(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist(i, a) < dist(i, b); });
    // order[0] is i itself.
    for (int r = 1; r <= kNeighbours; ++r) {
      pattern(i, order[r]) = 1.0;
      pattern(order[r], i) = 1.0;
    }
    kth[i] = dist(i, order[kNeighbours]);
  }
  std::nth_element(kth.begin(), kth.begin() + n / 2, kth.end());
  const double width = 2.0 * kth[n / 2] * kth[n / 2];

  // Join components through their closest cross pair.
  auto component_of_first = [&]() {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u) {
        if (pattern(v, u) != 0.0 && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    return seen;
  };
  for (auto inside = component_of_first();
       std::find(inside.begin(), inside.end(), false) != inside.end(); inside = component_of_first()) {
    int best_i = -1, best_j = -1;
    for (int i = 0; i < n; ++i) {
      if (!inside[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (inside[j]) continue;
        if (best_i < 0 || dist(i, j) < dist(best_i, best_j)) {
          best_i = i;
          best_j = j;
        }
      }
    }
    pattern(best_i, best_j) = pattern(best_j, best_i) = 1.0;
  }

  Mat w = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && pattern(i, j) != 0.0) w(i, j) = std::exp(-dist(i, j) * dist(i, j) / width);
    }
  }

  // Order vertices along the Fiedler vector so blocks of indices are
  // contiguous regions of the sheet.
  SpectralBasis b = spectral_basis(operator_matrix(from_dense(w, false), OperatorKind::Laplacian));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int c) { return b.vectors(a, 1) < b.vectors(c, 1); });
  Mat w_sorted(n, n);
  SwissRoll out;
  out.points.resize(n, 3);
  out.position.resize(n);
  for (int i = 0; i < n; ++i) {
    const int src = order[i];
    for (int j = 0; j < n; ++j) w_sorted(i, j) = w(src, order[j]);
    out.points(i, 0) = t(src) * std::cos(t(src));
    out.points(i, 1) = z(src);
    out.points(i, 2) = t(src) * std::sin(t(src));
    out.position(i) = t(src);
  }
  out.graph = from_dense(w_sorted, false);
  return out;
}

PiecewiseSignal piecewise_eigen_signal(const SpectralBasis& b, const std::vector<int>& indices,
                                       const std::vector<int>& block_start) {
  require(block_start.size() == indices.size() + 1, "need one block boundary more than indices");
  require(block_start.front() == 0 && block_start.back() == b.size(),
          "blocks must cover all " + std::to_string(b.size()) + " vertices");
  PiecewiseSignal out;
  out.x = Vec::Zero(b.size());
  out.indices = indices;
  out.block_start = block_start;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    require(indices[j] >= 0 && indices[j] < b.size(), "spectral index out of range");
    require(block_start[j + 1] > block_start[j], "blocks must be nonempty and increasing");
    const int len = block_start[j + 1] - block_start[j];
    const Vec piece = b.vectors.col(indices[j]).segment(block_start[j], len);
    require(piece.norm() > 0.0, "eigenvector vanishes on its block");
    out.x.segment(block_start[j], len) = piece / piece.norm();
  }
  return out;
}

}  // namespace gsp
