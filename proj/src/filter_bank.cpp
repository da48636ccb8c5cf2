#include "gsp/filter_bank.hpp"

#include "gsp/filters.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

namespace gsp {

namespace {
constexpr double kEndpointSnap = 1e-10;
}  // namespace

Bipartition check_bipartite(const Graph& g) {
  require(!g.directed(), "bipartition needs an undirected graph");
  const int n = g.size();
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    nbrs[e.src].push_back(e.dst);
    nbrs[e.dst].push_back(e.src);
  }
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : nbrs[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          throw ValidationError("graph is not bipartite: odd cycle through edge (" +
                                std::to_string(v) + "," + std::to_string(w) + ")");
        }
      }
    }
  }
  Bipartition part;
  part.signature.resize(n);
  for (int v = 0; v < n; ++v) {
    if (colour[v] == 0) {
      part.set_e.push_back(v);
      part.signature(v) = 1.0;
    } else {
      part.set_h.push_back(v);
      part.signature(v) = -1.0;
    }
  }
  return part;
}

LowpassKind lowpass_kind_from_string(const std::string& name) {
  if (name == "sqrt") return LowpassKind::Sqrt;
  if (name == "cos" || name == "cosine") return LowpassKind::Cosine;
  throw ValidationError("unknown lowpass kind '" + name + "' (expected sqrt or cos)");
}

double qmf_lowpass(LowpassKind kind, double lambda) {
  if (kind == LowpassKind::Sqrt) return std::sqrt(std::max(0.0, 2.0 - lambda));
  return std::numbers::sqrt2 * std::cos(std::numbers::pi * lambda / 4.0);
}

QmfBank qmf_from_lowpass(LowpassKind kind, const Vec& lambdas) {
  QmfBank bank;
  bank.kind = kind;
  bank.lambdas = lambdas;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    const double l = lambdas(k);
    require(l >= -1e-9 && l <= 2.0 + 1e-9,
            "QMF bank needs normalized-Laplacian eigenvalues in [0, 2], got " + std::to_string(l));
    // sqrt(2 - lambda) has unbounded slope at the ends, so roundoff of 1e-16
    // there would become a 1e-8 response error; snap to the exact endpoint.
    double snapped = std::clamp(l, 0.0, 2.0);
    if (snapped < kEndpointSnap) snapped = 0.0;
    if (snapped > 2.0 - kEndpointSnap) snapped = 2.0;
    bank.lambdas(k) = snapped;
  }
  const auto n = lambdas.size();
  bank.h_low.resize(n);
  bank.h_high.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    bank.h_low(k) = qmf_lowpass(kind, bank.lambdas(k));
    bank.h_high(k) = qmf_lowpass(kind, 2.0 - bank.lambdas(k));
  }
  bank.g_low = bank.h_low;
  bank.g_high = bank.h_high;
  return bank;
}

double design_residual(const QmfBank& bank) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < bank.lambdas.size(); ++k) {
    const double a = qmf_lowpass(bank.kind, bank.lambdas(k));
    const double b = qmf_lowpass(bank.kind, 2.0 - bank.lambdas(k));
    worst = std::max(worst, std::abs(a * a + b * b - 2.0));
  }
  return worst;
}

double alias_residual(const QmfBank& bank) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < bank.lambdas.size(); ++k) {
    const double mirrored = 2.0 - bank.lambdas(k);
    const double h_low_m = qmf_lowpass(bank.kind, mirrored);
    const double h_high_m = qmf_lowpass(bank.kind, 2.0 - mirrored);
    worst = std::max(worst, std::abs(bank.g_low(k) * h_low_m - bank.g_high(k) * h_high_m));
  }
  return worst;
}

FilterBankChannels fb_analyze(const Vec& x, const QmfBank& bank, const Bipartition& part,
                              const SpectralBasis& b) {
  require(x.size() == b.size(), "filter bank: signal length does not match basis");
  require(part.signature.size() == b.size(), "filter bank: partition does not match graph size");
  require(bank.lambdas.size() == b.size(), "filter bank: bank not sampled on this basis");
  const Vec keep_e = (1.0 + part.signature.array()).matrix() * 0.5;
  const Vec keep_h = (1.0 - part.signature.array()).matrix() * 0.5;
  FilterBankChannels out;
  out.low = apply_response(bank.g_low, b, keep_e.cwiseProduct(apply_response(bank.h_low, b, x)));
  out.high = apply_response(bank.g_high, b, keep_h.cwiseProduct(apply_response(bank.h_high, b, x)));
  return out;
}

Vec fb_synthesize(const FilterBankChannels& channels) {
  require(channels.low.size() == channels.high.size(), "filter bank: channel lengths differ");
  return channels.low + channels.high;
}

}  // namespace gsp
