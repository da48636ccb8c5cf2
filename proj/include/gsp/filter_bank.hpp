#pragma once

#include "gsp/graph.hpp"

#include <utility>

namespace gsp {

struct Bipartition {
  std::vector<int> set_e;
  std::vector<int> set_h;
  // +1 on E, -1 on H: the diagonal of J_E.
  Vec signature;
};

// Two-colouring by breadth-first search; vertex 0 of each component goes to E.
Bipartition check_bipartite(const Graph& g);

enum class LowpassKind { Sqrt, Cosine };

LowpassKind lowpass_kind_from_string(const std::string& name);

// H_L(lambda): sqrt(2 - lambda) or sqrt(2) cos(pi lambda / 4).
double qmf_lowpass(LowpassKind kind, double lambda);

struct QmfBank {
  LowpassKind kind = LowpassKind::Sqrt;
  Vec lambdas;
  Vec h_low, h_high, g_low, g_high;
};

// Quadrature-mirror bank sampled on normalized-Laplacian eigenvalues.
// Values within 1e-9 outside [0, 2] are clamped and values within 1e-10 of an
// end are snapped to it; anything further out is rejected.
QmfBank qmf_from_lowpass(LowpassKind kind, const Vec& lambdas);

// max_k |H_L^2(lambda_k) + H_L^2(2 - lambda_k) - 2|.
double design_residual(const QmfBank& bank);
// max_k |G_L(l) H_L(2 - l) - G_H(l) H_H(2 - l)|.
double alias_residual(const QmfBank& bank);

struct FilterBankChannels {
  Vec low;
  Vec high;
};

// f_L = 1/2 G_L (I + J_E) H_L x and f_H = 1/2 G_H (I + J_H) H_H x,
// every filter evaluated in the basis.
FilterBankChannels fb_analyze(const Vec& x, const QmfBank& bank, const Bipartition& part,
                              const SpectralBasis& b);

Vec fb_synthesize(const FilterBankChannels& channels);

}  // namespace gsp
