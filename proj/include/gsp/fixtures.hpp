#pragma once

#include "gsp/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gsp {

// Directory holding the bundled CSV transcriptions; GSP_FIXTURE_DIR in the
// environment overrides the build-time location.
std::string fixture_dir();

// Names: montenegro16-W, montenegro16-L (16 x 16), adria8-lambdas and
// adria8-response (8 x 1). Unknown names raise ValidationError.
Mat load_fixture(const std::string& name);
std::vector<std::string> fixture_names();

struct SwissRoll {
  Graph graph;   // vertices ordered along the Fiedler vector
  Mat points;    // N x 3 ambient coordinates in the same order
  Vec position;  // roll parameter t of each vertex
};

// N points on a rolled sheet, Gaussian weights of geodesic distance on a
// symmetric 5-nearest-neighbour pattern, components joined by their strongest
// cross pair.
SwissRoll swiss_roll(int n = 100, std::uint64_t seed = 1);

// Three pieces of single eigenvectors: component j is u_{k_j} restricted to
// its vertex block and scaled to unit energy. Defaults put u_8, u_66 and
// u_27 on 0-29, 30-59 and 60-99.
struct PiecewiseSignal {
  Vec x;
  std::vector<int> indices;     // spectral index per block
  std::vector<int> block_start;  // first vertex of each block, then N
};

PiecewiseSignal piecewise_eigen_signal(const SpectralBasis& b, const std::vector<int>& indices = {8, 66, 27},
                                       const std::vector<int>& block_start = {0, 30, 60, 100});

}  // namespace gsp
