#pragma once

#include <functional>
#include <span>
#include <vector>

#include "entlink/kernels/csr_graph.hpp"

namespace entlink::kernels {

struct PageRankParams {
  double damping = 0.85;
  int iterations = 50;
};

// Power iteration with uniform teleport; mass on nodes without out-edges is
// spread uniformly over all nodes. Starts from the uniform vector.
//
// The parallel kernel pulls along in-edges and keeps every reduction serial,
// so its output does not depend on the thread count. The serial kernel pushes
// along out-edges and exists as the reference the parallel one is checked
// against.
std::vector<double> pagerank_serial(const CsrGraph& g, const PageRankParams& params);
std::vector<double> pagerank_parallel(const CsrGraph& g, const PageRankParams& params);

struct HitsScores {
  std::vector<double> hub;
  std::vector<double> authority;
};

/// Called after every iteration with the freshly normalized vectors.
using HitsObserver =
    std::function<void(int iteration, std::span<const double> hub, std::span<const double> authority)>;

// authority(v) <- sum of hub(u) over u->v, then hub(u) <- sum of authority(v)
// over u->v, each L1-normalized per iteration. A vector whose update sums to
// zero keeps its previous value, so an edgeless graph stays uniform.
HitsScores hits_serial(const CsrGraph& g, int iterations, const HitsObserver& observer = {});
HitsScores hits_parallel(const CsrGraph& g, int iterations, const HitsObserver& observer = {});

}  // namespace entlink::kernels
