#include "entlink/linker.hpp"

#include <stdexcept>

namespace entlink {

Linker::Linker(std::shared_ptr<const IndexBundle> bundle)
    : bundle_(bundle ? std::move(bundle) : throw std::invalid_argument("Linker needs a bundle")), generator_(*bundle_) {}

CandidateLists Linker::candidates(const Document& doc, const LinkerConfig& cfg) const {
  return generator_.generate(doc, cfg);
}

Linking Linker::link(const Document& doc, const LinkerConfig& cfg) const {
  Linking out;
  out.candidates = generator_.generate(doc, cfg);
  out.graph = build_graph(out.candidates, bundle_->graph, cfg.depth);
  out.scores = cfg.algorithm == Algorithm::hits ? run_hits(out.graph, cfg.hits_iterations)
                                                : run_pagerank(out.graph, cfg.damping, cfg.pagerank_iterations);
  out.result = select(out.scores, out.candidates, cfg.algorithm);
  return out;
}

}  // namespace entlink
