#ifndef ONTO_ISOMORPHISM_HPP
#define ONTO_ISOMORPHISM_HPP

#include "onto/graph.hpp"

namespace onto {

// Graph equality up to blank-node relabeling. The blank-node-free subsets
// must be equal as sets; the blank-node-containing subsets must be related by
// some bijection between blank labels. The bijection search is exhaustive
// (with signature pruning), which is fine at ontology-fixture scale.
bool graph_equal_ground(const Graph& a, const Graph& b);

// Deterministic blank-node relabeling by iterated neighborhood hashing.
// The result is isomorphic to the input, identical across calls, and a fixed
// point (applying it twice changes nothing). Two isomorphic inputs whose
// blanks are fully separated by refinement yield identical graphs.
Graph canonical_blank_labels(const Graph& g);

}  // namespace onto

#endif
