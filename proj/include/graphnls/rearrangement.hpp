#pragma once

#include "graphnls/graph_function.hpp"

namespace graphnls {

/// Discrete symmetric rearrangement.
///
/// The N*K cell moduli |psi_j(x_k)|, k = 1..K, are sorted in non-increasing
/// order into S and dealt round-robin: edge j (1-based), cell k receives
/// S[N(k-1) + j-1]. The vertex sample is not part of the multiset; the output
/// vertex takes S[0]. Cell-level p-norms are preserved exactly.
GraphFunction rearrange(const GraphFunction& psi);

}  // namespace graphnls
