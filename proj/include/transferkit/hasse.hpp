#pragma once

#include <string>
#include <utility>
#include <vector>

#include "transferkit/transfer.hpp"

namespace transferkit {

// Covering relations of the inclusion order on a list of transfer systems:
// (i, j) means systems[i] ⊊ systems[j] with nothing strictly between.
std::vector<std::pair<int, int>> covering_edges(const std::vector<TransferSystem>& systems);

// DOT digraph with one node per system, edges for covering relations only,
// disk-like systems drawn filled.
std::string hasse_dot(const std::vector<TransferSystem>& systems, const std::string& title);
// Same, with precomputed covering edges.
std::string hasse_dot(const std::vector<TransferSystem>& systems, const std::vector<std::pair<int, int>>& edges,
                      const std::string& title);

}  // namespace transferkit
