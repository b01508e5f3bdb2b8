#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "graphnls/graph_function.hpp"

namespace graphnls {

/// Shortest-round-trip-safe decimal form: 17 significant digits.
std::string format_real(double v);

/// CSV `edge,k,x,re,im`, one row per node, edges 1..N in order.
void write_graph_function(std::ostream& os, const GraphFunction& psi);
void write_graph_function(const std::filesystem::path& path, const GraphFunction& psi);

/// Reads the CSV back; the grid (L, K) and N are recovered from the rows.
/// Throws Error(io) on malformed input or inconsistent vertex values.
GraphFunction read_graph_function(std::istream& is);
GraphFunction read_graph_function(const std::filesystem::path& path);

}  // namespace graphnls
