#include "graphnls/params.hpp"

#include <cmath>
#include <string>

#include "graphnls/error.hpp"

namespace graphnls {

void ProblemParams::validate() const {
    if (n_edges < 2) {
        throw Error(ErrorCode::domain, "n_edges must be at least 2, got " + std::to_string(n_edges));
    }
    if (!(mu > 0.0 && mu <= 2.0)) {
        throw Error(ErrorCode::domain, "mu must lie in (0, 2], got " + std::to_string(mu));
    }
    if (!(alpha <= 0.0)) {
        throw Error(ErrorCode::domain, "alpha must be <= 0 (attractive or Kirchhoff vertex)");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw Error(ErrorCode::domain, "mass must be positive");
    }
}

Grid::Grid(double edge_length, int cells) : edge_length_(edge_length), cells_(cells), spacing_(0.0) {
    if (!(edge_length > 0.0) || !std::isfinite(edge_length)) {
        throw Error(ErrorCode::domain, "edge length must be positive");
    }
    if (cells < 2) {
        throw Error(ErrorCode::domain, "a grid needs at least 2 cells per edge");
    }
    spacing_ = edge_length / static_cast<double>(cells);
}

}  // namespace graphnls
