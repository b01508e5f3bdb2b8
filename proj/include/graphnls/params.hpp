#pragma once

#include <cstddef>

namespace graphnls {

/// Physical parameters of the star-graph NLS: N edges, power mu, vertex
/// strength alpha (alpha = 0 is the Kirchhoff coupling) and target mass.
struct ProblemParams {
    int n_edges = 3;
    double mu = 1.0;
    double alpha = -1.0;
    double mass = 1.0;

    /// Throws Error(domain) unless N >= 2, 0 < mu <= 2, alpha <= 0, mass > 0.
    void validate() const;

    double abs_alpha() const { return alpha < 0.0 ? -alpha : alpha; }
};

/// Uniform discretisation of every half-line edge, truncated at edge_length.
/// Nodes are x_k = k h for k = 0..cells; node 0 is the shared vertex.
class Grid {
public:
    Grid(double edge_length, int cells);

    double edge_length() const { return edge_length_; }
    int cells() const { return cells_; }
    double spacing() const { return spacing_; }
    std::size_t nodes() const { return static_cast<std::size_t>(cells_) + 1; }
    double x(std::size_t k) const {
        return k == static_cast<std::size_t>(cells_) ? edge_length_ : static_cast<double>(k) * spacing_;
    }

    /// Trapezoidal weight w_k (1/2 at both ends, 1 inside).
    double weight(std::size_t k) const {
        return (k == 0 || k == static_cast<std::size_t>(cells_)) ? 0.5 : 1.0;
    }

    bool operator==(const Grid& other) const {
        return cells_ == other.cells_ && edge_length_ == other.edge_length_;
    }

private:
    double edge_length_;
    int cells_;
    double spacing_;
};

}  // namespace graphnls
