#pragma once

#include <span>

#include "graphnls/graph_function.hpp"
#include "graphnls/kernels.hpp"

namespace graphnls {

class ShiftedSolver;

/// Discrete delta-vertex Hamiltonian on the truncated star graph.
///
/// H_h is the operator of the quadratic form sum_j sum_k |psi_j,k+1 - psi_jk|^2 / h
/// + alpha |psi(0)|^2 with respect to the trapezoidal inner product: second
/// differences on every edge, coupled through the shared vertex row
///   (H psi)(0) = 2/(N h^2) sum_j (psi(0) - psi_j1) + 2 alpha/(N h) psi(0),
/// and Dirichlet zero at x = L. It is self-adjoint in that inner product.
class DiscreteHamiltonian {
public:
    DiscreteHamiltonian(const Grid& grid, int n_edges, double alpha);

    const Grid& grid() const { return grid_; }
    int n_edges() const { return n_edges_; }
    double alpha() const { return alpha_; }
    const kernels::Layout& layout() const { return layout_; }

    GraphFunction apply(const GraphFunction& psi) const;
    void apply(std::span<const cplx> in, std::span<cplx> out) const;

    /// <H psi, psi>, real up to rounding.
    double quadratic_form(const GraphFunction& psi) const;

    /// Factorises I + shift * H_h.
    ShiftedSolver shifted(cplx shift) const;

private:
    Grid grid_;
    int n_edges_;
    double alpha_;
    kernels::Layout layout_;
};

/// O(NK) solver for (I + shift H_h) x = b: Thomas elimination on each edge,
/// a scalar Schur complement at the vertex, then back-substitution.
class ShiftedSolver {
public:
    ShiftedSolver(const DiscreteHamiltonian& ham, cplx shift);

    GraphFunction solve(const GraphFunction& rhs) const;
    /// rhs and out may alias.
    void solve(std::span<const cplx> rhs, std::span<cplx> out) const;

    cplx shift() const { return system_.shift; }

private:
    Grid grid_;
    int n_edges_;
    kernels::ShiftedSystem system_;
};

struct Eigenpair {
    double value = 0.0;
    GraphFunction vector;
    int iterations = 0;
};

/// Lowest eigenpair by shifted inverse iteration. `shift` must lie below the
/// lowest eigenvalue; by default it is chosen from the continuum bound
/// -alpha^2/N^2.
Eigenpair lowest_eigenpair(const DiscreteHamiltonian& ham);
Eigenpair lowest_eigenpair(const DiscreteHamiltonian& ham, double shift, double tol = 1e-15, int max_iter = 1000);

}  // namespace graphnls
