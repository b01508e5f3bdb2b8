#include "graphnls/hamiltonian.hpp"

#include <cmath>

#include "graphnls/error.hpp"
#include "graphnls/functionals.hpp"

namespace graphnls {

DiscreteHamiltonian::DiscreteHamiltonian(const Grid& grid, int n_edges, double alpha)
    : grid_(grid), n_edges_(n_edges), alpha_(alpha), layout_{n_edges, grid.nodes(), grid.spacing()} {
    if (n_edges < 2) {
        throw Error(ErrorCode::domain, "the star graph needs at least 2 edges");
    }
}

void DiscreteHamiltonian::apply(std::span<const cplx> in, std::span<cplx> out) const {
    kernels::parallel::apply_hamiltonian(layout_, alpha_, in, out);
}

GraphFunction DiscreteHamiltonian::apply(const GraphFunction& psi) const {
    if (!(psi.grid() == grid_) || psi.n_edges() != n_edges_) {
        throw Error(ErrorCode::grid_mismatch, "function and Hamiltonian use different grids");
    }
    GraphFunction out(grid_, n_edges_);
    apply(psi.data(), out.data());
    return out;
}

double DiscreteHamiltonian::quadratic_form(const GraphFunction& psi) const {
    return inner(apply(psi), psi).real();
}

ShiftedSolver DiscreteHamiltonian::shifted(cplx shift) const { return ShiftedSolver(*this, shift); }

ShiftedSolver::ShiftedSolver(const DiscreteHamiltonian& ham, cplx shift)
    : grid_(ham.grid()), n_edges_(ham.n_edges()),
      system_(kernels::factor_shifted(ham.layout(), ham.alpha(), shift)) {}

void ShiftedSolver::solve(std::span<const cplx> rhs, std::span<cplx> out) const {
    kernels::parallel::solve_shifted(system_, rhs, out);
}

GraphFunction ShiftedSolver::solve(const GraphFunction& rhs) const {
    if (!(rhs.grid() == grid_) || rhs.n_edges() != n_edges_) {
        throw Error(ErrorCode::grid_mismatch, "right-hand side lives on a different grid");
    }
    GraphFunction out(grid_, n_edges_);
    solve(rhs.data(), out.data());
    return out;
}

Eigenpair lowest_eigenpair(const DiscreteHamiltonian& ham) {
    const double n = static_cast<double>(ham.n_edges());
    const double bound = ham.alpha() * ham.alpha() / (n * n);
    return lowest_eigenpair(ham, -2.0 * bound - 0.01);
}

Eigenpair lowest_eigenpair(const DiscreteHamiltonian& ham, double shift, double tol, int max_iter) {
    if (!(shift < 0.0)) {
        // (H - s) = -s (I - H/s) needs s != 0; s < 0 keeps the factor positive definite.
        throw Error(ErrorCode::domain, "inverse-iteration shift must be negative");
    }
    const auto solver = ham.shifted(-1.0 / shift);
    const double decay = std::abs(ham.alpha()) / ham.n_edges() + 1.0;
    GraphFunction v = GraphFunction::sample(ham.grid(), ham.n_edges(),
                                            [&](int, double x) { return cplx(std::exp(-decay * x)); });
    v *= 1.0 / l2_norm(v);

    double value = ham.quadratic_form(v);
    int it = 0;
    for (; it < max_iter; ++it) {
        GraphFunction next = solver.solve(v);
        next *= 1.0 / l2_norm(next);
        const double updated = ham.quadratic_form(next);
        v = std::move(next);
        const bool done = std::abs(updated - value) <= tol * std::max(1.0, std::abs(updated));
        value = updated;
        if (done) {
            ++it;
            break;
        }
    }
    return {value, std::move(v), it};
}

}  // namespace graphnls
