#pragma once

// Inner loops of the toolkit. Every kernel exists twice: a plain serial
// reference used by the tests and benchmarks, and an OpenMP version used by
// the library. Parallel reductions split the data into fixed-size chunks and
// combine the partial sums serially, so results do not depend on the thread
// count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace graphnls::kernels {

using cplx = std::complex<double>;

/// Shape of an edge-major sample array: n_edges blocks of `nodes` values.
struct Layout {
    int n_edges = 0;
    std::size_t nodes = 0;  // K + 1
    double h = 0.0;

    std::size_t size() const { return static_cast<std::size_t>(n_edges) * nodes; }
    std::size_t cells() const { return nodes - 1; }
};

/// Factorised shifted operator I + shift * H_h.
///
/// The interior block of every edge is the same constant tridiagonal matrix,
/// so one Thomas factorisation serves all edges. The response of an edge to
/// a unit vertex value (`coupling`) and the scalar Schur complement at the
/// vertex are precomputed here.
struct ShiftedSystem {
    Layout layout;
    double alpha = 0.0;
    cplx shift;
    cplx diag;  // 1 + 2 shift / h^2
    cplx off;   // -shift / h^2
    std::vector<cplx> c_prime;
    std::vector<cplx> inv_pivot;
    std::vector<cplx> coupling;
    cplx schur;
};

/// Throws Error(solver_failure) if a pivot or the Schur complement vanishes.
ShiftedSystem factor_shifted(const Layout& layout, double alpha, cplx shift);

/// Result of a scan over candidate ball centres.
struct BallMax {
    double value = 0.0;
    int edge = 0;        // zero-based
    std::size_t node = 0;
};

/// Chunk length of the deterministic parallel reductions.
inline constexpr std::size_t reduction_chunk = 4096;

/// Ball-membership predicate in grid units: distance d < radius q, with
/// boundary ties (within 1e-9 relative) counted as outside.
inline bool inside_ball(double d, double q) { return d < q - 1e-9 * (q > 1.0 ? q : 1.0); }

namespace reference {

void apply_hamiltonian(const Layout& layout, double alpha, std::span<const cplx> in, std::span<cplx> out);
void nonlinear_term(const Layout& layout, double mu, std::span<const cplx> in, std::span<cplx> out);
void nonlinear_phase(const Layout& layout, double mu, double theta, std::span<cplx> data);
/// out[j] = sum_k w_k h |psi_jk|^p on edge j (vertex included with w_0 = 1/2 on every edge).
void edge_power_sums(const Layout& layout, double p, std::span<const cplx> in, std::span<double> out);
/// out[j] = sum_k |psi_j,k+1 - psi_jk|^2 / h
void edge_kinetic_sums(const Layout& layout, std::span<const cplx> in, std::span<double> out);
void solve_shifted(const ShiftedSystem& system, std::span<const cplx> rhs, std::span<cplx> out);
/// Direct scan: every candidate centre sums every node it covers.
BallMax max_ball_mass(const Layout& layout, std::span<const double> node_mass, double radius);

}  // namespace reference

namespace parallel {

void apply_hamiltonian(const Layout& layout, double alpha, std::span<const cplx> in, std::span<cplx> out);
void nonlinear_term(const Layout& layout, double mu, std::span<const cplx> in, std::span<cplx> out);
void nonlinear_phase(const Layout& layout, double mu, double theta, std::span<cplx> data);
void edge_power_sums(const Layout& layout, double p, std::span<const cplx> in, std::span<double> out);
void edge_kinetic_sums(const Layout& layout, std::span<const cplx> in, std::span<double> out);
void solve_shifted(const ShiftedSystem& system, std::span<const cplx> rhs, std::span<cplx> out);
/// Prefix-sum scan, O(N^2 K).
BallMax max_ball_mass(const Layout& layout, std::span<const double> node_mass, double radius);

}  // namespace parallel

}  // namespace graphnls::kernels
