#include <cmath>

#include "graphnls/error.hpp"
#include "graphnls/kernels.hpp"

namespace graphnls::kernels {

ShiftedSystem factor_shifted(const Layout& layout, double alpha, cplx shift) {
    ShiftedSystem sys;
    sys.layout = layout;
    sys.alpha = alpha;
    sys.shift = shift;

    const double h = layout.h;
    const cplx s = shift / (h * h);
    sys.diag = 1.0 + 2.0 * s;
    sys.off = -s;

    const std::size_t n = layout.cells() - 1;  // interior unknowns per edge
    sys.c_prime.resize(n);
    sys.inv_pivot.resize(n);
    const double floor = 1e-14 * std::abs(sys.diag);
    cplx prev_c{};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx pivot = (i == 0) ? sys.diag : sys.diag - sys.off * prev_c;
        if (std::abs(pivot) <= floor) {
            throw Error(ErrorCode::solver_failure, "vanishing pivot in shifted tridiagonal solve");
        }
        sys.inv_pivot[i] = 1.0 / pivot;
        sys.c_prime[i] = sys.off * sys.inv_pivot[i];
        prev_c = sys.c_prime[i];
    }

    // Interior response to a unit vertex value: T z = s e_1.
    sys.coupling.resize(n);
    cplx prev{};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx d = (i == 0) ? s : cplx{};
        sys.coupling[i] = (d - sys.off * prev) * sys.inv_pivot[i];
        prev = sys.coupling[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        sys.coupling[i] -= sys.c_prime[i] * sys.coupling[i + 1];
    }

    const double N = static_cast<double>(layout.n_edges);
    sys.schur = 1.0 + 2.0 * s + 2.0 * shift * alpha / (N * h) - 2.0 * s * sys.coupling[0];
    if (std::abs(sys.schur) <= 1e-14 * std::abs(1.0 + 2.0 * s)) {
        throw Error(ErrorCode::solver_failure, "vanishing vertex Schur complement");
    }
    return sys;
}

}  // namespace graphnls::kernels
