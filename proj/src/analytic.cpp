#include "graphnls/analytic.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "graphnls/error.hpp"

namespace graphnls::analytic {

namespace {

constexpr double pi = std::numbers::pi;

void require_mu(double mu) {
    if (!(mu > 0.0 && mu <= 2.0)) {
        throw Error(ErrorCode::domain, "mu must lie in (0, 2]");
    }
}

void require_bumps(const ProblemParams& params, int j) {
    if (j < 0 || j > max_bumps(params.n_edges)) {
        throw Error(ErrorCode::domain, "bump count " + std::to_string(j) + " outside 0..floor((N-1)/2)");
    }
}

// (mu+1)^(1/mu) / mu
double prefactor(double mu) { return std::pow(mu + 1.0, 1.0 / mu) / mu; }

double log_cosh(double z) {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double generic_frequency(const ProblemParams& params, int j) {
    const double m = params.mass;
    auto residual = [&](double omega) { return mass_function(params, j, omega) - m; };

    const double threshold = frequency_threshold(params, j);
    double lo = threshold * (1.0 + 1e-12);
    if (threshold == 0.0) {
        lo = 1.0;
        for (int i = 0; i < 2000 && residual(lo) >= 0.0; ++i) {
            lo *= 0.5;
        }
    }
    double hi = std::max(2.0 * lo, 1.0);
    for (int i = 0; i < 2000 && residual(hi) <= 0.0; ++i) {
        hi *= 2.0;
    }

    double best = lo;
    double best_res = std::abs(residual(lo));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double r = residual(mid);
        if (std::abs(r) < best_res) {
            best = mid;
            best_res = std::abs(r);
        }
        (r < 0.0 ? lo : hi) = mid;
    }
    if (std::abs(residual(hi)) < best_res) {
        best = hi;
    }
    return best;
}

}  // namespace

double tail_integral(double exponent, double b) {
    if (!(exponent > -1.0)) {
        throw Error(ErrorCode::domain, "tail_integral needs exponent > -1");
    }
    if (!(b >= -1.0 && b <= 1.0)) {
        throw Error(ErrorCode::domain, "tail_integral needs |b| <= 1");
    }
    // t = sqrt(u): int_b^1 (1-t^2)^e dt = (1/2) int_{b^2}^1 u^(-1/2) (1-u)^e du
    const double a = exponent + 1.0;
    const double upper = 0.5 * boost::math::betac(0.5, a, b * b);
    if (b >= 0.0) {
        return upper;
    }
    return boost::math::beta(0.5, a) - upper;
}

double beta_integral(double mu, double b) {
    require_mu(mu);
    if (!(b >= -1.0 && b <= 1.0)) {
        throw Error(ErrorCode::domain, "beta_integral needs |b| <= 1");
    }
    return tail_integral(1.0 / mu - 1.0, b);
}

double beta_integral(double mu) { return beta_integral(mu, 0.0); }

double soliton(const SolitonParams& p, double x) {
    const double z = p.mu * std::sqrt(p.omega) * (x + p.shift);
    return std::pow((p.mu + 1.0) * p.omega, 0.5 / p.mu) * std::exp(-log_cosh(z) / p.mu);
}

double soliton_mass_line(double mu, double omega) {
    require_mu(mu);
    return 2.0 * prefactor(mu) * std::pow(omega, 1.0 / mu - 0.5) * beta_integral(mu);
}

double soliton_energy_line(double mu, double omega) {
    require_mu(mu);
    return -prefactor(mu) * (2.0 - mu) / (2.0 + mu) * std::pow(omega, 1.0 / mu + 0.5) * beta_integral(mu);
}

double soliton_tail_mass(double mu, double omega, double xi) {
    require_mu(mu);
    const double b = std::tanh(xi * mu * std::sqrt(omega));
    return prefactor(mu) * std::pow(omega, 1.0 / mu - 0.5) * tail_integral(1.0 / mu - 1.0, b);
}

double soliton_tail_power(double mu, double omega, double xi) {
    require_mu(mu);
    const double b = std::tanh(xi * mu * std::sqrt(omega));
    return std::pow(mu + 1.0, 1.0 + 1.0 / mu) / mu * std::pow(omega, 1.0 / mu + 0.5) * tail_integral(1.0 / mu, b);
}

double soliton_frequency_line(double mu, double m) {
    require_mu(mu);
    if (mu == 2.0) {
        throw Error(ErrorCode::critical_mass_degenerate, "at mu = 2 the soliton mass does not depend on omega");
    }
    if (!(m > 0.0)) {
        throw Error(ErrorCode::domain, "soliton mass must be positive");
    }
    return std::pow(m / (2.0 * prefactor(mu) * beta_integral(mu)), 2.0 * mu / (2.0 - mu));
}

double critical_mass(const ProblemParams& params) {
    params.validate();
    if (params.alpha == 0.0) {
        throw Error(ErrorCode::no_threshold, "the Kirchhoff vertex has no mass threshold");
    }
    const double mu = params.mu;
    return 2.0 * prefactor(mu) * std::pow(params.abs_alpha() / params.n_edges, (2.0 - mu) / mu) * beta_integral(mu);
}

int max_bumps(int n_edges) { return (n_edges - 1) / 2; }

double frequency_threshold(const ProblemParams& params, int j) {
    const double d = params.n_edges - 2.0 * j;
    return params.alpha * params.alpha / (d * d);
}

double mass_function(const ProblemParams& params, int j, double omega) {
    params.validate();
    require_bumps(params, j);
    if (!(omega > frequency_threshold(params, j))) {
        throw Error(ErrorCode::domain, "omega must exceed the existence threshold alpha^2/(N-2j)^2",
                    frequency_threshold(params, j));
    }
    const double mu = params.mu;
    const double d = params.n_edges - 2.0 * j;
    const double b = std::min(1.0, params.abs_alpha() / (d * std::sqrt(omega)));
    return prefactor(mu) * std::pow(omega, 1.0 / mu - 0.5) * (d * beta_integral(mu, b) + 2.0 * j * beta_integral(mu));
}

MassRange min_mass(const ProblemParams& params, int j) {
    params.validate();
    require_bumps(params, j);
    const double mu = params.mu;
    const double cI = prefactor(mu) * beta_integral(mu);
    MassRange r;
    r.inf = j == 0 ? 0.0 : 2.0 * j * cI * std::pow(params.abs_alpha() / (params.n_edges - 2.0 * j), (2.0 - mu) / mu);
    r.sup = mu == 2.0 ? params.n_edges * cI : std::numeric_limits<double>::infinity();
    return r;
}

bool admissible(const ProblemParams& params, int j) {
    if (params.mu == 2.0 && params.alpha == 0.0) {
        return false;
    }
    const auto r = min_mass(params, j);
    const bool above = j == 0 ? params.mass > 0.0 : params.mass > r.inf;
    return above && params.mass < r.sup;
}

double solve_frequency(const ProblemParams& params, int j, Method method) {
    params.validate();
    require_bumps(params, j);
    if (params.mu == 2.0 && params.alpha == 0.0) {
        throw Error(ErrorCode::critical_mass_degenerate, "Kirchhoff critical case: M_j does not depend on omega");
    }
    const auto range = min_mass(params, j);
    if (j > 0 && params.mass <= range.inf) {
        throw Error(ErrorCode::inadmissible_mass,
                    "mass " + std::to_string(params.mass) + " is below inf Ran M_" + std::to_string(j), range.inf);
    }
    if (params.mass >= range.sup) {
        throw Error(ErrorCode::inadmissible_mass,
                    "mass " + std::to_string(params.mass) + " is not below sup Ran M_" + std::to_string(j), range.sup);
    }

    const double n = params.n_edges;
    const double a = params.abs_alpha();
    if (method == Method::automatic && params.mu == 1.0) {
        const double s = params.mass + 2.0 * a;
        return s * s / (4.0 * n * n);
    }
    if (method == Method::automatic && params.mu == 2.0) {
        const double d = n - 2.0 * j;
        const double y = 0.5 * pi * (n - 4.0 * params.mass / (pi * std::sqrt(3.0))) / d;
        const double s = std::sin(y);
        return a * a / (d * d * s * s);
    }
    return generic_frequency(params, j);
}

double bump_shift(const ProblemParams& params, int j, double omega) {
    const double root = std::sqrt(omega);
    return std::atanh(params.abs_alpha() / ((params.n_edges - 2.0 * j) * root)) / (params.mu * root);
}

GraphFunction stationary_state(const ProblemParams& params, int j, double omega, const Grid& grid) {
    require_bumps(params, j);
    const double a = bump_shift(params, j, omega);
    const SolitonParams bump{params.mu, omega, -a};
    const SolitonParams tail{params.mu, omega, a};
    return GraphFunction::sample(grid, params.n_edges, [&](int edge, double x) {
        return cplx(edge < j ? soliton(bump, x) : soliton(tail, x));
    });
}

GraphFunction stationary_state(const ProblemParams& params, int j, const Grid& grid) {
    return stationary_state(params, j, solve_frequency(params, j), grid);
}

double stationary_energy(const ProblemParams& params, int j, Method method) {
    const double omega = solve_frequency(params, j, method);
    const double mu = params.mu;
    const double a = params.abs_alpha();
    const double d = params.n_edges - 2.0 * j;
    const double excess = std::max(0.0, omega - a * a / (d * d));
    if (method == Method::automatic && mu == 1.0) {
        const double s = params.mass + 2.0 * a;
        const double n = params.n_edges;
        return -s * s * s / (24.0 * n * n) + a * a * a / (3.0 * d * d);
    }
    if (method == Method::automatic && mu == 2.0) {
        return -a * std::sqrt(3.0) / 4.0 * std::sqrt(excess);
    }
    return -(params.mass * omega * (2.0 - mu) + a * mu * std::pow(mu + 1.0, 1.0 / mu) * std::pow(excess, 1.0 / mu)) /
           (2.0 * (mu + 2.0));
}

std::vector<SpectrumEntry> spectrum(const ProblemParams& params) {
    params.validate();
    std::vector<SpectrumEntry> out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int j = 0; j <= max_bumps(params.n_edges); ++j) {
        SpectrumEntry e;
        e.bumps = j;
        const auto range = min_mass(params, j);
        e.min_mass = range.inf;
        e.max_mass = range.sup;
        e.admissible = admissible(params, j);
        e.frequency = e.admissible ? solve_frequency(params, j) : nan;
        e.energy = e.admissible ? stationary_energy(params, j) : nan;
        out.push_back(e);
    }
    return out;
}

int expected_frequency_order(double mu) {
    if (mu < 1.0) {
        return -1;
    }
    return mu == 1.0 ? 0 : 1;
}

OrderingVerdict check_ordering(const ProblemParams& params, const std::vector<SpectrumEntry>& entries) {
    OrderingVerdict v;
    const int expected = expected_frequency_order(params.mu);
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        const auto& a = entries[i];
        const auto& b = entries[i + 1];
        if (!a.admissible || !b.admissible) {
            continue;
        }
        ++v.admissible_pairs;
        const double dw = b.frequency - a.frequency;
        const int sign = dw > 0.0 ? 1 : (dw < 0.0 ? -1 : 0);
        v.frequency_order = v.frequency_order && sign == expected;
        v.energy_order = v.energy_order && a.energy < b.energy;
    }
    return v;
}

double kirchhoff_lower_bound(const ProblemParams& params) {
    params.validate();
    if (params.mu == 2.0) {
        throw Error(ErrorCode::domain, "the Kirchhoff lower bound needs mu < 2");
    }
    const double mu = params.mu;
    return -0.5 * (2.0 - mu) / (2.0 + mu) * soliton_frequency_line(mu, params.mass) * params.mass;
}

double kirchhoff_frequency_ratio(const ProblemParams& params) {
    params.validate();
    if (params.mu == 2.0) {
        throw Error(ErrorCode::domain, "the frequency ratio needs mu < 2");
    }
    const double mu = params.mu;
    const double half_line = std::pow(params.mass / (params.n_edges * prefactor(mu) * beta_integral(mu)),
                                      2.0 * mu / (2.0 - mu));
    return soliton_frequency_line(mu, params.mass) / half_line;
}

}  // namespace graphnls::analytic
