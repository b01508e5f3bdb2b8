#pragma once

#include <vector>

#include "graphnls/graph_function.hpp"
#include "graphnls/params.hpp"

namespace graphnls::analytic {

/// int_b^1 (1 - t^2)^exponent dt for exponent > -1 and -1 <= b <= 1.
double tail_integral(double exponent, double b);

/// int_b^1 (1 - t^2)^(1/mu - 1) dt, 0 < mu <= 2.
double beta_integral(double mu, double b);

/// I = int_0^1 (1 - t^2)^(1/mu - 1) dt.
double beta_integral(double mu);

struct SolitonParams {
    double mu = 1.0;
    double omega = 1.0;
    double shift = 0.0;  // profile is centred at x = -shift
};

/// [(mu+1) omega]^(1/(2mu)) sech^(1/mu)(mu sqrt(omega) (x + shift)).
double soliton(const SolitonParams& p, double x);

/// Closed forms on the full line.
double soliton_mass_line(double mu, double omega);
double soliton_energy_line(double mu, double omega);

/// Closed forms for a shifted soliton tail on the half-line:
/// int_0^inf phi(x + xi)^2 and int_0^inf phi(x + xi)^(2mu+2).
double soliton_tail_mass(double mu, double omega, double xi);
double soliton_tail_power(double mu, double omega, double xi);

/// Frequency of the line soliton of mass m. Throws Error(critical_mass_degenerate) at mu = 2.
double soliton_frequency_line(double mu, double m);

/// Mass threshold below which the constrained minimiser exists.
/// Throws Error(no_threshold) for alpha = 0.
double critical_mass(const ProblemParams& params);

/// Largest admissible bump count floor((N-1)/2).
int max_bumps(int n_edges);

/// Existence threshold alpha^2 / (N - 2j)^2 of the j-bump family.
double frequency_threshold(const ProblemParams& params, int j);

/// M_j(omega), the mass of the j-bump stationary state. Throws Error(domain)
/// for omega at or below the threshold or j out of range.
double mass_function(const ProblemParams& params, int j, double omega);

/// Range of M_j: infimum (0 for j = 0) and supremum (finite only at mu = 2).
struct MassRange {
    double inf = 0.0;
    double sup = 0.0;
};
MassRange min_mass(const ProblemParams& params, int j);

/// True when M_j(omega) = params.mass has a solution.
bool admissible(const ProblemParams& params, int j);

enum class Method {
    automatic,  // closed forms at mu = 1 and mu = 2, bisection otherwise
    generic,    // always quadrature + bisection
};

/// omega_j with M_j(omega_j) = params.mass.
/// Throws Error(inadmissible_mass) carrying the violated bound.
double solve_frequency(const ProblemParams& params, int j, Method method = Method::automatic);

/// Shift a_j of the bumps and tails.
double bump_shift(const ProblemParams& params, int j, double omega);

/// Samples Psi_{omega_j, j}: edges 1..j carry bumps phi(x - a_j), the rest tails phi(x + a_j).
GraphFunction stationary_state(const ProblemParams& params, int j, const Grid& grid);
GraphFunction stationary_state(const ProblemParams& params, int j, double omega, const Grid& grid);

/// Closed-form energy of Psi_{omega_j, j} at mass params.mass.
double stationary_energy(const ProblemParams& params, int j, Method method = Method::automatic);

struct SpectrumEntry {
    int bumps = 0;
    double frequency = 0.0;  // NaN when inadmissible
    double energy = 0.0;     // NaN when inadmissible
    double min_mass = 0.0;
    double max_mass = 0.0;   // +inf for mu < 2
    bool admissible = false;
};

std::vector<SpectrumEntry> spectrum(const ProblemParams& params);

/// Expected sign of omega_{j+1} - omega_j: -1 for mu < 1, 0 for mu = 1, +1 for mu > 1.
int expected_frequency_order(double mu);

struct OrderingVerdict {
    bool frequency_order = true;  // over consecutive admissible pairs
    bool energy_order = true;     // E_j < E_{j+1} over consecutive admissible pairs
    int admissible_pairs = 0;
};
OrderingVerdict check_ordering(const ProblemParams& params, const std::vector<SpectrumEntry>& entries);

/// Line-soliton energy -(1/2)(2-mu)/(2+mu) omega_R m, the lower bound of the
/// Kirchhoff energy at mass m. Throws Error(domain) at mu = 2.
double kirchhoff_lower_bound(const ProblemParams& params);

/// omega_R / omega~, where omega~ is the half-line soliton frequency at mass m/N.
/// Equals (N/2)^(2mu/(2-mu)).
double kirchhoff_frequency_ratio(const ProblemParams& params);

}  // namespace graphnls::analytic
