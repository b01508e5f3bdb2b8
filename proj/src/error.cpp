#include "graphnls/error.hpp"

namespace graphnls {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::domain: return "domain-error";
    case ErrorCode::inadmissible_mass: return "inadmissible-mass";
    case ErrorCode::no_threshold: return "no-threshold";
    case ErrorCode::critical_mass_degenerate: return "critical-mass-degenerate";
    case ErrorCode::not_comparable: return "not-comparable";
    case ErrorCode::non_monotone_energy: return "non-monotone-energy";
    case ErrorCode::solver_failure: return "solver-failure";
    case ErrorCode::blowup_suspected: return "blowup-suspected";
    case ErrorCode::boundary_contamination: return "boundary-contamination";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::io: return "io-error";
    }
    return "unknown";
}

}  // namespace graphnls
