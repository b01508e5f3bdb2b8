#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphnls {

enum class ErrorCode {
    domain,
    inadmissible_mass,
    no_threshold,
    critical_mass_degenerate,
    not_comparable,
    non_monotone_energy,
    solver_failure,
    blowup_suspected,
    boundary_contamination,
    grid_mismatch,
    io,
};

/// Machine-readable tag used in error JSON and CLI messages.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, double bound = 0.0)
        : std::runtime_error(what), code_(code), bound_(bound) {}

    ErrorCode code() const noexcept { return code_; }

    /// Offending bound for range errors (e.g. the violated mass limit); 0 otherwise.
    double bound() const noexcept { return bound_; }

private:
    ErrorCode code_;
    double bound_;
};

}  // namespace graphnls
