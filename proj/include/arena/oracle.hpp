#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace arena::oracle {

/// Per-user minimum rates in bit/s.
struct RateTargets {
    std::vector<double> targets_bps;
};

/// Result of a minimum-power solve. Infeasibility is a value, not an
/// exception: callers must be able to render "intent unsatisfiable" as a
/// first-class outcome.
struct OracleSolution {
    bool feasible = false;
    std::vector<double> min_powers_w;  // empty when infeasible
    std::vector<double> target_sinrs;
    double spectral_radius = 0.0;
    int iterations = 0;  // 0 for a direct solve
    bool ill_conditioned = false;  // 0.95 <= rho < 1
};

struct FeasibilityCheck {
    bool feasible = false;
    double spectral_radius = 0.0;
};

/// Thrown when an iterative routine exhausts its budget without either
/// converging or proving divergence. Carries the last iterate.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, std::vector<double> last)
        : std::runtime_error(what), last_iterate(std::move(last)) {}
    std::vector<double> last_iterate;
};

/// gamma_i = 2^(r_i/b) - 1, the SINR at which the rate law returns r_i.
std::vector<double> target_sinr(const RateTargets& targets, double bandwidth_hz);

/// Perron-Frobenius test: targets are jointly achievable iff the spectral
/// radius of the normalized cross-gain matrix F (F_ij = gamma_i*g_j/g_i,
/// zero diagonal, users with gamma=0 excluded) is below 1. The radius is
/// found by shifted power iteration (tol 1e-12, cap 1e5 iterations);
/// non-convergence throws NumericFailure.
FeasibilityCheck feasibility(const std::vector<double>& gains, double noise_linear,
                             const std::vector<double>& gammas);

/// Componentwise-minimal power vector meeting every target SINR with
/// equality, via a dense linear solve of (I - F) p = u. Users with
/// gamma=0 are held at p=0 outside the system.
OracleSolution min_power_direct(const std::vector<double>& gains, double noise_linear,
                                const std::vector<double>& gammas);

/// Same fixed point by the distributed power-control update
/// p_i <- (gamma_i / SINR_i) * p_i, run from start_powers. Serves as the
/// independent cross-check for min_power_direct. Divergence (total power
/// exceeding divergence_factor x starting total) reports infeasible;
/// budget exhaustion throws NumericFailure.
OracleSolution min_power_iterative(const std::vector<double>& gains, double noise_linear,
                                   const std::vector<double>& gammas,
                                   const std::vector<double>& start_powers, double tol,
                                   int max_iter, double divergence_factor = 1e6);

}  // namespace arena::oracle
