#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "arena/env.hpp"
#include "arena/oracle.hpp"

// Shared fixtures: the four-user reference instance and generators for
// random power-control instances. Frozen expected values below were
// computed independently (numpy linear algebra / scalar evaluation).
namespace arena::testing {

inline const std::vector<double> kGains{1.21, 2.01, 0.58, 0.13};
inline constexpr double kBandwidthHz = 15000.0;
inline const double kNoise = 1.2589254117941673;  // 1 dB in linear
inline const std::vector<double> kInitialPowers{2.0, 4.0, 5.0, 6.0};
inline const std::vector<double> kFloorsBps{3500.0, 15800.0, 4400.0, 1000.0};

inline const std::vector<double> kFrozenGammas{
    0.17554790628360872, 1.0753193183194947, 0.22546844252912934, 0.04729412282062673};
inline constexpr double kFrozenRho = 0.8389026833165805;
inline const std::vector<double> kFrozenPstar{
    1.502957946191918, 3.1393037534508332, 3.8630694565052845, 4.230308438388144};
inline constexpr double kFrozenPstarTotal = 12.73563959453618;
inline const std::vector<double> kFrozenInitialSinrs{
    0.18645611429440112, 1.0925508209546833, 0.23201994607180537, 0.05335549488273033};
inline const std::vector<double> kFrozenInitialRates{
    3699.8810672602067, 15978.93992047981, 4515.384196002834, 1124.8861629868454};
inline const std::vector<double> kFrozenMinGivenOthers{
    1.8829943651666032, 3.9369127648629414, 4.858815941181012, 5.318378876392111};

inline env::NetworkState case_state() {
    return {kGains, kNoise, kBandwidthHz, kInitialPowers};
}

inline double urand(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

struct RandomInstance {
    std::vector<double> gains;
    std::vector<double> gammas;
    double noise = 1.0;
};

/// Rejection-sampled feasible instance: K in [1, kmax], gains in
/// [0.05, 5], gammas in [gamma_lo, 1.5], spectral radius below rho_cap.
inline RandomInstance random_feasible_instance(std::mt19937_64& rng, int kmax = 6,
                                               double rho_cap = 0.95,
                                               double gamma_lo = 0.0) {
    for (;;) {
        RandomInstance inst;
        const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(kmax));
        for (int i = 0; i < k; ++i) {
            inst.gains.push_back(urand(rng, 0.05, 5.0));
            inst.gammas.push_back(urand(rng, gamma_lo, 1.5));
        }
        inst.noise = urand(rng, 0.1, 3.0);
        const auto feas = oracle::feasibility(inst.gains, inst.noise, inst.gammas);
        if (feas.spectral_radius < rho_cap) return inst;
    }
}

/// Independent scalar oracle for the single-user inversion: bisection on
/// the rate as a function of own power.
inline double bisect_min_power(const env::NetworkState& base, std::size_t user,
                               double floor_bps, double hi = 1e9, double tol = 1e-12) {
    if (floor_bps <= 0.0) return 0.0;
    env::NetworkState state = base;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > tol * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        state.powers_w[user] = mid;
        (env::rate(state, user) >= floor_bps ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace arena::testing
