#pragma once

#include <cstddef>
#include <vector>

namespace arena::env {

/// Static interference-channel snapshot: K users sharing one band.
/// Gains are linear (dimensionless), noise and powers share the same
/// linear unit (W). Immutable once constructed; all operations below
/// are pure.
struct NetworkState {
    std::vector<double> gains;
    double noise_linear = 0.0;
    double bandwidth_hz = 0.0;
    std::vector<double> powers_w;

    std::size_t size() const { return gains.size(); }

    /// Throws std::invalid_argument on any violated invariant
    /// (non-positive gain/noise/bandwidth, negative power, length
    /// mismatch, empty network, non-finite entries).
    void validate() const;
};

/// 10^(x/10). Throws std::invalid_argument for non-finite input.
double db_to_linear(double x_db);

/// g_u*p_u / (noise + sum_{j!=u} g_j*p_j). Throws std::out_of_range.
double sinr(const NetworkState& state, std::size_t user);

/// Shannon rate b*log2(1+SINR) in bit/s.
double rate(const NetworkState& state, std::size_t user);

double total_power(const NetworkState& state);

}  // namespace arena::env
