#include "arena/env.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace arena::env {

void NetworkState::validate() const {
    if (gains.empty())
        throw std::invalid_argument("network must have at least one user");
    if (gains.size() != powers_w.size())
        throw std::invalid_argument("gains and powers length mismatch: " +
                                    std::to_string(gains.size()) + " vs " +
                                    std::to_string(powers_w.size()));
    for (double g : gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("channel gains must be positive and finite");
    if (!(noise_linear > 0.0) || !std::isfinite(noise_linear))
        throw std::invalid_argument("noise_linear must be positive and finite");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("bandwidth_hz must be positive and finite");
    for (double p : powers_w)
        if (p < 0.0 || !std::isfinite(p))
            throw std::invalid_argument("transmit powers must be >= 0 and finite");
}

double db_to_linear(double x_db) {
    if (!std::isfinite(x_db))
        throw std::invalid_argument("dB value must be finite");
    return std::pow(10.0, x_db / 10.0);
}

double sinr(const NetworkState& state, std::size_t user) {
    if (user >= state.size())
        throw std::out_of_range("user index " + std::to_string(user) +
                                " out of range for K=" + std::to_string(state.size()));
    double interference = state.noise_linear;
    for (std::size_t j = 0; j < state.size(); ++j)
        if (j != user) interference += state.gains[j] * state.powers_w[j];
    return state.gains[user] * state.powers_w[user] / interference;
}

double rate(const NetworkState& state, std::size_t user) {
    return state.bandwidth_hz * std::log2(1.0 + sinr(state, user));
}

double total_power(const NetworkState& state) {
    double sum = 0.0;
    for (double p : state.powers_w) sum += p;
    return sum;
}

}  // namespace arena::env
