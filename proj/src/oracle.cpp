#include "arena/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace arena::oracle {

namespace {

constexpr double kPowerIterTol = 1e-12;
constexpr int kPowerIterCap = 100000;
constexpr double kIllConditionedRho = 0.95;

void check_inputs(const std::vector<double>& gains, double noise_linear,
                  const std::vector<double>& gammas) {
    if (gains.empty() || gains.size() != gammas.size())
        throw std::invalid_argument("gains/gammas size mismatch or empty");
    for (double g : gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("gains must be positive and finite");
    for (double gm : gammas)
        if (gm < 0.0 || !std::isfinite(gm))
            throw std::invalid_argument("target SINRs must be >= 0 and finite");
    if (!(noise_linear > 0.0) || !std::isfinite(noise_linear))
        throw std::invalid_argument("noise_linear must be positive and finite");
}

std::vector<std::size_t> active_users(const std::vector<double>& gammas) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < gammas.size(); ++i)
        if (gammas[i] > 0.0) idx.push_back(i);
    return idx;
}

// Normalized cross-gain matrix over the active users only; users with
// gamma=0 transmit nothing and are bystanders.
std::vector<double> build_f(const std::vector<double>& gains, const std::vector<double>& gammas,
                            const std::vector<std::size_t>& act) {
    const std::size_t m = act.size();
    std::vector<double> f(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (a != b)
                f[a * m + b] = gammas[act[a]] * gains[act[b]] / gains[act[a]];
    return f;
}

// Power iteration on F/scale + I. The shift makes the dominant
// eigenvalue unique even for periodic F (e.g. the 2-user case); the
// caller's scale keeps the shift significant for very large matrices.
// Returns scale * (lambda - 1), or NaN when the budget runs out.
double shifted_power_iteration(const std::vector<double>& f, std::size_t m, double scale) {
    std::vector<double> x(m, 1.0), y(m);
    double lambda = 1.0;
    for (int it = 0; it < kPowerIterCap; ++it) {
        double norm = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            double s = x[a];
            for (std::size_t b = 0; b < m; ++b) s += f[a * m + b] / scale * x[b];
            y[a] = s;
            norm = std::max(norm, s);
        }
        if (norm == 0.0) return 0.0;
        for (std::size_t a = 0; a < m; ++a) x[a] = y[a] / norm;
        if (std::abs(norm - lambda) <= kPowerIterTol * std::max(1.0, norm))
            return scale * std::max(0.0, norm - 1.0);
        lambda = norm;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Spectral radius of a nonnegative matrix. The unscaled iteration is
// accurate for the moderate magnitudes the solver cares about; when it
// stalls (entries many orders of magnitude above the +1 shift) a pass
// normalized by the max row sum settles the verdict.
double spectral_radius(const std::vector<double>& f, std::size_t m) {
    if (m == 0) return 0.0;
    double rho = shifted_power_iteration(f, m, 1.0);
    if (std::isnan(rho)) {
        double row_max = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            double s = 0.0;
            for (std::size_t b = 0; b < m; ++b) s += f[a * m + b];
            row_max = std::max(row_max, s);
        }
        if (row_max > 0.0) rho = shifted_power_iteration(f, m, row_max);
    }
    if (std::isnan(rho))
        throw NumericFailure("spectral radius power iteration did not converge", {});
    return rho;
}

}  // namespace

std::vector<double> target_sinr(const RateTargets& targets, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be positive");
    std::vector<double> gammas;
    gammas.reserve(targets.targets_bps.size());
    for (double r : targets.targets_bps) {
        if (r < 0.0 || !std::isfinite(r))
            throw std::invalid_argument("rate targets must be >= 0 and finite");
        gammas.push_back(std::exp2(r / bandwidth_hz) - 1.0);
    }
    return gammas;
}

FeasibilityCheck feasibility(const std::vector<double>& gains, double noise_linear,
                             const std::vector<double>& gammas) {
    check_inputs(gains, noise_linear, gammas);
    const auto act = active_users(gammas);
    const double rho = spectral_radius(build_f(gains, gammas, act), act.size());
    return {rho < 1.0, rho};
}

OracleSolution min_power_direct(const std::vector<double>& gains, double noise_linear,
                                const std::vector<double>& gammas) {
    check_inputs(gains, noise_linear, gammas);
    OracleSolution sol;
    sol.target_sinrs = gammas;
    const auto feas = feasibility(gains, noise_linear, gammas);
    sol.spectral_radius = feas.spectral_radius;
    sol.ill_conditioned = feas.feasible && feas.spectral_radius >= kIllConditionedRho;
    if (!feas.feasible) return sol;

    const auto act = active_users(gammas);
    const std::size_t m = act.size();
    // Augmented system [I - F | u], u_i = gamma_i * n / g_i.
    std::vector<double> a(m * (m + 1), 0.0);
    {
        const auto f = build_f(gains, gammas, act);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c)
                a[r * (m + 1) + c] = (r == c ? 1.0 : 0.0) - f[r * m + c];
            a[r * (m + 1) + m] = gammas[act[r]] * noise_linear / gains[act[r]];
        }
    }
    // Gaussian elimination with partial pivoting; K is tiny.
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(a[r * (m + 1) + col]) > std::abs(a[piv * (m + 1) + col])) piv = r;
        if (std::abs(a[piv * (m + 1) + col]) < 1e-300)
            throw NumericFailure("singular system: spectral radius at 1", {feas.spectral_radius});
        if (piv != col)
            for (std::size_t c = col; c <= m; ++c)
                std::swap(a[piv * (m + 1) + c], a[col * (m + 1) + c]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double factor = a[r * (m + 1) + col] / a[col * (m + 1) + col];
            for (std::size_t c = col; c <= m; ++c)
                a[r * (m + 1) + c] -= factor * a[col * (m + 1) + c];
        }
    }
    std::vector<double> p_act(m, 0.0);
    for (std::size_t r = m; r-- > 0;) {
        double s = a[r * (m + 1) + m];
        for (std::size_t c = r + 1; c < m; ++c) s -= a[r * (m + 1) + c] * p_act[c];
        p_act[r] = s / a[r * (m + 1) + r];
    }

    sol.feasible = true;
    sol.min_powers_w.assign(gains.size(), 0.0);
    for (std::size_t r = 0; r < m; ++r) sol.min_powers_w[act[r]] = p_act[r];
    return sol;
}

OracleSolution min_power_iterative(const std::vector<double>& gains, double noise_linear,
                                   const std::vector<double>& gammas,
                                   const std::vector<double>& start_powers, double tol,
                                   int max_iter, double divergence_factor) {
    check_inputs(gains, noise_linear, gammas);
    if (start_powers.size() != gains.size())
        throw std::invalid_argument("start_powers size mismatch");
    for (double p : start_powers)
        if (p < 0.0 || !std::isfinite(p))
            throw std::invalid_argument("start_powers must be >= 0 and finite");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    OracleSolution sol;
    sol.target_sinrs = gammas;
    {
        const auto feas = feasibility(gains, noise_linear, gammas);
        sol.spectral_radius = feas.spectral_radius;
        sol.ill_conditioned = feas.feasible && feas.spectral_radius >= kIllConditionedRho;
    }

    const std::size_t k = gains.size();
    std::vector<double> p(start_powers), next(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        if (gammas[i] == 0.0) p[i] = 0.0;

    double start_total = 0.0;
    for (double v : p) start_total += v;
    const double ceiling = divergence_factor * std::max(start_total, 1.0);

    for (int it = 1; it <= max_iter; ++it) {
        double delta = 0.0, total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            if (gammas[i] == 0.0) {
                next[i] = 0.0;
                continue;
            }
            double interference = noise_linear;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) interference += gains[j] * p[j];
            next[i] = gammas[i] * interference / gains[i];
            delta = std::max(delta, std::abs(next[i] - p[i]));
            total += next[i];
        }
        p = next;
        if (total > ceiling) {
            sol.feasible = false;
            sol.iterations = it;
            return sol;
        }
        if (delta <= tol * std::max(1.0, total)) {
            sol.feasible = true;
            sol.iterations = it;
            sol.min_powers_w = p;
            return sol;
        }
    }
    throw NumericFailure("power-control iteration exhausted max_iter", p);
}

}  // namespace arena::oracle
