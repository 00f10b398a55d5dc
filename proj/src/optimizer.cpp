#include "fisr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fisr/errors.hpp"
#include "fisr/model.hpp"

namespace fisr {

namespace {

constexpr double kOuterLo = 3.0;
constexpr double kOuterHi = 3.99;
// Below 3*2^(5/3) - 6 ~ 3.524 delta_0 has no positive part in region I, so
// Delta_k has no interior region-I minimum to balance against.
constexpr double kAbsoluteOuterLo = 3.6;
constexpr int kScanCells = 64;
constexpr double kSlopeStep = 1e-7;

double slope(double x, double t, int k) {
    if (k == 1) return absolute_error_k1_slope(x, t, Region::I);
    return (absolute_error(x + kSlopeStep, t, k) - absolute_error(x - kSlopeStep, t, k)) /
           (2.0 * kSlopeStep);
}

}  // namespace

double bisect(const RootProblem& problem) {
    if (!problem.residual) throw SolverError("bisect: empty residual");
    double lo = problem.lo;
    double hi = problem.hi;
    if (!(lo < hi)) throw SolverError("bisect: empty bracket");
    double f_lo = problem.residual(lo);
    const double f_hi = problem.residual(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::isnan(f_lo) || std::isnan(f_hi) || (f_lo < 0.0) == (f_hi < 0.0))
        throw SolverError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    for (int it = 0; it < problem.max_iterations; ++it) {
        if (hi - lo <= problem.tolerance) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        const double f_mid = problem.residual(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    throw SolverError("bisect: iteration limit reached");
}

std::string_view to_string(Objective objective) noexcept {
    return objective == Objective::relative ? "relative" : "absolute";
}

double relative_k0_split() { return std::pow(2.0, 4.0 / 3.0) + std::pow(2.0, 5.0 / 3.0) - 2.0; }

double relative_k0_balance(double t) {
    return -1.0 + 2.0 * std::pow(3.0, -1.5) * std::pow(1.0 + t / 4.0, 1.5) - (1.0 - 0.5 * std::sqrt(t));
}

double relative_k0_balance_region1(double t) {
    return -1.0 + 0.5 * std::pow(1.0 + t / 6.0, 1.5) - (1.0 - 0.5 * std::sqrt(t));
}

double relative_balance(double t, int k) {
    return relative_error(t, t, k) - relative_error((4.0 + t) / 3.0, t, k);
}

double absolute_k0_balance(double t) {
    return (0.75 - 1.5 / std::cbrt(2.0) + t / 8.0) - (0.5 - t / 8.0);
}

double absolute_region1_minimizer(double t, int k) {
    if (k < 1) throw DomainError("region-I minimiser is defined for k >= 1");
    double best_x = std::numeric_limits<double>::quiet_NaN();
    double best_value = std::numeric_limits<double>::infinity();
    const double h = 1.0 / kScanCells;
    double x_prev = 1.0 + h;
    double s_prev = slope(x_prev, t, k);
    for (int i = 2; i < kScanCells; ++i) {
        const double x = 1.0 + i * h;
        const double s = slope(x, t, k);
        if (s_prev < 0.0 && s > 0.0) {
            const double root = bisect({[&](double xx) { return slope(xx, t, k); }, x_prev, x, 1e-12});
            const double value = absolute_error(root, t, k);
            if (value < best_value) {
                best_value = value;
                best_x = root;
            }
        }
        x_prev = x;
        s_prev = s;
    }
    if (std::isnan(best_x))
        throw SolverError("no interior minimum of the absolute error in [1,2) at t=" + std::to_string(t));
    return best_x;
}

double absolute_balance(double t, int k) {
    const double x = absolute_region1_minimizer(t, k);
    return absolute_error(x, t, k) - absolute_error(1.0, t, k);
}

DerivationResult solve_relative_k0() {
    const double t = bisect({relative_k0_balance, relative_k0_split(), kOuterHi});
    return {Objective::relative, 0, t, magic_from_t(t), 1.0 - 0.5 * std::sqrt(t), relative_k0_balance(t)};
}

DerivationResult solve_relative_k1() {
    const double t = bisect({[](double tt) { return relative_balance(tt, 1); }, kOuterLo, kOuterHi});
    return {Objective::relative, 1, t, magic_from_t(t), std::fabs(relative_error(t, t, 1)),
            relative_balance(t, 1)};
}

DerivationResult solve_absolute_k0() {
    const double t = -1.0 + 3.0 * std::pow(2.0, 2.0 / 3.0);
    return {Objective::absolute, 0, t, magic_from_t(t), 0.625 - 0.75 / std::cbrt(2.0), absolute_k0_balance(t)};
}

namespace {

DerivationResult solve_absolute(int k) {
    const double t = bisect({[k](double tt) { return absolute_balance(tt, k); }, kAbsoluteOuterLo, kOuterHi});
    return {Objective::absolute, k, t, magic_from_t(t), std::fabs(absolute_error(1.0, t, k)),
            absolute_balance(t, k)};
}

}  // namespace

DerivationResult solve_absolute_k1() { return solve_absolute(1); }
DerivationResult solve_absolute_k2() { return solve_absolute(2); }

RelativeK0Candidates relative_k0_candidates() {
    const double split = relative_k0_split();
    RelativeK0Candidates c;
    c.t_region1 = bisect({relative_k0_balance_region1, 2.0 + 1e-9, kOuterHi});
    c.region1_valid = c.t_region1 < split;
    c.max_error_region1 = grid_max_error(Objective::relative, 0, c.t_region1);
    c.t_region2 = bisect({relative_k0_balance, 2.0 + 1e-9, kOuterHi});
    c.region2_valid = c.t_region2 >= split;
    c.max_error_region2 = grid_max_error(Objective::relative, 0, c.t_region2);
    return c;
}

RelativeK2Check verify_relative_k2_matches_k1() {
    RelativeK2Check r;
    r.t_k1 = solve_relative_k1().t_opt;
    r.t_k2 = bisect({[](double tt) { return relative_balance(tt, 2); }, kOuterLo, kOuterHi});
    r.gap = std::fabs(r.t_k2 - r.t_k1);
    r.residual_k1 = relative_balance(r.t_k1, 1);
    r.residual_k2 = relative_balance(r.t_k2, 2);
    r.minima_decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 60; ++i) {
        const double t = 3.70 + 0.001 * i;
        const double v = relative_error((4.0 + t) / 3.0, t, 2);
        if (!(v < prev)) r.minima_decreasing = false;
        prev = v;
    }
    return r;
}

std::vector<DerivationResult> derive_all() {
    std::vector<DerivationResult> rows;
    rows.push_back(solve_relative_k0());
    const DerivationResult k1 = solve_relative_k1();
    rows.push_back(k1);
    rows.push_back({Objective::relative, 2, k1.t_opt, k1.magic, std::fabs(relative_error(k1.t_opt, k1.t_opt, 2)),
                    relative_balance(k1.t_opt, 2)});
    rows.push_back(solve_absolute_k0());
    rows.push_back(solve_absolute_k1());
    rows.push_back(solve_absolute_k2());
    return rows;
}

double grid_max_error(Objective objective, int k, double t, int points_per_region) {
    if (points_per_region < 1) throw DomainError("grid needs at least one point per region");
    auto err = [&](double x) {
        return std::fabs(objective == Objective::relative ? relative_error(x, t, k) : absolute_error(x, t, k));
    };
    const double n = points_per_region;
    double worst = 0.0;
    for (int i = 0; i < points_per_region; ++i) worst = std::max(worst, err(1.0 + i / n));
    for (int i = 0; i <= points_per_region; ++i) worst = std::max(worst, err(2.0 + (t - 2.0) * (i / n)));
    for (int i = 1; i <= points_per_region; ++i)
        worst = std::max(worst, err(std::min(4.0, t + (4.0 - t) * (i / n))));
    return worst;
}

}  // namespace fisr
