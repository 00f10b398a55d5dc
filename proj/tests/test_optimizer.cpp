#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "fisr/errors.hpp"
#include "fisr/model.hpp"
#include "fisr/optimizer.hpp"

using namespace fisr;

namespace {

constexpr double kNm = 8388608.0;

// Oracle values: 50-digit bisection of the same balance conditions in
// mpmath, rounded to 16 digits.
constexpr double kOracleT[] = {3.730979559837773, 3.729800339160571, 3.729800339160571,
                               3.762203155904598, 3.746991382774207, 3.739969862489387};
constexpr double kOracleErr[] = {3.421281331783905e-2, 1.751183671220213e-3, 4.597281246854131e-6,
                                 2.972460551192520e-2, 1.484496794507628e-3, 3.683998344006816e-6};

// Independent brute force: Newton-corrected piecewise seed written from the
// three-branch slope/intercept form, max |error| on a dense grid that
// includes the branch junctions, minimised over t by ternary search.
double oracle_seed(double x, double t) {
    if (x < 2.0) return -x / 4.0 + 0.75 + t / 8.0;
    if (x <= t) return -x / 8.0 + 0.5 + t / 8.0;
    return -x / 16.0 + 0.5 + t / 16.0;
}

double oracle_max_error(bool relative, int k, double t) {
    constexpr int n = 20000;
    double worst = 0.0;
    auto visit = [&](double x) {
        double y = oracle_seed(x, t);
        for (int i = 0; i < k; ++i) y = y * (3.0 - y * y * x) / 2.0;
        const double e = relative ? std::sqrt(x) * y - 1.0 : y - 1.0 / std::sqrt(x);
        worst = std::max(worst, std::fabs(e));
    };
    for (int i = 0; i <= n; ++i) visit(1.0 + static_cast<double>(i) / n);
    for (int i = 0; i <= n; ++i) visit(2.0 + (t - 2.0) * i / n);
    for (int i = 0; i <= n; ++i) visit(std::min(4.0, t + (4.0 - t) * i / n));
    return worst;
}

double oracle_t(bool relative, int k) {
    double lo = 3.65, hi = 3.85;
    for (int it = 0; it < 80; ++it) {
        const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
        if (oracle_max_error(relative, k, a) < oracle_max_error(relative, k, b))
            hi = b;
        else
            lo = a;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("bisect") {
    CHECK(bisect({[](double x) { return x - 1.0; }, 0.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bisect({[](double x) { return x * x - 2.0; }, 1.0, 2.0}) == doctest::Approx(1.4142135623).epsilon(1e-10));
    CHECK(bisect({relative_k0_balance, 3.5, 3.8}) == doctest::Approx(3.7309796).epsilon(1e-7));
    const double r = bisect({[](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12});
    CHECK(std::fabs(r - std::sqrt(2.0)) <= 1e-12);
    CHECK_THROWS_AS((void)bisect({[](double x) { return x * x + 1.0; }, -1.0, 1.0}), SolverError);
    CHECK_THROWS_AS((void)bisect({[](double x) { return x; }, 1.0, 1.0}), SolverError);
    CHECK_THROWS_AS((void)bisect({[](double x) { return x - 0.3; }, 0.0, 1.0, 0.0, 5}), SolverError);
}

TEST_CASE("relative k=0") {
    const auto r = solve_relative_k0();
    CHECK(std::fabs(r.t_opt - 3.7309796) <= 1e-6);
    CHECK(r.magic == 1597465647u);
    CHECK(r.magic == 0x5F37642Fu);
    CHECK(std::fabs(r.predicted_max_error - 0.03421281) <= 1e-7);
    CHECK(std::fabs(r.balance_residual) <= 1e-10);
}

TEST_CASE("relative k=1 and the k=2 claim") {
    const auto r = solve_relative_k1();
    CHECK(std::fabs(r.t_opt - 3.7298003) <= 1e-6);
    CHECK(r.magic == 1597463174u);
    CHECK(std::fabs(r.predicted_max_error - 1.75118e-3) <= 1e-7);
    CHECK(std::fabs(r.balance_residual) <= 1e-10);
    CHECK(std::fabs(std::fabs(relative_error(r.t_opt, r.t_opt, 2)) - 4.60e-6) <= 5e-8);

    const auto check = verify_relative_k2_matches_k1();
    CHECK(check.gap < 1e-9);
    CHECK(std::fabs(check.residual_k1) < 1e-10);
    CHECK(std::fabs(check.residual_k2) < 1e-10);
    CHECK(check.minima_decreasing);
}

TEST_CASE("relative k=0 candidate branches") {
    const auto c = relative_k0_candidates();
    CHECK(c.region2_valid);
    CHECK_FALSE(c.region1_valid);
    CHECK(c.t_region1 == doctest::Approx(3.736190342176).epsilon(1e-10));
    CHECK(c.t_region1 > relative_k0_split());
    CHECK(c.t_region2 == doctest::Approx(kOracleT[0]).epsilon(1e-12));
    CHECK(relative_k0_split() == doctest::Approx(3.694644203726145).epsilon(1e-14));
}

TEST_CASE("absolute k=0 closed form") {
    const auto r = solve_absolute_k0();
    CHECK(std::fabs(r.t_opt - (-1.0 + 3.0 * std::pow(2.0, 2.0 / 3.0))) <= 1e-12);
    CHECK(r.t_opt == doctest::Approx(3.7622031559).epsilon(1e-10));
    CHECK(r.magic == 1597531127u);
    CHECK(std::fabs(r.predicted_max_error - 0.0297246) <= 1e-7);
    const double lhs = 0.75 - 3.0 / (2.0 * std::cbrt(2.0)) + r.t_opt / 8.0;
    const double rhs = 0.5 - r.t_opt / 8.0;
    CHECK(std::fabs(lhs - rhs) <= 1e-15);
    CHECK(std::fabs(rhs - (0.625 - 0.75 / std::cbrt(2.0))) <= 1e-15);
    CHECK(std::fabs(r.balance_residual) <= 1e-15);
}

TEST_CASE("absolute k=1") {
    const auto r = solve_absolute_k1();
    CHECK(std::fabs(r.t_opt - 3.74699138) <= 1e-6);
    CHECK(r.magic == 1597499226u);
    CHECK(std::fabs(r.predicted_max_error - 0.001484497) <= 1e-8);
    CHECK(std::fabs(r.balance_residual) <= 1e-10);
    const double x_star = absolute_region1_minimizer(r.t_opt, 1);
    CHECK(x_star == doctest::Approx(1.6060838335948).epsilon(1e-9));
    CHECK(std::fabs(absolute_error_k1_slope(x_star, r.t_opt, Region::I)) <= 1e-10);
}

TEST_CASE("absolute k=2") {
    const auto r = solve_absolute_k2();
    CHECK(r.magic == 1597484501u);
    CHECK(std::fabs(r.t_opt - 3.73996986) <= 1e-6);
    CHECK(std::fabs(r.predicted_max_error - 3.684e-6) <= 1e-8);
    CHECK(std::fabs(r.balance_residual) <= 1e-10);
    CHECK(absolute_region1_minimizer(r.t_opt, 2) == doctest::Approx(1.6144222913700).epsilon(1e-7));
    CHECK_THROWS_AS((void)absolute_region1_minimizer(3.0, 1), SolverError);
    CHECK_THROWS_AS((void)absolute_region1_minimizer(3.7, 0), DomainError);
}

TEST_CASE("derived table") {
    const auto rows = derive_all();
    REQUIRE(rows.size() == 6);
    CHECK(rows == derive_all());
    std::set<std::uint32_t> magics;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        CAPTURE(i);
        magics.insert(r.magic);
        CHECK(r.t_opt > 2.0);
        CHECK(r.t_opt < 4.0);
        CHECK(std::fabs(r.balance_residual) <= 1e-10);
        CHECK(r.magic == magic_from_t(r.t_opt));
        CHECK(std::fabs(t_from_magic(r.magic) - r.t_opt) <= 4.0 / kNm);
        CHECK(r.t_opt == doctest::Approx(kOracleT[i]).epsilon(1e-12));
        CHECK(r.predicted_max_error == doctest::Approx(kOracleErr[i]).epsilon(1e-9));
        // the rounding step is nowhere near a tie
        const double scaled = 0.25 * kNm * (r.t_opt - 2.0) - 0.5;
        CHECK(std::fabs((scaled - std::floor(scaled)) - 0.5) > 1e-3);
    }
    CHECK(magics == std::set<std::uint32_t>{0x5F37642Fu, 0x5F375A86u, 0x5F3863F7u, 0x5F37E75Au, 0x5F37ADD5u});
    CHECK(rows[1].t_opt == rows[2].t_opt);
}

TEST_CASE("optima are minimax on a dense grid") {
    for (const auto& r : derive_all()) {
        CAPTURE(r.k);
        CAPTURE(to_string(r.objective));
        const double at = grid_max_error(r.objective, r.k, r.t_opt);
        CHECK(grid_max_error(r.objective, r.k, r.t_opt - 1e-3) > at);
        CHECK(grid_max_error(r.objective, r.k, r.t_opt + 1e-3) > at);
        CHECK(at == doctest::Approx(r.predicted_max_error).epsilon(1e-6));
    }
}

TEST_CASE("brute-force minimax search agrees with the balance solutions") {
    const auto rows = derive_all();
    for (const auto& r : rows) {
        CAPTURE(r.k);
        CAPTURE(to_string(r.objective));
        const double t = oracle_t(r.objective == Objective::relative, r.k);
        CHECK(std::fabs(t - r.t_opt) <= 1e-6);
    }
}
