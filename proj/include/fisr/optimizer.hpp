#pragma once

// Minimax-optimal model parameter t (and magic constant R) for the relative
// and absolute error after k = 0, 1, 2 Newton-Raphson corrections. Each
// optimum is the root of a balance equation between the two competing
// extremal errors; roots are found by bisection.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace fisr {

struct RootProblem {
    std::function<double(double)> residual;
    double lo = 0.0;
    double hi = 0.0;
    double tolerance = 1e-12;
    int max_iterations = 200;
};

/// Throws SolverError when residual(lo) and residual(hi) share a sign or the
/// bracket does not shrink below tolerance within max_iterations.
[[nodiscard]] double bisect(const RootProblem& problem);

enum class Objective { relative, absolute };

[[nodiscard]] std::string_view to_string(Objective objective) noexcept;

struct DerivationResult {
    Objective objective = Objective::relative;
    int k = 0;
    double t_opt = 0.0;
    std::uint32_t magic = 0;
    double predicted_max_error = 0.0;
    double balance_residual = 0.0;

    friend bool operator==(const DerivationResult&, const DerivationResult&) = default;
};

// Balance residuals. Each vanishes at the corresponding optimum.

/// k=0 relative, upper branch: interior max in region II against |delta_0(t,t)|.
[[nodiscard]] double relative_k0_balance(double t);
/// k=0 relative, lower branch: interior max in region I against |delta_0(t,t)|.
[[nodiscard]] double relative_k0_balance_region1(double t);
/// k>=1 relative: delta_k(t,t) - delta_k((4+t)/3, t).
[[nodiscard]] double relative_balance(double t, int k);
/// k=0 absolute: interior max at 2^(2/3) against |Delta_0(1,t)|.
[[nodiscard]] double absolute_k0_balance(double t);
/// k>=1 absolute: Delta_k(x*, t) - Delta_k(1, t), x* the region-I minimiser.
[[nodiscard]] double absolute_balance(double t, int k);

/// Location of the lowest interior minimum of Delta_k(., t) in [1,2).
/// k=1 uses the closed-form slope; k>=2 a central difference (step 1e-7).
[[nodiscard]] double absolute_region1_minimizer(double t, int k);

/// Inner boundary of the k=0 relative case split: 2^(4/3) + 2^(5/3) - 2.
[[nodiscard]] double relative_k0_split();

[[nodiscard]] DerivationResult solve_relative_k0();
[[nodiscard]] DerivationResult solve_relative_k1();
[[nodiscard]] DerivationResult solve_absolute_k0();
[[nodiscard]] DerivationResult solve_absolute_k1();
[[nodiscard]] DerivationResult solve_absolute_k2();

/// Both k=0 relative balance candidates. Each branch is only meaningful when
/// its root falls inside the t-range where that branch dominates.
struct RelativeK0Candidates {
    double t_region1 = 0.0;
    bool region1_valid = false;
    double max_error_region1 = 0.0;
    double t_region2 = 0.0;
    bool region2_valid = false;
    double max_error_region2 = 0.0;
};

[[nodiscard]] RelativeK0Candidates relative_k0_candidates();

/// Independent solve of the k=2 relative balance, compared with k=1.
struct RelativeK2Check {
    double t_k1 = 0.0;
    double t_k2 = 0.0;
    double gap = 0.0;
    double residual_k1 = 0.0;
    double residual_k2 = 0.0;
    /// delta_2 at the region-II interior max of delta_0 decreases strictly
    /// across samples of t in [3.70, 3.76].
    bool minima_decreasing = false;
};

[[nodiscard]] RelativeK2Check verify_relative_k2_matches_k1();

/// Rows: (relative, 0), (relative, 1), (relative, 2), (absolute, 0..2).
/// The relative k=2 row reuses t from k=1.
[[nodiscard]] std::vector<DerivationResult> derive_all();

/// max |error| of the model over a uniform grid of points_per_region points
/// in each of [1,2), [2,t] and (t,4], endpoints included.
[[nodiscard]] double grid_max_error(Objective objective, int k, double t, int points_per_region = 4096);

}  // namespace fisr
