#pragma once

// Closed-form model of the bit-level seed on the reduced interval [1,4) and
// of the relative/absolute error after k Newton-Raphson corrections. All
// evaluation is in double precision.

#include <cstdint>
#include <vector>

namespace fisr {

/// Parity of the input mantissa integer. `smooth` selects the averaged
/// parameter used by the piecewise-linear approximation (mu = 1).
enum class Parity { even, odd, smooth };

/// Seed branches: I = [1,2), II = [2,t], III = (t,4].
enum class Region { I, II, III };

/// A magic constant R expressed through the model parameter
/// t = 2 + 4 m_R + 2 mu / N_m.
struct SeedParam {
    std::uint32_t magic = 0;
    int exponent = 0;            // e_R
    double mantissa_frac = 0.0;  // m_R

    /// Throws DomainError unless e_R == 63 and m_R < 1/2.
    [[nodiscard]] static SeedParam from_magic(std::uint32_t magic);

    [[nodiscard]] double t(Parity parity = Parity::smooth) const noexcept;
};

[[nodiscard]] double t_from_magic(std::uint32_t magic, Parity parity = Parity::smooth);

/// R = N_m (63 + 127) + round(2^21 (t - 2) - 1/2), ties rounded up.
/// Throws DomainError unless t in (2,4).
[[nodiscard]] std::uint32_t magic_from_t(double t);

[[nodiscard]] Region classify(double x_tilde, double t);

/// One branch of the piecewise-linear seed, evaluated regardless of which
/// region x_tilde belongs to.
[[nodiscard]] double seed_branch(Region region, double x_tilde, double t) noexcept;

/// Piecewise-linear seed y00(x~, t). x_tilde in [1,4], t in (2,4).
[[nodiscard]] double seed_model(double x_tilde, double t);

/// Exact seed for an x_tilde on the single-precision grid: the piecewise
/// function with t chosen by the parity of the mantissa integer of x_tilde.
/// Throws DomainError when x_tilde is not an exactly representable float in
/// [1,4).
[[nodiscard]] double seed_exact(double x_tilde, double t_even, double t_odd);

/// Relative error after one exact Newton correction, as a function of the
/// relative error before it: -d^2 (3 + d) / 2.
[[nodiscard]] constexpr double nr_error(double d) noexcept { return -0.5 * d * d * (3.0 + d); }

/// y_{0k}: k exact (real-arithmetic) Newton corrections of seed_model.
[[nodiscard]] double approximation(double x_tilde, double t, int k);

/// sqrt(x~) y_{0k} - 1, computed through the nr_error recursion.
[[nodiscard]] double relative_error(double x_tilde, double t, int k);

/// sqrt(x~) y_{0k} - 1, computed from approximation() directly.
[[nodiscard]] double relative_error_direct(double x_tilde, double t, int k);

/// y_{0k} - 1/sqrt(x~), computed as relative_error / sqrt(x~).
[[nodiscard]] double absolute_error(double x_tilde, double t, int k);

/// y_{0k} - 1/sqrt(x~), computed from approximation() directly.
[[nodiscard]] double absolute_error_direct(double x_tilde, double t, int k);

enum class ExtremumKind { interior_max, boundary };

struct Extremum {
    double location = 0.0;
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::boundary;
    Region region = Region::I;
};

/// Interior maxima of the k=0 relative error at (6+t)/6, (4+t)/3, (8+t)/3
/// followed by the region boundaries 1, 2, t, 4.
[[nodiscard]] std::vector<Extremum> relative_error_extrema(double t);

/// Interior maxima of the k=0 absolute error at 2^(2/3), 2^(4/3), 4 followed
/// by the region boundaries 1, 2, t, 4. The region-II entry is a stationary
/// point of that branch only; it lies inside [2,t] when t >= 2^(4/3).
[[nodiscard]] std::vector<Extremum> absolute_error_extrema(double t);

/// d/dx of the k=1 absolute error inside region I or II, in expanded
/// polynomial-plus-x^(-3/2) form. Roots in x locate the interior minima.
/// Throws DomainError for Region::III.
[[nodiscard]] double absolute_error_k1_slope(double x, double t, Region region);

}  // namespace fisr
