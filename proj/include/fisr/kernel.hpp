#pragma once

#include <bit>
#include <cstdint>

namespace fisr {

inline constexpr std::uint32_t kClassicMagic = 0x5F3759DFu;

/// e_R == 63 and m_R < 1/2: the conditions under which the bit-level seed
/// follows the three-branch piecewise-linear model exactly.
[[nodiscard]] bool satisfies_seed_model(std::uint32_t magic) noexcept;

/// Magic constant plus Newton-Raphson iteration count.
class KernelConfig {
public:
    /// Throws DomainError unless satisfies_seed_model(magic).
    KernelConfig(std::uint32_t magic, unsigned iterations);

    /// Accepts any magic constant. within_model() reports whether the
    /// result is still covered by the seed model.
    [[nodiscard]] static KernelConfig relaxed(std::uint32_t magic, unsigned iterations) noexcept;

    [[nodiscard]] std::uint32_t magic() const noexcept { return magic_; }
    [[nodiscard]] unsigned iterations() const noexcept { return iterations_; }
    [[nodiscard]] bool within_model() const noexcept { return satisfies_seed_model(magic_); }

    friend bool operator==(const KernelConfig&, const KernelConfig&) = default;

private:
    KernelConfig() = default;
    std::uint32_t magic_ = kClassicMagic;
    unsigned iterations_ = 0;
};

/// Lines 3-5 of the classic routine. No domain checks.
[[nodiscard]] inline float seed_unchecked(float x, std::uint32_t magic) noexcept {
    const std::uint32_t i = magic - (std::bit_cast<std::uint32_t>(x) >> 1);
    return std::bit_cast<float>(i);
}

/// y * (1.5f - half_x * y * y), evaluated left to right in float.
[[nodiscard]] inline float newton_step(float y, float half_x) noexcept {
    const float hy = half_x * y;
    const float hyy = hy * y;
    const float corr = 1.5f - hyy;
    return y * corr;
}

[[nodiscard]] inline float invsqrt_unchecked(float x, std::uint32_t magic, unsigned iterations) noexcept {
    const float half_x = 0.5f * x;
    float y = seed_unchecked(x, magic);
    for (unsigned k = 0; k < iterations; ++k) y = newton_step(y, half_x);
    return y;
}

/// Throws DomainError for non-positive-normal x and RangeError when the seed
/// bit pattern is not a positive normal float.
[[nodiscard]] float seed_bits(float x, std::uint32_t magic);

/// Checked kernel: seed_bits followed by cfg.iterations() Newton steps.
[[nodiscard]] float invsqrt(float x, const KernelConfig& cfg);

}  // namespace fisr
