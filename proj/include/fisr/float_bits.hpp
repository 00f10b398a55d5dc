#pragma once

#include <cstdint>

namespace fisr {

inline constexpr int kMantissaBits = 23;
inline constexpr std::uint32_t kMantissaScale = std::uint32_t{1} << kMantissaBits;  // N_m
inline constexpr int kExponentBias = 127;
inline constexpr std::uint32_t kMantissaMask = kMantissaScale - 1;

/// Bit-level decomposition of a positive normal float:
///   value = (1 + mantissa_frac) * 2^exponent
///   bits  = sign * 2^31 + biased_exponent * 2^23 + mantissa_int
struct FloatRepr {
    std::uint32_t bits = 0;
    int sign = 0;
    int biased_exponent = 0;
    int exponent = 0;
    std::uint32_t mantissa_int = 0;
    double mantissa_frac = 0.0;

    [[nodiscard]] double value() const;

    friend bool operator==(const FloatRepr&, const FloatRepr&) = default;
};

/// x = x_tilde * 2^(2n), x_tilde in [1,4).
struct NormalizedInput {
    double x_tilde = 1.0;
    int n = 0;
    int region_exponent = 0;  // 0 for [1,2), 1 for [2,4)

    friend bool operator==(const NormalizedInput&, const NormalizedInput&) = default;
};

[[nodiscard]] bool is_positive_normal(std::uint32_t bits) noexcept;
[[nodiscard]] bool is_positive_normal(float x) noexcept;

/// Throws DomainError for zero, subnormals, infinities, NaN and negatives.
[[nodiscard]] FloatRepr decode(std::uint32_t bits);
[[nodiscard]] FloatRepr decode(float x);

/// Builds a positive repr from the unbiased exponent and integer mantissa.
[[nodiscard]] FloatRepr make_repr(int exponent, std::uint32_t mantissa_int);

/// Exact inverse of decode. Throws DomainError on inconsistent or
/// out-of-range fields.
[[nodiscard]] std::uint32_t encode(const FloatRepr& repr);

[[nodiscard]] NormalizedInput normalize(float x);

/// Returns y_tilde * 2^-n. Throws RangeError when the result is outside the
/// single-precision normal range.
[[nodiscard]] double denormalize(double y_tilde, int n);

}  // namespace fisr
