#include "fisr/float_bits.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fisr/errors.hpp"

namespace fisr {

namespace {

constexpr std::uint32_t kExponentMask = 0x7F800000u;
constexpr std::uint32_t kSignMask = 0x80000000u;

[[noreturn]] void reject(std::uint32_t bits) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", bits);
    throw DomainError(std::string("outside supported domain: bit pattern ") + buf +
                      " is not a positive normal float");
}

}  // namespace

double FloatRepr::value() const {
    return std::ldexp(1.0 + mantissa_frac, exponent);
}

bool is_positive_normal(std::uint32_t bits) noexcept {
    const std::uint32_t e = (bits & kExponentMask) >> kMantissaBits;
    return (bits & kSignMask) == 0 && e >= 1 && e <= 254;
}

bool is_positive_normal(float x) noexcept {
    return is_positive_normal(std::bit_cast<std::uint32_t>(x));
}

FloatRepr decode(std::uint32_t bits) {
    if (!is_positive_normal(bits)) reject(bits);
    FloatRepr r;
    r.bits = bits;
    r.sign = 0;
    r.biased_exponent = static_cast<int>(bits >> kMantissaBits);
    r.exponent = r.biased_exponent - kExponentBias;
    r.mantissa_int = bits & kMantissaMask;
    r.mantissa_frac = std::ldexp(static_cast<double>(r.mantissa_int), -kMantissaBits);
    return r;
}

FloatRepr decode(float x) { return decode(std::bit_cast<std::uint32_t>(x)); }

FloatRepr make_repr(int exponent, std::uint32_t mantissa_int) {
    if (exponent < 1 - kExponentBias || exponent > 254 - kExponentBias)
        throw DomainError("outside supported domain: exponent " + std::to_string(exponent));
    if (mantissa_int > kMantissaMask)
        throw DomainError("outside supported domain: mantissa " + std::to_string(mantissa_int));
    const auto biased = static_cast<std::uint32_t>(exponent + kExponentBias);
    return decode((biased << kMantissaBits) | mantissa_int);
}

std::uint32_t encode(const FloatRepr& repr) {
    if (repr.sign != 0) throw DomainError("outside supported domain: negative sign");
    if (repr.biased_exponent < 1 || repr.biased_exponent > 254)
        throw DomainError("outside supported domain: biased exponent " +
                          std::to_string(repr.biased_exponent));
    if (repr.exponent != repr.biased_exponent - kExponentBias)
        throw DomainError("inconsistent exponent fields");
    if (repr.mantissa_int > kMantissaMask)
        throw DomainError("outside supported domain: mantissa " +
                          std::to_string(repr.mantissa_int));
    if (repr.mantissa_frac != std::ldexp(static_cast<double>(repr.mantissa_int), -kMantissaBits))
        throw DomainError("inconsistent mantissa fields");
    return (static_cast<std::uint32_t>(repr.biased_exponent) << kMantissaBits) | repr.mantissa_int;
}

NormalizedInput normalize(float x) {
    const FloatRepr r = decode(x);
    // floor division: e = 2n + region_exponent
    const int region = r.exponent & 1;
    const int n = (r.exponent - region) / 2;
    return {std::ldexp(1.0 + r.mantissa_frac, region), n, region};
}

double denormalize(double y_tilde, int n) {
    const double y = std::ldexp(y_tilde, -n);
    const double lo = static_cast<double>(std::numeric_limits<float>::min());
    const double hi = static_cast<double>(std::numeric_limits<float>::max());
    if (!(std::fabs(y) >= lo && std::fabs(y) <= hi))
        throw RangeError("denormalize: result outside single-precision normal range");
    return y;
}

}  // namespace fisr
