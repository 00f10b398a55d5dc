#include "fisr/kernel.hpp"

#include <cstdio>
#include <string>

#include "fisr/errors.hpp"
#include "fisr/float_bits.hpp"

namespace fisr {

bool satisfies_seed_model(std::uint32_t magic) noexcept {
    if (!is_positive_normal(magic)) return false;
    const int exponent = static_cast<int>(magic >> kMantissaBits) - kExponentBias;
    const std::uint32_t mantissa = magic & kMantissaMask;
    return exponent == 63 && mantissa < kMantissaScale / 2;
}

KernelConfig::KernelConfig(std::uint32_t magic, unsigned iterations)
    : magic_(magic), iterations_(iterations) {
    if (!satisfies_seed_model(magic)) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "0x%08X", magic);
        throw DomainError(std::string("magic constant ") + buf +
                          " violates e_R == 63, m_R < 1/2");
    }
}

KernelConfig KernelConfig::relaxed(std::uint32_t magic, unsigned iterations) noexcept {
    KernelConfig cfg;
    cfg.magic_ = magic;
    cfg.iterations_ = iterations;
    return cfg;
}

float seed_bits(float x, std::uint32_t magic) {
    (void)decode(x);
    const float y = seed_unchecked(x, magic);
    if (!is_positive_normal(y)) throw RangeError("seed out of range");
    return y;
}

float invsqrt(float x, const KernelConfig& cfg) {
    const float half_x = 0.5f * x;
    float y = seed_bits(x, cfg.magic());
    for (unsigned k = 0; k < cfg.iterations(); ++k) y = newton_step(y, half_x);
    return y;
}

}  // namespace fisr
