#include "fisr/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "fisr/errors.hpp"
#include "fisr/float_bits.hpp"
#include "fisr/kernel.hpp"

namespace fisr {

namespace {

constexpr double kInvScale = 1.0 / static_cast<double>(kMantissaScale);

// t = 4 is admitted as the closing edge of the model family.
void check_t(double t) {
    if (!(t > 2.0 && t <= 4.0)) throw DomainError("model parameter t must lie in (2,4], got " + std::to_string(t));
}

void check_x(double x_tilde) {
    if (!(x_tilde >= 1.0 && x_tilde <= 4.0))
        throw DomainError("reduced argument must lie in [1,4], got " + std::to_string(x_tilde));
}

void check_k(int k) {
    if (k < 0) throw DomainError("iteration count must be non-negative");
}

}  // namespace

SeedParam SeedParam::from_magic(std::uint32_t magic) {
    if (!satisfies_seed_model(magic)) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "0x%08X", magic);
        throw DomainError(std::string("magic constant ") + buf + " violates e_R == 63, m_R < 1/2");
    }
    const FloatRepr r = decode(magic);
    return {magic, r.exponent, r.mantissa_frac};
}

double SeedParam::t(Parity parity) const noexcept {
    const double mu = parity == Parity::even ? 0.0 : 1.0;
    return 2.0 + 4.0 * mantissa_frac + 2.0 * mu * kInvScale;
}

double t_from_magic(std::uint32_t magic, Parity parity) {
    return SeedParam::from_magic(magic).t(parity);
}

std::uint32_t magic_from_t(double t) {
    if (!(t > 2.0 && t < 4.0)) throw DomainError("t must lie in (2,4), got " + std::to_string(t));
    constexpr std::uint32_t base = static_cast<std::uint32_t>(63 + kExponentBias) << kMantissaBits;
    const double scaled = 0.25 * static_cast<double>(kMantissaScale) * (t - 2.0) - 0.5;
    return base + static_cast<std::uint32_t>(std::floor(scaled + 0.5));
}

Region classify(double x_tilde, double t) {
    check_x(x_tilde);
    check_t(t);
    if (x_tilde < 2.0) return Region::I;
    if (x_tilde <= t) return Region::II;
    return Region::III;
}

double seed_branch(Region region, double x_tilde, double t) noexcept {
    switch (region) {
        case Region::I: return -0.25 * (x_tilde - 0.5 * t - 3.0);
        case Region::II: return -0.125 * (x_tilde - t - 4.0);
        case Region::III: return -0.0625 * (x_tilde - t - 8.0);
    }
    return 0.0;
}

double seed_model(double x_tilde, double t) {
    return seed_branch(classify(x_tilde, t), x_tilde, t);
}

double seed_exact(double x_tilde, double t_even, double t_odd) {
    if (!(x_tilde >= 1.0 && x_tilde < 4.0) || static_cast<double>(static_cast<float>(x_tilde)) != x_tilde)
        throw DomainError("seed_exact needs a single-precision grid point in [1,4)");
    const int region_exponent = x_tilde >= 2.0 ? 1 : 0;
    const double m = std::ldexp(x_tilde, -region_exponent) - 1.0;
    const auto mantissa = static_cast<std::uint32_t>(m * static_cast<double>(kMantissaScale));
    const double t = (mantissa & 1u) ? t_odd : t_even;
    return seed_branch(classify(x_tilde, t), x_tilde, t);
}

double approximation(double x_tilde, double t, int k) {
    check_k(k);
    double y = seed_model(x_tilde, t);
    for (int i = 0; i < k; ++i) y = 0.5 * y * (3.0 - y * y * x_tilde);
    return y;
}

double relative_error(double x_tilde, double t, int k) {
    check_k(k);
    double d = std::sqrt(x_tilde) * seed_model(x_tilde, t) - 1.0;
    for (int i = 0; i < k; ++i) d = nr_error(d);
    return d;
}

double relative_error_direct(double x_tilde, double t, int k) {
    return std::sqrt(x_tilde) * approximation(x_tilde, t, k) - 1.0;
}

double absolute_error(double x_tilde, double t, int k) {
    return relative_error(x_tilde, t, k) / std::sqrt(x_tilde);
}

double absolute_error_direct(double x_tilde, double t, int k) {
    return approximation(x_tilde, t, k) - 1.0 / std::sqrt(x_tilde);
}

namespace {

void append_boundaries(std::vector<Extremum>& out, double t, double (*err)(double, double, int)) {
    for (double x : {1.0, 2.0, t, 4.0})
        out.push_back({x, err(x, t, 0), ExtremumKind::boundary, classify(x, t)});
}

}  // namespace

std::vector<Extremum> relative_error_extrema(double t) {
    check_t(t);
    std::vector<Extremum> out;
    // delta_0 at its stationary points, in closed form
    out.push_back({(6.0 + t) / 6.0, -1.0 + 0.5 * std::pow(1.0 + t / 6.0, 1.5),
                   ExtremumKind::interior_max, Region::I});
    out.push_back({(4.0 + t) / 3.0, -1.0 + 2.0 * std::pow(3.0, -1.5) * std::pow(1.0 + t / 4.0, 1.5),
                   ExtremumKind::interior_max, Region::II});
    out.push_back({(8.0 + t) / 3.0, -0.5 + t / 8.0, ExtremumKind::interior_max, Region::III});
    append_boundaries(out, t, &relative_error);
    return out;
}

std::vector<Extremum> absolute_error_extrema(double t) {
    check_t(t);
    const double cbrt2 = std::cbrt(2.0);
    std::vector<Extremum> out;
    out.push_back({cbrt2 * cbrt2, 0.75 - 1.5 / cbrt2 + t / 8.0, ExtremumKind::interior_max, Region::I});
    out.push_back({2.0 * cbrt2, 0.5 - 0.75 * cbrt2 + t / 8.0, ExtremumKind::interior_max, Region::II});
    out.push_back({4.0, t / 16.0 - 0.25, ExtremumKind::interior_max, Region::III});
    append_boundaries(out, t, &absolute_error);
    return out;
}

double absolute_error_k1_slope(double x, double t, Region region) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double inv = 1.0 / (2.0 * x * std::sqrt(x));
    switch (region) {
        case Region::I:
            return -75.0 / 128.0 - 27.0 * t / 256.0 - 9.0 * t2 / 512.0 - t3 / 1024.0 + inv +
                   27.0 * x / 64.0 + 9.0 * t * x / 64.0 + 3.0 * t2 * x / 256.0 - 27.0 * x2 / 128.0 -
                   9.0 * t * x2 / 256.0 + x3 / 32.0;
        case Region::II:
            return -1.0 / 4.0 - 3.0 * t / 64.0 - 3.0 * t2 / 256.0 - t3 / 1024.0 + inv +
                   3.0 * x / 32.0 + 3.0 * t * x / 64.0 + 3.0 * t2 * x / 512.0 - 9.0 * x2 / 256.0 -
                   9.0 * t * x2 / 1024.0 + x3 / 256.0;
        case Region::III: break;
    }
    throw DomainError("no closed-form k=1 slope for region III");
}

}  // namespace fisr
