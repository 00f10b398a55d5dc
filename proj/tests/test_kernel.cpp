#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "fisr/errors.hpp"
#include "fisr/kernel.hpp"

using namespace fisr;

namespace {

std::uint32_t bits_of(float f) { return std::bit_cast<std::uint32_t>(f); }

// Literal transliteration of the classic C routine (memcpy instead of
// pointer casts).
float classic_listing(float x) {
    float halfnumber = 0.5f * x;
    std::int32_t i;
    std::memcpy(&i, &x, sizeof i);
    i = 0x5f3759df - (i >> 1);
    std::memcpy(&x, &i, sizeof x);
    x = x * (1.5f - halfnumber * x * x);
    x = x * (1.5f - halfnumber * x * x);
    return x;
}

std::uint32_t random_valid_magic(std::mt19937_64& rng) {
    return (190u << 23) | static_cast<std::uint32_t>(rng() % (1u << 22));
}

float random_normal(std::mt19937_64& rng) {
    const auto biased = static_cast<std::uint32_t>(1 + rng() % 254);
    return std::bit_cast<float>((biased << 23) | static_cast<std::uint32_t>(rng() & 0x7FFFFFu));
}

}  // namespace

TEST_CASE("seed model preconditions") {
    CHECK(satisfies_seed_model(0x5F3759DFu));
    CHECK(satisfies_seed_model(0x5F000000u));
    CHECK(satisfies_seed_model(0x5F3FFFFFu));
    CHECK_FALSE(satisfies_seed_model(0x5F400000u));  // m_R = 1/2
    CHECK_FALSE(satisfies_seed_model(0x5E800000u));  // e_R = 62
    CHECK_FALSE(satisfies_seed_model(0xDF3759DFu));
    CHECK_THROWS_AS(KernelConfig(0x5F400000u, 1), DomainError);
    const auto relaxed = KernelConfig::relaxed(0x5F400000u, 1);
    CHECK_FALSE(relaxed.within_model());
    CHECK(KernelConfig(0x5F3759DFu, 2).within_model());
}

TEST_CASE("seed_bits: integer oracle") {
    CHECK(bits_of(seed_bits(1.0f, 0x5F3759DFu)) == 0x5F3759DFu - (0x3F800000u >> 1));
    CHECK(bits_of(seed_bits(1.0f, 0x5F3759DFu)) == 0x3F7759DFu);
    CHECK(seed_bits(1.0f, 0x5F3759DFu) == doctest::Approx(0.96621507).epsilon(1e-8));
    CHECK(bits_of(seed_bits(1.0f, 0x5F37642Fu)) == 0x3F77642Fu);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const std::uint32_t magic = random_valid_magic(rng);
        CHECK(seed_bits(4.0f, magic) == 0.5f * seed_bits(1.0f, magic));
    }
    CHECK_THROWS_AS((void)seed_bits(-1.0f, kClassicMagic), DomainError);
    CHECK_THROWS_AS((void)seed_bits(0.0f, kClassicMagic), DomainError);
    CHECK_THROWS_AS((void)seed_bits(1.0f, 0x00000010u), RangeError);
}

TEST_CASE("newton_step") {
    CHECK(newton_step(1.0f, 0.5f) == 1.0f);
    CHECK(newton_step(0.5f, 2.0f) == 0.5f);
    // Oracle: same expression, each step forced through a float variable.
    volatile float y = std::bit_cast<float>(0x3F7759DFu);
    volatile float h = 0.5f;
    volatile float a = h * y;
    volatile float b = a * y;
    volatile float c = 1.5f - b;
    volatile float expected = y * c;
    CHECK(bits_of(newton_step(y, h)) == bits_of(expected));
    CHECK(bits_of(newton_step(y, h)) == 0x3F7F910Fu);
    CHECK(newton_step(y, h) == doctest::Approx(0.99830717).epsilon(1e-8));
}

TEST_CASE("invsqrt examples") {
    const float one = invsqrt(1.0f, KernelConfig(kClassicMagic, 2));
    CHECK(std::fabs(one - 1.0) < 4.75e-6);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const KernelConfig cfg(random_valid_magic(rng), static_cast<unsigned>(rng() % 4));
        CHECK(invsqrt(0.25f, cfg) == 2.0f * invsqrt(1.0f, cfg));
    }

    const float y3 = invsqrt(3.0f, KernelConfig(0x5F375A86u, 1));
    const double rel = y3 * std::sqrt(3.0) - 1.0;
    CHECK(rel <= 0.0);
    CHECK(rel >= -1.7512e-3);
}

TEST_CASE("classic constant matches the literal listing on 1000 pinned inputs") {
    std::mt19937_64 rng(20240601);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    const KernelConfig cfg(kClassicMagic, 2);
    for (int i = 0; i < 1000; ++i) {
        const float x = random_normal(rng);
        const float golden = classic_listing(x);
        const float got = invsqrt(x, cfg);
        REQUIRE(bits_of(got) == bits_of(golden));
        hash = (hash ^ bits_of(golden)) * 0x100000001b3ull;
    }
    // Pins the golden vector itself.
    CHECK(hash == 0xC93B0C99CBFB2E2Dull);
}

TEST_CASE("power-of-four equivariance") {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 100000) {
        const KernelConfig cfg(random_valid_magic(rng), static_cast<unsigned>(rng() % 3));
        const float x = random_normal(rng);
        const int n = static_cast<int>(rng() % 127) - 63;
        const int e = std::ilogb(x);
        if (e < -125 || e + 2 * n < -125 || e + 2 * n > 127) continue;
        const float lhs = invsqrt(std::ldexp(x, 2 * n), cfg);
        const float rhs = std::ldexp(invsqrt(x, cfg), -n);
        REQUIRE(bits_of(lhs) == bits_of(rhs));
        ++checked;
    }
}

TEST_CASE("Newton-corrected results never exceed the true value beyond round-off") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200000; ++i) {
        const std::uint32_t magic = random_valid_magic(rng);
        const unsigned k = 1 + static_cast<unsigned>(rng() % 2);
        const float x = random_normal(rng);
        const double bound = (1.0 / std::sqrt(static_cast<double>(x))) * (1.0 + 4.0 * 0x1p-23);
        REQUIRE(static_cast<double>(invsqrt(x, KernelConfig(magic, k))) <= bound);
    }
}
