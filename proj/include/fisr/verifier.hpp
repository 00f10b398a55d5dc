#pragma once

// Empirical checks of the bit-level kernel: error sweeps against a
// double-precision reference, exhaustive comparison of the seed with the
// closed-form model, power-of-four scaling, and CSV error clouds.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "fisr/kernel.hpp"

namespace fisr {

/// Every float in [1,4): bit patterns 0x3F800000 .. 0x407FFFFF.
struct UnitIntervalExhaustive {};
/// count uniformly drawn bit patterns in [1,4).
struct UnitIntervalRandom {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};
/// count positive normal floats with uniformly drawn exponent and mantissa,
/// i.e. x in [2^-126, 2^128).
struct FullRangeRandom {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};
using SweepDomain = std::variant<UnitIntervalExhaustive, UnitIntervalRandom, FullRangeRandom>;

enum class ErrorKind { relative, absolute, both };

struct SweepSpec {
    std::uint32_t magic = kClassicMagic;
    unsigned iterations = 0;
    SweepDomain domain = UnitIntervalExhaustive{};
    ErrorKind kind = ErrorKind::both;
    bool keep_cloud = false;
};

struct PointError {
    double x_tilde = 0.0;
    double relative = 0.0;  // y / (1/sqrt(x)) - 1
    double absolute = 0.0;  // y~ - 1/sqrt(x~), on the reduced scale
};

struct CloudPoint {
    float x = 0.0f;
    PointError error;
};

struct ErrorReport {
    double max_relative = 0.0;
    std::uint32_t argmax_relative = 0;
    double max_absolute = 0.0;
    std::uint32_t argmax_absolute = 0;
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> rng_seed;
    std::vector<CloudPoint> cloud;
    std::optional<double> predicted;
};

/// Worker count for sweeps: FISR_THREADS if set and positive, otherwise the
/// hardware concurrency.
[[nodiscard]] unsigned sweep_threads();

/// Error of the unchecked kernel at one positive normal input.
[[nodiscard]] PointError measure(float x, std::uint32_t magic, unsigned iterations);

/// The inputs a domain enumerates, in sweep order. Deterministic in the seed.
[[nodiscard]] std::vector<float> domain_inputs(const SweepDomain& domain);

[[nodiscard]] ErrorReport sweep(const SweepSpec& spec);

struct Theorem1Report {
    std::uint32_t magic = 0;
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::uint32_t> first_mismatches;  // at most 10 input bit patterns
    double corollary_gap = 0.0;                   // max |y00(x~, t_smooth) - seed|
    std::uint32_t corollary_argmax = 0;
};

/// Compares the bit-level seed with the parity-exact closed form for every
/// float in [1,4). Throws DomainError when the magic constant violates
/// e_R == 63, m_R < 1/2.
[[nodiscard]] Theorem1Report verify_theorem1(std::uint32_t magic);

/// Same check on `samples` inputs: [1,4) is split into equal strata and one
/// input is drawn per stratum.
[[nodiscard]] Theorem1Report verify_theorem1_sampled(std::uint32_t magic, std::uint32_t samples,
                                                     std::uint64_t seed);

enum class ScalingOutcome { match, violation, skipped };

/// invsqrt(2^(2n) x) == 2^-n invsqrt(x) bit for bit. Pairs where x or 2^(2n) x
/// falls below 2^-125 (half_x would be subnormal) or overflows are skipped.
[[nodiscard]] ScalingOutcome check_scaling(float x, int n, const KernelConfig& cfg);

struct ScalingReport {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::uint64_t skipped = 0;
    std::vector<std::pair<std::uint32_t, int>> first_violations;
};

/// Random (x, n) pairs with n drawn from the range that keeps both inputs
/// inside the safe range.
[[nodiscard]] ScalingReport verify_scaling(std::uint32_t magic, unsigned iterations, std::uint64_t trials,
                                           std::uint64_t seed);

inline constexpr const char* kCloudHeader = "x,x_tilde,error_relative,error_absolute,R,iterations";

void write_cloud_csv(std::ostream& out, const SweepSpec& spec, const ErrorReport& report);

/// Sweeps with keep_cloud and writes the CSV to path. Throws
/// std::runtime_error on I/O failure.
ErrorReport emit_cloud(SweepSpec spec, const std::filesystem::path& path);

}  // namespace fisr
