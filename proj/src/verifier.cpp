#include "fisr/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "fisr/errors.hpp"
#include "fisr/float_bits.hpp"
#include "fisr/model.hpp"

namespace fisr {

namespace {

constexpr std::uint32_t kUnitLo = 0x3F800000u;  // 1.0f
constexpr std::uint32_t kUnitHi = 0x40800000u;  // 4.0f
constexpr std::uint64_t kUnitCount = kUnitHi - kUnitLo;
constexpr std::size_t kMaxRecorded = 10;

/// Splits [0, count) into one contiguous chunk per worker and runs
/// fn(begin, end) -> Partial on each; partials come back in chunk order.
template <typename Partial, typename Fn>
std::vector<Partial> parallel_chunks(std::uint64_t count, Fn fn) {
    const std::uint64_t workers = std::clamp<std::uint64_t>(sweep_threads(), 1, std::max<std::uint64_t>(count, 1));
    std::vector<Partial> partials(workers);
    const std::uint64_t step = (count + workers - 1) / workers;
    if (workers == 1) {
        partials[0] = fn(std::uint64_t{0}, count);
        return partials;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(count, w * step);
        const std::uint64_t end = std::min(count, begin + step);
        pool.emplace_back([&partials, &fn, w, begin, end] { partials[w] = fn(begin, end); });
    }
    for (auto& th : pool) th.join();
    return partials;
}

float unit_input(std::uint64_t i) { return std::bit_cast<float>(static_cast<std::uint32_t>(kUnitLo + i)); }

std::uint64_t domain_size(const SweepDomain& domain) {
    return std::visit(
        [](const auto& d) -> std::uint64_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, UnitIntervalExhaustive>)
                return kUnitCount;
            else
                return d.count;
        },
        domain);
}

std::optional<std::uint64_t> domain_seed(const SweepDomain& domain) {
    return std::visit(
        [](const auto& d) -> std::optional<std::uint64_t> {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, UnitIntervalExhaustive>)
                return std::nullopt;
            else
                return d.seed;
        },
        domain);
}

std::string hex32(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", v);
    return buf;
}

}  // namespace

unsigned sweep_threads() {
    if (const char* env = std::getenv("FISR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

PointError measure(float x, std::uint32_t magic, unsigned iterations) {
    const float y = invsqrt_unchecked(x, magic, iterations);
    const double xd = x;
    const double reference = 1.0 / std::sqrt(xd);
    const NormalizedInput reduced = normalize(x);
    const double y_tilde = std::ldexp(static_cast<double>(y), reduced.n);
    return {reduced.x_tilde, static_cast<double>(y) / reference - 1.0,
            y_tilde - 1.0 / std::sqrt(reduced.x_tilde)};
}

std::vector<float> domain_inputs(const SweepDomain& domain) {
    std::vector<float> xs;
    std::visit(
        [&xs](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, UnitIntervalExhaustive>) {
                xs.reserve(kUnitCount);
                for (std::uint64_t i = 0; i < kUnitCount; ++i) xs.push_back(unit_input(i));
            } else {
                std::mt19937_64 rng(d.seed);
                xs.reserve(d.count);
                for (std::uint64_t i = 0; i < d.count; ++i) {
                    std::uint32_t bits;
                    if constexpr (std::is_same_v<D, UnitIntervalRandom>) {
                        bits = kUnitLo + static_cast<std::uint32_t>(rng() % kUnitCount);
                    } else {
                        const auto biased = static_cast<std::uint32_t>(1 + rng() % 254);
                        const auto mantissa = static_cast<std::uint32_t>(rng() & kMantissaMask);
                        bits = (biased << kMantissaBits) | mantissa;
                    }
                    xs.push_back(std::bit_cast<float>(bits));
                }
            }
        },
        domain);
    return xs;
}

ErrorReport sweep(const SweepSpec& spec) {
    const std::uint64_t count = domain_size(spec.domain);
    const bool exhaustive = std::holds_alternative<UnitIntervalExhaustive>(spec.domain);
    std::vector<float> inputs;
    if (!exhaustive) inputs = domain_inputs(spec.domain);
    const bool want_rel = spec.kind != ErrorKind::absolute;
    const bool want_abs = spec.kind != ErrorKind::relative;

    auto partials = parallel_chunks<ErrorReport>(count, [&](std::uint64_t begin, std::uint64_t end) {
        ErrorReport part;
        if (spec.keep_cloud) part.cloud.reserve(end - begin);
        for (std::uint64_t i = begin; i < end; ++i) {
            const float x = exhaustive ? unit_input(i) : inputs[i];
            const PointError e = measure(x, spec.magic, spec.iterations);
            const auto bits = std::bit_cast<std::uint32_t>(x);
            if (want_rel && std::fabs(e.relative) > part.max_relative) {
                part.max_relative = std::fabs(e.relative);
                part.argmax_relative = bits;
            }
            if (want_abs && std::fabs(e.absolute) > part.max_absolute) {
                part.max_absolute = std::fabs(e.absolute);
                part.argmax_absolute = bits;
            }
            if (spec.keep_cloud) part.cloud.push_back({x, e});
        }
        part.samples = end - begin;
        return part;
    });

    ErrorReport report;
    report.rng_seed = domain_seed(spec.domain);
    for (auto& part : partials) {
        if (part.max_relative > report.max_relative) {
            report.max_relative = part.max_relative;
            report.argmax_relative = part.argmax_relative;
        }
        if (part.max_absolute > report.max_absolute) {
            report.max_absolute = part.max_absolute;
            report.argmax_absolute = part.argmax_absolute;
        }
        report.samples += part.samples;
        if (spec.keep_cloud) report.cloud.insert(report.cloud.end(), part.cloud.begin(), part.cloud.end());
    }
    return report;
}

namespace {

template <typename IndexFn>
Theorem1Report theorem1_over(std::uint32_t magic, std::uint64_t count, IndexFn index_of) {
    const SeedParam param = SeedParam::from_magic(magic);
    const double t_even = param.t(Parity::even);
    const double t_odd = param.t(Parity::odd);
    const double t_smooth = param.t(Parity::smooth);

    auto partials = parallel_chunks<Theorem1Report>(count, [&](std::uint64_t begin, std::uint64_t end) {
        Theorem1Report part;
        for (std::uint64_t i = begin; i < end; ++i) {
            const float x = unit_input(index_of(i));
            const double x_tilde = x;
            const double seed = seed_unchecked(x, magic);
            const double exact = seed_exact(x_tilde, t_even, t_odd);
            // The exact model is a dyadic rational with few significant bits;
            // rounding it to float must give the kernel's seed exactly.
            if (static_cast<float>(exact) != static_cast<float>(seed) || exact != seed) {
                ++part.mismatches;
                if (part.first_mismatches.size() < kMaxRecorded)
                    part.first_mismatches.push_back(std::bit_cast<std::uint32_t>(x));
            }
            const double gap = std::fabs(seed_model(x_tilde, t_smooth) - seed);
            if (gap > part.corollary_gap) {
                part.corollary_gap = gap;
                part.corollary_argmax = std::bit_cast<std::uint32_t>(x);
            }
            ++part.checked;
        }
        return part;
    });

    Theorem1Report report;
    report.magic = magic;
    for (const auto& part : partials) {
        report.checked += part.checked;
        report.mismatches += part.mismatches;
        for (auto b : part.first_mismatches)
            if (report.first_mismatches.size() < kMaxRecorded) report.first_mismatches.push_back(b);
        if (part.corollary_gap > report.corollary_gap) {
            report.corollary_gap = part.corollary_gap;
            report.corollary_argmax = part.corollary_argmax;
        }
    }
    return report;
}

}  // namespace

Theorem1Report verify_theorem1(std::uint32_t magic) {
    return theorem1_over(magic, kUnitCount, [](std::uint64_t i) { return i; });
}

Theorem1Report verify_theorem1_sampled(std::uint32_t magic, std::uint32_t samples, std::uint64_t seed) {
    if (samples == 0 || samples > kUnitCount) throw DomainError("sample count must lie in [1, 2^24]");
    const std::uint64_t stratum = kUnitCount / samples;
    std::vector<std::uint64_t> offsets(samples);
    std::mt19937_64 rng(seed);
    for (auto& o : offsets) o = rng() % stratum;
    return theorem1_over(magic, samples, [&](std::uint64_t i) { return i * stratum + offsets[i]; });
}

namespace {

constexpr int kSafeMinExponent = -125;
constexpr int kSafeMaxExponent = 127;

}  // namespace

ScalingOutcome check_scaling(float x, int n, const KernelConfig& cfg) {
    if (!is_positive_normal(x)) return ScalingOutcome::skipped;
    const int e = decode(x).exponent;
    if (e < kSafeMinExponent || e + 2 * n < kSafeMinExponent || e + 2 * n > kSafeMaxExponent)
        return ScalingOutcome::skipped;
    const float scaled = std::ldexp(x, 2 * n);
    const float lhs = invsqrt(scaled, cfg);
    const float rhs = std::ldexp(invsqrt(x, cfg), -n);
    return std::bit_cast<std::uint32_t>(lhs) == std::bit_cast<std::uint32_t>(rhs) ? ScalingOutcome::match
                                                                                  : ScalingOutcome::violation;
}

ScalingReport verify_scaling(std::uint32_t magic, unsigned iterations, std::uint64_t trials, std::uint64_t seed) {
    const KernelConfig cfg(magic, iterations);
    ScalingReport report;
    report.seed = seed;
    report.trials = trials;
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < trials; ++i) {
        const int exponent = kSafeMinExponent + static_cast<int>(rng() % (kSafeMaxExponent - kSafeMinExponent + 1));
        const auto mantissa = static_cast<std::uint32_t>(rng() & kMantissaMask);
        const float x = std::bit_cast<float>(make_repr(exponent, mantissa).bits);
        // n with kSafeMinExponent <= exponent + 2n <= kSafeMaxExponent
        const int n_lo = -((exponent - kSafeMinExponent) / 2);
        const int n_hi = (kSafeMaxExponent - exponent) / 2;
        const int n = n_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(n_hi - n_lo + 1));
        switch (check_scaling(x, n, cfg)) {
            case ScalingOutcome::match: ++report.checked; break;
            case ScalingOutcome::skipped: ++report.skipped; break;
            case ScalingOutcome::violation:
                ++report.checked;
                ++report.violations;
                if (report.first_violations.size() < kMaxRecorded)
                    report.first_violations.emplace_back(std::bit_cast<std::uint32_t>(x), n);
                break;
        }
    }
    return report;
}

void write_cloud_csv(std::ostream& out, const SweepSpec& spec, const ErrorReport& report) {
    out << kCloudHeader << '\n';
    const std::string magic = hex32(spec.magic);
    char line[160];
    for (const auto& p : report.cloud) {
        std::snprintf(line, sizeof line, "%.9g,%.9g,%.17g,%.17g,%s,%u\n", static_cast<double>(p.x), p.error.x_tilde,
                      p.error.relative, p.error.absolute, magic.c_str(), spec.iterations);
        out << line;
    }
}

ErrorReport emit_cloud(SweepSpec spec, const std::filesystem::path& path) {
    spec.keep_cloud = true;
    ErrorReport report = sweep(spec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_cloud_csv(out, spec, report);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
    return report;
}

}  // namespace fisr
