#include "fisr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

#include "fisr/errors.hpp"
#include "fisr/float_bits.hpp"
#include "fisr/kernel.hpp"
#include "fisr/model.hpp"
#include "fisr/optimizer.hpp"
#include "fisr/verifier.hpp"

namespace fisr::cli {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::uint32_t> distinct_magics(const std::vector<DerivationResult>& rows) {
    std::vector<std::uint32_t> out;
    for (const auto& r : rows)
        if (std::find(out.begin(), out.end(), r.magic) == out.end()) out.push_back(r.magic);
    return out;
}

constexpr double kSweepBelow = 0x1p-22;
constexpr double kSweepAbove = 8 * 0x1p-23;
constexpr double kCorollaryLimit = 6.0e-8;

}  // namespace

std::string format_sci(double value, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(0, significant - 1), value);
    std::string s(buf);
    const auto e = s.find('e');
    if (e == std::string::npos) return s;
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    std::string sign;
    if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
        if (exponent[0] == '-') sign = "-";
        exponent.erase(0, 1);
    }
    exponent.erase(0, std::min(exponent.find_first_not_of('0'), exponent.size() - 1));
    return mantissa + "e" + sign + exponent;
}

std::string format_hex(std::uint32_t value) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", value);
    return buf;
}

std::uint32_t parse_u32(const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an unsigned 32-bit integer: " + text);
    }
    if (used != text.size() || v > 0xFFFFFFFFull || text.find('-') != std::string::npos)
        throw std::invalid_argument("not an unsigned 32-bit integer: " + text);
    return static_cast<std::uint32_t>(v);
}

int run_derive(Format format, std::ostream& out, std::ostream& err) {
    std::vector<DerivationResult> rows;
    try {
        rows = derive_all();
    } catch (const SolverError& e) {
        err << "derive: solver failure: " << e.what() << '\n';
        return kSolver;
    }
    switch (format) {
        case Format::table: {
            char line[200];
            std::snprintf(line, sizeof line, "%-9s %2s  %-14s %-25s %s\n", "objective", "k", "t", "R",
                          "max_error");
            out << line;
            for (const auto& r : rows) {
                const std::string magic = format_hex(r.magic) + " (" + std::to_string(r.magic) + ")";
                std::snprintf(line, sizeof line, "%-9s %2d  %-14s %-25s %s\n", std::string(to_string(r.objective)).c_str(),
                              r.k, fixed(r.t_opt, 10).c_str(), magic.c_str(), format_sci(r.predicted_max_error).c_str());
                out << line;
            }
            break;
        }
        case Format::csv:
            out << "objective,k,t,R_hex,R,predicted_max_error,balance_residual\n";
            for (const auto& r : rows)
                out << to_string(r.objective) << ',' << r.k << ',' << full(r.t_opt) << ',' << format_hex(r.magic)
                    << ',' << r.magic << ',' << full(r.predicted_max_error) << ',' << full(r.balance_residual)
                    << '\n';
            break;
        case Format::json_lines:
            for (const auto& r : rows) {
                nlohmann::ordered_json j;
                j["objective"] = to_string(r.objective);
                j["k"] = r.k;
                j["t"] = r.t_opt;
                j["R_hex"] = format_hex(r.magic);
                j["R"] = r.magic;
                j["predicted_max_error"] = r.predicted_max_error;
                j["balance_residual"] = r.balance_residual;
                out << j.dump() << '\n';
            }
            break;
    }
    return kOk;
}

int run_eval(const std::string& x_text, std::uint32_t magic, unsigned iterations, std::ostream& out,
             std::ostream& err) {
    float x = 0.0f;
    try {
        if (x_text.rfind("0x", 0) == 0 || x_text.rfind("0X", 0) == 0) {
            x = std::bit_cast<float>(parse_u32(x_text));
        } else {
            std::size_t used = 0;
            x = std::stof(x_text, &used);
            if (used != x_text.size()) throw std::invalid_argument(x_text);
        }
    } catch (const std::out_of_range&) {
        err << "eval: outside supported domain: " << x_text << '\n';
        return kUsage;
    } catch (const std::exception&) {
        err << "eval: cannot parse --x " << x_text << '\n';
        return kUsage;
    }
    try {
        const auto cfg = KernelConfig::relaxed(magic, iterations);
        const float y = invsqrt(x, cfg);
        const double reference = 1.0 / std::sqrt(static_cast<double>(x));
        const double rel = static_cast<double>(y) / reference - 1.0;
        out << "x          " << short_g(x) << " (" << format_hex(std::bit_cast<std::uint32_t>(x)) << ")\n";
        out << "R          " << format_hex(magic) << " (" << magic << ")";
        if (!cfg.within_model()) out << "  [outside e_R == 63, m_R < 1/2]";
        out << '\n';
        out << "iterations " << iterations << '\n';
        out << "result     " << short_g(y) << " (" << format_hex(std::bit_cast<std::uint32_t>(y)) << ")\n";
        out << "reference  " << full(reference) << '\n';
        out << "rel_error  " << format_sci(rel) << '\n';
    } catch (const DomainError& e) {
        err << "eval: " << e.what() << '\n';
        return kUsage;
    } catch (const RangeError& e) {
        err << "eval: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

int run_verify(Level level, std::uint64_t seed, std::optional<std::uint32_t> extra_magic, std::ostream& out,
               std::ostream& err) {
    std::vector<DerivationResult> rows;
    try {
        rows = derive_all();
    } catch (const SolverError& e) {
        err << "verify: solver failure: " << e.what() << '\n';
        return kSolver;
    }
    std::vector<std::uint32_t> magics = distinct_magics(rows);
    if (extra_magic) magics.push_back(*extra_magic);

    bool ok = true;
    const bool exhaustive = level == Level::exhaustive;
    out << "seed model bit check (" << (exhaustive ? "exhaustive, 2^24 inputs" : "stratified, 2^16 inputs")
        << ")\n";
    for (std::uint32_t magic : magics) {
        Theorem1Report rep;
        try {
            rep = exhaustive ? verify_theorem1(magic) : verify_theorem1_sampled(magic, 1u << 16, seed);
        } catch (const DomainError& e) {
            out << "  " << format_hex(magic) << "  FAIL  " << e.what() << '\n';
            ok = false;
            continue;
        }
        const bool pass = rep.mismatches == 0 && rep.corollary_gap <= kCorollaryLimit;
        ok = ok && pass;
        out << "  " << format_hex(magic) << "  " << (pass ? "ok  " : "FAIL") << "  checked " << rep.checked
            << "  mismatches " << rep.mismatches << "  corollary_gap " << format_sci(rep.corollary_gap) << '\n';
        for (auto b : rep.first_mismatches) out << "    mismatch at x bits " << format_hex(b) << '\n';
    }

    const std::uint64_t trials = exhaustive ? 100000 : 10000;
    out << "power-of-four scaling (" << trials << " trials, seed " << seed << ")\n";
    for (std::uint32_t magic : magics) {
        if (!satisfies_seed_model(magic)) continue;
        for (unsigned k = 0; k <= 2; ++k) {
            const ScalingReport rep = verify_scaling(magic, k, trials, seed);
            const bool pass = rep.violations == 0;
            ok = ok && pass;
            out << "  " << format_hex(magic) << " k=" << k << "  " << (pass ? "ok  " : "FAIL") << "  checked "
                << rep.checked << "  violations " << rep.violations << "  skipped " << rep.skipped << '\n';
            for (const auto& [bits, n] : rep.first_violations)
                out << "    violation at x bits " << format_hex(bits) << " n " << n << '\n';
        }
    }

    if (exhaustive) {
        out << "error sweeps over [1,4) (predicted vs measured)\n";
        for (const auto& r : rows) {
            SweepSpec spec;
            spec.magic = r.magic;
            spec.iterations = static_cast<unsigned>(r.k);
            spec.kind = r.objective == Objective::relative ? ErrorKind::relative : ErrorKind::absolute;
            const ErrorReport rep = sweep(spec);
            const double measured = r.objective == Objective::relative ? rep.max_relative : rep.max_absolute;
            const bool pass = measured >= r.predicted_max_error - kSweepBelow &&
                              measured <= r.predicted_max_error + kSweepAbove;
            ok = ok && pass;
            out << "  " << to_string(r.objective) << " k=" << r.k << "  " << format_hex(r.magic) << "  predicted "
                << format_sci(r.predicted_max_error, 8) << "  measured " << format_sci(measured, 8) << "  "
                << (pass ? "ok" : "FAIL") << '\n';
        }
    }
    out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
    return ok ? kOk : kVerification;
}

int run_sweep(std::uint32_t magic, unsigned iterations, std::optional<std::uint64_t> samples, bool full_range,
              std::uint64_t seed, const std::string& out_path, std::ostream& out, std::ostream& err) {
    SweepSpec spec;
    spec.magic = magic;
    spec.iterations = iterations;
    if (samples) {
        if (full_range)
            spec.domain = FullRangeRandom{*samples, seed};
        else
            spec.domain = UnitIntervalRandom{*samples, seed};
    } else if (full_range) {
        err << "sweep: --full-range needs --samples\n";
        return kUsage;
    }
    if (!satisfies_seed_model(magic)) {
        err << "sweep: magic constant " << format_hex(magic) << " is outside e_R == 63, m_R < 1/2\n";
        return kUsage;
    }
    ErrorReport rep;
    try {
        rep = out_path.empty() ? sweep(spec) : emit_cloud(spec, out_path);
    } catch (const std::runtime_error& e) {
        err << "sweep: " << e.what() << '\n';
        return kUsage;
    }
    out << "R             " << format_hex(magic) << " (" << magic << ")\n";
    out << "iterations    " << iterations << '\n';
    out << "samples       " << rep.samples << '\n';
    if (rep.rng_seed) out << "seed          " << *rep.rng_seed << '\n';
    out << "max |rel|     " << format_sci(rep.max_relative, 9) << "  at "
        << format_hex(rep.argmax_relative) << '\n';
    out << "max |abs|     " << format_sci(rep.max_absolute, 9) << "  at "
        << format_hex(rep.argmax_absolute) << '\n';
    if (!out_path.empty()) out << "cloud         " << out_path << '\n';
    return kOk;
}

int run_bench(unsigned reps, std::uint64_t samples, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    if (reps < 1 || samples < 1) {
        err << "bench: --reps and --samples must be at least 1\n";
        return kUsage;
    }
    const std::vector<float> inputs = domain_inputs(FullRangeRandom{samples, seed});
    std::vector<float> outputs(inputs.size());
    std::uint64_t checksum = 0xcbf29ce484222325ull;
    auto fold = [&checksum](const std::vector<float>& v) {
        for (float f : v) {
            auto b = std::bit_cast<std::uint32_t>(f);
            for (int i = 0; i < 4; ++i) {
                checksum ^= (b >> (8 * i)) & 0xFFu;
                checksum *= 0x100000001b3ull;
            }
        }
    };
    using clock = std::chrono::steady_clock;
    auto time_ns = [&](auto&& fn) {
        double best = 1e300;
        for (unsigned r = 0; r < reps; ++r) {
            const auto start = clock::now();
            for (std::size_t i = 0; i < inputs.size(); ++i) outputs[i] = fn(inputs[i]);
            const auto stop = clock::now();
            best = std::min(best, std::chrono::duration<double, std::nano>(stop - start).count() /
                                      static_cast<double>(inputs.size()));
        }
        fold(outputs);
        return best;
    };

    struct Row {
        std::string name;
        double ns;
    };
    std::vector<Row> rows;
    for (unsigned k = 0; k <= 2; ++k) {
        const double ns = time_ns([k](float x) { return invsqrt_unchecked(x, kClassicMagic, k); });
        rows.push_back({"invsqrt k=" + std::to_string(k), ns});
    }
    rows.push_back({"1/std::sqrt", time_ns([](float x) { return 1.0f / std::sqrt(x); })});

    char line[160];
    out << "workload      " << samples << " full-range inputs, seed " << seed << ", best of " << reps << '\n';
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-13s %10.3f ns/op\n", r.name.c_str(), r.ns);
        out << line;
    }
    out << "checksum      " << "0x";
    std::snprintf(line, sizeof line, "%016llX\n", static_cast<unsigned long long>(checksum));
    out << line;
    const double ratio = rows[2].ns > 0.0 ? rows[3].ns / rows[2].ns : 0.0;
    std::snprintf(line, sizeof line, "ratio         %.3f  (1/std::sqrt over invsqrt k=2; hardware-dependent, informational)\n",
                  ratio);
    out << line;
    return kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fast inverse square root: magic-constant derivation and verification"};
    app.require_subcommand(1);

    auto* derive = app.add_subcommand("derive", "Derive the optimal magic constants");
    std::string format = "table";
    derive->add_option("--format", format, "table | csv | json-lines")
        ->check(CLI::IsMember({"table", "csv", "json-lines"}));

    auto* eval = app.add_subcommand("eval", "Evaluate the kernel at one input");
    std::string x_text;
    std::string magic_text = format_hex(kClassicMagic);
    unsigned iters = 2;
    eval->add_option("--x", x_text, "decimal value or 0x float bit pattern")->required();
    eval->add_option("--r", magic_text, "magic constant (hex)");
    eval->add_option("--iters", iters, "Newton-Raphson iterations");

    auto* sweep_cmd = app.add_subcommand("sweep", "Error sweep, optionally writing a CSV cloud");
    std::string sweep_magic = format_hex(kClassicMagic);
    unsigned sweep_iters = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    std::string out_path;
    bool full_range = false;
    sweep_cmd->add_option("--r", sweep_magic, "magic constant (hex)");
    sweep_cmd->add_option("--iters", sweep_iters, "Newton-Raphson iterations");
    auto* samples_opt = sweep_cmd->add_option("--samples", samples, "random inputs (default: all of [1,4))");
    sweep_cmd->add_option("--seed", seed, "RNG seed");
    sweep_cmd->add_option("--out", out_path, "CSV output path");
    sweep_cmd->add_flag("--full-range", full_range, "draw inputs from [2^-126, 2^128) instead of [1,4)");

    auto* verify = app.add_subcommand("verify", "Check the model against the kernel");
    std::string level = "quick";
    std::uint64_t verify_seed = 1;
    std::string inject;
    verify->add_option("--level", level, "quick | exhaustive")->check(CLI::IsMember({"quick", "exhaustive"}));
    verify->add_option("--seed", verify_seed, "RNG seed");
    verify->add_option("--inject-magic", inject, "")->group("");

    auto* bench = app.add_subcommand("bench", "Time the kernel against 1/std::sqrt (informational)");
    unsigned reps = 5;
    std::uint64_t bench_samples = 1u << 16;
    std::uint64_t bench_seed = 1;
    bench->add_option("--reps", reps, "repetitions (best is reported)");
    bench->add_option("--samples", bench_samples, "workload size");
    bench->add_option("--seed", bench_seed, "workload RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*derive) {
            const Format f = format == "csv" ? Format::csv : format == "json-lines" ? Format::json_lines : Format::table;
            return run_derive(f, out, err);
        }
        if (*eval) return run_eval(x_text, parse_u32(magic_text), iters, out, err);
        if (*sweep_cmd) {
            std::optional<std::uint64_t> n;
            if (samples_opt->count() > 0) n = samples;
            return run_sweep(parse_u32(sweep_magic), sweep_iters, n, full_range, seed, out_path, out, err);
        }
        if (*verify) {
            std::optional<std::uint32_t> extra;
            if (!inject.empty()) extra = parse_u32(inject);
            return run_verify(level == "exhaustive" ? Level::exhaustive : Level::quick, verify_seed, extra, out, err);
        }
        if (*bench) return run_bench(reps, bench_samples, bench_seed, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace fisr::cli
