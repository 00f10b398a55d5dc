#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace fisr::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSolver = 2, kVerification = 3 };

enum class Format { table, csv, json_lines };

int run_derive(Format format, std::ostream& out, std::ostream& err);

/// x_text is a decimal literal or a 0x-prefixed float bit pattern.
int run_eval(const std::string& x_text, std::uint32_t magic, unsigned iterations, std::ostream& out,
             std::ostream& err);

enum class Level { quick, exhaustive };

/// extra_magic is checked alongside the derived constants (test hook).
int run_verify(Level level, std::uint64_t seed, std::optional<std::uint32_t> extra_magic, std::ostream& out,
               std::ostream& err);

int run_sweep(std::uint32_t magic, unsigned iterations, std::optional<std::uint64_t> samples, bool full_range,
              std::uint64_t seed, const std::string& out_path, std::ostream& out, std::ostream& err);

int run_bench(unsigned reps, std::uint64_t samples, std::uint64_t seed, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to one of the run_* commands.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "1.75118e-3": six significant digits, exponent without padding.
std::string format_sci(double value, int significant = 6);

std::string format_hex(std::uint32_t value);

/// Accepts 0x-prefixed hex or decimal. Throws std::invalid_argument.
std::uint32_t parse_u32(const std::string& text);

}  // namespace fisr::cli
