#pragma once

#include "polya/field_tracer.hpp"
#include "polya/lsq_expansion.hpp"
#include "polya/orbit.hpp"
#include "polya/zero_finder.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polya {

/// Shortest decimal that parses back to the same double (at most 17
/// significant digits).
std::string format_number(double x);
double parse_number(std::string_view text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated, no quoting, '\n' line ends. Throws Io on ragged rows.
CsvTable parse_csv(std::string_view text);
std::string emit_csv(const CsvTable& table);

std::string emit_zero_table(std::span<const ZeroRecord> zeros);
std::vector<ZeroRecord> parse_zero_table(std::string_view text);

std::string emit_acoeff_table(std::span<const ACoeffSample> samples);
std::string emit_polylines(std::span<const FieldLine> lines);
std::string emit_orbit(const OrbitTrace& trace);

/// Writes to a sibling temporary and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// $POLYA_CACHE_DIR, else $HOME/.cache/polya, else ./.polya-cache.
std::filesystem::path cache_dir();

/// Zeros on (0, w_max] from the on-disk cache keyed by (n, tol), rescanning
/// and rewriting the cache when it does not reach w_max.
std::vector<ZeroRecord> cached_zeros(KernelIndex n, double w_max, const QuadratureSpec& q = {});

/// The first `count` zeros, through the same cache.
std::vector<ZeroRecord> cached_first_zeros(KernelIndex n, int count, const QuadratureSpec& q = {});

/// `key = value` per line; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config(std::string_view text);

}  // namespace polya
