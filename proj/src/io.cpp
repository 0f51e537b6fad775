#include "polya/io.hpp"

#include "polya/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace polya {

namespace {

constexpr std::string_view kZeroHeader = "n,index,alpha,f_prime,residual";

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int parse_int(std::string_view text)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        fail(ErrorKind::Io, "not an integer: '" + std::string(text) + "'");
    return v;
}

std::filesystem::path cache_file(KernelIndex n, const QuadratureSpec& q)
{
    return cache_dir() / ("zeros_n" + std::to_string(n.value()) + "_tol" + format_number(q.tol) + "_rel" +
                          format_number(q.rel_tol) + ".csv");
}

std::filesystem::path meta_file(const std::filesystem::path& table)
{
    auto p = table;
    p += ".meta";
    return p;
}

/// Cached table and the w up to which it is complete, or nothing.
std::optional<std::pair<std::vector<ZeroRecord>, double>> load_cache(KernelIndex n, const QuadratureSpec& q)
{
    const auto table = cache_file(n, q);
    std::error_code ec;
    if (!std::filesystem::exists(table, ec) || !std::filesystem::exists(meta_file(table), ec)) return std::nullopt;
    try {
        const auto meta = parse_config(read_file(meta_file(table)));
        const auto it = meta.find("wmax");
        if (it == meta.end()) return std::nullopt;
        auto zeros = parse_zero_table(read_file(table));
        for (const auto& z : zeros)
            if (z.n != n) return std::nullopt;
        return std::make_pair(std::move(zeros), parse_number(it->second));
    } catch (const Error&) {
        return std::nullopt;  // a corrupt cache is a miss
    }
}

void store_cache(KernelIndex n, const QuadratureSpec& q, std::span<const ZeroRecord> zeros, double w_max)
{
    try {
        const auto table = cache_file(n, q);
        atomic_write(table, emit_zero_table(zeros));
        atomic_write(meta_file(table), "wmax = " + format_number(w_max) + "\n");
    } catch (const Error&) {
        // an unwritable cache only costs a rescan next time
    }
}

}  // namespace

std::string format_number(double x)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) fail(ErrorKind::Io, "cannot format number");
    return {buf, ptr};
}

double parse_number(std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        fail(ErrorKind::Io, "not a number: '" + std::string(text) + "'");
    return v;
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable t;
    bool first = true;
    for (const auto& raw : split(text, '\n')) {
        if (raw.empty()) continue;
        auto cells = split(raw, ',');
        if (first) {
            t.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != t.header.size())
            fail(ErrorKind::Io, "row has " + std::to_string(cells.size()) + " fields, header has " +
                                    std::to_string(t.header.size()));
        t.rows.push_back(std::move(cells));
    }
    if (first) fail(ErrorKind::Io, "empty CSV");
    return t;
}

std::string emit_csv(const CsvTable& table)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    return out;
}

std::string emit_zero_table(std::span<const ZeroRecord> zeros)
{
    CsvTable t{split(kZeroHeader, ','), {}};
    for (const auto& z : zeros)
        t.rows.push_back({std::to_string(z.n.value()), std::to_string(z.index), format_number(z.alpha),
                          format_number(z.f_prime), format_number(z.residual)});
    return emit_csv(t);
}

std::vector<ZeroRecord> parse_zero_table(std::string_view text)
{
    const CsvTable t = parse_csv(text);
    if (t.header != split(kZeroHeader, ',')) fail(ErrorKind::Io, "zero table header mismatch");
    std::vector<ZeroRecord> out;
    for (const auto& r : t.rows) {
        ZeroRecord z;
        z.n = KernelIndex(parse_int(r[0]));
        z.index = parse_int(r[1]);
        z.alpha = parse_number(r[2]);
        z.f_prime = parse_number(r[3]);
        z.residual = parse_number(r[4]);
        if (!out.empty() && z.index != out.back().index + 1) fail(ErrorKind::Io, "zero table indices not consecutive");
        out.push_back(z);
    }
    return out;
}

std::string emit_acoeff_table(std::span<const ACoeffSample> samples)
{
    CsvTable t{{"n", "m", "w", "value", "method", "err"}, {}};
    for (const auto& s : samples)
        t.rows.push_back({std::to_string(s.n.value()), std::to_string(s.m), format_number(s.w),
                          format_number(s.value), to_string(s.method), format_number(s.err_estimate)});
    return emit_csv(t);
}

std::string emit_polylines(std::span<const FieldLine> lines)
{
    CsvTable t{{"line_id", "which", "sigma", "w"}, {}};
    for (std::size_t id = 0; id < lines.size(); ++id)
        for (const auto& p : lines[id].points)
            t.rows.push_back({std::to_string(id), to_string(lines[id].which), format_number(p.sigma), format_number(p.w)});
    return emit_csv(t);
}

std::string emit_orbit(const OrbitTrace& trace)
{
    CsvTable t{{"t", "w", "R", "I", "J"}, {}};
    for (const auto& s : trace.samples)
        t.rows.push_back({format_number(s.t), format_number(s.w), format_number(s.R), format_number(s.I),
                          format_number(s.J)});
    return emit_csv(t);
}

void atomic_write(const std::filesystem::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) fail(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            f.close();
            std::filesystem::remove(tmp, ec);
            fail(ErrorKind::Io, "write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::Io, "cannot rename onto " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::filesystem::path cache_dir()
{
    if (const char* dir = std::getenv("POLYA_CACHE_DIR"); dir && *dir) return dir;
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "polya";
    return ".polya-cache";
}

std::vector<ZeroRecord> cached_zeros(KernelIndex n, double w_max, const QuadratureSpec& q)
{
    q.validate();
    require(w_max > 0.0 && std::isfinite(w_max), "w_max must be positive");
    if (auto hit = load_cache(n, q); hit && hit->second >= w_max) {
        std::vector<ZeroRecord> out;
        for (const auto& z : hit->first)
            if (z.alpha <= w_max) out.push_back(z);
        return out;
    }
    auto zeros = scan_real_zeros(n, w_max, q);
    store_cache(n, q, zeros, w_max);
    return zeros;
}

std::vector<ZeroRecord> cached_first_zeros(KernelIndex n, int count, const QuadratureSpec& q)
{
    q.validate();
    require(count >= 0, "zero count must be nonnegative");
    if (count == 0) return {};
    if (auto hit = load_cache(n, q); hit && static_cast<int>(hit->first.size()) >= count) {
        hit->first.resize(static_cast<std::size_t>(count));
        return hit->first;
    }
    auto zeros = first_real_zeros(n, count, q);
    store_cache(n, q, zeros, zeros.back().alpha);
    return zeros;
}

std::map<std::string, std::string> parse_config(std::string_view text)
{
    std::map<std::string, std::string> out;
    int line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::InvalidArgument, "config line " + std::to_string(line_no) + " has no '='");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) fail(ErrorKind::InvalidArgument, "config line " + std::to_string(line_no) + " has no key");
        out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

}  // namespace polya
