#include "polya/error.hpp"
#include "polya/io.hpp"
#include "polya/svg.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>

using namespace polya;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("polya_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("number format round-trips")
{
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng) / 4) * std::pow(10.0, expo(rng) / 10);
        const std::string s = format_number(x);
        CHECK(parse_number(s) == x);
        CHECK(format_number(parse_number(s)) == s);
    }
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(3.0) == "3");
    CHECK(parse_number(format_number(std::numeric_limits<double>::denorm_min())) ==
          std::numeric_limits<double>::denorm_min());
    CHECK_THROWS_AS(parse_number("1.5x"), Error);
    CHECK_THROWS_AS(parse_number(""), Error);
}

TEST_CASE("CSV emit-parse-emit is byte identical")
{
    const std::string text = "a,b,c\n1,2.5,x\n-3,1e-300,y\n";
    CHECK(emit_csv(parse_csv(text)) == text);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), Error);
    CHECK_THROWS_AS(parse_csv(""), Error);
}

TEST_CASE("zero table round-trip")
{
    std::vector<ZeroRecord> zeros(3);
    for (int i = 0; i < 3; ++i) {
        zeros[i].n = KernelIndex(2);
        zeros[i].index = i + 1;
        zeros[i].alpha = std::acos(-1.0) * (i + 1) / 3.0;
        zeros[i].f_prime = -1.0 / (i + 7.0);
        zeros[i].residual = 2.5e-13 * (i + 1);
    }
    const std::string text = emit_zero_table(zeros);
    CHECK(text.rfind("n,index,alpha,f_prime,residual\n", 0) == 0);
    const auto back = parse_zero_table(text);
    REQUIRE(back.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(back[i].alpha == zeros[i].alpha);
        CHECK(back[i].f_prime == zeros[i].f_prime);
        CHECK(back[i].residual == zeros[i].residual);
    }
    CHECK(emit_zero_table(back) == text);
    CHECK(parse_zero_table(emit_zero_table({})).empty());
    CHECK_THROWS_AS(parse_zero_table("n,index,alpha\n"), Error);
}

TEST_CASE("other CSV headers")
{
    ACoeffSample a;
    a.n = KernelIndex(2);
    a.m = 1;
    a.w = 0.5;
    a.value = 4.2;
    a.err_estimate = 1e-13;
    const ACoeffSample rows[] = {a};
    CHECK(emit_acoeff_table(rows) == "n,m,w,value,method,err\n2,1,0.5,4.2,leibniz,1e-13\n");

    const FieldLine l{FieldKind::I_line, {PlanePoint(1.0, 0.5)}, 0.0};
    const FieldLine lines[] = {l};
    CHECK(emit_polylines(lines) == "line_id,which,sigma,w\n0,I,0.5,1\n");

    OrbitTrace t;
    t.samples.push_back({0.5, 1.0, 2.0, -3.0, 4.0, 0.0, 0.0});
    CHECK(emit_orbit(t) == "t,w,R,I,J\n0.5,1,2,-3,4\n");
}

TEST_CASE("config parsing")
{
    const auto c = parse_config("# header\nn = 2\n  tol=1e-10   # trailing\n\nwindow = 0:30,0:8\n");
    CHECK(c.size() == 3);
    CHECK(c.at("n") == "2");
    CHECK(c.at("tol") == "1e-10");
    CHECK(c.at("window") == "0:30,0:8");
    CHECK_THROWS_AS(parse_config("novalue\n"), Error);
    CHECK_THROWS_AS(parse_config(" = 3\n"), Error);
}

TEST_CASE("atomic write replaces the file and leaves no temporary")
{
    const fs::path dir = scratch("atomic");
    atomic_write(dir / "sub" / "f.txt", "one");
    atomic_write(dir / "sub" / "f.txt", "two");
    CHECK(read_file(dir / "sub" / "f.txt") == "two");
    CHECK(std::distance(fs::directory_iterator(dir / "sub"), fs::directory_iterator()) == 1);
    CHECK_THROWS_AS(read_file(dir / "missing"), Error);
}

TEST_CASE("zero cache: cold and warm runs agree bit for bit")
{
    const fs::path dir = scratch("cache");
    ::setenv("POLYA_CACHE_DIR", dir.c_str(), 1);
    CHECK(cache_dir() == dir);
    const auto cold = cached_zeros(KernelIndex(2), 13.0);
    const auto warm = cached_zeros(KernelIndex(2), 13.0);
    const auto fresh = scan_real_zeros(KernelIndex(2), 13.0);
    REQUIRE(cold.size() == 4);
    REQUIRE(warm.size() == cold.size());
    for (std::size_t i = 0; i < cold.size(); ++i) {
        CHECK(warm[i].alpha == cold[i].alpha);
        CHECK(fresh[i].alpha == cold[i].alpha);
    }
    CHECK(cached_zeros(KernelIndex(2), 7.0).size() == 2);
    CHECK(cached_first_zeros(KernelIndex(2), 3).size() == 3);
    CHECK(cached_first_zeros(KernelIndex(2), 6).back().alpha == first_real_zeros(KernelIndex(2), 6).back().alpha);

    // a different tolerance is a different cache entry
    QuadratureSpec loose;
    loose.tol = 1e-10;
    cached_zeros(KernelIndex(2), 5.0, loose);
    int tables = 0;
    for (const auto& e : fs::directory_iterator(dir)) tables += e.path().extension() == ".csv";
    CHECK(tables == 2);

    // a corrupt cache is rebuilt
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") atomic_write(e.path(), "garbage\n");
    CHECK(cached_zeros(KernelIndex(2), 13.0).size() == 4);
    ::unsetenv("POLYA_CACHE_DIR");
}

TEST_CASE("SVG output")
{
    SvgDataset d{"t", "x", "y", {{"line", "#000000", {{{0, 0}, {1, 2}, {2, 1}}}, false, false}}};
    const std::string a = emit_svg(d), b = emit_svg(d);
    CHECK(a == b);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);

    const fs::path dir = scratch("svg");
    SvgDataset empty{"nothing", "x", "y", {}};
    CHECK_THROWS_AS(write_svg(dir / "e.svg", empty), Error);
    CHECK_FALSE(fs::exists(dir / "e.svg"));
    SvgDataset hollow{"nothing", "x", "y", {{"s", "#000000", {{}}, false, false}}};
    CHECK_THROWS_AS(emit_svg(hollow), Error);
    write_svg(dir / "ok.svg", d);
    CHECK(read_file(dir / "ok.svg") == a);
}
