#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dgch/config.hpp"
#include "dgch/energy.hpp"
#include "dgch/recovery.hpp"
#include "dgch/sweep.hpp"

namespace fs = std::filesystem;
using namespace dgch;

namespace {

struct Result {
    int code;
    std::string out;
};

Result sh(const std::string& args)
{
    const std::string cmd = std::string(DGCH_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::vector<double> row(const std::string& l)
{
    std::vector<double> v;
    std::istringstream is(l);
    for (std::string c; std::getline(is, c, ',');) v.push_back(std::stod(c));
    return v;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("dgch_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string config(const std::string& name) { return std::string(DGCH_CONFIGS) + "/" + name; }

}  // namespace

TEST_CASE("sigma")
{
    const auto r = sh("sigma --p-list 0 1 1.5");
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0].rfind("# sigma", 0) == 0);
    CHECK(ls[1] == "p,sigma_quadrature,sigma_closed_form,rel_err");
    CHECK(row(ls[2])[1] == doctest::Approx(4.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(row(ls[3])[3] <= 1e-10);

    const auto empty = sh("sigma");
    CHECK(empty.code == 0);
    CHECK(lines(empty.out).size() == 2);

    CHECK(sh("sigma --p-list 2").code == 2);
    CHECK(sh("sigma --p-list 0.5 --u-minus 1 --u-plus 0").code == 2);
    CHECK(sh("nonsense").code == 2);
}

TEST_CASE("profile")
{
    const auto r = sh("profile --epsilon 0.01 --samples 2049");
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2 + 2049);
    CHECK(ls[1] == "t,phi,width,bound");
    const auto first = row(ls[2]);
    const auto last = row(ls.back());
    CHECK(first[0] == 0.0);
    CHECK(first[1] == -1.0);
    CHECK(last[0] == last[2]);
    CHECK(last[1] == 1.0);
    CHECK(last[2] <= last[3]);
    CHECK(sh("profile --epsilon 0").code == 2);
}

TEST_CASE("gamma-sweep")
{
    const auto dir = scratch("disk");
    const auto r = sh("gamma-sweep --config " + config("disk_p1.cfg") + " --out " + dir.string());
    CHECK(r.code == 0);
    const auto csv = lines(slurp(dir / "sweep.csv"));
    REQUIRE(csv.size() == 8);
    CHECK(csv[0].rfind("# config ", 0) == 0);
    CHECK(csv[0].find("region=disk(0.5,0.5,0.20000000000000001)") != std::string::npos);
    CHECK(row(csv.back())[3] <= 0.03);

    SUBCASE("output is deterministic")
    {
        const auto again = scratch("disk_again");
        REQUIRE(sh("gamma-sweep --config " + config("disk_p1.cfg") + " --out " + again.string()).code == 0);
        CHECK(slurp(dir / "sweep.csv") == slurp(again / "sweep.csv"));
        CHECK(slurp(dir / "energies.csv") == slurp(again / "energies.csv"));
    }
}

TEST_CASE("gamma-sweep exit codes")
{
    const auto dir = scratch("codes");
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const std::string base = "[model]\nform = singular_one\n[grid]\nlength = 1\n[sweep]\neps_list = 4e-3, 2e-3, 1e-3\n";
    const auto touching = write("touching.cfg", base + "[region]\nshape = interval(0, 0.5)\n");
    CHECK(sh("gamma-sweep --config " + touching + " --out " + dir.string()).code == 2);
    const auto tight = write("tight.cfg", base + "tolerance = 1e-6\n[region]\nshape = interval(0.25, 0.75)\n");
    CHECK(sh("gamma-sweep --config " + tight + " --out " + dir.string()).code == 4);
    CHECK(sh("gamma-sweep --config " + config("interval_p1_shifted.cfg") + " --out " + dir.string()).code == 3);
    CHECK(sh("gamma-sweep --config " + (dir / "missing.cfg").string() + " --out " + dir.string()).code == 2);
}

TEST_CASE("p = 0 sweep matches the Cahn-Hilliard energy row for row")
{
    const auto dir = scratch("p0");
    REQUIRE(sh("gamma-sweep --config " + config("interval_p0.cfg") + " --out " + dir.string()).code == 0);
    const auto cfg = load_config(config("interval_p0.cfg"));
    const auto csv = lines(slurp(dir / "sweep.csv"));
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
        ModelParamsd m = cfg.params;
        m.epsilon = cfg.eps_list[i];
        const auto pr = build_profile(m, cfg.sweep.profile);
        const auto u = build_recovery_field(*cfg.region, cfg.policy.grid_for(pr.width()), pr);
        const auto values = row(csv[2 + i]);
        CHECK(values[0] == m.epsilon);
        CHECK(values[2] == doctest::Approx(energy_ch(u, m)).epsilon(1e-14));
    }
}

TEST_CASE("flow")
{
    const auto dir = scratch("flow");
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const std::string base =
        "[grid]\nn = 64\nlength = 4\n[region]\nshape = interval(1, 3)\n[flow]\nsave_every = 20\n";
    const auto zero = write("zero.cfg", "[model]\nform = regularized\nepsilon = 0.05\n" + base + "t_end = 0\n");
    const auto r0 = sh("flow --config " + zero + " --out " + (dir / "zero").string());
    CHECK(r0.code == 0);
    const auto traj = lines(slurp(dir / "zero" / "trajectory.csv"));
    CHECK(traj.size() == 3);
    CHECK(traj[1] == "t,dt,energy,mass,overshoot");
    CHECK(fs::exists(dir / "zero" / "snapshot_000000.bin"));

    const auto alpha0 =
        write("alpha0.cfg", "[model]\nform = regularized\nalpha = 0\nepsilon = 0.05\n" + base + "t_end = 0.1\n");
    CHECK(sh("flow --config " + alpha0 + " --out " + (dir / "a0").string()).code == 2);

    const auto shortrun = write("short.cfg", "[model]\nform = regularized\nepsilon = 0.05\n" + base + "t_end = 1e-3\n");
    const auto r1 = sh("flow --config " + shortrun + " --out " + (dir / "short").string());
    CHECK(r1.code == 0);
    const auto t1 = lines(slurp(dir / "short" / "trajectory.csv"));
    REQUIRE(t1.size() >= 4);
    CHECK(row(t1.back())[0] == 1e-3);
    for (std::size_t i = 3; i < t1.size(); ++i) CHECK(row(t1[i])[2] <= row(t1[i - 1])[2] * (1 + 1e-12));
}

TEST_CASE("bundled 1D flow config")
{
    const auto dir = scratch("flow1d");
    const auto r = sh("flow --config " + config("flow_1d.cfg") + " --out " + dir.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("energy_non_increasing=1") != std::string::npos);
}
