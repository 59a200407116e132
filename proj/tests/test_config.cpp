#include <doctest.h>

#include "dgch/config.hpp"

using namespace dgch;

namespace {

const char* kSweep = R"(
# comment line
[model]
form = singular
p = 0.5      ; trailing comment
[grid]
dim = 2
length = 1, 1
bc = periodic
[region]
shape = union(disk(0.3, 0.5, 0.1), rectangle(0.55, 0.4, 0.75, 0.6))
[sweep]
eps_list = 0.01 0.005, 0.0025
cells_per_width = 12
tolerance = 0.05
)";

}  // namespace

TEST_CASE("a full sweep config")
{
    const auto c = parse_config(kSweep);
    CHECK(c.form == CoefficientForm::SingularP);
    CHECK(c.params.p == 0.5);
    CHECK(c.dim == 2);
    REQUIRE(c.region);
    CHECK(c.region->members().size() == 2);
    CHECK(c.eps_list == std::vector<double>{0.01, 0.005, 0.0025});
    CHECK(c.policy.cells_per_width == 12.0);
    CHECK(c.policy.domain.dim() == 2);
    CHECK(c.tolerance == 0.05);
    CHECK_FALSE(c.has_flow);
    const auto d = c.describe();
    CHECK(d.find("region=union(disk(") != std::string::npos);
    CHECK(d.find("form=singular ") != std::string::npos);
}

TEST_CASE("config errors")
{
    auto bad = [](const std::string& text) { CHECK_THROWS_AS(parse_config(text), ConfigError); };
    bad("[model]\nepsilom = 0.1\n");
    bad("[modle]\n");
    bad("p = 1\n");
    bad("[model]\np = one\n");
    bad("[model]\np = 1\np = 1\n");
    bad("[model]\np = 1e999\n");
    bad("[model]\nform = singular\np = 1.7\n");
    bad("[grid]\ndim = 3\n");
    bad("[grid]\ndim = 2\nlength = 1\n");
    bad("[region]\nshape = disk(0.5, 0.5)\n");
    bad("[region]\nshape = interval(0.5, 1.0)\n");
    bad("[region]\nshape = triangle(1,2,3)\n");
    bad("[sweep]\neps_list = 0.01, 0.02, 0.005\n");
    bad("[sweep]\neps_list = 0.01, 0.005\n");
    bad("[model]\nform = regularized\nalpha = 0\n");
    bad("[model]\nform = singular_one\n[grid]\nn = 32\n[flow]\nt_end = 0.1\n");
    bad("[model]\nform = regularized\n[flow]\nt_end = 0.1\n");
    bad("[model]\nform = regularized\nalpha = 0\n[grid]\nn = 32\n[flow]\n");
    try {
        parse_config("[model]\n\np = x\n");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("flow config")
{
    const auto c = parse_config(R"(
[model]
form = regularized
epsilon = 0.05
[grid]
n = 64
length = 4
bc = neumann
[region]
shape = halfspace(0, 2)
[flow]
t_end = 0.01
save_every = 10
[initial]
profile = shifted_literal
[output]
dir = somewhere
)");
    CHECK(c.has_flow);
    CHECK(c.flow.t_end == 0.01);
    CHECK(c.flow.params.epsilon == 0.05);
    CHECK(c.initial_profile == ProfileKind::ShiftedLiteral);
    CHECK(c.output_dir == "somewhere");
    CHECK(c.domain().n(0) == 64);
    CHECK(c.domain().bc() == Boundary::Neumann);
}

TEST_CASE("region and number parsing")
{
    CHECK(parse_region("Disk( 1 , 2 , 0.5 )").describe() == "disk(1,2,0.5)");
    CHECK(parse_region("halfspace(1, 0.25)").describe() == "halfspace(1,0.25)");
    CHECK_THROWS_AS(parse_region("disk(1,2,0.5) extra"), ConfigError);
    CHECK_THROWS_AS(parse_region("halfspace(2, 0.25)"), ConfigError);
    CHECK(parse_number_list(" 1, 2 3e-1 ") == std::vector<double>{1.0, 2.0, 0.3});
    CHECK_THROWS_AS(parse_number_list("1, 2x"), ConfigError);
}
