#include "ppspec/generators.hpp"
#include "ppspec/io.hpp"

#include "doctest.h"

#include <filesystem>

using namespace ppspec;

TEST_SUITE("io") {

TEST_CASE("exact patches round trip through json")
{
    const auto patch = window(*fibonacci_source(), Region::interval(-10.0, 20.0));
    const json j = patch_to_json(patch);
    CHECK(j["coords"] == "exact");
    CHECK(j["field"]["tau"] == "golden");
    const auto back = patch_from_json(json::parse(j.dump()));
    CHECK(back.size() == patch.size());
    CHECK(patch_to_json(back) == j);
    for (const auto& [p, c] : back.support())
        CHECK(p.is_exact());
}

TEST_CASE("float patches round trip through json")
{
    const auto patch = window(*lattice_source({{1.0, 0.0}, {0.5, 0.9}}), Region::centered_cube(2, 3.0));
    const json j = patch_to_json(patch);
    CHECK(j["coords"] == "float");
    CHECK(patch_to_json(patch_from_json(json::parse(j.dump()))) == j);
}

TEST_CASE("malformed point sets are rejected")
{
    const json good = patch_to_json(window(*lattice_source({{1.0}}), Region::interval(0.0, 3.0)));
    json bad = good;
    bad["dim"] = 3;
    CHECK_THROWS_AS(patch_from_json(bad), std::invalid_argument);
    bad = good;
    bad["points"][0][1] = 5;
    CHECK_THROWS_AS(patch_from_json(bad), std::invalid_argument);
    bad = good;
    bad["points"].push_back(json::array({10.0, 0}));
    CHECK_THROWS_AS(patch_from_json(bad), std::invalid_argument);
    bad = good;
    bad.erase("region");
    CHECK_THROWS_AS(patch_from_json(bad), std::invalid_argument);
    bad = good;
    bad["region"]["kind"] = "disc";
    CHECK_THROWS_AS(patch_from_json(bad), std::invalid_argument);
}

TEST_CASE("clusters from json")
{
    const Cluster c = cluster_from_json(json::parse(R"([[0, [0, 1]], [2.5]])"), 1);
    CHECK(c.colors() == 2);
    CHECK(c.size() == 3);
    CHECK(c.parts()[0].size() == 2);
    CHECK(cluster_to_json(c) == json::parse(R"([[0.0, 1.618033988749895], [2.5]])"));
    const Cluster d = cluster_from_json(json::parse(R"([[[0, 0], [1, 2]]])"), 2);
    CHECK(d.size() == 2);
    CHECK_THROWS_AS(cluster_from_json(json::parse("[]"), 1), std::invalid_argument);
    CHECK_THROWS_AS(cluster_from_json(json::parse(R"([[[0, 0, 1]]])"), 2), std::invalid_argument);
    CHECK_THROWS_AS(cluster_from_json(json::parse(R"([["x"]])"), 1), std::invalid_argument);
}

TEST_CASE("tables use the requested separator")
{
    auto z = lattice_source({{1.0}});
    const Cluster origin = Cluster::single(1, 0, Point(0.0));
    const Point off[] = {Point(0.0)};
    const auto e = estimate_frequency(*z, origin, VanHoveSpec{1, {10.0, 20.0}}, off);
    const std::string csv = frequency_table(e, ',');
    CHECK(csv.rfind("n,offset,count,ratio\n", 0) == 0);
    CHECK(csv.find("10,0,21,") != std::string::npos);
    const std::string dat = frequency_table(e, ' ');
    CHECK(dat.rfind("# n offset count ratio\n", 0) == 0);
}

TEST_CASE("text files are written and json read back")
{
    const auto dir = std::filesystem::temp_directory_path() / "ppspec_io_test";
    std::filesystem::remove_all(dir);
    write_text(dir / "a" / "x.json", R"({"k": [1, 2]})");
    CHECK(read_json(dir / "a" / "x.json")["k"][1] == 2);
    write_text(dir / "bad.json", "{");
    CHECK_THROWS_AS(read_json(dir / "bad.json"), std::invalid_argument);
    CHECK_THROWS_AS(read_json(dir / "missing.json"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

}
