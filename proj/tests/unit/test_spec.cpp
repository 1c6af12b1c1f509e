#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

#include <unistd.h>

#include "fixtures.hpp"
#include "plotforge/spec/spec.hpp"

using namespace plotforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir()
    {
        path = fs::temp_directory_path() / ("plotforge_spec_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    static int& counter()
    {
        static int n = 0;
        return n;
    }

    void write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
    }
};

std::string csv_doc(const scene::Json& x, const scene::Json& y)
{
    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["layers"][0]["graphs"][0]["x"] = x;
    doc["plots"][0]["layers"][0]["graphs"][0]["y"] = y;
    return doc.dump();
}

}  // namespace

TEST_CASE("csv parser reads header, numbers and blanks", "[spec]")
{
    const auto t = spec::parse_csv("# comment\na, b\n1,2.5\n3,\n-1e3,nan\n", true, "t.csv");
    REQUIRE(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0][1] == 2.5);
    CHECK(std::isnan(t.rows[1][1]));
    CHECK(t.rows[2][0] == -1000.0);
    CHECK(std::isnan(t.rows[2][1]));
}

TEST_CASE("csv parser rejects ragged rows and junk cells", "[spec]")
{
    auto e = fixtures::capture_error([] { spec::parse_csv("1,2\n3\n", false, "r.csv"); });
    CHECK(e.code == ErrorCode::InvalidValue);
    CHECK(e.describe().find("r.csv") != std::string::npos);
    e = fixtures::capture_error([] { spec::parse_csv("1,abc\n", false, "j.csv"); });
    CHECK(e.code == ErrorCode::InvalidValue);
}

TEST_CASE("csv column references resolve to arrays", "[spec]")
{
    TempDir dir;
    dir.write("d.csv", "t,v\n0,10\n50,\n100,30\n");
    const auto s = spec::load_spec_text(
        csv_doc({{"csv", "d.csv"}, {"column", "t"}}, {{"csv", "d.csv"}, {"column", "v"}}), dir.path);
    const auto& g = s.document["plots"][0]["layers"][0]["graphs"][0];
    CHECK(g["x"] == scene::Json::array({0.0, 50.0, 100.0}));
    CHECK(g["y"][0] == 10.0);
    CHECK(g["y"][1].is_null());
    CHECK(g["y"][2] == 30.0);
    CHECK(s.data_files.size() == 2);
}

TEST_CASE("matrix references resolve to nested arrays", "[spec]")
{
    TempDir dir;
    dir.write("m.csv", "1,2,3\n4,5,6\n");
    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["layers"][0]["graphs"][0] = {{"type", "grid"},
                                                 {"values", {{"csv", "m.csv"}}},
                                                 {"x_extent", {{"lo", 0}, {"hi", 3}}},
                                                 {"y_extent", {{"lo", 0}, {"hi", 2}}}};
    const auto s = spec::load_spec_text(doc.dump(), dir.path);
    const auto& v = s.document["plots"][0]["layers"][0]["graphs"][0]["values"];
    REQUIRE(v.size() == 2);
    CHECK(v[1] == scene::Json::array({4.0, 5.0, 6.0}));
}

TEST_CASE("missing data file names the property path and the file", "[spec]")
{
    TempDir dir;
    const auto e = fixtures::capture_error([&] {
        spec::load_spec_text(csv_doc({{"csv", "gone.csv"}, {"column", "t"}}, {1, 2, 3}), dir.path);
    });
    CHECK(e.code == ErrorCode::MissingDataFile);
    CHECK(e.path == "plots[0].layers[0].graphs[0].x");
    CHECK(e.message.find("gone.csv") != std::string::npos);
}

TEST_CASE("missing column is a missing data error", "[spec]")
{
    TempDir dir;
    dir.write("d.csv", "t\n1\n2\n3\n");
    const auto e = fixtures::capture_error([&] {
        spec::load_spec_text(csv_doc({1, 2, 3}, {{"csv", "d.csv"}, {"column", "nope"}}), dir.path);
    });
    CHECK(e.code == ErrorCode::MissingDataFile);
    CHECK(e.path == "plots[0].layers[0].graphs[0].y");
    CHECK(e.message.find("nope") != std::string::npos);
}

TEST_CASE("objects with other keys are not data references", "[spec]")
{
    const scene::Json doc = {{"a", {{"csv", "x.csv"}, {"extra", 1}}}};
    CHECK(spec::resolve_data(doc, ".") == doc);
}

TEST_CASE("unreadable and malformed spec files", "[spec]")
{
    TempDir dir;
    auto e = fixtures::capture_error([&] { spec::load_spec(dir.path / "absent.json"); });
    CHECK(e.code == ErrorCode::IoFailure);
    dir.write("bad.json", "{\"version\": 1,");
    e = fixtures::capture_error([&] { spec::load_spec(dir.path / "bad.json"); });
    CHECK(e.code == ErrorCode::SchemaError);
}

TEST_CASE("load_spec resolves data next to the spec file", "[spec]")
{
    TempDir dir;
    fs::create_directories(dir.path / "data");
    dir.write("data/d.csv", "x,y\n1,4\n2,5\n3,6\n");
    dir.write("s.json", csv_doc({{"csv", "data/d.csv"}, {"column", "x"}}, {{"csv", "data/d.csv"}, {"column", "y"}}));
    const auto s = spec::load_spec(dir.path / "s.json");
    CHECK(s.document["plots"][0]["layers"][0]["graphs"][0]["y"] == scene::Json::array({4.0, 5.0, 6.0}));
}
