#include <doctest.h>

#include <cstdio>
#include <string>

#include "ssakit/errors.hpp"
#include "ssakit/generate.hpp"
#include "ssakit/io.hpp"
#include "ssakit/linalg.hpp"
#include "test_helpers.hpp"

using namespace ssakit;
namespace io = ssakit::io;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("ssakit_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("state files round-trip bit-identically") {
    const MultipartiteState state = random_tripartite({2, 3, 2}, 5, 12001);
    TempFile f("state.json");
    io::save_state(f.path, state, io::Json{{"seed", 12001}});

    const std::string first = io::read_text_file(f.path);
    const io::LoadedState loaded = io::load_state(f.path);
    CHECK(loaded.state.dims() == state.dims());
    CHECK(loaded.state.labels() == state.labels());
    CHECK(frobenius_distance(loaded.state.matrix(), state.matrix()) == 0.0);
    CHECK(loaded.provenance.at("seed") == 12001);

    io::save_state(f.path, loaded.state, loaded.provenance);
    CHECK(io::read_text_file(f.path) == first);
}

TEST_CASE("channel files round-trip bit-identically") {
    const KrausChannel channel = random_channel(2, 3, 2, 12002);
    TempFile f("channel.json");
    io::save_channel(f.path, channel);
    const std::string first = io::read_text_file(f.path);
    const io::LoadedChannel loaded = io::load_channel(f.path);
    CHECK(loaded.channel.dim_in() == 2);
    CHECK(loaded.channel.dim_out() == 3);
    io::save_channel(f.path, loaded.channel);
    CHECK(io::read_text_file(f.path) == first);
}

TEST_CASE("ghz file loads with the right dims") {
    const MultipartiteState ghz = testing::ghz_state();
    TempFile f("ghz.json");
    io::save_state(f.path, ghz);
    const io::LoadedState loaded = io::load_state(f.path);
    CHECK(loaded.state.dims() == std::vector<std::size_t>{2, 2, 2});
    CHECK(loaded.provenance.is_null());
}

TEST_CASE("a wrong-trace state is an invariant violation naming the trace") {
    CMatrix bad = 0.9 * 0.5 * CMatrix::identity(2);
    io::Json j;
    j["format_version"] = "1";
    j["kind"] = "state";
    j["labels"] = {"A"};
    j["dims"] = {2};
    j["matrix"] = io::matrix_to_json(bad);
    TempFile f("bad_trace.json");
    io::write_text_file(f.path, io::dump_json(j));
    CHECK_THROWS_WITH_AS(io::load_state(f.path), doctest::Contains("trace"), InvalidInput);
}

TEST_CASE("schema violations carry field paths") {
    TempFile f("schema.json");

    io::write_text_file(f.path, "{\"format_version\": \"1\"}");
    CHECK_THROWS_AS(io::load_state(f.path), io::SchemaError);

    io::Json j;
    j["format_version"] = "1";
    j["kind"] = "state";
    j["labels"] = {"A"};
    j["dims"] = {2};
    j["matrix"] = {{1.0, 0.0}, {0.0, 0.0}};  // entries are not [re, im] pairs
    io::write_text_file(f.path, io::dump_json(j));
    CHECK_THROWS_AS(io::load_state(f.path), io::SchemaError);

    io::write_text_file(f.path, "not json at all");
    CHECK_THROWS_AS(io::load_state(f.path), io::SchemaError);
}

TEST_CASE("channel files validate completeness on load") {
    io::Json j;
    j["format_version"] = "1";
    j["kind"] = "channel";
    j["dim_in"] = 2;
    j["dim_out"] = 2;
    j["kraus"] = io::Json::array({io::matrix_to_json(0.5 * CMatrix::identity(2))});
    TempFile f("bad_channel.json");
    io::write_text_file(f.path, io::dump_json(j));
    CHECK_THROWS_AS(io::load_channel(f.path), InvalidInput);
}

TEST_CASE("reports serialize deterministically") {
    GapReport gap;
    gap.kind = GapReport::Kind::SsaV1;
    gap.lhs_bits = 1.0;
    gap.rhs_bits = 2.0;
    gap.gap_bits = 1.0;
    gap.saturated = false;
    const io::Json report = io::make_report(
        "gap", io::Json{{"checks", io::Json::array({io::gap_to_json(gap)})}},
        io::Json{{"entropy_tol_bits", 1e-8}}, io::Json{{"seed", 3}});
    CHECK(io::dump_json(report) == io::dump_json(report));
    CHECK(report.at("format_version") == "1");
    CHECK(report.at("kind") == "gap");
    CHECK(report.at("payload").at("checks").size() == 1);
}
