#include <doctest.h>

#include "gptlab/io.hpp"

using namespace gptlab;

TEST_CASE("polytope JSON round-trips through canonicalization")
{
    // Unordered input with a redundant interior point.
    const Json j = Json::parse(R"({
      "ambient_dim": 2,
      "vertices": [["0","1"], ["1","0"], ["0","0"], ["-1","0"], ["0","-1"]]
    })");
    const VPolytope p = polytope_from_json(j);
    CHECK(p.vertex_count() == 4);
    const Json back = polytope_to_json(p);
    CHECK(polytope_from_json(back) == p);
    CHECK(back["vertices"][0][0].get<std::string>() == "-1");
}

TEST_CASE("polytope JSON rejects malformed documents")
{
    CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"vertices": []})")), UsageError);
    CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"ambient_dim": 2})")), UsageError);
    CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"ambient_dim": 2, "vertices": [["1"]]})")),
                    UsageError);
    CHECK_THROWS_AS(
        polytope_from_json(Json::parse(R"({"ambient_dim": 1, "vertices": [[0.5]]})")), UsageError);
}

TEST_CASE("state space JSON round-trips and validates invariants")
{
    const StateSpace space = square_surrogate();
    const Json j = state_space_to_json(space);
    CHECK(state_space_from_json(j) == space);

    Json wrong_u = j;
    wrong_u["u"] = Json::array({"1", "0", "0"});
    CHECK_THROWS_WITH_AS(state_space_from_json(wrong_u), doctest::Contains("last-coordinate"),
                         UsageError);

    Json off_height = j;
    off_height["omega_vertices"][0][2] = "2";
    CHECK_THROWS_WITH_AS(state_space_from_json(off_height), doctest::Contains("u(omega) = 1"),
                         UsageError);

    Json degenerate = j;
    degenerate["omega_vertices"] = Json::array();
    degenerate["omega_vertices"].push_back(Json::array({"0", "0", "1"}));
    degenerate["omega_vertices"].push_back(Json::array({"1", "0", "1"}));
    CHECK_THROWS_WITH_AS(state_space_from_json(degenerate), doctest::Contains("generating"),
                         UsageError);
}

TEST_CASE("reports re-serialize byte-identically")
{
    const Model model{square_surrogate()};
    const Json report = build_report(model, "square", ReportSelection::all());
    const std::string once = dump_json(report);
    const std::string twice = dump_json(Json::parse(once));
    CHECK(once == twice);
}

TEST_CASE("report selections parse or reject")
{
    CHECK(ReportSelection::parse("all").classical);
    CHECK(ReportSelection::parse("preservation").preservation);
    CHECK(!ReportSelection::parse("preservation").subspace);
    CHECK_THROWS_AS(ReportSelection::parse("bogus"), UsageError);
}

TEST_CASE("square report carries the expected verdicts")
{
    const Model model{square_surrogate()};
    const Json report = build_report(model, "square", ReportSelection::all());
    CHECK(!report["classical"]["classical"].get<bool>());
    CHECK(!report["preservation"]["holds"].get<bool>());
    for (const Json& f : report["preservation"]["facets"])
        CHECK(f["verdict"].get<std::string>() == "dimension_clash");
    CHECK(!report["discrimination"]["violation"].is_null());
    CHECK(report["effects"]["count"].get<int>() == 6);
}

TEST_CASE("classical report is fully green")
{
    const Model model{classical_model(4)};
    const Json report = build_report(model, "classical-4", ReportSelection::all());
    CHECK(report["classical"]["classical"].get<bool>());
    CHECK(report["preservation"]["holds"].get<bool>());
    CHECK(report["discrimination"]["violation"].is_null());
    for (const Json& entry : report["subspace"])
    {
        if (entry["associated"].get<bool>())
            CHECK(entry["pass"].get<bool>());
    }
    const std::string text = report_to_text(report);
    CHECK(text.find("classical: yes") != std::string::npos);
}
