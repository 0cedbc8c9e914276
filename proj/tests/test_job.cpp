#include "doctest.h"

#include "cjs/errors.hpp"
#include "cjs/job.hpp"

using namespace cjs;

namespace {
std::string error_of(const std::string& text) {
    try {
        parse_job_text(text);
    } catch (const input_error& e) {
        return e.what();
    }
    return "";
}
} // namespace

TEST_CASE("field descriptors") {
    CHECK(parse_field("QQ") == Field::rationals());
    CHECK(parse_field("GF(7)") == Field::prime(7));
    CHECK(parse_field("GF(2)(t)") == Field::rational_functions(2));
    Field f4 = parse_field("GF(2)[a]/(a^2+a+1)");
    CHECK(f4.kind() == FieldKind::finite_extension);
    CHECK(f4.cardinality() == 4u);
    CHECK_THROWS_AS(parse_field("GF(4)"), input_error);
    CHECK_THROWS_AS(parse_field("GF(2)[a]/(a^2+1)"), input_error);
    CHECK_THROWS_AS(parse_field("RR"), input_error);
}

TEST_CASE("job parsing") {
    Job j = parse_job_text(R"J({"field":"GF(3)","vars":["x","y"],"gens":["x^3+y^4"],
        "frame":{"u":["y"],"y":["x"]},"boundary":[{"generator":"y","status":"old","birth":2}],
        "options":{"max_steps":5,"labels":"fresh"}})J");
    REQUIRE(j.gens.size() == 1);
    CHECK(j.gens[0].field() == Field::prime(3));
    CHECK(j.frame.boundary.at(0).status == BoundaryStatus::old_component);
    CHECK(j.frame.boundary.at(0).birth_step == 2);
    CHECK(j.options.max_steps == 5);
    CHECK(j.options.labels == LabelMode::fresh);

    CHECK(error_of(R"J({"vars":["x"],"gens":["x^2+z"],"frame":{"y":["x"]}})J").rfind("gens[0]:", 0) == 0);
    CHECK(error_of(R"J({"vars":["x"],"gens":["x^2"],"frame":{"y":["x"]},"boundary":[{"generator":"x","status":"gone"}]})J")
              .rfind("boundary[0]:", 0) == 0);
    CHECK(error_of(R"J({"vars":["x","y"],"gens":["x^2"],"frame":{"y":["x"]}})J").rfind("frame:", 0) == 0);
    CHECK(error_of(R"J({"vars":["x"],"gens":["x^2"],"frame":{"y":["x"]},"colour":1})J") == "unknown key 'colour'");
    CHECK(error_of(R"J({"vars":["x"],"gens":["x^2"],"frame":{"y":["x"]},"options":{"max_steps":"many"}})J")
              .rfind("options:", 0) == 0);
    CHECK(error_of("[1,2]") == "job must be a JSON object");
    CHECK(error_of("{").rfind("malformed JSON", 0) == 0);
}

TEST_CASE("points and supplied strata") {
    Job j = parse_job_text(R"J({"vars":["u1","u2","y"],"gens":["y^2+u1*(u2-1)^3"],
        "frame":{"u":["u1","u2"],"y":["y"]},"point":[{"var":"u2","value":"1"}]})J");
    ChartState c = j.chart();
    CHECK(c.gens[0] == parse_polynomial("y^2+u1*u2^3", Field::rationals(), c.vars()));
    Job off = parse_job_text(R"J({"vars":["u1","u2","y"],"gens":["y^2+u1+(u2-1)^3"],
        "frame":{"u":["u1","u2"],"y":["y"]},"point":[{"var":"u2","value":"2"}]})J");
    CHECK_THROWS_AS(off.chart(), input_error);

    Job s = parse_job_text(R"J({"vars":["x","y","z"],"gens":["x^2+y^9*z^10"],"frame":{"u":["y","z"],"y":["x"]},
        "stratum":[{"component":["x","z"],"label":1,"original":false},{"component":["x","y"],"label":0}]})J");
    ChartState l = s.labelled_chart();
    REQUIRE(l.stratum.size() == 2);
    CHECK(l.stratum[0].to_string() == "V(x,y)");
    CHECK(l.stratum[1].label == 1);
    CHECK_FALSE(l.stratum[1].original);

    Job bad = parse_job_text(R"J({"vars":["x","y","z"],"gens":["x^2+y^9*z^10"],"frame":{"u":["y","z"],"y":["x"]},
        "stratum":[{"component":["y","z"]}]})J");
    CHECK_THROWS_AS(bad.labelled_chart(), input_error);
}
