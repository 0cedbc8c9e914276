#include "doctest.h"

#include <cmath>

#include "cjs/errors.hpp"
#include "cjs/frame.hpp"
#include "gen.hpp"
#include "properties.hpp"

using namespace cjs;

namespace {
Polynomial P(const std::string& s, Field f, const std::vector<std::string>& v) { return parse_polynomial(s, f, v); }

bool proportional(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero() || a.size() != b.size()) return false;
    Coeff k = b.terms().begin()->second / a.terms().begin()->second;
    return a * k == b;
}

BoundaryComponent comp(const Polynomial& g, BoundaryStatus s) { return BoundaryComponent{g, s, 0}; }

} // namespace

TEST_CASE("initial forms and nu*") {
    Field q = Field::rationals();
    std::vector<std::string> xyz = {"x", "y", "z"};
    CHECK(initial_form(P("x^2 - y^2*z", q, xyz)) == P("x^2", q, xyz));
    CHECK(initial_form(P("y", q, xyz)) == P("y", q, xyz));
    std::vector<std::string> txyz = {"t0", "x", "y", "z"};
    Field f2 = Field::prime(2);
    CHECK(initial_form(P("t0^2+x*y^2+z^3+x^5*y", f2, txyz)) == P("t0^2", f2, txyz));
    CHECK_THROWS_AS(initial_form(Polynomial(q, xyz)), domain_error);

    CHECK(nu_star({P("x^2+y^9*z^10", q, xyz)}).to_string() == "(2)");
    CHECK(nu_star({P("y", q, xyz)}).is_regular());
    CHECK(nu_star({P("x*(x^2+y^3)", q, xyz)}).to_string() == "(3)");
    CHECK_THROWS_AS(nu_star({Polynomial(q, xyz)}), input_error);

    CHECK(compare(NuStar{{1}}, NuStar{{2}}) < 0);
    CHECK(compare(NuStar{{2}}, NuStar{{2, 3}}) > 0); // infinity padding
    CHECK(compare(NuStar{{2, 3}}, NuStar{{2, 3}}) == 0);
}

TEST_CASE("standard basis necessary check") {
    Field q = Field::rationals();
    std::vector<std::string> v = {"x", "y", "z"};
    CHECK_NOTHROW(check_standard_basis({P("x", q, v), P("y^2+z^3", q, v)}));
    CHECK_THROWS_AS(check_standard_basis({P("y^2", q, v), P("x", q, v)}), input_error);
    CHECK_THROWS_AS(check_standard_basis({P("x", q, v), P("x*y+z^3", q, v)}), input_error);
}

TEST_CASE("compose with old boundary") {
    Field q = Field::rationals();
    std::vector<std::string> v = {"u1", "u2", "y"};
    Polynomial f = P("y^2+u1^3", q, v);
    Frame fr{{"u1", "u2"}, {"y"}, {}};
    CHECK(compose_with_old_boundary({f}, fr)[0] == f);
    fr.boundary.push_back(comp(P("u1", q, v), BoundaryStatus::old_component));
    CHECK(compose_with_old_boundary({f}, fr)[0] == P("u1*y^2+u1^4", q, v));
    fr.boundary.push_back(comp(P("u2", q, v), BoundaryStatus::old_component));
    CHECK(compose_with_old_boundary({f}, fr)[0] == P("u1*u2", q, v) * f);
    // new components do not enter J^O
    fr.boundary[1].status = BoundaryStatus::new_component;
    CHECK(compose_with_old_boundary({f}, fr)[0] == P("u1", q, v) * f);
}

TEST_CASE("ridge") {
    Field q = Field::rationals();
    std::vector<std::string> yu = {"Y", "U"};
    auto r1 = compute_ridge({P("Y^2", q, yu)});
    REQUIRE(r1.size() == 1);
    CHECK(proportional(r1[0], P("Y", q, yu)));
    auto r2 = compute_ridge({P("(Y+U)^2", q, yu)});
    REQUIRE(r2.size() == 1);
    CHECK(proportional(r2[0], P("Y+U", q, yu)));
    for (u64 p : {2u, 3u}) {
        Field ft = Field::rational_functions(p);
        std::string ps = std::to_string(p);
        Polynomial F = P("Y^" + ps + "+t*U^" + ps, ft, yu);
        auto r = compute_ridge({F});
        REQUIRE(r.size() == 1);
        CHECK(proportional(r[0], F));
    }
    CHECK_THROWS_AS(compute_ridge({P("Y^2+U", q, yu)}), input_error);
}

TEST_CASE("directrix examples") {
    std::vector<std::string> v = {"u1", "u2", "y"};
    for (u64 p : {2u, 3u}) {
        Field ft = Field::rational_functions(p);
        std::string ps = std::to_string(p);
        Directrix d = compute_directrix({P("y^" + ps + "+t*u1^" + ps, ft, v)}, v);
        CHECK(d.r == 2);
        CHECK(d.e == 1);
        Directrix d2 = compute_directrix({P("(y+t*u1)^" + ps, ft, v)}, v);
        CHECK(d2.r == 1);
        CHECK(d2.e == 2);
        REQUIRE(d2.forms.size() == 1);
        CHECK(proportional(d2.forms[0], P("y+t*u1", ft, v)));
    }
    Field q = Field::rationals();
    std::vector<std::string> xyz = {"x", "y", "z"};
    Directrix d = compute_directrix({P("x^2", q, xyz)}, xyz);
    CHECK(d.r == 1);
    CHECK(d.e == 2);
    for (const Row& w : d.complement_basis()) CHECK(is_translation_invariant(P("x^2", q, xyz), w));
    // <X, YZ> needs three linear forms
    CHECK(compute_directrix({P("x", q, xyz), P("y*z", q, xyz)}, xyz).r == 3);
}

TEST_CASE("directrix of J^O") {
    Field q = Field::rationals();
    std::vector<std::string> v = {"u1", "u2", "y"};
    Polynomial f = P("y^2+u1^3", q, v);
    Frame fr{{"u1", "u2"}, {"y"}, {}};
    CHECK(directrix_of_JO({f}, fr).e == 2);
    fr.boundary.push_back(comp(P("u1", q, v), BoundaryStatus::old_component));
    Directrix d = directrix_of_JO({f}, fr);
    CHECK(d.e == 1);
    CHECK(d.forms.size() == 2);
    fr.boundary[0] = comp(P("y+u2^2", q, v), BoundaryStatus::old_component);
    CHECK(directrix_of_JO({f}, fr).e == 2);
}

TEST_CASE("frame adaptation") {
    Field q = Field::rationals();
    std::vector<std::string> v = {"u1", "u2", "y"};
    Polynomial f = P("(y+u1)^2+u2^3", q, v);
    Frame fr{{"u1", "u2"}, {"y"}, {comp(P("u1", q, v), BoundaryStatus::new_component)}};
    Directrix d = compute_directrix({initial_form(f)}, v);
    AdaptedFrame a = adapt_frame({f}, fr, d);
    CHECK(a.frame.y == std::vector<std::string>{"y"});
    CHECK(a.frame.u == std::vector<std::string>{"u1", "u2"});
    CHECK(a.gens[0] == P("y^2+u2^3", q, v));
    CHECK(a.frame.boundary[0].generator == P("u1", q, v));
}

TEST_CASE("property: directrix agrees with the exhaustive translation oracle") {
    auto r = cjs::testing::directrix_property(101);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.checked >= 200);
}

TEST_CASE("property: old boundary shifts nu*") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (Field f : cjs::testing::small_fields()) {
        std::vector<std::string> v = {"u1", "u2", "y"};
        for (int i = 0; i < 80; ++i) {
            Polynomial g = cjs::testing::random_polynomial(rng, f, v, 5, 5, 1);
            if (g.is_zero()) continue;
            Frame fr{{"u1", "u2"}, {"y"}, {}};
            size_t olds = static_cast<size_t>(rng() % 3);
            if (olds >= 1) fr.boundary.push_back(comp(P("u1", f, v), BoundaryStatus::old_component));
            if (olds >= 2) fr.boundary.push_back(comp(P("u2", f, v), BoundaryStatus::old_component));
            fr.boundary.push_back(comp(P("y+u1", f, v), BoundaryStatus::new_component));
            NuStar a = nu_star({g});
            NuStar b = nu_star(compose_with_old_boundary({g}, fr));
            CHECK(b.orders[0] == a.orders[0] + static_cast<long>(olds));
            Directrix d = compute_directrix({initial_form(g)}, v);
            Directrix dO = directrix_of_JO({g}, fr);
            CHECK(dO.e <= d.e);
            ++checked;
        }
    }
    CHECK(checked >= 200);
}
