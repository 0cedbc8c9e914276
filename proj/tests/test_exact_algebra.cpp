#include "doctest.h"

#include "cjs/errors.hpp"
#include "cjs/polynomial.hpp"
#include "gen.hpp"
#include "properties.hpp"

using namespace cjs;
using cjs::testing::random_polynomial;

namespace {
Polynomial P(const std::string& s, Field f, const std::vector<std::string>& v) { return parse_polynomial(s, f, v); }
const std::vector<std::string> XYZ = {"x", "y", "z"};
} // namespace

TEST_CASE("field arithmetic basics") {
    Field q = Field::rationals();
    CHECK((q.from_mpq(mpq_class(1, 2)) + q.from_mpq(mpq_class(1, 3))).to_string() == "5/6");
    Field f5 = Field::prime(5);
    CHECK((f5.from_int(3) * f5.from_int(4)).residue() == 2);
    CHECK((f5.from_int(2).inverse()).residue() == 3);
    CHECK_THROWS_AS(Field::prime(4), input_error);

    Field ft = Field::rational_functions(2);
    Coeff t = ft.generator();
    Coeff r = (t + ft.one()) / (t * t + ft.one());
    CHECK(r.to_string() == "1/(t+1)"); // t^2+1 = (t+1)^2 over GF(2)
}

TEST_CASE("p-th roots") {
    Field f5 = Field::prime(5);
    CHECK(p_th_root(f5.from_int(2))->residue() == 2);
    for (u64 p : {2u, 3u, 5u}) {
        Field ft = Field::rational_functions(p);
        Coeff t = ft.generator();
        CHECK(*p_th_root(t.pow(p)) == t);
        CHECK_FALSE(p_th_root(t).has_value());
    }
    CHECK_THROWS_AS(p_th_root(Field::rationals().one()), unsupported_operation);

    // Round trip on random elements: root(c^p) = c and d^p = c.
    std::mt19937_64 rng(7);
    for (u64 p : {2u, 3u}) {
        Field ft = Field::rational_functions(p);
        for (int i = 0; i < 50; ++i) {
            Coeff c = cjs::testing::random_coeff(rng, ft);
            Coeff cp = c.pow(p);
            auto d = p_th_root(cp);
            REQUIRE(d);
            CHECK(*d == c);
            if (auto e = p_th_root(c)) CHECK(e->pow(p) == c);
        }
    }
    // GF(4) = GF(2)[a]/(a^2+a+1): Frobenius inverse.
    Field f4 = Field::extension(2, UPoly{{1, 1, 1}});
    for (const Coeff& c : f4.elements()) CHECK(p_th_root(c)->pow(2) == c);
}

TEST_CASE("parse and print round trip") {
    Field q = Field::rationals();
    Polynomial f = P("x^2 + y^9*z^10", q, XYZ);
    CHECK(f.to_string() == "x^2+y^9*z^10");
    CHECK(P(f.to_string(), q, XYZ) == f);
    Polynomial g = P("-3/2*x*y + (x+y)^2 - 7", q, XYZ);
    CHECK(P(g.to_string(), q, XYZ) == g);
    CHECK_THROWS_AS(P("x + q", q, XYZ), input_error);
    CHECK_THROWS_AS(P("x + ", q, XYZ), input_error);

    Field ft = Field::rational_functions(3);
    Polynomial h = P("y^3 + t*x^3 + (t+1)/t^2*z", ft, XYZ);
    CHECK(P(h.to_string(), ft, XYZ) == h);
    CHECK(P("x'^2 + y''", q, {"x'", "y''"}).to_string() == "y''+x'^2");
}

TEST_CASE("ord_at") {
    Field q = Field::rationals();
    Polynomial f = P("x^2+y^9*z^10", q, XYZ);
    CHECK(ord_at(f, {"x", "y", "z"}) == 2);
    CHECK(ord_at(f, {"x", "z"}) == 2);
    CHECK_FALSE(ord_at(Polynomial(q, XYZ), {"x"}).has_value());
    CHECK_THROWS_AS(ord_at(f, {"q"}), input_error);
}

TEST_CASE("hasse derivatives") {
    Field q = Field::rationals();
    CHECK(hasse_derivative(P("x^2", q, {"x"}), {1}) == P("2*x", q, {"x"}));
    Field f2 = Field::prime(2);
    CHECK(hasse_derivative(P("y^2", f2, {"y"}), {1}).is_zero());
    CHECK(hasse_derivative(P("y^2", f2, {"y"}), {2}) == P("1", f2, {"y"}));
    Field f3 = Field::prime(3);
    CHECK(hasse_derivative(P("x^3*y + x*y", f3, {"x", "y"}), {1, 0}) == P("y", f3, {"x", "y"}));
}

TEST_CASE("substitute") {
    Field f2 = Field::prime(2);
    std::vector<std::string> v = {"u1", "u2", "y"};
    Polynomial f = P("y^4+y^2+u1^6+u2^5", f2, v);
    CHECK(substitute(f, "y", P("y+u1^3", f2, v)) == P("y^4+y^2+u1^12+u2^5", f2, v));
    CHECK(substitute(f, "y", P("y", f2, v)) == f);

    for (u64 p : {2u, 3u}) {
        Field ft = Field::rational_functions(p);
        std::vector<std::string> w = {"u1", "u2", "y"};
        Polynomial h = P("y^" + std::to_string(p) + " + t*u1^" + std::to_string(p), ft, w);
        Polynomial z = substitute(h, "y", P("y - u1*u2", ft, w));
        std::string ps = std::to_string(p);
        CHECK(z == P("y^" + ps + " + (t - u2^" + ps + ")*u1^" + ps, ft, w));
    }
    CHECK_THROWS_AS(substitute(f, "q", f), input_error);
}

TEST_CASE("property: ring axioms and substitution inverse") {
    std::mt19937_64 rng(11);
    for (Field f : cjs::testing::small_fields()) {
        auto vars = cjs::testing::var_names(3);
        for (int i = 0; i < 60; ++i) {
            Polynomial a = random_polynomial(rng, f, vars, 5, 4);
            Polynomial b = random_polynomial(rng, f, vars, 5, 4);
            Polynomial c = random_polynomial(rng, f, vars, 5, 4);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * b == b * a);
            CHECK(P(a.to_string(), f, vars) == a);
            // monomial translation in y not involving y
            Monomial m = cjs::testing::random_monomial(rng, 3, 3);
            m[1] = 0;
            Polynomial cm = Polynomial::monomial(f, vars, m, cjs::testing::random_coeff(rng, f));
            Polynomial y = Polynomial::variable(f, vars, "y");
            CHECK(substitute(substitute(a, "y", y + cm), "y", y - cm) == a);
        }
    }
}

TEST_CASE("property: Taylor identity for Hasse derivatives") {
    auto r = cjs::testing::taylor_property(23);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.checked >= 200);
}
