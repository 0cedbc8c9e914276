#include "doctest.h"

#include <set>

#include "cjs/errors.hpp"
#include "cjs/preparation.hpp"
#include "gen.hpp"
#include "properties.hpp"

using namespace cjs;

namespace {
Polynomial P(const std::string& s, Field f, const std::vector<std::string>& v) { return parse_polynomial(s, f, v); }
mpq_class Q(long a, long b = 1) { return mpq_class(a, b); }
QPoint pt(mpq_class a, mpq_class b) { return {a, b}; }
const std::vector<std::string> UUY = {"u1", "u2", "y"};
const Frame F12{{"u1", "u2"}, {"y"}, {}};

} // namespace

TEST_CASE("polyhedron_of examples") {
    Field q = Field::rationals();
    CHECK(polyhedron_of({P("y^2+(u2+u1)^3+u1^7", q, UUY)}, F12).vertices() ==
          std::vector<QPoint>{pt(0, Q(3, 2)), pt(Q(3, 2), 0)});
    CHECK(polyhedron_of({P("y^2+u2^3+u1^7", q, UUY)}, F12).vertices() ==
          std::vector<QPoint>{pt(0, Q(3, 2)), pt(Q(7, 2), 0)});
    for (long p : {2, 3}) {
        Field ft = Field::rational_functions(static_cast<u64>(p));
        std::vector<std::string> v = {"u1", "phi", "z"};
        std::string ps = std::to_string(p);
        Frame fr{{"u1", "phi"}, {"z"}, {}};
        auto d = polyhedron_of({P("z^" + ps + "+phi*u1^" + ps, ft, v)}, fr);
        CHECK(d.vertices() == std::vector<QPoint>{pt(1, Q(1, p))});
        CHECK(delta(d) == QInf(mpq_class(1 + Q(1, p))));
        FaceNumbers fn = face_numbers(d, 1);
        CHECK(fn.alpha == QInf(1));
        CHECK(fn.beta == QInf(Q(1, p)));
        CHECK(fn.gamma == QInf(Q(1, p)));
        CHECK(fn.s.is_inf());
    }
    CHECK_THROWS_AS(polyhedron_of({P("u1*y+u2^2", q, UUY)}, F12), domain_error);
}

TEST_CASE("delta and face numbers") {
    auto a = FPolyhedron::from_points(2, {pt(0, Q(3, 2)), pt(Q(3, 2), 0)});
    CHECK(delta(a) == QInf(Q(3, 2)));
    CHECK(delta(FPolyhedron(2)).is_inf());
    auto b = FPolyhedron::from_points(2, {pt(0, Q(3, 2)), pt(Q(7, 2), 0)});
    FaceNumbers fb = face_numbers(b, 1);
    CHECK(fb.alpha == QInf(0));
    CHECK(fb.beta == QInf(Q(3, 2)));
    CHECK(fb.gamma == QInf(Q(3, 2)));
    CHECK(fb.s == QInf(Q(7, 3)));
    auto c = FPolyhedron::from_points(2, {pt(Q(1, 2), Q(3, 2)), pt(Q(5, 2), 0)});
    FaceNumbers fc = face_numbers(c, 1);
    CHECK(fc.alpha == QInf(Q(1, 2)));
    CHECK(fc.beta == QInf(Q(3, 2)));
    CHECK(fc.gamma == QInf(Q(3, 2)));
    CHECK(fc.s == QInf(Q(4, 3)));
    FaceNumbers e = face_numbers(FPolyhedron(2), 1);
    CHECK(e.alpha.is_inf());
    CHECK(e.s.is_inf());
    CHECK_THROWS_AS(face_numbers(FPolyhedron(1), 1), domain_error);
    // side 2 swaps the coordinates
    FaceNumbers f2 = face_numbers(b, 2);
    CHECK(f2.alpha == QInf(0));
    CHECK(f2.beta == QInf(Q(7, 2)));
}

TEST_CASE("vertex initial forms and solvability") {
    Field f2 = Field::prime(2);
    Polynomial f = P("y^4+y^2+u1^6+u2^5", f2, UUY);
    VertexInitial vi = vertex_initial({f}, F12, pt(3, 0));
    CHECK(vi.forms[0] == P("y^2+u1^6", f2, UUY));
    auto lam = is_solvable(vi, F12);
    REQUIRE(lam);
    CHECK((*lam)[0] == f2.one());

    Field q = Field::rationals();
    Polynomial g = P("y^2+u2^3+u1^7", q, UUY);
    VertexInitial vg = vertex_initial({g}, F12, pt(0, Q(3, 2)));
    CHECK(vg.forms[0] == P("y^2+u2^3", q, UUY));
    CHECK_FALSE(is_solvable(vg, F12));
    CHECK_THROWS_AS(vertex_initial({g}, F12, pt(1, 1)), domain_error);

    for (u64 p : {2u, 3u}) {
        Field ft = Field::rational_functions(p);
        std::string ps = std::to_string(p);
        Polynomial h = P("y^" + ps + "+t*u1^" + ps + "+u2^" + std::to_string(2 * p + 1), ft, UUY);
        VertexInitial vh = vertex_initial({h}, F12, pt(1, 0));
        CHECK(vh.forms[0] == P("y^" + ps + "+t*u1^" + ps, ft, UUY));
        CHECK_FALSE(is_solvable(vh, F12));
        // t^p is a p-th power, so the same shape becomes solvable
        Polynomial h2 = P("y^" + ps + "+t^" + ps + "*u1^" + ps + "+u2^" + std::to_string(2 * p + 1), ft, UUY);
        auto l2 = is_solvable(vertex_initial({h2}, F12, pt(1, 0)), F12);
        REQUIRE(l2);
        CHECK((*l2)[0] == ft.generator());
    }
    // characteristic zero, mixed cross term
    Polynomial r = P("(y+2*u1)^2+u2^5", q, UUY);
    auto lr = is_solvable(vertex_initial({r}, F12, pt(1, 0)), F12);
    REQUIRE(lr);
    CHECK((*lr)[0] == q.from_int(2));
}

TEST_CASE("normalization at a vertex") {
    Field q = Field::rationals();
    std::vector<std::string> v = {"u1", "y1", "y2"};
    Frame fr{{"u1"}, {"y1", "y2"}, {}};
    Polynomial f1 = P("y1^2", q, v);
    Polynomial f2 = P("y1^2*u1+y2^3+u1^4", q, v);
    CHECK(normalize_at_vertex({f1}, fr, {Q(4, 3)}) == std::vector<Polynomial>{f1});
    auto d = polyhedron_of({f1, f2}, fr);
    REQUIRE(d.vertices().size() == 1);
    auto n = normalize_at_vertex({f1, f2}, fr, d.vertices()[0]);
    CHECK(n[1] == P("y2^3+u1^4", q, v));
    CHECK(normalize_at_vertex(n, fr, polyhedron_of(n, fr).vertices()[0]) == n);
}

TEST_CASE("prepare examples") {
    Field q = Field::rationals();
    PreparationResult a = prepare({P("y^2+(u2+u1)^3+u1^7", q, UUY)}, F12);
    CHECK(a.status == PrepStatus::minimal);
    CHECK(a.polyhedron.vertices() == std::vector<QPoint>{pt(0, Q(3, 2)), pt(Q(3, 2), 0)});
    CHECK(a.log.empty());

    Field f2 = Field::prime(2);
    PreparationResult b = prepare({P("y^4+y^2+u1^6+u2^5", f2, UUY)}, F12, 5);
    CHECK(b.status == PrepStatus::budget_exhausted);
    REQUIRE(b.log.size() == 5);
    std::vector<QPoint> solved;
    for (const auto& s : b.log) solved.push_back(s.vertex);
    CHECK(solved == std::vector<QPoint>{pt(3, 0), pt(6, 0), pt(12, 0), pt(24, 0), pt(48, 0)});
    CHECK(std::find(b.notes.begin(), b.notes.end(), "axis vertex escapes to infinity") != b.notes.end());
    REQUIRE(b.stable);
    CHECK(b.stable->vertices() == std::vector<QPoint>{pt(0, Q(5, 2))});
    CHECK(b.gens[0] == P("y^4+y^2+u1^192+u2^5", f2, UUY));

    PreparationResult c = prepare({P("y", q, UUY)}, F12);
    CHECK(c.status == PrepStatus::empty);
    CHECK(c.polyhedron.empty());

    // a genuinely solvable chain ends minimal
    PreparationResult d = prepare({P("(y+u1^2+u2)^2+u1^5", q, UUY)}, F12);
    CHECK(d.status == PrepStatus::minimal);
    CHECK(d.gens[0] == P("y^2+u1^5", q, UUY));
}

TEST_CASE("sigma examples") {
    Field q = Field::rationals();
    Polynomial f = P("y^2+(u2+u1)^3+u1^7", q, UUY);
    SigmaResult s = sigma(prepare({f}, F12).gens, F12, 1);
    CHECK(s.value == QInf(Q(7, 3)));
    CHECK_FALSE(s.lower_bound);
    CHECK(s.substitutions.size() == 1);

    Polynomial g = P("y^2+u1*u2^3+u1^5", q, UUY);
    CHECK(sigma({g}, F12, 1).value == QInf(Q(4, 3)));

    for (u64 p : {2u, 3u}) {
        Field ft = Field::rational_functions(p);
        std::vector<std::string> v = {"u1", "phi", "z"};
        std::string ps = std::to_string(p);
        Frame fr{{"u1", "phi"}, {"z"}, {}};
        CHECK(sigma({P("z^" + ps + "+phi*u1^" + ps, ft, v)}, fr, 1).value == QInf(1));
    }
}

TEST_CASE("in_delta") {
    Field q = Field::rationals();
    CHECK(in_delta({P("y^2+u2^3+u1^7", q, UUY)}, F12, QInf(Q(3, 2)))[0] == P("y^2+u2^3", q, UUY));
    CHECK(in_delta({P("y^2+(u2+u1)^3+u1^7", q, UUY)}, F12, QInf(Q(3, 2)))[0] == P("y^2+(u2+u1)^3", q, UUY));
    CHECK(in_delta({P("y^2", q, UUY)}, F12, QInf(Q(3, 2)))[0] == P("y^2", q, UUY));
    CHECK_THROWS_AS(in_delta({P("y^2", q, UUY)}, F12, QInf::infinity()), domain_error);
}

TEST_CASE("property: hull equals brute-force oracle") {
    auto r = cjs::testing::hull_property(31);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.checked >= 200);
}

TEST_CASE("property: preparation is monotone and solving removes the vertex") {
    auto r = cjs::testing::preparation_property(47);
    INFO(r.first_failure);
    CHECK(r.failures == 0);
    CHECK(r.checked >= 200);
}
