#include "doctest.h"

#include <numeric>
#include <random>

#include "cjs/driver.hpp"
#include "cjs/errors.hpp"
#include "gen.hpp"

using namespace cjs;

namespace {
Polynomial P(const std::string& s, Field f, const std::vector<std::string>& v) { return parse_polynomial(s, f, v); }

ChartState root_of(const std::string& f, Field k, const std::vector<std::string>& vars, std::vector<std::string> u,
                   std::vector<std::string> y, LabelMode mode = LabelMode::inherit) {
    return make_root({P(f, k, vars)}, Frame{std::move(u), std::move(y), {}}, mode);
}

std::vector<std::pair<std::string, int>> labels(const ChartState& c) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& s : c.stratum) out.emplace_back(s.to_string(), s.label);
    return out;
}

// Follows the chart whose generator matches `g` among the children of `id`.
int child_with(const ResolutionTrace& t, int id, const Polynomial& g) {
    for (const auto& ev : t.events)
        if (ev.chart == id)
            for (int c : ev.children)
                if (t.charts[c].vars() == g.vars() && t.charts[c].gens[0] == g) return c;
    return -1;
}
} // namespace

TEST_CASE("maximal stratum components") {
    Field q = Field::rationals();
    ChartState a = root_of("z^3+x^2*y^2*z+x^3*y^3", q, {"x", "y", "z"}, {"x", "y"}, {"z"});
    CHECK(max_stratum(a) == std::vector<std::set<std::string>>{{"x", "z"}, {"y", "z"}});
    CHECK(labels(a) == std::vector<std::pair<std::string, int>>{{"V(x,z)", 0}, {"V(y,z)", 0}});

    ChartState pt = root_of("x^2+y^3+z^3", q, {"x", "y", "z"}, {"y", "z"}, {"x"});
    CHECK(max_stratum(pt) == std::vector<std::set<std::string>>{{"x", "y", "z"}});

    // regular, but tangent to an old boundary component
    ChartState tan;
    tan.gens = {P("x+y^2", q, {"x", "y", "z"})};
    tan.frame = Frame{{"x", "z"}, {"y"}, {{P("x", q, {"x", "y", "z"}), BoundaryStatus::old_component, 0}}};
    std::string why;
    CHECK(is_terminal(tan, &why));
    CHECK(why == "regular, boundary not normal crossings");
    CHECK(max_stratum(tan) == std::vector<std::set<std::string>>{{"x", "y"}});

    // the cusp curve x^2 = y^3 lies in the multiplicity-two locus of z^2 + (x^2 - y^3)^2
    ChartState cusp;
    cusp.gens = {P("z^2+x^4-2*x^2*y^3+y^6", q, {"x", "y", "z"})};
    cusp.frame = Frame{{"x", "y"}, {"z"}, {}};
    CHECK_THROWS_AS(max_stratum(cusp), scope_error);
    CHECK_THROWS_AS(make_root(cusp.gens, cusp.frame), scope_error);
}

TEST_CASE("labels along the inheriting chain") {
    Field q = Field::rationals();
    ChartState root = root_of("x^2+y^9*z^10", q, {"x", "y", "z"}, {"y", "z"}, {"x"});
    CHECK(labels(root) == std::vector<std::pair<std::string, int>>{{"V(x,y)", 0}, {"V(x,z)", 0}});
    CenterChoice c0 = select_center(root);
    CHECK(c0.center.kind == CenterKind::closed_point);
    CHECK(c0.tag == CaseTag::III);

    ResolutionTrace t = resolve(root);
    CHECK(t.status == TraceStatus::resolved);
    int c1 = child_with(t, 0, P("x'^2+y'^9*z^17", q, {"x'", "y'", "z"}));
    REQUIRE(c1 > 0);
    CHECK(labels(t.charts[c1]) == std::vector<std::pair<std::string, int>>{{"V(x',y')", 0}, {"V(x',z)", 1}});
    CenterChoice s1 = select_center(t.charts[c1]);
    CHECK(s1.center.vars == std::set<std::string>{"x'", "y'"});
    CHECK(s1.center.label == 0);

    int c2 = child_with(t, c1, P("x''^2+y'^7*z^17", q, {"x''", "y'", "z"}));
    REQUIRE(c2 > 0);
    CHECK(labels(t.charts[c2]) == std::vector<std::pair<std::string, int>>{{"V(x'',y')", 0}, {"V(x'',z)", 1}});
    MonotoneReport m = check_monotone(t);
    INFO(m.failure);
    CHECK(m.ok);
}

TEST_CASE("labels without inheritance") {
    Field q = Field::rationals();
    ChartState root = root_of("x^2+y^9*z^10", q, {"x", "y", "z"}, {"y", "z"}, {"x"}, LabelMode::fresh);
    DriverOptions opt;
    opt.labels = LabelMode::fresh;
    ResolutionTrace t = resolve(root, opt);
    CHECK(t.status == TraceStatus::resolved);
    int c1 = child_with(t, 0, P("x'^2+y'^9*z^17", q, {"x'", "y'", "z"}));
    REQUIRE(c1 > 0);
    int c2 = child_with(t, c1, P("x''^2+y'^7*z^17", q, {"x''", "y'", "z"}));
    REQUIRE(c2 > 0);
    CHECK(labels(t.charts[c2]) == std::vector<std::pair<std::string, int>>{{"V(x'',z)", 1}, {"V(x'',y')", 2}});
    int c3 = child_with(t, c2, P("x'''^2+y'^7*z^15", q, {"x'''", "y'", "z"}));
    REQUIRE(c3 > 0);
    int c4 = child_with(t, c3, P("x''''^2+y'^5*z^15", q, {"x''''", "y'", "z"}));
    CHECK(c4 > 0);
}

TEST_CASE("center selection") {
    Field q = Field::rationals();
    std::vector<std::string> v = {"x'", "y'", "z"};
    ChartState c;
    c.gens = {P("x'^2+y'^9*z^17", q, v)};
    c.frame = Frame{{"y'", "z"}, {"x'"}, {}};
    c.stratum = {{{"x'", "z"}, 1, false}};
    CenterChoice ch = select_center(c);
    CHECK(ch.center.vars == std::set<std::string>{"x'", "z"});
    CHECK(ch.center.label == 1);
    CHECK(ch.tag == CaseTag::IV);

    ChartState thick = root_of("x^3", Field::prime(2), {"x", "y", "z"}, {"y", "z"}, {"x"});
    CHECK_THROWS_AS(select_center(thick), scope_error);
    CHECK(resolve(thick).status == TraceStatus::scope_error);
}

TEST_CASE("regular input needs no blow-up") {
    Field q = Field::rationals();
    ChartState reg = root_of("x+y^2*z", q, {"x", "y", "z"}, {"y", "z"}, {"x"});
    std::string why;
    CHECK(is_terminal(reg, &why));
    CHECK(why == "regular with normal crossings");
    ResolutionTrace t = resolve(reg);
    CHECK(t.events.empty());
    CHECK(t.status == TraceStatus::resolved);
    CHECK(t.iota[0]->ic.tag == CaseTag::V);
}

TEST_CASE("monotone check rejects a corrupted trace") {
    Field q = Field::rationals();
    ResolutionTrace t = resolve(root_of("x^2+y^3+z^5", q, {"x", "y", "z"}, {"y", "z"}, {"x"}));
    REQUIRE(t.status == TraceStatus::resolved);
    MonotoneReport r = check_monotone(t);
    INFO(r.failure);
    CHECK(r.ok);
    CHECK(r.checked > 0);
    ResolutionTrace bad = t;
    for (auto& ev : bad.events)
        for (auto& p : ev.points)
            if (p.on_X) {
                p.order = Order::equal;
                goto done;
            }
done:
    MonotoneReport rb = check_monotone(bad);
    CHECK_FALSE(rb.ok);
    CHECK(rb.failure.find("equal") != std::string::npos);
}

TEST_CASE("trace export") {
    Field q = Field::rationals();
    ResolutionTrace t = resolve(root_of("x^2+y^3", q, {"x", "y"}, {"y"}, {"x"}));
    auto j = to_json(t);
    CHECK(j["status"] == "resolved");
    CHECK(j["charts"].size() == t.charts.size());
    CHECK(j["monotone"]["ok"] == true);
    std::string dot = trace_to_dot(j);
    CHECK(dot.rfind("digraph trace {", 0) == 0);
    CHECK(dot.find("c0 -> c1") != std::string::npos);
    CHECK(to_json(resolve(root_of("x^2+y^3", q, {"x", "y"}, {"y"}, {"x"}))).dump() == j.dump());
}

namespace {
// x^n + c1*y^a*z^b [+ c2*y^c*z^d] with total degree of each tail term at least n
Polynomial random_surface(std::mt19937_64& rng, Field f, int terms) {
    const std::vector<std::string> vars = {"x", "y", "z"};
    std::uniform_int_distribution<int> n_d(2, 4), e_d(0, 7);
    Polynomial g(f, vars);
    int n = n_d(rng);
    g.add_term({n, 0, 0}, f.one());
    for (int t = 0; t < terms; ++t) {
        int a = e_d(rng), b = e_d(rng);
        if (a + b < n) b = n - a;
        g.add_term({0, a, b}, cjs::testing::random_coeff(rng, f));
    }
    return g;
}

NuStar a_hs(const ResolutionTrace& t, int id) { return t.charts[id].hs(); }

bool regular_or_off(const Polynomial& g) {
    if (!g.value_at_origin().is_zero()) return true;
    for (const auto& [m, c] : g.terms())
        if (std::accumulate(m.begin(), m.end(), 0) == 1) return true;
    return false;
}
} // namespace

TEST_CASE("property: random surfaces resolve with decreasing invariant") {
    std::mt19937_64 rng(7321);
    std::vector<Field> fields = {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)};
    int checked = 0, scope = 0;
    for (int iter = 0; iter < 400 && checked < 200; ++iter) {
        Field f = fields[iter % 4];
        Polynomial g = random_surface(rng, f, 1 + iter % 2);
        ResolutionTrace t;
        try {
            t = resolve(make_root({g}, Frame{{"y", "z"}, {"x"}, {}}));
        } catch (const scope_error&) {
            ++scope;
            continue;
        }
        if (t.status == TraceStatus::scope_error) {
            ++scope;
            continue;
        }
        INFO(f.describe(), " ", g.to_string());
        CHECK(t.status == TraceStatus::resolved);
        MonotoneReport m = check_monotone(t);
        INFO(m.failure);
        CHECK(m.ok);
        for (size_t i = 0; i < t.charts.size(); ++i) {
            if (t.terminal[i].empty()) continue;
            CHECK(regular_or_off(t.charts[i].gens[0]));
            CHECK(t.charts[i].step <= 64);
        }
        for (const auto& ev : t.events) {
            const ChartState& par = t.charts[ev.chart];
            bool parent_has_original = std::any_of(par.stratum.begin(), par.stratum.end(),
                                                   [](const StratumComponent& s) { return s.original; });
            for (const auto& p : ev.points) {
                const ChartState& ch = t.charts[p.child];
                // blowing up a point: a chart whose direction moves the initial form has no near origin
                Polynomial in = initial_form(par.gens[0]);
                int ci = *in.find_var(p.chart_var);
                bool y_chart = std::any_of(in.terms().begin(), in.terms().end(),
                                           [&](const auto& term) { return term.first[ci] > 0; });
                if (!p.on_X || !t.iota[p.child]) continue;
                if (y_chart && ev.center.kind == CenterKind::closed_point) CHECK(p.classification == "dropped");
                if (p.classification != "dropped") CHECK(compare(a_hs(t, p.child), a_hs(t, ev.chart)) == 0);
                const Iota0& a = t.iota[p.child]->i0;
                const Iota0& b = t.iota[ev.chart]->i0;
                int c = compare(a.hs, b.hs);
                bool reset = c < 0 || (c == 0 && a.old_count < b.old_count);
                bool child_has_original = std::any_of(ch.stratum.begin(), ch.stratum.end(),
                                                      [](const StratumComponent& s) { return s.original; });
                if (!reset && !parent_has_original) CHECK_FALSE(child_has_original);
                for (const auto& s : ch.stratum)
                    if (!s.original && s.vars.size() == 2)
                        CHECK(permissible_check(ch, make_center(s.vars, ch.vars())).ok);
            }
        }
        ++checked;
    }
    CHECK(checked >= 200);
    CHECK(scope < 40);
}
