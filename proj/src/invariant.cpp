#include "cjs/invariant.hpp"

#include <algorithm>

#include "cjs/errors.hpp"
#include "cjs/preparation.hpp"

namespace cjs {

std::string to_string(CaseTag c) {
    switch (c) {
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::III: return "III";
    case CaseTag::IV: return "IV";
    case CaseTag::V: return "V";
    }
    return "?";
}

std::string to_string(Order o) {
    switch (o) {
    case Order::less: return "less";
    case Order::equal: return "equal";
    case Order::greater: return "greater";
    case Order::incomparable: return "incomparable";
    }
    return "?";
}

namespace {

std::vector<Polynomial> initials(const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> in;
    for (const auto& g : gens) in.push_back(initial_form(g));
    return in;
}

bool regular(const NuStar& hs) {
    return !hs.orders.empty() && std::all_of(hs.orders.begin(), hs.orders.end(), [](long o) { return o == 1; });
}

// g lies in the prime ideal <S>: every term contains a variable of S.
bool in_coordinate_prime(const Polynomial& g, const std::set<std::string>& S) {
    std::vector<int> idx;
    for (const auto& s : S)
        if (auto i = g.find_var(s)) idx.push_back(*i);
    for (const auto& [m, c] : g.terms()) {
        bool hit = false;
        for (int i : idx) hit = hit || m[i] > 0;
        if (!hit) return false;
    }
    return true;
}

QInf prepared_delta(const std::vector<Polynomial>& gens, const Frame& frame, const Directrix& dir, int budget) {
    AdaptedFrame a = adapt_frame(gens, frame, dir);
    try {
        return delta(prepare(a.gens, a.frame, budget).polyhedron);
    } catch (const domain_error& e) {
        throw scope_error(std::string("characteristic polyhedron undefined: ") + e.what());
    }
}

template <class T> Order lex(const T& a, const T& b) {
    if (a < b) return Order::less;
    if (b < a) return Order::greater;
    return Order::equal;
}

Order chain(std::initializer_list<Order> parts) {
    for (Order o : parts)
        if (o != Order::equal) return o;
    return Order::equal;
}

Order nustar_order(const NuStar& a, const NuStar& b) {
    int c = compare(a, b);
    return c < 0 ? Order::less : c > 0 ? Order::greater : Order::equal;
}

} // namespace

Iota0 iota0(const ChartState& chart) {
    Iota0 r;
    r.hs = chart.hs();
    r.old_count = static_cast<long>(chart.frame.old_at_origin().size());
    r.e = static_cast<long>(compute_directrix(initials(chart.gens), chart.vars()).e);
    r.eO = static_cast<long>(directrix_of_JO(chart.gens, chart.frame).e);
    return r;
}

CaseTag classify_case(const ChartState& chart, const std::vector<StratumComponent>& C) {
    if (regular(chart.hs())) return CaseTag::V;
    if (C.empty()) return CaseTag::IV;
    size_t n = chart.vars().size();
    size_t dim_x = n - chart.gens.size();
    for (const auto& c : C)
        if (n - c.vars.size() >= dim_x) return CaseTag::V;
    if (C.size() > 1) return CaseTag::III;
    const auto& c = C.front();
    if (c.vars.size() == n) return CaseTag::I;
    return permissible_check(chart, make_center(c.vars, chart.vars())).ok ? CaseTag::II : CaseTag::III;
}

std::vector<Polynomial> union_ideal(const std::vector<StratumComponent>& C, Field f, const std::vector<std::string>& vars) {
    if (C.empty()) throw domain_error("empty union");
    std::vector<std::string> pool;
    for (const auto& c : C)
        for (const auto& v : c.vars)
            if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
    if (pool.size() > 16) throw scope_error("too many variables in the stratum union");
    // minimal transversals of the family of variable sets
    std::vector<unsigned> hits;
    for (unsigned mask = 1; mask < (1u << pool.size()); ++mask) {
        bool ok = std::all_of(C.begin(), C.end(), [&](const StratumComponent& c) {
            for (size_t i = 0; i < pool.size(); ++i)
                if ((mask >> i & 1) && c.vars.count(pool[i])) return true;
            return false;
        });
        if (ok) hits.push_back(mask);
    }
    std::vector<Polynomial> out;
    std::vector<unsigned> minimal;
    std::sort(hits.begin(), hits.end(), [](unsigned a, unsigned b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (unsigned h : hits) {
        if (std::any_of(minimal.begin(), minimal.end(), [&](unsigned m) { return (m & h) == m; })) continue;
        minimal.push_back(h);
        Monomial m(vars.size(), 0);
        for (size_t i = 0; i < pool.size(); ++i)
            if (h >> i & 1) m[std::find(vars.begin(), vars.end(), pool[i]) - vars.begin()] = 1;
        out.push_back(Polynomial::monomial(f, vars, m, f.one()));
    }
    return out;
}

IotaC iota_c(const ChartState& chart, CaseTag tag, const std::vector<StratumComponent>& C) {
    IotaC r;
    r.tag = tag;
    if (tag == CaseTag::I || tag == CaseTag::II) r.tail = 1;
    if (tag != CaseTag::III) return r;
    const auto& vars = chart.vars();
    for (const auto& c : C)
        for (const auto& v : c.vars)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                throw scope_error("stratum component " + c.to_string() + " is not a coordinate component of the chart");
    std::vector<Polynomial> gens = union_ideal(C, chart.field(), vars);
    for (const auto& g : gens) r.ideal.push_back(g.to_string());
    r.hs = nu_star(gens);
    Frame fc = chart.frame;
    fc.boundary.clear();
    for (const auto& b : chart.frame.boundary) {
        if (!b.is_old() || !b.through_origin()) continue;
        Polynomial g = b.generator.with_vars(vars);
        if (std::all_of(C.begin(), C.end(), [&](const StratumComponent& c) { return in_coordinate_prime(g, c.vars); }))
            fc.boundary.push_back(b);
    }
    r.old_count = static_cast<long>(fc.boundary.size());
    Directrix dir = compute_directrix(gens, vars);
    Directrix dirO = directrix_of_JO(gens, fc);
    r.e = static_cast<long>(dir.e);
    r.eO = static_cast<long>(dirO.e);
    r.delta = prepared_delta(gens, fc, dir, default_prepare_budget);
    r.deltaO = prepared_delta(compose_with_old_boundary(gens, fc), fc, dirO, default_prepare_budget);
    return r;
}

IotaPoly iota_poly(const ChartState& chart, bool no_original_left, int prepare_budget, int sigma_budget) {
    IotaPoly r;
    const QInf zero(0L), inf = QInf::infinity();
    r.v = {zero, zero, zero, zero};
    Directrix dir = directrix_of_JO(chart.gens, chart.frame);
    if (dir.e == 0) return r;
    if (dir.e > 2) throw scope_error("e^O = " + std::to_string(dir.e) + " exceeds the surface case");
    std::vector<Polynomial> J = compose_with_old_boundary(chart.gens, chart.frame);
    AdaptedFrame a = adapt_frame(J, chart.frame, dir);
    PreparationResult pr;
    auto run_prepare = [&] {
        try {
            pr = prepare(a.gens, a.frame, prepare_budget);
        } catch (const domain_error& e) {
            throw scope_error(std::string("characteristic polyhedron undefined: ") + e.what());
        }
        if (pr.status == PrepStatus::budget_exhausted) r.notes.push_back("preparation budget exhausted");
        for (const auto& n : pr.notes) r.notes.push_back(n);
    };
    if (dir.e == 1) {
        run_prepare();
        r.v[3] = delta(pr.polyhedron);
        return r;
    }
    r.v = {inf, inf, inf, inf};
    if (!no_original_left) {
        r.notes.push_back("strict transforms of the original stratum remain");
        return r;
    }
    std::vector<int> sides;
    for (const auto* b : a.frame.new_at_origin()) {
        auto cv = b->coordinate();
        auto it = cv ? std::find(a.frame.u.begin(), a.frame.u.end(), *cv) : a.frame.u.end();
        if (it == a.frame.u.end())
            throw scope_error("new boundary component " + b->generator.to_string() + " is not a u-coordinate");
        sides.push_back(static_cast<int>(it - a.frame.u.begin()) + 1);
    }
    if (sides.empty()) {
        r.notes.push_back("no new boundary component at the point");
        return r;
    }
    run_prepare();
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
    bool first = true;
    for (int side : sides) {
        FaceNumbers fn = face_numbers(pr.polyhedron, side);
        SigmaResult sg = sigma(pr.gens, a.frame, side, sigma_budget);
        std::array<QInf, 4> t = {fn.beta, fn.gamma, sg.value, fn.alpha};
        if (first || std::lexicographical_compare(t.begin(), t.end(), r.v.begin(), r.v.end())) {
            r.v = t;
            r.sigma_lower_bound = sg.lower_bound;
        }
        first = false;
    }
    return r;
}

Iota compute_iota(const ChartState& chart, const std::vector<StratumComponent>& C, int prepare_budget,
                  int sigma_budget) {
    Iota r;
    r.i0 = iota0(chart);
    CaseTag tag = classify_case(chart, C);
    r.ic = iota_c(chart, tag, C);
    if (r.i0.hs.is_regular()) {
        r.ip.v.fill(QInf(0L));
        r.ip.notes.push_back("resolution process is finished");
        return r;
    }
    r.ip = iota_poly(chart, C.empty(), prepare_budget, sigma_budget);
    return r;
}

Order compare(const Iota0& a, const Iota0& b) {
    return chain({nustar_order(a.hs, b.hs), lex(a.old_count, b.old_count), lex(a.e, b.e), lex(a.eO, b.eO)});
}

Order compare(const IotaC& a, const IotaC& b) {
    bool sa = a.tag == CaseTag::III, sb = b.tag == CaseTag::III;
    // the zero sentinel sits below every order vector
    Order head = sa && sb ? nustar_order(a.hs, b.hs) : lex(sa, sb);
    return chain({head, lex(a.old_count, b.old_count), lex(a.e, b.e), lex(a.eO, b.eO), lex(a.delta, b.delta),
                  lex(a.deltaO, b.deltaO), lex(a.tail, b.tail)});
}

Order compare(const IotaPoly& a, const IotaPoly& b) {
    return chain({lex(a.v[0], b.v[0]), lex(a.v[1], b.v[1]), lex(a.v[2], b.v[2]), lex(a.v[3], b.v[3])});
}

Order compare_iota(const Iota& a, const Iota& b) { return chain({compare(a.i0, b.i0), compare(a.ic, b.ic), compare(a.ip, b.ip)}); }

nlohmann::ordered_json to_json(const QInf& q) { return q.to_string(); }

nlohmann::ordered_json to_json(const Iota0& i) {
    nlohmann::ordered_json j;
    j["hs"] = i.hs.orders;
    j["old_count"] = i.old_count;
    j["e"] = i.e;
    j["eO"] = i.eO;
    return j;
}

nlohmann::ordered_json to_json(const IotaC& i) {
    nlohmann::ordered_json j;
    j["case"] = to_string(i.tag);
    if (i.tag == CaseTag::III)
        j["hs"] = i.hs.orders;
    else
        j["hs"] = "zero";
    j["old_count"] = i.old_count;
    j["e"] = i.e;
    j["eO"] = i.eO;
    j["delta"] = to_json(i.delta);
    j["deltaO"] = to_json(i.deltaO);
    j["tail"] = i.tail;
    if (!i.ideal.empty()) j["ideal"] = i.ideal;
    return j;
}

nlohmann::ordered_json to_json(const IotaPoly& i) {
    nlohmann::ordered_json j;
    j["beta"] = to_json(i.v[0]);
    j["gamma"] = to_json(i.v[1]);
    j["sigma"] = to_json(i.v[2]);
    j["alpha"] = to_json(i.v[3]);
    j["sigma_lower_bound"] = i.sigma_lower_bound;
    if (!i.notes.empty()) j["notes"] = i.notes;
    return j;
}

nlohmann::ordered_json to_json(const Iota& i) {
    nlohmann::ordered_json j;
    j["iota0"] = to_json(i.i0);
    j["iotac"] = to_json(i.ic);
    j["iotapoly"] = to_json(i.ip);
    return j;
}

} // namespace cjs
