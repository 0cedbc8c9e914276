#include "cjs/driver.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "cjs/errors.hpp"
#include "cjs/linalg.hpp"

namespace cjs {

std::string to_string(LabelMode m) { return m == LabelMode::inherit ? "inherit" : "fresh"; }

LabelMode parse_label_mode(const std::string& s) {
    if (s == "inherit") return LabelMode::inherit;
    if (s == "fresh" || s == "no-inheritance") return LabelMode::fresh;
    throw input_error("unknown label mode '" + s + "'");
}

std::string to_string(TraceStatus s) {
    switch (s) {
    case TraceStatus::resolved: return "resolved";
    case TraceStatus::step_limit: return "step_limit";
    case TraceStatus::scope_error: return "scope_error";
    }
    return "?";
}

namespace {

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

using UCoeffs = std::vector<Coeff>; // low to high
using BCoeffs = std::vector<UCoeffs>; // in b over k[a], low to high

void trim(UCoeffs& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

void trim(BCoeffs& p) {
    while (!p.empty() && p.back().empty()) p.pop_back();
}

// Quotient and remainder of a by b != 0.
std::pair<UCoeffs, UCoeffs> udivmod(UCoeffs a, const UCoeffs& b) {
    Coeff inv = b.back().inverse();
    UCoeffs q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, b.back().field().zero());
    while (a.size() >= b.size()) {
        Coeff c = a.back() * inv;
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    return {q, a};
}

UCoeffs ugcd(UCoeffs a, UCoeffs b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UCoeffs r = udivmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UCoeffs umul(const UCoeffs& a, const UCoeffs& b) {
    if (a.empty() || b.empty()) return {};
    UCoeffs r(a.size() + b.size() - 1, a[0].field().zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UCoeffs usub(UCoeffs a, const UCoeffs& b, const Coeff& zero) {
    if (a.size() < b.size()) a.resize(b.size(), zero);
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

BCoeffs primitive(BCoeffs p) {
    trim(p);
    UCoeffs c;
    for (const auto& x : p) c = c.empty() ? x : ugcd(c, x);
    if (c.empty()) return p;
    for (auto& x : p)
        if (!x.empty()) x = udivmod(x, c).first;
    return p;
}

// Pseudo-remainder of f by g in b.
BCoeffs prem(BCoeffs f, const BCoeffs& g, const Coeff& zero) {
    const UCoeffs& lg = g.back();
    while (f.size() >= g.size()) {
        UCoeffs lf = f.back();
        size_t shift = f.size() - g.size();
        for (auto& x : f) x = umul(x, lg);
        for (size_t i = 0; i < g.size(); ++i) f[shift + i] = usub(f[shift + i], umul(lf, g[i]), zero);
        trim(f);
    }
    return f;
}

BCoeffs bgcd(BCoeffs f, BCoeffs g, const Coeff& zero) {
    f = primitive(f);
    g = primitive(g);
    if (f.size() < g.size()) std::swap(f, g);
    while (!g.empty()) {
        BCoeffs r = primitive(prem(f, g, zero));
        f = std::move(g);
        g = std::move(r);
    }
    return f;
}

// Whether the common zero set of the plane polynomials (in variables ia, ib
// only) contains a curve through the origin other than the two axes. The
// common zeros of plane curves are the zeros of their gcd plus finitely many
// points, and a pure factor in a or b through the origin is an axis.
bool plane_curve_through_origin(const std::vector<Polynomial>& hs, int ia, int ib) {
    const Coeff zero = hs.front().field().zero();
    BCoeffs acc;
    bool first = true;
    for (const auto& h : hs) {
        BCoeffs p;
        for (const auto& [m, c] : h.terms()) {
            size_t j = m[ib], i = m[ia];
            if (p.size() <= j) p.resize(j + 1);
            if (p[j].size() <= i) p[j].resize(i + 1, zero);
            p[j][i] += c;
        }
        for (auto& x : p) trim(x);
        trim(p);
        acc = first ? primitive(p) : bgcd(acc, p, zero);
        first = false;
        if (acc.size() < 2) return false;
    }
    size_t low = 0;
    while (low < acc.size() && acc[low].empty()) ++low;
    if (acc.size() - low < 2) return false;
    return acc[low][0].is_zero();
}

bool is_regular(const ChartState& c) {
    for (const auto& g : c.gens)
        if (ord(g) != 1) return false;
    return true;
}

// (ν*, |O|) comparison at the origins.
int compare_HO(const ChartState& a, const ChartState& b) {
    int c = compare(a.hs(), b.hs());
    if (c) return c;
    long oa = static_cast<long>(a.frame.old_at_origin().size()), ob = static_cast<long>(b.frame.old_at_origin().size());
    return oa < ob ? -1 : oa > ob ? 1 : 0;
}

} // namespace

std::vector<Polynomial> stratum_equations(const ChartState& chart) {
    const auto& vars = chart.vars();
    std::vector<Polynomial> out;
    for (const auto& g : chart.gens) {
        long nu = *ord(g);
        for (const auto& a : monomials_up_to_degree(vars.size(), static_cast<int>(nu - 1))) {
            Polynomial d = hasse_derivative(g, a);
            if (!d.is_zero()) out.push_back(d);
        }
    }
    for (const auto* b : chart.frame.old_at_origin()) out.push_back(b->generator.with_vars(vars));
    return out;
}

std::vector<std::set<std::string>> max_stratum(const ChartState& chart) {
    const auto& vars = chart.vars();
    size_t n = vars.size();
    if (n > 12) throw scope_error("too many variables for the stratum search");
    std::vector<Polynomial> eqs = stratum_equations(chart);
    for (const auto& e : eqs)
        if (!e.value_at_origin().is_zero()) return {};
    std::vector<unsigned> found;
    std::vector<unsigned> masks(1u << n);
    std::iota(masks.begin(), masks.end(), 0u);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    auto to_set = [&](unsigned m) {
        std::set<std::string> s;
        for (size_t i = 0; i < n; ++i)
            if (m >> i & 1) s.insert(vars[i]);
        return s;
    };
    for (unsigned m : masks) {
        if (m == 0) continue;
        if (std::any_of(found.begin(), found.end(), [&](unsigned f) { return (f & m) == f; })) continue;
        auto S = to_set(m);
        if (std::all_of(eqs.begin(), eqs.end(), [&](const Polynomial& e) { return in_coordinate_prime(e, S); }))
            found.push_back(m);
    }
    // non-coordinate curves through the origin inside coordinate planes
    unsigned full = (1u << n) - 1;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            unsigned S = full & ~(1u << a) & ~(1u << b);
            if (std::any_of(found.begin(), found.end(), [&](unsigned f) { return (f & S) == f; })) continue;
            std::vector<Polynomial> restricted;
            for (const auto& e : eqs) {
                Polynomial r(e.field(), vars);
                for (const auto& [m, c] : e.terms()) {
                    bool off = false;
                    for (size_t i = 0; i < n; ++i) off = off || ((S >> i & 1) && m[i] > 0);
                    if (!off) r.add_term(m, c);
                }
                if (!r.is_zero()) restricted.push_back(r);
            }
            if (!restricted.empty() && plane_curve_through_origin(restricted, static_cast<int>(a), static_cast<int>(b)))
                throw scope_error("the maximal stratum may contain a non-coordinate curve in the (" + vars[a] + "," +
                                  vars[b] + ")-plane; supply a prepared chart");
        }
    std::vector<std::set<std::string>> out;
    for (unsigned m : found) out.push_back(to_set(m));
    return out;
}

void label_components(ChartState& chart, const ChartState* parent, LabelMode mode) {
    chart.stratum.clear();
    if (is_terminal(chart)) return;
    auto comps = max_stratum(chart);
    bool reset = parent == nullptr || compare_HO(chart, *parent) < 0;
    size_t n = chart.vars().size();
    for (auto& S : comps) {
        StratumComponent sc{S, 0, true};
        if (!reset) {
            sc.original = false;
            if (!S.count(chart.chart_var)) {
                auto it = std::find_if(chart.inherited.begin(), chart.inherited.end(),
                                       [&](const StratumComponent& p) { return p.vars == S; });
                if (it != chart.inherited.end()) {
                    sc.label = it->label;
                    sc.original = it->original;
                } else {
                    sc.label = chart.step;
                    chart.notes.push_back("component " + sc.to_string() + " off the exceptional divisor has no parent");
                }
            } else {
                const Center& cen = *chart.center;
                bool dominates = cen.kind == CenterKind::closed_point || n - S.size() >= n - cen.vars.size();
                if (mode == LabelMode::inherit && cen.label && dominates)
                    sc.label = *cen.label;
                else
                    sc.label = chart.step;
            }
        }
        chart.stratum.push_back(sc);
    }
    std::stable_sort(chart.stratum.begin(), chart.stratum.end(), [](const auto& a, const auto& b) {
        return a.label != b.label ? a.label < b.label : a.vars < b.vars;
    });
}

ChartState make_root(std::vector<Polynomial> gens, Frame frame, LabelMode mode) {
    if (gens.empty()) throw input_error("no generators");
    ChartState c;
    c.gens = std::move(gens);
    c.frame = std::move(frame);
    c.frame.validate(c.vars());
    label_components(c, nullptr, mode);
    return c;
}

bool is_terminal(const ChartState& chart, std::string* why) {
    auto say = [&](const std::string& s) {
        if (why) *why = s;
        return true;
    };
    if (!chart.origin_on_X()) return say("origin not on X");
    if (!is_regular(chart)) return false;
    const auto& vars = chart.vars();
    EchelonBuilder eb(chart.field(), vars.size(), {});
    size_t count = 0;
    bool independent = true;
    auto add = [&](const Polynomial& g) {
        ++count;
        independent = eb.add(linear_row(initial_form(g.with_vars(vars)))) && independent;
    };
    for (const auto& g : chart.gens) add(g);
    for (const auto& b : chart.frame.boundary)
        if (b.through_origin()) add(b.generator);
    return say(independent ? "regular with normal crossings" : "regular, boundary not normal crossings");
}

CenterChoice select_center(const ChartState& chart) {
    if (chart.stratum.empty()) throw scope_error("no stratum component through the origin");
    for (const auto& s : chart.stratum)
        if (s.vars.size() <= chart.gens.size())
            throw scope_error("X is not reduced along " + s.to_string());
    std::vector<StratumComponent> C;
    for (const auto& s : chart.stratum)
        if (s.original) C.push_back(s);
    CenterChoice out;
    out.tag = classify_case(chart, C);
    const auto& vars = chart.vars();
    int lo = chart.stratum.front().label;
    std::vector<const StratumComponent*> low;
    for (const auto& s : chart.stratum)
        if (s.label == lo) low.push_back(&s);
    if (low.size() == 1) {
        Center c = make_center(low[0]->vars, vars, lo);
        if (permissible_check(chart, c).ok) {
            out.center = c;
            out.reason = "component of smallest label " + std::to_string(lo);
            return out;
        }
        out.reason = "component of smallest label is not permissible";
    } else {
        out.reason = std::to_string(low.size()) + " components of smallest label " + std::to_string(lo) + " meet";
    }
    std::set<std::string> all(vars.begin(), vars.end());
    out.center = make_center(all, vars);
    auto rep = permissible_check(chart, out.center);
    if (!rep.ok) throw scope_error("the origin is not a permissible center: " + rep.violations.front());
    return out;
}

ResolutionTrace resolve(const ChartState& root_in, const DriverOptions& opt) {
    ResolutionTrace tr;
    tr.labels = opt.labels;
    ChartState root = root_in;
    root.id = 0;
    root.parent = -1;
    if (root.vars().size() - root.gens.size() > 2)
        throw scope_error("resolution is implemented for dimension at most two");
    auto iota_at = [&](const ChartState& c) -> std::optional<Iota> {
        if (!c.origin_on_X()) return std::nullopt;
        std::vector<StratumComponent> C;
        for (const auto& s : c.stratum)
            if (s.original) C.push_back(s);
        return compute_iota(c, C, opt.prepare_budget, opt.sigma_budget);
    };
    try {
        if (root.stratum.empty()) label_components(root, nullptr, opt.labels);
        tr.charts.push_back(root);
        tr.iota.push_back(iota_at(root));
        tr.terminal.push_back("");
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int id = queue.front();
            queue.pop_front();
            std::string why;
            if (is_terminal(tr.charts[id], &why)) {
                tr.terminal[id] = why;
                continue;
            }
            if (tr.charts[id].step >= opt.max_steps || static_cast<int>(tr.charts.size()) >= opt.max_charts) {
                tr.terminal[id] = "limit reached";
                tr.status = TraceStatus::step_limit;
                continue;
            }
            CenterChoice choice = select_center(tr.charts[id]);
            Event ev;
            ev.chart = id;
            ev.step = tr.charts[id].step + 1;
            ev.center = choice.center;
            ev.tag = choice.tag;
            ev.reason = choice.reason;
            std::vector<std::string> cvars;
            for (const auto& v : tr.charts[id].vars())
                if (choice.center.vars.count(v)) cvars.push_back(v);
            for (const auto& cv : cvars) {
                ChartState child = blow_up_chart(tr.charts[id], choice.center, cv);
                child.id = static_cast<int>(tr.charts.size());
                label_components(child, &tr.charts[id], opt.labels);
                TrackedPoint tp;
                tp.parent = id;
                tp.child = child.id;
                tp.chart_var = cv;
                tp.on_X = child.origin_on_X();
                auto ci = iota_at(child);
                if (tp.on_X) {
                    tp.classification = classify_point(tr.charts[id], child).tag();
                    tp.order = compare_iota(*ci, *tr.iota[id]);
                }
                ev.children.push_back(child.id);
                ev.points.push_back(tp);
                tr.charts.push_back(std::move(child));
                tr.iota.push_back(ci);
                tr.terminal.push_back("");
                queue.push_back(tr.charts.back().id);
            }
            tr.events.push_back(std::move(ev));
        }
    } catch (const scope_error& e) {
        tr.status = TraceStatus::scope_error;
        tr.error = e.what();
    }
    return tr;
}

MonotoneReport check_monotone(const ResolutionTrace& trace) {
    MonotoneReport r;
    for (const auto& ev : trace.events)
        for (const auto& p : ev.points) {
            if (!p.on_X) continue;
            ++r.checked;
            if (r.ok && p.order != Order::less) {
                r.ok = false;
                std::ostringstream os;
                os << "chart " << p.child << " (" << p.chart_var << "-chart of chart " << p.parent << ", center "
                   << ev.center.to_string() << "): iota " << (p.order ? to_string(*p.order) : "missing")
                   << " than the parent";
                if (trace.iota[p.child] && trace.iota[p.parent])
                    os << "; child " << to_json(*trace.iota[p.child]).dump() << " parent "
                       << to_json(*trace.iota[p.parent]).dump();
                r.failure = os.str();
            }
        }
    return r;
}

nlohmann::ordered_json to_json(const ChartState& c) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["parent"] = c.parent;
    j["step"] = c.step;
    j["field"] = c.field().describe();
    j["vars"] = c.vars();
    std::vector<std::string> gens;
    for (const auto& g : c.gens) gens.push_back(g.to_string());
    j["generators"] = gens;
    nlohmann::ordered_json fr;
    fr["u"] = c.frame.u;
    fr["y"] = c.frame.y;
    fr["boundary"] = nlohmann::ordered_json::array();
    for (const auto& b : c.frame.boundary)
        fr["boundary"].push_back({{"generator", b.generator.to_string()}, {"status", to_string(b.status)}, {"birth", b.birth_step}});
    j["frame"] = fr;
    j["stratum"] = nlohmann::ordered_json::array();
    for (const auto& s : c.stratum)
        j["stratum"].push_back({{"component", s.to_string()}, {"label", s.label}, {"original", s.original}});
    if (c.center) {
        j["center"] = c.center->to_string();
        j["chart_var"] = c.chart_var;
        nlohmann::ordered_json sub;
        for (const auto& [v, e] : c.substitution) sub[v] = e.to_string();
        j["substitution"] = sub;
    }
    if (c.residue_degree != 1) j["residue_degree"] = c.residue_degree;
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

nlohmann::ordered_json to_json(const ResolutionTrace& t) {
    nlohmann::ordered_json j;
    j["status"] = to_string(t.status);
    if (!t.error.empty()) j["error"] = t.error;
    j["labels"] = to_string(t.labels);
    j["charts"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < t.charts.size(); ++i) {
        auto c = to_json(t.charts[i]);
        if (t.iota[i]) c["iota"] = to_json(*t.iota[i]);
        if (!t.terminal[i].empty()) c["terminal"] = t.terminal[i];
        j["charts"].push_back(c);
    }
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& ev : t.events) {
        nlohmann::ordered_json e;
        e["step"] = ev.step;
        e["chart"] = ev.chart;
        e["center"] = ev.center.to_string();
        e["center_kind"] = to_string(ev.center.kind);
        e["case"] = to_string(ev.tag);
        e["reason"] = ev.reason;
        e["children"] = ev.children;
        e["points"] = nlohmann::ordered_json::array();
        for (const auto& p : ev.points) {
            nlohmann::ordered_json pj;
            pj["child"] = p.child;
            pj["chart_var"] = p.chart_var;
            pj["on_X"] = p.on_X;
            if (p.on_X) {
                pj["classification"] = p.classification;
                pj["iota_vs_parent"] = to_string(*p.order);
            }
            e["points"].push_back(pj);
        }
        j["events"].push_back(e);
    }
    MonotoneReport m = check_monotone(t);
    j["monotone"] = {{"ok", m.ok}, {"checked", m.checked}};
    if (!m.ok) j["monotone"]["failure"] = m.failure;
    return j;
}

namespace {
// Quotes only; label text uses \n line breaks.
std::string dot_escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        if (ch == '"') o += '\\';
        o += ch;
    }
    return o;
}

std::string iota_line(const nlohmann::ordered_json& io) {
    std::ostringstream os;
    const auto& a = io.at("iota0");
    os << "iota0=(";
    for (size_t i = 0; i < a.at("hs").size(); ++i) os << (i ? "," : "") << a.at("hs")[i].get<long>();
    os << ")," << a.at("old_count").get<long>() << "," << a.at("e").get<long>() << "," << a.at("eO").get<long>();
    os << " case " << io.at("iotac").at("case").get<std::string>();
    const auto& p = io.at("iotapoly");
    os << " poly=(" << p.at("beta").get<std::string>() << "," << p.at("gamma").get<std::string>() << ","
       << p.at("sigma").get<std::string>() << "," << p.at("alpha").get<std::string>() << ")";
    return os.str();
}
} // namespace

std::string trace_to_dot(const nlohmann::ordered_json& t) {
    std::ostringstream os;
    os << "digraph trace {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& c : t.at("charts")) {
        std::string label = "#" + std::to_string(c.at("id").get<int>()) + ": ";
        bool first = true;
        for (const auto& g : c.at("generators")) {
            label += (first ? "" : ", ") + g.get<std::string>();
            first = false;
        }
        if (c.contains("iota")) label += "\\n" + iota_line(c.at("iota"));
        if (c.contains("terminal")) label += "\\n" + c.at("terminal").get<std::string>();
        os << "  c" << c.at("id").get<int>() << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (const auto& c : t.at("charts")) {
        if (!c.contains("center")) continue;
        os << "  c" << c.at("parent").get<int>() << " -> c" << c.at("id").get<int>() << " [label=\""
           << dot_escape(c.at("center").get<std::string>() + " / " + c.at("chart_var").get<std::string>()) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace cjs
