#include "cjs/blowup.hpp"

#include <algorithm>

#include "cjs/errors.hpp"

namespace cjs {

std::string StratumComponent::to_string() const {
    std::string s = "V(";
    bool first = true;
    for (const auto& v : vars) {
        s += (first ? "" : ",") + v;
        first = false;
    }
    return s + ")";
}

std::string to_string(CenterKind k) {
    switch (k) {
    case CenterKind::closed_point: return "closed_point";
    case CenterKind::coordinate_curve: return "coordinate_curve";
    case CenterKind::coordinate_subvariety: return "coordinate_subvariety";
    }
    return "?";
}

std::string Center::to_string() const { return StratumComponent{vars, 0, true}.to_string(); }

Center make_center(const std::set<std::string>& vars, const std::vector<std::string>& ambient,
                   std::optional<int> label) {
    if (vars.empty()) throw input_error("empty center");
    for (const auto& v : vars)
        if (std::find(ambient.begin(), ambient.end(), v) == ambient.end())
            throw input_error("center variable " + v + " is not a chart coordinate");
    Center c;
    c.vars = vars;
    c.label = label;
    size_t dim = ambient.size() - vars.size();
    c.kind = dim == 0 ? CenterKind::closed_point : dim == 1 ? CenterKind::coordinate_curve : CenterKind::coordinate_subvariety;
    return c;
}

NuStar ChartState::hs() const { return nu_star(gens); }

bool ChartState::origin_on_X() const {
    for (const auto& g : gens)
        if (!g.value_at_origin().is_zero()) return false;
    return true;
}

PermissibilityReport permissible_check(const ChartState& chart, const Center& center) {
    PermissibilityReport rep;
    for (const auto& v : center.vars)
        if (!chart.gens.at(0).find_var(v)) throw input_error("center variable " + v + " is not a chart coordinate");
    bool all_in_center = true;
    for (const auto& g : chart.gens) {
        long o = *ord(g);
        OrdInf oc = ord_at(g, center.vars);
        if (o == 0) {
            rep.violations.push_back("origin is not on X for generator " + g.to_string());
            all_in_center = false;
            continue;
        }
        if (!oc || *oc != o)
            rep.violations.push_back("order of " + g.to_string() + " along " + center.to_string() + " is " +
                                     (oc ? std::to_string(*oc) : "inf") + ", at the origin " + std::to_string(o));
        if (!oc || *oc < 1) all_in_center = false;
    }
    if (all_in_center && center.vars.size() <= chart.gens.size())
        rep.violations.push_back("center " + center.to_string() + " contains a component of X");
    for (const auto& c : chart.frame.boundary) {
        if (!c.through_origin()) continue;
        if (!c.coordinate()) rep.violations.push_back("cannot verify n.c. with boundary component " + c.generator.to_string());
    }
    rep.ok = rep.violations.empty();
    return rep;
}

std::string primed(const std::string& v) { return v + "'"; }

namespace {

std::string fresh_prime(const std::string& v, const std::vector<std::string>& taken) {
    std::string s = primed(v);
    while (std::find(taken.begin(), taken.end(), s) != taken.end()) s = primed(s);
    return s;
}

// Strict transform under the chart substitution: divide by the largest
// power of c dividing the total transform, or by c^expected when given.
Polynomial transform(const Polynomial& g, const std::map<std::string, std::string>& renames,
                     const std::vector<std::string>& child_vars, const std::map<std::string, Polynomial>& subst,
                     const std::string& c, long divide_by) {
    Polynomial h = substitute_all(g.renamed(renames).with_vars(child_vars), subst);
    if (h.is_zero()) throw degenerate_input("total transform of " + g.to_string() + " vanishes");
    int ci = h.var_index(c);
    Monomial m(h.nvars(), 0);
    m[ci] = static_cast<int>(divide_by);
    try {
        return h.divide_monomial(m);
    } catch (const domain_error&) {
        throw degenerate_input("strict transform of " + g.to_string() + " is not divisible by " + c + "^" +
                               std::to_string(divide_by));
    }
}

// Every component becomes old when the order drops at the origin.
void settle_history(ChartState& c) {
    if (!c.parent_hs) return;
    bool reset = c.origin_on_X() && compare(c.hs(), *c.parent_hs) < 0;
    for (size_t i = 0; i < c.frame.boundary.size(); ++i)
        c.frame.boundary[i].status = reset ? BoundaryStatus::old_component : c.transformed_status[i];
}

} // namespace

ChartState blow_up_chart(const ChartState& chart, const Center& center, const std::string& chart_var) {
    if (!center.vars.count(chart_var)) throw input_error("chart variable " + chart_var + " is not a center variable");
    PermissibilityReport rep = permissible_check(chart, center);
    if (!rep.ok) {
        std::string why;
        for (const auto& v : rep.violations) why += (why.empty() ? "" : "; ") + v;
        throw domain_error("center " + center.to_string() + " is not permissible: " + why);
    }
    const auto& vars = chart.vars();
    Field f = chart.field();
    ChartState child;
    child.parent = chart.id;
    child.step = chart.step + 1;
    child.center = center;
    child.chart_var = chart_var;
    child.residue_degree = 1;

    std::vector<std::string> child_vars;
    for (const auto& v : vars) {
        if (center.vars.count(v) && v != chart_var) {
            std::string p = fresh_prime(v, vars);
            child.renames.emplace(v, p);
            child_vars.push_back(p);
        } else {
            child_vars.push_back(v);
        }
    }
    Polynomial cvar = Polynomial::variable(f, child_vars, chart_var);
    std::map<std::string, Polynomial> subst;
    for (const auto& [old, nw] : child.renames) {
        Polynomial img = Polynomial::variable(f, child_vars, nw) * cvar;
        subst.emplace(nw, img);
        child.substitution.emplace(old, img);
    }
    child.substitution.emplace(chart_var, cvar);

    for (const auto& g : chart.gens) {
        long nu = *ord_at(g, center.vars);
        child.gens.push_back(transform(g, child.renames, child_vars, subst, chart_var, nu));
    }

    auto rename = [&](const std::string& v) {
        auto it = child.renames.find(v);
        return it == child.renames.end() ? v : it->second;
    };
    for (const auto& v : chart.frame.u) child.frame.u.push_back(rename(v));
    for (const auto& v : chart.frame.y) child.frame.y.push_back(rename(v));
    for (const auto& b : chart.frame.boundary) {
        if (b.coordinate() == chart_var) continue; // strict transform misses this chart
        OrdInf o = ord_at(b.generator, center.vars);
        BoundaryComponent nb = b;
        nb.generator = transform(b.generator, child.renames, child_vars, subst, chart_var, o ? *o : 0);
        child.frame.boundary.push_back(nb);
    }
    child.frame.boundary.push_back({cvar, BoundaryStatus::new_component, child.step});
    child.parent_hs = chart.hs();
    for (const auto& b : child.frame.boundary) child.transformed_status.push_back(b.status);
    settle_history(child);

    for (const auto& s : chart.stratum) {
        if (s.vars.count(chart_var)) continue;
        StratumComponent t = s;
        t.vars.clear();
        for (const auto& v : s.vars) t.vars.insert(rename(v));
        child.inherited.push_back(t);
    }
    return child;
}

ChartState locate_point(const ChartState& chart, const std::vector<PointAssignment>& point) {
    ChartState out = chart;
    Field f = chart.field();
    std::map<std::string, Polynomial> shift;
    std::optional<Field> ext;
    for (const auto& a : point) {
        chart.gens[0].var_index(a.var);
        if (a.value) {
            if (a.value->field() != f) throw input_error("point coordinate for " + a.var + " is over the wrong field");
            if (!a.value->is_zero()) shift.emplace(a.var, Polynomial::variable(f, chart.vars(), a.var) + Polynomial::constant(f, chart.vars(), *a.value));
            continue;
        }
        if (!a.condition) throw input_error("point assignment for " + a.var + " has neither value nor condition");
        const Polynomial& phi = *a.condition;
        auto sup = phi.support();
        if (sup.size() != 1 || *sup.begin() != a.var)
            throw input_error("point condition must be univariate in " + a.var);
        if (f.kind() != FieldKind::prime_field)
            throw scope_error("non-rational points are supported only over prime fields, not " + f.describe());
        if (ext) throw scope_error("only one residue field extension per point is supported");
        u64 p = f.characteristic();
        int vi = phi.var_index(a.var);
        UPoly up;
        for (const auto& [m, c] : phi.terms()) {
            if (up.c.size() <= static_cast<size_t>(m[vi])) up.c.resize(m[vi] + 1, 0);
            up.c[m[vi]] = c.residue();
        }
        upoly::trim(up);
        if (up.degree() < 1) throw input_error("point condition " + phi.to_string() + " has no roots");
        if (!upoly::is_irreducible(up, p)) throw input_error("point condition " + phi.to_string() + " is reducible");
        if (up.degree() == 1) {
            Coeff root = f.from_int(0) - f.from_int(static_cast<long>(up.c[0])) / f.from_int(static_cast<long>(up.c[1]));
            shift.emplace(a.var, Polynomial::variable(f, chart.vars(), a.var) + Polynomial::constant(f, chart.vars(), root));
            continue;
        }
        ext = Field::extension(p, upoly::monic(up, p));
        out.residue_degree = up.degree();
        out.notes.push_back("residue field extension of degree " + std::to_string(up.degree()) + " by " +
                            phi.to_string() + " = 0");
        shift.emplace(a.var, Polynomial(f, chart.vars())); // placeholder, rebuilt over the extension
    }
    Field target = ext ? *ext : f;
    auto lift = [&](const Polynomial& g) {
        if (!ext) return g;
        return g.map_coefficients(target, [&](const Coeff& c) { return target.from_int(static_cast<long>(c.residue())); });
    };
    std::map<std::string, Polynomial> images;
    for (const auto& [v, img] : shift) {
        if (ext && img.is_zero())
            images.emplace(v, Polynomial::variable(target, chart.vars(), v) + Polynomial::constant(target, chart.vars(), target.generator()));
        else
            images.emplace(v, lift(img));
    }
    out.gens.clear();
    for (const auto& g : chart.gens) out.gens.push_back(images.empty() ? lift(g) : substitute_all(lift(g), images));
    out.frame.boundary.clear();
    out.transformed_status.clear();
    for (size_t i = 0; i < chart.frame.boundary.size(); ++i) {
        BoundaryComponent nb = chart.frame.boundary[i];
        nb.generator = images.empty() ? lift(nb.generator) : substitute_all(lift(nb.generator), images);
        if (!nb.through_origin()) continue;
        out.frame.boundary.push_back(nb);
        if (chart.parent_hs) out.transformed_status.push_back(chart.transformed_status[i]);
    }
    if (!out.origin_on_X()) throw input_error("the located point is not on X");
    settle_history(out);
    // stratum components are recomputed for the new origin
    out.stratum.clear();
    out.inherited.clear();
    return out;
}

std::string PointClass::tag() const {
    if (very_O_near) return "very_O_near";
    if (very_near) return "very_near";
    if (O_near) return "O_near";
    if (near) return "near";
    return "dropped";
}

PointClass classify_point(const ChartState& parent, const ChartState& child) {
    PointClass pc;
    if (!child.origin_on_X() || compare(child.hs(), parent.hs()) != 0) {
        pc.dropped = true;
        return pc;
    }
    pc.near = true;
    pc.O_near = child.frame.old_at_origin().size() == parent.frame.old_at_origin().size();
    auto dims = [](const ChartState& c) {
        std::vector<Polynomial> in;
        for (const auto& g : c.gens) in.push_back(initial_form(g));
        size_t e = compute_directrix(in, c.vars()).e;
        size_t eO = directrix_of_JO(c.gens, c.frame).e;
        return std::make_pair(e, eO);
    };
    auto [pe, peO] = dims(parent);
    auto [ce, ceO] = dims(child);
    // closed points above closed points: residue transcendence degree 0
    pc.very_near = ce == pe;
    pc.very_O_near = pc.O_near && ceO == peO;
    return pc;
}

ExpectedPolyhedron transform_polyhedron_expected(const FPolyhedron& d, BlowupShape shape) {
    ExpectedPolyhedron out;
    std::vector<QPoint> pts;
    for (const auto& v : d.vertices()) {
        QPoint w = v;
        if (d.dim() == 1) {
            w[0] = v[0] - 1;
        } else if (d.dim() == 2) {
            switch (shape) {
            case BlowupShape::point_u1_chart: w[0] = v[0] + v[1] - 1; break;
            case BlowupShape::point_u2_chart: w[1] = v[0] + v[1] - 1; break;
            case BlowupShape::curve_u1: w[0] = v[0] - 1; break;
            case BlowupShape::curve_u2: w[1] = v[1] - 1; break;
            }
        } else {
            throw domain_error("expected transform needs e = 1 or 2");
        }
        for (const auto& x : w)
            if (x < 0) out.dropped = true;
        pts.push_back(w);
    }
    out.polyhedron = FPolyhedron::from_points(d.dim(), pts);
    return out;
}

} // namespace cjs
