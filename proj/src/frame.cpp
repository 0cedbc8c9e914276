#include "cjs/frame.hpp"

#include <algorithm>
#include <sstream>

#include "cjs/errors.hpp"

namespace cjs {

std::string to_string(BoundaryStatus s) { return s == BoundaryStatus::old_component ? "old" : "new"; }

BoundaryStatus parse_status(const std::string& s) {
    if (s == "old") return BoundaryStatus::old_component;
    if (s == "new") return BoundaryStatus::new_component;
    throw input_error("boundary status must be \"old\" or \"new\", got \"" + s + "\"");
}

std::optional<std::string> BoundaryComponent::coordinate() const {
    if (generator.size() != 1) return std::nullopt;
    const auto& [m, c] = *generator.terms().begin();
    if (!c.is_one()) return std::nullopt;
    std::optional<std::string> name;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (m[i] != 1 || name) return std::nullopt;
        name = generator.vars()[i];
    }
    return name;
}

void Frame::validate(const std::vector<std::string>& ambient) const {
    std::vector<std::string> all = u;
    all.insert(all.end(), y.begin(), y.end());
    std::vector<std::string> a = ambient, b = all;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw input_error("frame u/y blocks must partition the chart variables");
    for (const auto& c : boundary) {
        if (c.generator.is_zero()) throw input_error("zero boundary generator");
        if (c.through_origin() && ord(c.generator) != 1)
            throw input_error("boundary generator " + c.generator.to_string() + " is not regular at the origin");
    }
}

std::vector<const BoundaryComponent*> Frame::old_at_origin() const {
    std::vector<const BoundaryComponent*> out;
    for (const auto& c : boundary)
        if (c.is_old() && c.through_origin()) out.push_back(&c);
    return out;
}

std::vector<const BoundaryComponent*> Frame::new_at_origin() const {
    std::vector<const BoundaryComponent*> out;
    for (const auto& c : boundary)
        if (!c.is_old() && c.through_origin()) out.push_back(&c);
    return out;
}

std::string NuStar::to_string() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < orders.size(); ++i) os << (i ? "," : "") << orders[i];
    os << ')';
    return os.str();
}

int compare(const NuStar& a, const NuStar& b) {
    size_t n = std::max(a.orders.size(), b.orders.size());
    for (size_t i = 0; i < n; ++i) {
        bool ai = i >= a.orders.size(), bi = i >= b.orders.size();
        if (ai && bi) return 0;
        if (ai) return 1;
        if (bi) return -1;
        if (a.orders[i] != b.orders[i]) return a.orders[i] < b.orders[i] ? -1 : 1;
    }
    return 0;
}

Polynomial initial_form(const Polynomial& f, const std::set<std::string>& at) {
    if (f.is_zero()) throw domain_error("initial form of the zero polynomial");
    std::vector<int> idx;
    for (const auto& v : at) idx.push_back(f.var_index(v));
    auto weight = [&](const Monomial& m) {
        int w = 0;
        for (int i : idx) w += m[i];
        return w;
    };
    int best = -1;
    for (const auto& [m, c] : f.terms())
        if (best < 0 || weight(m) < best) best = weight(m);
    Polynomial out(f.field(), f.vars());
    for (const auto& [m, c] : f.terms())
        if (weight(m) == best) out.add_term(m, c);
    return out;
}

Polynomial initial_form(const Polynomial& f) {
    return initial_form(f, std::set<std::string>(f.vars().begin(), f.vars().end()));
}

NuStar nu_star(const std::vector<Polynomial>& gens) {
    if (gens.empty()) throw input_error("empty generator list");
    NuStar out;
    for (const auto& g : gens) {
        if (g.is_zero()) throw input_error("zero generator");
        out.orders.push_back(*ord(g));
    }
    std::sort(out.orders.begin(), out.orders.end());
    return out;
}

namespace {

bool is_homogeneous(const Polynomial& f) {
    if (f.is_zero()) return false;
    int d = -1;
    for (const auto& [m, c] : f.terms()) {
        int s = 0;
        for (int x : m) s += x;
        if (d >= 0 && s != d) return false;
        d = s;
    }
    return true;
}

// Coordinates of homogeneous polynomials of degree d in the monomial basis.
struct DegreeSlice {
    std::vector<Monomial> monos;
    std::map<Monomial, size_t> index;

    DegreeSlice(size_t n, int d) : monos(monomials_of_degree(n, d)) {
        for (size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
    }
    Row row(const Polynomial& g) const {
        Row r(monos.size(), g.field().zero());
        for (const auto& [m, c] : g.terms()) r.at(index.at(m)) = c;
        return r;
    }
};

// Rows of all multiples m·h of degree d.
void add_multiples(EchelonBuilder& b, const DegreeSlice& s, const std::vector<Polynomial>& hs, int d) {
    for (const auto& h : hs) {
        int dh = h.total_degree();
        if (dh > d) continue;
        for (const Monomial& m : monomials_of_degree(h.nvars(), d - dh)) {
            if (b.rank() == b.ncols()) return;
            b.add(s.row(Polynomial::monomial(h.field(), h.vars(), m, h.field().one()) * h));
        }
    }
}

bool is_pure_power(const Monomial& m) {
    int nz = 0;
    for (int x : m) nz += x != 0;
    return nz == 1;
}

size_t pure_index(const Monomial& m) {
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i]) return i;
    return 0;
}

// Semilinear decomposition over F_p(t): a = sum_r t^r b_r^q.
std::vector<Coeff> split_q(const Coeff& a, u64 q) {
    Field f = a.field();
    u64 p = f.characteristic();
    std::vector<Coeff> out(q, f.zero());
    if (a.is_zero()) return out;
    const auto& rf = std::get<RatFun>(a.value());
    UPoly big = rf.num;
    for (u64 i = 1; i < q; ++i) big = upoly::mul(big, rf.den, p);
    Coeff den(f, RatFun{rf.den, upoly::constant(1, p)});
    for (u64 r = 0; r < q; ++r) {
        UPoly part;
        for (size_t j = r; j < big.c.size(); j += q) {
            size_t k = (j - r) / q;
            if (part.c.size() <= k) part.c.resize(k + 1, 0);
            part.c[k] = big.c[j];
        }
        upoly::trim(part);
        out[r] = Coeff(f, RatFun{part, upoly::constant(1, p)}) / den;
    }
    return out;
}

Directrix finish(const std::vector<Row>& rows, Field f, const std::vector<std::string>& vars) {
    Echelon e = rref(rows, f, vars.size());
    Directrix d;
    d.vars = vars;
    d.r = e.rank();
    d.e = vars.size() - d.r;
    for (const Row& r : e.rows) d.forms.push_back(linear_form(r, f, vars));
    return d;
}

std::vector<Row> directrix_rows(const std::vector<Polynomial>& initials) {
    std::vector<Row> rows;
    for (const Polynomial& s : compute_ridge(initials)) {
        Field f = s.field();
        int q = s.total_degree();
        Row a(s.nvars(), f.zero());
        for (const auto& [m, c] : s.terms()) a[pure_index(m)] = c;
        if (q == 1) {
            rows.push_back(a);
        } else if (f.kind() == FieldKind::rational_functions) {
            std::vector<std::vector<Coeff>> parts;
            for (const auto& c : a) parts.push_back(split_q(c, static_cast<u64>(q)));
            for (int r = 0; r < q; ++r) {
                Row row;
                for (const auto& pr : parts) row.push_back(pr[r]);
                rows.push_back(row);
            }
        } else {
            Row row;
            for (const auto& c : a) row.push_back(*q_th_root(c, static_cast<u64>(q)));
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace

bool in_homogeneous_ideal(const Polynomial& g, const std::vector<Polynomial>& hs) {
    if (g.is_zero()) return true;
    int d = g.total_degree();
    DegreeSlice s(g.nvars(), d);
    EchelonBuilder b(g.field(), s.monos.size());
    add_multiples(b, s, hs, d);
    return b.contains(s.row(g));
}

void check_standard_basis(const std::vector<Polynomial>& gens) {
    if (gens.empty()) throw input_error("empty generator list");
    std::vector<Polynomial> in;
    long prev = -1;
    for (const auto& g : gens) {
        if (g.is_zero()) throw input_error("zero generator");
        long o = *ord(g);
        if (o < prev) throw input_error("generator orders must be nondecreasing for a standard basis");
        prev = o;
        in.push_back(initial_form(g));
    }
    for (size_t i = 0; i < in.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < in.size(); ++j)
            if (j != i) others.push_back(in[j]);
        if (in_homogeneous_ideal(in[i], others))
            throw input_error("initial form of generator " + std::to_string(i + 1) +
                              " is redundant; generators are not a standard basis");
    }
}

Polynomial old_boundary_product(const Frame& frame, Field f, const std::vector<std::string>& vars) {
    Polynomial phi = Polynomial::constant(f, vars, f.one());
    for (const auto* c : frame.old_at_origin()) phi *= c->generator.with_vars(vars);
    return phi;
}

std::vector<Polynomial> compose_with_old_boundary(const std::vector<Polynomial>& gens, const Frame& frame) {
    if (gens.empty()) return {};
    Polynomial phi = old_boundary_product(frame, gens[0].field(), gens[0].vars());
    std::vector<Polynomial> out;
    for (const auto& g : gens) out.push_back(g * phi);
    return out;
}

std::vector<Polynomial> compute_ridge(const std::vector<Polynomial>& initials) {
    if (initials.empty()) return {};
    Field f = initials[0].field();
    const auto& vars = initials[0].vars();
    size_t n = vars.size();
    u64 p = f.characteristic();

    std::vector<Polynomial> sat;
    int top = 0;
    for (const auto& F : initials) {
        if (!is_homogeneous(F)) throw input_error("ridge input " + F.to_string() + " is not homogeneous");
        int d = F.total_degree();
        if (d == 0) throw domain_error("ridge of a unit: the origin is not on the cone");
        top = std::max(top, d);
        for (const Monomial& a : monomials_up_to_degree(n, d - 1)) {
            Polynomial g = hasse_derivative(F, a);
            if (!g.is_zero()) sat.push_back(g);
        }
    }

    std::vector<Polynomial> out;
    // Frobenius lifts of the accepted generators, in the pure-power basis.
    std::vector<std::pair<int, Row>> accepted;
    for (u64 q = 1; q <= static_cast<u64>(top); q *= p) {
        DegreeSlice s(n, static_cast<int>(q));
        std::vector<size_t> order, pure;
        for (size_t i = 0; i < s.monos.size(); ++i) (is_pure_power(s.monos[i]) ? pure : order).push_back(i);
        order.insert(order.end(), pure.begin(), pure.end());
        EchelonBuilder b(f, s.monos.size(), order);
        add_multiples(b, s, sat, static_cast<int>(q));

        EchelonBuilder lifted(f, n);
        for (const auto& [q0, a] : accepted) {
            Row l;
            for (const auto& c : a) l.push_back(c.pow(mpz_class(static_cast<unsigned long>(q / q0))));
            lifted.add(l);
        }
        const Echelon& e = b.echelon();
        for (size_t i = 0; i < e.rows.size(); ++i) {
            if (!is_pure_power(s.monos[e.pivots[i]])) continue;
            Row a(n, f.zero());
            for (size_t j : pure) a[pure_index(s.monos[j])] = e.rows[i][j];
            if (!lifted.add(a)) continue;
            Polynomial sigma(f, vars);
            for (size_t k = 0; k < n; ++k) {
                Monomial m(n, 0);
                m[k] = static_cast<int>(q);
                sigma.add_term(m, a[k]);
            }
            out.push_back(sigma);
            accepted.emplace_back(static_cast<int>(q), a);
        }
        if (p == 0) break;
    }
    return out;
}

std::vector<Row> Directrix::complement_basis() const {
    if (vars.empty()) return {};
    std::vector<Row> rows;
    for (const auto& L : forms) rows.push_back(linear_row(L));
    Field f = forms.empty() ? Field::rationals() : forms[0].field();
    return nullspace(rows, f, vars.size());
}

Directrix compute_directrix(const std::vector<Polynomial>& initials, const std::vector<std::string>& vars) {
    if (initials.empty()) {
        Directrix d;
        d.vars = vars;
        d.e = vars.size();
        return d;
    }
    return finish(directrix_rows(initials), initials[0].field(), vars);
}

Directrix directrix_of_JO(const std::vector<Polynomial>& gens, const Frame& frame) {
    if (gens.empty()) throw input_error("empty generator list");
    std::vector<Polynomial> in;
    for (const auto& g : gens) in.push_back(initial_form(g));
    std::vector<Row> rows = directrix_rows(in);
    for (const auto* c : frame.old_at_origin())
        rows.push_back(linear_row(initial_form(c->generator.with_vars(gens[0].vars()))));
    return finish(rows, gens[0].field(), gens[0].vars());
}

bool is_translation_invariant(const Polynomial& F, const Row& w) {
    std::vector<std::string> big = F.vars();
    std::string t = "T";
    while (F.find_var(t)) t += "_";
    big.push_back(t);
    Polynomial G = F.with_vars(big);
    Polynomial T = Polynomial::variable(F.field(), big, t);
    std::map<std::string, Polynomial> img;
    for (size_t i = 0; i < F.nvars(); ++i)
        if (!w[i].is_zero()) img.emplace(F.vars()[i], Polynomial::variable(F.field(), big, F.vars()[i]) + T * w[i]);
    return substitute_all(G, img) == G;
}

Row linear_row(const Polynomial& L) {
    Row r(L.nvars(), L.field().zero());
    for (const auto& [m, c] : L.terms()) {
        int deg = 0;
        for (int x : m) deg += x;
        if (deg != 1) throw domain_error("not a linear form: " + L.to_string());
        r[pure_index(m)] = c;
    }
    return r;
}

Polynomial linear_form(const Row& row, Field f, const std::vector<std::string>& vars) {
    Polynomial L(f, vars);
    for (size_t i = 0; i < row.size(); ++i) {
        Monomial m(vars.size(), 0);
        m[i] = 1;
        L.add_term(m, row[i]);
    }
    return L;
}

AdaptedFrame adapt_frame(const std::vector<Polynomial>& gens, const Frame& frame, const Directrix& dir,
                         const std::vector<std::string>& preferred_y) {
    const auto& vars = dir.vars;
    Field f = gens.at(0).field();
    std::set<std::string> old_vars, new_vars;
    for (const auto& c : frame.boundary)
        if (auto v = c.coordinate()) (c.is_old() ? old_vars : new_vars).insert(*v);
    auto rank = [&](const std::string& v) {
        if (std::find(preferred_y.begin(), preferred_y.end(), v) != preferred_y.end()) return 0;
        if (new_vars.count(v)) return 3;
        if (old_vars.count(v)) return 2;
        return 1;
    };
    std::vector<size_t> order(vars.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return rank(vars[a]) < rank(vars[b]); });

    std::vector<Row> rows;
    for (const auto& L : dir.forms) rows.push_back(linear_row(L));
    Echelon e = rref(rows, f, vars.size(), order);

    AdaptedFrame out;
    std::set<size_t> pivots(e.pivots.begin(), e.pivots.end());
    for (size_t i = 0; i < e.rows.size(); ++i) {
        size_t pv = e.pivots[i];
        Polynomial img = Polynomial::variable(f, vars, vars[pv]);
        bool moved = false;
        for (size_t k = 0; k < vars.size(); ++k) {
            if (k == pv || e.rows[i][k].is_zero()) continue;
            img -= Polynomial::variable(f, vars, vars[k]) * e.rows[i][k];
            moved = true;
        }
        if (moved) out.change.emplace(vars[pv], img);
    }
    for (size_t i = 0; i < vars.size(); ++i) (pivots.count(i) ? out.frame.y : out.frame.u).push_back(vars[i]);
    for (const auto& g : gens) out.gens.push_back(out.change.empty() ? g : substitute_all(g, out.change));
    for (auto c : frame.boundary) {
        if (!out.change.empty()) c.generator = substitute_all(c.generator.with_vars(vars), out.change);
        out.frame.boundary.push_back(c);
    }
    return out;
}

} // namespace cjs
