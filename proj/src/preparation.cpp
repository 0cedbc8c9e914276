#include "cjs/preparation.hpp"

#include <algorithm>
#include <sstream>

#include "cjs/errors.hpp"

namespace cjs {

int SplitExponent::b_degree() const {
    int s = 0;
    for (int x : b) s += x;
    return s;
}

namespace {

struct Indexer {
    std::vector<int> u, y;
    Indexer(const Frame& frame, const Polynomial& g) {
        for (const auto& v : frame.u) u.push_back(g.var_index(v));
        for (const auto& v : frame.y) y.push_back(g.var_index(v));
    }
    SplitExponent split(const Monomial& m) const {
        SplitExponent s;
        for (int i : u) s.a.push_back(m[i]);
        for (int i : y) s.b.push_back(m[i]);
        return s;
    }
    Monomial join(const std::vector<int>& a, const std::vector<int>& b, size_t n) const {
        Monomial m(n, 0);
        for (size_t k = 0; k < u.size(); ++k) m[u[k]] = a[k];
        for (size_t k = 0; k < y.size(); ++k) m[y[k]] = b[k];
        return m;
    }
};

QPoint point_of(const SplitExponent& s, long nu) {
    QPoint p;
    long den = nu - s.b_degree();
    for (int x : s.a) p.push_back(mpq_class(x, den));
    for (auto& x : p) x.canonicalize();
    return p;
}

bool on_vertex(const SplitExponent& s, long nu, const QPoint& v) {
    return s.b_degree() < nu && point_of(s, nu) == v;
}

bool integral(const QPoint& v) {
    for (const auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

// u^v for an integral point.
Polynomial u_power(const Polynomial& like, const Indexer& ix, const QPoint& v, long scale = 1) {
    Monomial m(like.nvars(), 0);
    for (size_t k = 0; k < ix.u.size(); ++k) m[ix.u[k]] = static_cast<int>(v[k].get_num().get_si() * scale);
    return Polynomial::monomial(like.field(), like.vars(), m, like.field().one());
}

std::vector<Polynomial> frame_gens_check(const std::vector<Polynomial>& gens) {
    if (gens.empty()) throw input_error("empty generator list");
    for (const auto& g : gens)
        if (g.is_zero()) throw input_error("zero generator");
    return gens;
}

} // namespace

SplitExponent split(const Monomial& m, const Frame& frame, const std::vector<std::string>& vars) {
    Polynomial probe(Field::rationals(), vars);
    return Indexer(frame, probe).split(m);
}

long generator_order(const Polynomial& g) {
    auto o = ord(g);
    if (!o) throw input_error("zero generator");
    return *o;
}

FPolyhedron polyhedron_of(const std::vector<Polynomial>& gens, const Frame& frame) {
    frame_gens_check(gens);
    std::vector<QPoint> pts;
    for (const auto& g : gens) {
        Indexer ix(frame, g);
        long nu = generator_order(g);
        bool has_pure_y = false;
        for (const auto& [m, c] : g.terms()) {
            SplitExponent s = ix.split(m);
            if (std::all_of(s.a.begin(), s.a.end(), [](int x) { return x == 0; })) has_pure_y = true;
            if (s.b_degree() < nu) pts.push_back(point_of(s, nu));
        }
        if (!has_pure_y) throw domain_error("generator " + g.to_string() + " lies in the ideal of the u-block");
    }
    return FPolyhedron::from_points(frame.u.size(), pts);
}

VertexInitial vertex_initial(const std::vector<Polynomial>& gens, const Frame& frame, const QPoint& v) {
    if (!polyhedron_of(gens, frame).is_vertex(v)) throw domain_error(to_string(v) + " is not a vertex");
    VertexInitial vi;
    vi.vertex = v;
    for (const auto& g : gens) {
        Indexer ix(frame, g);
        long nu = generator_order(g);
        Polynomial F(g.field(), g.vars()), G(g.field(), g.vars());
        for (const auto& [m, c] : g.terms()) {
            SplitExponent s = ix.split(m);
            bool a_zero = std::all_of(s.a.begin(), s.a.end(), [](int x) { return x == 0; });
            if (a_zero && s.b_degree() == nu) {
                F.add_term(m, c);
                G.add_term(m, c);
            } else if (on_vertex(s, nu, v)) {
                G.add_term(m, c);
            }
        }
        vi.forms.push_back(G);
        vi.y_parts.push_back(F);
    }
    return vi;
}

std::vector<Polynomial> translate_y(const std::vector<Polynomial>& gens, const Frame& frame, const QPoint& v,
                                    const std::vector<Coeff>& lambda) {
    std::vector<Polynomial> out;
    for (const auto& g : gens) {
        Indexer ix(frame, g);
        Polynomial uv = u_power(g, ix, v);
        std::map<std::string, Polynomial> img;
        for (size_t j = 0; j < frame.y.size(); ++j)
            if (!lambda[j].is_zero())
                img.emplace(frame.y[j], Polynomial::variable(g.field(), g.vars(), frame.y[j]) - uv * lambda[j]);
        out.push_back(img.empty() ? g : substitute_all(g, img));
    }
    return out;
}

std::optional<std::vector<Coeff>> is_solvable(const VertexInitial& vi, const Frame& frame) {
    if (!integral(vi.vertex) || vi.forms.empty()) return std::nullopt;
    const Polynomial& g0 = vi.forms[0];
    Field f = g0.field();
    u64 p = f.characteristic();
    size_t r = frame.y.size();
    Indexer ix(frame, g0);
    size_t n = g0.nvars();
    long top = 0;
    for (const auto& F : vi.y_parts) top = std::max<long>(top, F.total_degree());

    // Y-coefficients of G - F at U-degree d·v.
    auto level = [&](size_t i, long d) {
        Polynomial R(f, g0.vars());
        Polynomial diff = vi.forms[i] - vi.y_parts[i];
        for (const auto& [m, c] : diff.terms()) {
            SplitExponent s = ix.split(m);
            bool hit = true;
            for (size_t k = 0; k < s.a.size(); ++k)
                if (mpq_class(s.a[k]) != vi.vertex[k] * d) hit = false;
            if (hit) R.add_term(ix.join(std::vector<int>(s.a.size(), 0), s.b, n), c);
        }
        return R;
    };

    std::vector<std::optional<Coeff>> lam(r);
    for (long d = 1; d <= top; d = (p == 0 ? top + 1 : d * static_cast<long>(p))) {
        std::vector<size_t> unknown;
        for (size_t j = 0; j < r; ++j)
            if (!lam[j]) unknown.push_back(j);
        if (unknown.empty()) break;
        // Each generator contributes one equation per Y-monomial.
        std::map<std::pair<size_t, Monomial>, std::pair<Row, Coeff>> eqs;
        auto eq = [&](size_t i, const Monomial& m) -> std::pair<Row, Coeff>& {
            auto key = std::make_pair(i, m);
            auto it = eqs.find(key);
            if (it == eqs.end()) it = eqs.emplace(key, std::make_pair(Row(unknown.size(), f.zero()), f.zero())).first;
            return it->second;
        };
        std::vector<bool> touched(unknown.size(), false);
        for (size_t i = 0; i < vi.forms.size(); ++i) {
            const Polynomial& F = vi.y_parts[i];
            Polynomial rhs = level(i, d);
            // known contributions
            for (const Monomial& bm : monomials_of_degree(r, static_cast<int>(d))) {
                bool all_known = true;
                Coeff coef = f.one();
                for (size_t j = 0; j < r; ++j) {
                    if (!bm[j]) continue;
                    if (!lam[j]) {
                        all_known = false;
                        break;
                    }
                    coef *= lam[j]->pow(mpz_class(bm[j]));
                }
                if (!all_known || coef.is_zero()) continue;
                Polynomial D = hasse_derivative(F, ix.join(std::vector<int>(ix.u.size(), 0), bm, n));
                rhs -= D * coef;
            }
            for (const auto& [m, c] : rhs.terms()) eq(i, m).second += c;
            for (size_t k = 0; k < unknown.size(); ++k) {
                std::vector<int> bm(r, 0);
                bm[unknown[k]] = static_cast<int>(d);
                Polynomial D = hasse_derivative(F, ix.join(std::vector<int>(ix.u.size(), 0), bm, n));
                for (const auto& [m, c] : D.terms()) {
                    eq(i, m).first[k] += c;
                    touched[k] = true;
                }
            }
        }
        std::vector<Row> a;
        Row b;
        for (auto& [m, rc] : eqs) {
            a.push_back(rc.first);
            b.push_back(rc.second);
        }
        if (a.empty()) continue;
        auto sol = solve(a, b, f, unknown.size());
        if (!sol) return std::nullopt;
        for (size_t k = 0; k < unknown.size(); ++k) {
            if (!touched[k]) continue;
            auto root = q_th_root((*sol)[k], static_cast<u64>(d));
            if (!root) return std::nullopt;
            lam[unknown[k]] = *root;
        }
    }
    std::vector<Coeff> out;
    for (size_t j = 0; j < r; ++j) out.push_back(lam[j] ? *lam[j] : f.zero());
    if (std::all_of(out.begin(), out.end(), [](const Coeff& c) { return c.is_zero(); })) return std::nullopt;
    // verification: F_i(Y + lambda U^v) = in_v(f_i)
    Polynomial uv = u_power(g0, ix, vi.vertex);
    std::map<std::string, Polynomial> img;
    for (size_t j = 0; j < r; ++j)
        if (!out[j].is_zero()) img.emplace(frame.y[j], Polynomial::variable(f, g0.vars(), frame.y[j]) + uv * out[j]);
    for (size_t i = 0; i < vi.forms.size(); ++i)
        if (substitute_all(vi.y_parts[i], img) != vi.forms[i]) return std::nullopt;
    return out;
}

std::vector<Polynomial> normalize_at_vertex(const std::vector<Polynomial>& gens, const Frame& frame, const QPoint& v) {
    std::vector<Polynomial> out = gens;
    if (gens.size() < 2) return out;
    VertexInitial vi = vertex_initial(gens, frame, v);
    Indexer ix(frame, gens[0]);
    size_t n = gens[0].nvars();
    // leading exponents (degree-lex maximum) of the earlier initial forms
    std::vector<std::pair<std::vector<int>, Coeff>> lead;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i > 0) {
            long nu = generator_order(out[i]);
            for (int guard = 0; guard < 64; ++guard) {
                bool done = true;
                for (const auto& [m, c] : out[i].terms()) {
                    SplitExponent s = ix.split(m);
                    if (!on_vertex(s, nu, v)) continue;
                    for (size_t k = 0; k < lead.size(); ++k) {
                        const auto& bk = lead[k].first;
                        bool divides = true;
                        for (size_t j = 0; j < bk.size(); ++j)
                            if (s.b[j] < bk[j]) divides = false;
                        if (!divides) continue;
                        std::vector<int> rest(bk.size());
                        for (size_t j = 0; j < bk.size(); ++j) rest[j] = s.b[j] - bk[j];
                        Polynomial mult = Polynomial::monomial(out[i].field(), out[i].vars(), ix.join(s.a, rest, n),
                                                               c / lead[k].second);
                        out[i] -= mult * out[k];
                        done = false;
                        break;
                    }
                    if (!done) break;
                }
                if (done) break;
            }
        }
        const Polynomial& F = vi.y_parts[i];
        if (F.is_zero()) continue;
        auto terms = F.sorted_terms();
        // sorted_terms is degree ascending, exponents descending: first of the top degree
        int topdeg = F.total_degree();
        for (const auto& [m, c] : terms) {
            int d = 0;
            for (int x : m) d += x;
            if (d != topdeg) continue;
            lead.emplace_back(ix.split(m).b, c);
            break;
        }
    }
    return out;
}

std::string to_string(PrepStatus s) {
    switch (s) {
    case PrepStatus::minimal: return "minimal";
    case PrepStatus::budget_exhausted: return "budget_exhausted";
    case PrepStatus::empty: return "empty";
    }
    return "?";
}

size_t PreparationResult::solves() const {
    return static_cast<size_t>(std::count_if(log.begin(), log.end(), [](const PrepStep& s) { return s.kind == "solve"; }));
}

namespace {

std::optional<size_t> axis_of(const QPoint& v) {
    std::optional<size_t> axis;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        if (axis) return std::nullopt;
        axis = k;
    }
    return axis;
}

std::vector<QPoint> others(const FPolyhedron& d, const QPoint& v) {
    std::vector<QPoint> out;
    for (const auto& w : d.vertices())
        if (w != v) out.push_back(w);
    return out;
}

// Largest exponent a translation by u^v would create.
long translation_exponent(const std::vector<Polynomial>& gens, const QPoint& v) {
    long top = 0;
    for (const auto& g : gens) top = std::max(top, generator_order(g));
    long m = 0;
    for (const auto& x : v) m = std::max(m, x.get_num().get_si());
    return m * top;
}

constexpr long exponent_cap = 1L << 20;

} // namespace

PreparationResult prepare(const std::vector<Polynomial>& gens, const Frame& frame, int budget) {
    if (budget < 1) throw input_error("preparation budget must be at least 1");
    PreparationResult res;
    std::vector<Polynomial> cur = frame_gens_check(gens);
    res.history.push_back(polyhedron_of(cur, frame));
    struct Solved {
        QPoint v;
        std::vector<QPoint> rest;
    };
    std::vector<Solved> run;
    int solves = 0;
    bool escape_noted = false;
    for (;;) {
        FPolyhedron d = polyhedron_of(cur, frame);
        if (d.empty()) {
            res.status = PrepStatus::empty;
            break;
        }
        bool changed = false, stop = false;
        for (const QPoint& v : d.vertices()) {
            if (cur.size() >= 2) {
                auto nrm = normalize_at_vertex(cur, frame, v);
                if (nrm != cur) {
                    cur = nrm;
                    FPolyhedron after = polyhedron_of(cur, frame);
                    res.log.push_back({"normalize", v, {}, after});
                    res.history.push_back(after);
                    run.clear();
                    changed = true;
                    break;
                }
            }
            auto lambda = is_solvable(vertex_initial(cur, frame, v), frame);
            if (!lambda) continue;
            if (solves >= budget || translation_exponent(cur, v) > exponent_cap) {
                res.status = PrepStatus::budget_exhausted;
                res.notes.push_back(solves >= budget ? "solving budget exhausted at vertex " + to_string(v)
                                                     : "exponent cap reached at vertex " + to_string(v));
                stop = true;
                break;
            }
            cur = translate_y(cur, frame, v, *lambda);
            ++solves;
            FPolyhedron after = polyhedron_of(cur, frame);
            res.log.push_back({"solve", v, *lambda, after});
            res.history.push_back(after);
            run.push_back({v, others(d, v)});
            if (!escape_noted && run.size() >= 3) {
                const auto& a = run[run.size() - 3];
                const auto& b = run[run.size() - 2];
                const auto& c = run[run.size() - 1];
                auto ax = axis_of(a.v);
                if (ax && axis_of(b.v) == ax && axis_of(c.v) == ax && a.v[*ax] < b.v[*ax] && b.v[*ax] < c.v[*ax] &&
                    a.rest == b.rest && b.rest == c.rest) {
                    escape_noted = true;
                    res.notes.push_back("axis vertex escapes to infinity");
                    res.stable = FPolyhedron::from_points(frame.u.size(), c.rest);
                }
            }
            changed = true;
            break;
        }
        if (stop) break;
        if (!changed) {
            res.status = PrepStatus::minimal;
            break;
        }
    }
    res.gens = cur;
    res.polyhedron = polyhedron_of(cur, frame);
    return res;
}

namespace {

bool positive_integer(const QInf& q) { return q.is_finite() && q.value() > 0 && q.value().get_den() == 1; }

// Candidate c with u_b <- u_b + c u_a^m making some face group a pure power.
std::vector<Coeff> straightening_candidates(const std::vector<Polynomial>& gens, const Frame& frame, size_t ia,
                                            size_t ib, long m, const mpq_class& level) {
    std::vector<Coeff> out;
    Field f = gens[0].field();
    u64 p = f.characteristic();
    for (const auto& g : gens) {
        Indexer ix(frame, g);
        long nu = generator_order(g);
        // group face terms by y-exponent: h_B(T) = sum C T^{a_b}
        std::map<std::vector<int>, std::map<long, Coeff>> groups;
        for (const auto& [mono, c] : g.terms()) {
            SplitExponent s = ix.split(mono);
            if (s.b_degree() >= nu) continue;
            QPoint pt = point_of(s, nu);
            if (pt[ia] + m * pt[ib] != level) continue;
            groups[s.b][s.a[ib]] = c;
        }
        for (const auto& [b, h] : groups) {
            if (h.size() < 2) continue;
            long lo = h.begin()->first, D = h.rbegin()->first;
            if (lo != 0) continue;
            long q = 1;
            if (p != 0)
                while (D % (q * static_cast<long>(p)) == 0) q *= static_cast<long>(p);
            long Dp = D / q;
            auto it = h.find(q * (Dp - 1));
            if (it == h.end()) continue;
            Coeff a = h.rbegin()->second;
            Coeff cq = -it->second / (a * f.from_int(Dp));
            if (auto c = q_th_root(cq, static_cast<u64>(q)))
                if (std::none_of(out.begin(), out.end(), [&](const Coeff& x) { return x == *c; })) out.push_back(*c);
        }
    }
    return out;
}

} // namespace

SigmaResult sigma(const std::vector<Polynomial>& gens, const Frame& frame, int side, int budget) {
    if (frame.u.size() != 2) throw domain_error("sigma needs e = 2");
    if (side != 1 && side != 2) throw domain_error("side must be 1 or 2");
    size_t ia = side == 1 ? 0 : 1, ib = 1 - ia;
    SigmaResult res;
    FPolyhedron d = polyhedron_of(gens, frame);
    FaceNumbers fn = face_numbers(d, side);
    if (fn.beta < QInf(1)) {
        res.value = QInf(1);
        return res;
    }
    std::vector<Polynomial> cur = gens;
    QInf best = fn.s;
    int steps = 0;
    while (positive_integer(fn.s)) {
        long m = fn.s.value().get_num().get_si();
        const FPolyhedron oriented = side == 1 ? d : d.swapped();
        const QPoint& v1 = oriented.vertices()[0];
        mpq_class level = v1[0] + m * v1[1];
        std::vector<Coeff> cands = straightening_candidates(cur, frame, ia, ib, m, level);
        std::optional<std::pair<QInf, std::vector<Polynomial>>> pick;
        std::string how;
        for (const Coeff& c : cands) {
            if (steps >= budget) {
                res.lower_bound = true;
                break;
            }
            ++steps;
            const Polynomial& g0 = cur[0];
            Polynomial ua = Polynomial::variable(g0.field(), g0.vars(), frame.u[ia]);
            Polynomial img = Polynomial::variable(g0.field(), g0.vars(), frame.u[ib]) + ua.pow(static_cast<unsigned>(m)) * c;
            std::vector<Polynomial> moved;
            for (const auto& g : cur) moved.push_back(substitute(g, frame.u[ib], img));
            PreparationResult pr = prepare(moved, frame);
            if (pr.status == PrepStatus::budget_exhausted) res.lower_bound = true;
            FaceNumbers nf = face_numbers(pr.polyhedron, side);
            if (nf.s > fn.s && (!pick || nf.s > pick->first)) {
                pick = std::make_pair(nf.s, pr.gens);
                how = frame.u[ib] + " <- " + frame.u[ib] + " + (" + c.to_string() + ")*" + frame.u[ia] + "^" +
                      std::to_string(m);
            }
        }
        if (!pick) break;
        cur = pick->second;
        res.substitutions.push_back(how);
        d = polyhedron_of(cur, frame);
        fn = face_numbers(d, side);
        if (fn.s > best) best = fn.s;
        if (steps >= budget && positive_integer(fn.s)) {
            res.lower_bound = true;
            break;
        }
    }
    res.value = best < QInf(1) ? QInf(1) : best;
    return res;
}

std::vector<Polynomial> in_delta(const std::vector<Polynomial>& gens, const Frame& frame, const QInf& delta) {
    if (delta.is_inf() || delta.value() <= 0) throw domain_error("in_delta needs a finite positive delta");
    std::vector<Polynomial> out;
    for (const auto& g : gens) {
        Indexer ix(frame, g);
        auto val = [&](const Monomial& m) {
            SplitExponent s = ix.split(m);
            mpq_class a = 0;
            for (int x : s.a) a += x;
            return mpq_class(s.b_degree() + a / delta.value());
        };
        std::optional<mpq_class> best;
        for (const auto& [m, c] : g.terms()) {
            mpq_class v = val(m);
            if (!best || v < *best) best = v;
        }
        Polynomial h(g.field(), g.vars());
        for (const auto& [m, c] : g.terms())
            if (val(m) == *best) h.add_term(m, c);
        out.push_back(h);
    }
    return out;
}

} // namespace cjs
