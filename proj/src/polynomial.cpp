#include "cjs/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "cjs/errors.hpp"

namespace cjs {

Polynomial::Polynomial(Field f, std::vector<std::string> vars) : field_(f), vars_(std::move(vars)) {
    std::set<std::string> seen;
    for (const auto& v : vars_)
        if (!seen.insert(v).second) throw input_error("duplicate variable " + v);
}

Polynomial Polynomial::constant(Field f, std::vector<std::string> vars, const Coeff& c) {
    Polynomial r(f, std::move(vars));
    r.add_term(Monomial(r.nvars(), 0), c);
    return r;
}

Polynomial Polynomial::variable(Field f, std::vector<std::string> vars, const std::string& name) {
    Polynomial r(f, std::move(vars));
    Monomial m(r.nvars(), 0);
    m[r.var_index(name)] = 1;
    r.add_term(m, f.one());
    return r;
}

Polynomial Polynomial::monomial(Field f, std::vector<std::string> vars, Monomial m, const Coeff& c) {
    Polynomial r(f, std::move(vars));
    if (m.size() != r.nvars()) throw input_error("monomial length does not match variables");
    r.add_term(m, c);
    return r;
}

std::optional<int> Polynomial::find_var(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return std::nullopt;
    return static_cast<int>(it - vars_.begin());
}

int Polynomial::var_index(const std::string& name) const {
    auto i = find_var(name);
    if (!i) throw input_error("unknown variable " + name);
    return *i;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                                 terms_.begin()->first.end(),
                                                                 [](int e) { return e == 0; }));
}

Coeff Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
}

Coeff Polynomial::constant_term() const { return coeff(Monomial(nvars(), 0)); }

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
    return d;
}

int Polynomial::degree_in(int idx) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[idx]);
    return d;
}

std::set<std::string> Polynomial::support() const {
    std::set<std::string> s;
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i]) s.insert(vars_[i]);
    return s;
}

void Polynomial::add_term(const Monomial& m, const Coeff& c) {
    if (c.field() != field_) throw input_error("coefficient field mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Polynomial::check(const Polynomial& o) const {
    if (field_ != o.field_) throw input_error("field mismatch: " + field_.describe() + " vs " + o.field_.describe());
    if (vars_ != o.vars_) throw input_error("variable lists differ");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(field_, vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check(o);
    Polynomial r(field_, vars_);
    Monomial m(nvars());
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            for (size_t i = 0; i < m.size(); ++i) m[i] = a[i] + b[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

Polynomial Polynomial::operator*(const Coeff& c) const {
    Polynomial r(field_, vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(field_, vars_, field_.one());
    Polynomial b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && terms_ == o.terms_;
}

Polynomial Polynomial::divide_monomial(const Monomial& d) const {
    Polynomial r(field_, vars_);
    for (const auto& [m, c] : terms_) {
        Monomial q = m;
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] -= d[i];
            if (q[i] < 0) throw domain_error("monomial does not divide " + to_string());
        }
        r.terms_.emplace(q, c);
    }
    return r;
}

Polynomial Polynomial::with_vars(const std::vector<std::string>& vars) const {
    Polynomial r(field_, vars);
    std::vector<int> pos(nvars());
    for (size_t i = 0; i < nvars(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        pos[i] = it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
    }
    for (const auto& [m, c] : terms_) {
        Monomial n(vars.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (pos[i] < 0) throw input_error("variable " + vars_[i] + " missing from target list");
            n[pos[i]] = m[i];
        }
        r.terms_.emplace(n, c);
    }
    return r;
}

Polynomial Polynomial::renamed(const std::map<std::string, std::string>& names) const {
    std::vector<std::string> v = vars_;
    for (auto& x : v) {
        auto it = names.find(x);
        if (it != names.end()) x = it->second;
    }
    Polynomial r(field_, v);
    r.terms_ = terms_;
    return r;
}

Polynomial Polynomial::map_coefficients(Field target, const std::function<Coeff(const Coeff&)>& fn) const {
    Polynomial r(target, vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
    return r;
}

std::vector<std::pair<Monomial, Coeff>> Polynomial::sorted_terms() const {
    std::vector<std::pair<Monomial, Coeff>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int da = std::accumulate(a.first.begin(), a.first.end(), 0);
        int db = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (da != db) return da < db;
        return a.first > b.first;
    });
    return out;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c0] : sorted_terms()) {
        Coeff c = c0;
        bool neg = c.is_negative();
        if (neg) c = -c;
        if (!first || neg) out += neg ? "-" : "+";
        first = false;
        std::string mono = monomial_to_string(m, vars_);
        if (mono.empty()) {
            out += c.is_atomic() ? c.to_string() : "(" + c.to_string() + ")";
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += (c.is_atomic() ? c.to_string() : "(" + c.to_string() + ")") + "*" + mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view s, Field f, const std::vector<std::string>& vars) : s_(s), f_(f), vars_(vars) {}

    Polynomial run() {
        Polynomial r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" +
                          std::string(s_) + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial r(f_, vars_);
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        Polynomial t = term();
        r = neg ? -t : t;
        for (;;) {
            if (accept('+')) r = r + term();
            else if (accept('-')) r = r - term();
            else break;
        }
        return r;
    }

    Polynomial term() {
        Polynomial r = factor();
        for (;;) {
            if (accept('*')) {
                r = r * factor();
            } else if (accept('/')) {
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
                r = r * d.constant_term().inverse();
            } else {
                break;
            }
        }
        return r;
    }

    Polynomial factor() {
        Polynomial b = primary();
        if (accept('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
            if (e > 100000) fail("exponent too large");
            b = b.pow(static_cast<unsigned>(e));
        }
        return b;
    }

    Polynomial primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpz_class v(std::string(s_.substr(start, pos_ - start)));
            return Polynomial::constant(f_, vars_, f_.from_mpz(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            while (pos_ < s_.size() && s_[pos_] == '\'') ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if ((f_.kind() == FieldKind::rational_functions || f_.kind() == FieldKind::finite_extension) &&
                name == f_.generator_name())
                return Polynomial::constant(f_, vars_, f_.generator());
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) fail("unknown variable " + name);
            return Polynomial::variable(f_, vars_, name);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    Field f_;
    const std::vector<std::string>& vars_;
    size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, Field f, const std::vector<std::string>& vars) {
    return Parser(text, f, vars).run();
}

// ---------------------------------------------------------------------------

OrdInf ord_at(const Polynomial& f, const std::set<std::string>& prime_vars) {
    std::vector<int> idx;
    for (const auto& v : prime_vars) idx.push_back(f.var_index(v));
    if (f.is_zero()) return std::nullopt;
    long best = -1;
    for (const auto& [m, c] : f.terms()) {
        long d = 0;
        for (int i : idx) d += m[i];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

OrdInf ord(const Polynomial& f) {
    return ord_at(f, std::set<std::string>(f.vars().begin(), f.vars().end()));
}

Coeff binomial(Field f, long n, long k) {
    if (k < 0 || k > n) return f.zero();
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return f.from_mpz(b);
}

Polynomial hasse_derivative(const Polynomial& f, const Monomial& a) {
    if (a.size() != f.nvars()) throw input_error("multi-index length does not match variables");
    Polynomial r(f.field(), f.vars());
    for (const auto& [m, c] : f.terms()) {
        Coeff k = c;
        Monomial q = m;
        bool ok = true;
        for (size_t i = 0; i < m.size() && ok; ++i) {
            if (a[i] > m[i]) ok = false;
            else if (a[i]) {
                k *= binomial(f.field(), m[i], a[i]);
                q[i] -= a[i];
            }
        }
        if (ok) r.add_term(q, k);
    }
    return r;
}

Polynomial substitute_all(const Polynomial& f, const std::map<std::string, Polynomial>& images) {
    std::vector<const Polynomial*> img(f.nvars(), nullptr);
    for (const auto& [name, e] : images) {
        int i = f.var_index(name);
        if (e.field() != f.field() || e.vars() != f.vars())
            throw input_error("substitution image must share field and variables");
        img[i] = &e;
    }
    std::vector<std::map<int, Polynomial>> cache(f.nvars());
    auto power = [&](size_t i, int e) -> const Polynomial& {
        auto& c = cache[i];
        auto it = c.find(e);
        if (it != c.end()) return it->second;
        return c.emplace(e, img[i]->pow(static_cast<unsigned>(e))).first->second;
    };
    Polynomial r(f.field(), f.vars());
    for (const auto& [m, c] : f.terms()) {
        Monomial keep = m;
        Polynomial t = Polynomial::constant(f.field(), f.vars(), c);
        for (size_t i = 0; i < m.size(); ++i) {
            if (img[i] && m[i]) {
                keep[i] = 0;
                t = t * power(i, m[i]);
            }
        }
        Polynomial mono = Polynomial::monomial(f.field(), f.vars(), keep, f.field().one());
        r += t * mono;
    }
    return r;
}

Polynomial substitute(const Polynomial& f, const std::string& var, const Polynomial& expr) {
    return substitute_all(f, {{var, expr}});
}

std::vector<Monomial> monomials_of_degree(size_t n, int d) {
    std::vector<Monomial> out;
    Monomial m(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (n == 0) {
            if (left == 0) out.push_back(m);
            return;
        }
        if (i + 1 == n) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (int k = left; k >= 0; --k) {
            m[i] = k;
            rec(i + 1, left - k);
        }
        m[i] = 0;
    };
    rec(0, d);
    return out;
}

std::vector<Monomial> monomials_up_to_degree(size_t n, int d) {
    std::vector<Monomial> out;
    for (int k = 0; k <= d; ++k) {
        auto v = monomials_of_degree(n, k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

} // namespace cjs
