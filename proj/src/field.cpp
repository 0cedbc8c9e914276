#include "cjs/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "cjs/errors.hpp"

namespace cjs {

u64 mod_mul(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

u64 mod_pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 mod_inverse(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::domain_error("Modular inverse does not exist");
    return mod_pow(a, p - 2, p);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace upoly {

void trim(UPoly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

UPoly constant(u64 v, u64 p) {
    UPoly r;
    if (v % p) r.c.push_back(v % p);
    return r;
}

UPoly monomial(u64 coeff, int deg, u64 p) {
    UPoly r;
    if (coeff % p == 0) return r;
    r.c.assign(deg + 1, 0);
    r.c[deg] = coeff % p;
    return r;
}

UPoly add(const UPoly& a, const UPoly& b, u64 p) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        u64 x = i < a.c.size() ? a.c[i] : 0;
        u64 y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = (x + y) % p;
    }
    trim(r);
    return r;
}

UPoly neg(const UPoly& a, u64 p) {
    UPoly r = a;
    for (auto& x : r.c) x = (p - x) % p;
    return r;
}

UPoly sub(const UPoly& a, const UPoly& b, u64 p) { return add(a, neg(b, p), p); }

UPoly mul(const UPoly& a, const UPoly& b, u64 p) {
    if (a.is_zero() || b.is_zero()) return {};
    UPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + mod_mul(a.c[i], b.c[j], p)) % p;
    }
    trim(r);
    return r;
}

UPoly scale(const UPoly& a, u64 s, u64 p) {
    UPoly r = a;
    for (auto& x : r.c) x = mod_mul(x, s % p, p);
    trim(r);
    return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b, u64 p) {
    if (b.is_zero()) throw std::runtime_error("Cannot divide by zero");
    UPoly q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.c.size() - b.c.size() + 1, 0);
    u64 inv = mod_inverse(b.lead(), p);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        u64 f = mod_mul(r.lead(), inv, p);
        q.c[shift] = f;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[j + shift] = (r.c[j + shift] + p - mod_mul(f, b.c[j], p)) % p;
        trim(r);
    }
    trim(q);
    return {q, r};
}

UPoly monic(const UPoly& a, u64 p) {
    if (a.is_zero()) return a;
    return scale(a, mod_inverse(a.lead(), p), p);
}

UPoly gcd(UPoly a, UPoly b, u64 p) {
    while (!b.is_zero()) {
        UPoly r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

UPoly pow_mod(const UPoly& base, mpz_class e, const UPoly& m, u64 p) {
    UPoly r = constant(1, p);
    UPoly b = divmod(base, m, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divmod(mul(r, b, p), m, p).second;
        b = divmod(mul(b, b, p), m, p).second;
        e >>= 1;
    }
    return r;
}

bool is_irreducible(const UPoly& f, u64 p) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    UPoly x = monomial(1, 1, p);
    UPoly h = x;
    for (int i = 1; i <= f.degree() / 2; ++i) {
        h = pow_mod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
        UPoly g = gcd(f, sub(h, x, p), p);
        if (g.degree() > 0) return false;
    }
    return true;
}

std::string to_string(const UPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
        u64 c = a.c[i];
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

namespace {
bool single_term(const UPoly& a) {
    int n = 0;
    for (u64 x : a.c) n += x != 0;
    return n <= 1;
}

// s with s*a = gcd(a, m) mod m.
UPoly inverse_mod(const UPoly& a, const UPoly& m, u64 p) {
    UPoly r0 = m, r1 = divmod(a, m, p).second;
    UPoly s0, s1 = constant(1, p);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1, p);
        UPoly s = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) throw std::domain_error("element is not invertible");
    return scale(s0, mod_inverse(r0.c[0], p), p);
}
} // namespace

} // namespace upoly

// ---------------------------------------------------------------------------

namespace {
std::mutex registry_mutex;
std::map<std::string, std::unique_ptr<detail::FieldData>>& registry() {
    static std::map<std::string, std::unique_ptr<detail::FieldData>> r;
    return r;
}

void normalize(RatFun& r, u64 p) {
    if (r.den.is_zero()) throw std::runtime_error("Cannot divide by zero");
    if (r.num.is_zero()) {
        r.den = upoly::constant(1, p);
        return;
    }
    UPoly g = upoly::gcd(r.num, r.den, p);
    if (g.degree() > 0) {
        r.num = upoly::divmod(r.num, g, p).first;
        r.den = upoly::divmod(r.den, g, p).first;
    }
    u64 inv = mod_inverse(r.den.lead(), p);
    r.num = upoly::scale(r.num, inv, p);
    r.den = upoly::scale(r.den, inv, p);
}
} // namespace

Field Field::intern(detail::FieldData d) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto& reg = registry();
    std::string key = d.key;
    auto it = reg.find(key);
    if (it == reg.end()) it = reg.emplace(key, std::make_unique<detail::FieldData>(std::move(d))).first;
    return Field(it->second.get());
}

Field::Field() : Field(rationals()) {}

Field Field::rationals() {
    static const Field q = intern({FieldKind::rationals, 0, "", {}, "QQ"});
    return q;
}

Field Field::prime(u64 p) {
    if (!is_prime(p)) throw input_error("characteristic must be prime, got " + std::to_string(p));
    return intern({FieldKind::prime_field, p, "", {}, "GF(" + std::to_string(p) + ")"});
}

Field Field::rational_functions(u64 p, const std::string& t) {
    if (!is_prime(p)) throw input_error("characteristic must be prime, got " + std::to_string(p));
    if (t.empty()) throw input_error("transcendental needs a name");
    return intern({FieldKind::rational_functions, p, t, {}, "GF(" + std::to_string(p) + ")(" + t + ")"});
}

Field Field::extension(u64 p, const UPoly& modulus, const std::string& a) {
    if (!is_prime(p)) throw input_error("characteristic must be prime, got " + std::to_string(p));
    UPoly m = upoly::monic(modulus, p);
    if (!upoly::is_irreducible(m, p))
        throw input_error("extension modulus " + upoly::to_string(m, a) + " is reducible over GF(" +
                          std::to_string(p) + ")");
    if (m.degree() == 1) return prime(p);
    return intern({FieldKind::finite_extension, p, a, m,
                   "GF(" + std::to_string(p) + ")[" + a + "]/(" + upoly::to_string(m, a) + ")"});
}

int Field::extension_degree() const {
    return kind() == FieldKind::finite_extension ? modulus().degree() : 1;
}

bool Field::is_finite() const {
    return kind() == FieldKind::prime_field || kind() == FieldKind::finite_extension;
}

std::optional<u64> Field::cardinality() const {
    if (!is_finite()) return std::nullopt;
    u64 n = 1;
    for (int i = 0; i < extension_degree(); ++i) n *= characteristic();
    return n;
}

Coeff Field::zero() const { return from_int(0); }
Coeff Field::one() const { return from_int(1); }

Coeff Field::from_int(long v) const {
    if (kind() == FieldKind::rationals) return Coeff(*this, mpq_class(v));
    u64 p = characteristic();
    long m = v % static_cast<long>(p);
    u64 r = static_cast<u64>(m < 0 ? m + static_cast<long>(p) : m);
    return from_mpz(mpz_class(static_cast<unsigned long>(r)));
}

Coeff Field::from_mpz(const mpz_class& v) const {
    if (kind() == FieldKind::rationals) return Coeff(*this, mpq_class(v));
    u64 p = characteristic();
    mpz_class m = v % mpz_class(static_cast<unsigned long>(p));
    if (m < 0) m += static_cast<unsigned long>(p);
    u64 r = m.get_ui();
    switch (kind()) {
    case FieldKind::prime_field: return Coeff(*this, r);
    case FieldKind::rational_functions: return Coeff(*this, RatFun{upoly::constant(r, p), upoly::constant(1, p)});
    default: return Coeff(*this, upoly::constant(r, p));
    }
}

Coeff Field::from_mpq(const mpq_class& v) const {
    if (kind() == FieldKind::rationals) return Coeff(*this, v);
    Coeff d = from_mpz(v.get_den());
    if (d.is_zero())
        throw input_error("denominator " + v.get_den().get_str() + " vanishes in characteristic " +
                          std::to_string(characteristic()));
    return from_mpz(v.get_num()) / d;
}

Coeff Field::generator() const {
    u64 p = characteristic();
    switch (kind()) {
    case FieldKind::rational_functions: return Coeff(*this, RatFun{upoly::monomial(1, 1, p), upoly::constant(1, p)});
    case FieldKind::finite_extension: return Coeff(*this, upoly::monomial(1, 1, p));
    default: throw unsupported_operation("field " + describe() + " has no generator");
    }
}

std::vector<Coeff> Field::elements(u64 limit) const {
    auto n = cardinality();
    if (!n || *n > limit) throw unsupported_operation("cannot enumerate field " + describe());
    std::vector<Coeff> out;
    u64 p = characteristic();
    int d = extension_degree();
    for (u64 i = 0; i < *n; ++i) {
        if (kind() == FieldKind::prime_field) {
            out.emplace_back(*this, i);
            continue;
        }
        UPoly a;
        u64 x = i;
        for (int j = 0; j < d; ++j) {
            a.c.push_back(x % p);
            x /= p;
        }
        upoly::trim(a);
        out.emplace_back(*this, a);
    }
    return out;
}

// ---------------------------------------------------------------------------

Coeff::Coeff(Field f, Value v) : f_(f), v_(std::move(v)) {
    u64 p = f_.characteristic();
    switch (f_.kind()) {
    case FieldKind::rationals: std::get<mpq_class>(v_).canonicalize(); break;
    case FieldKind::prime_field: std::get<u64>(v_) %= p; break;
    case FieldKind::rational_functions: normalize(std::get<RatFun>(v_), p); break;
    case FieldKind::finite_extension: {
        auto& a = std::get<UPoly>(v_);
        for (auto& x : a.c) x %= p;
        upoly::trim(a);
        a = upoly::divmod(a, f_.modulus(), p).second;
        break;
    }
    }
}

void Coeff::check(const Coeff& o) const {
    if (f_ != o.f_) throw input_error("field mismatch: " + f_.describe() + " vs " + o.f_.describe());
}

bool Coeff::is_zero() const {
    switch (f_.kind()) {
    case FieldKind::rationals: return sgn(rational()) == 0;
    case FieldKind::prime_field: return residue() == 0;
    case FieldKind::rational_functions: return std::get<RatFun>(v_).num.is_zero();
    default: return std::get<UPoly>(v_).is_zero();
    }
}

bool Coeff::is_one() const { return *this == f_.one(); }

bool Coeff::is_negative() const {
    return f_.kind() == FieldKind::rationals && sgn(rational()) < 0;
}

Coeff Coeff::operator+(const Coeff& o) const {
    check(o);
    u64 p = f_.characteristic();
    switch (f_.kind()) {
    case FieldKind::rationals: return Coeff(f_, mpq_class(rational() + o.rational()));
    case FieldKind::prime_field: return Coeff(f_, (residue() + o.residue()) % p);
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        const auto& b = std::get<RatFun>(o.v_);
        return Coeff(f_, RatFun{upoly::add(upoly::mul(a.num, b.den, p), upoly::mul(b.num, a.den, p), p),
                                upoly::mul(a.den, b.den, p)});
    }
    default: return Coeff(f_, upoly::add(std::get<UPoly>(v_), std::get<UPoly>(o.v_), p));
    }
}

Coeff Coeff::operator-() const {
    u64 p = f_.characteristic();
    switch (f_.kind()) {
    case FieldKind::rationals: return Coeff(f_, mpq_class(-rational()));
    case FieldKind::prime_field: return Coeff(f_, (p - residue()) % p);
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        return Coeff(f_, RatFun{upoly::neg(a.num, p), a.den});
    }
    default: return Coeff(f_, upoly::neg(std::get<UPoly>(v_), p));
    }
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
    check(o);
    u64 p = f_.characteristic();
    switch (f_.kind()) {
    case FieldKind::rationals: return Coeff(f_, mpq_class(rational() * o.rational()));
    case FieldKind::prime_field: return Coeff(f_, mod_mul(residue(), o.residue(), p));
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        const auto& b = std::get<RatFun>(o.v_);
        return Coeff(f_, RatFun{upoly::mul(a.num, b.num, p), upoly::mul(a.den, b.den, p)});
    }
    default: return Coeff(f_, upoly::mul(std::get<UPoly>(v_), std::get<UPoly>(o.v_), p));
    }
}

Coeff Coeff::inverse() const {
    if (is_zero()) throw std::runtime_error("Cannot divide by zero");
    u64 p = f_.characteristic();
    switch (f_.kind()) {
    case FieldKind::rationals: return Coeff(f_, mpq_class(1 / rational()));
    case FieldKind::prime_field: return Coeff(f_, mod_inverse(residue(), p));
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        return Coeff(f_, RatFun{a.den, a.num});
    }
    default: return Coeff(f_, upoly::inverse_mod(std::get<UPoly>(v_), f_.modulus(), p));
    }
}

Coeff Coeff::operator/(const Coeff& o) const {
    check(o);
    return *this * o.inverse();
}

Coeff Coeff::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    Coeff r = f_.one(), b = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

bool Coeff::operator==(const Coeff& o) const { return f_ == o.f_ && v_ == o.v_; }

bool Coeff::less(const Coeff& o) const {
    if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
    switch (f_.kind()) {
    case FieldKind::rationals: return rational() < o.rational();
    case FieldKind::prime_field: return residue() < o.residue();
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        const auto& b = std::get<RatFun>(o.v_);
        return std::tie(a.num, a.den) < std::tie(b.num, b.den);
    }
    default: return std::get<UPoly>(v_) < std::get<UPoly>(o.v_);
    }
}

bool Coeff::is_atomic() const {
    switch (f_.kind()) {
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        return upoly::single_term(a.num) && upoly::single_term(a.den);
    }
    case FieldKind::finite_extension: return upoly::single_term(std::get<UPoly>(v_));
    default: return true;
    }
}

std::string Coeff::to_string() const {
    switch (f_.kind()) {
    case FieldKind::rationals: return rational().get_str();
    case FieldKind::prime_field: return std::to_string(residue());
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(v_);
        const auto& t = f_.generator_name();
        std::string n = upoly::to_string(a.num, t);
        if (a.den.degree() == 0) return n;
        std::string d = upoly::to_string(a.den, t);
        if (!upoly::single_term(a.num)) n = "(" + n + ")";
        if (!upoly::single_term(a.den) || a.den.c.back() != 1 || d.find('*') != std::string::npos)
            d = "(" + d + ")";
        return n + "/" + d;
    }
    default: return upoly::to_string(std::get<UPoly>(v_), f_.generator_name());
    }
}

std::optional<Coeff> p_th_root(const Coeff& c) {
    Field f = c.field();
    u64 p = f.characteristic();
    switch (f.kind()) {
    case FieldKind::rationals: throw unsupported_operation("p-th root requires positive characteristic");
    case FieldKind::prime_field: return c;
    case FieldKind::rational_functions: {
        const auto& a = std::get<RatFun>(c.value());
        auto root = [p](const UPoly& u) -> std::optional<UPoly> {
            UPoly r;
            for (size_t i = 0; i < u.c.size(); ++i) {
                if (!u.c[i]) continue;
                if (i % p) return std::nullopt;
                if (r.c.size() < i / p + 1) r.c.resize(i / p + 1, 0);
                r.c[i / p] = u.c[i];
            }
            return r;
        };
        auto n = root(a.num);
        auto d = root(a.den);
        if (!n || !d) return std::nullopt;
        return Coeff(f, RatFun{*n, *d});
    }
    default: {
        // Frobenius has order d on GF(p^d), so the inverse is x -> x^(p^(d-1)).
        mpz_class e = 1;
        for (int i = 1; i < f.extension_degree(); ++i) e *= static_cast<unsigned long>(p);
        return c.pow(e);
    }
    }
}

std::optional<Coeff> q_th_root(const Coeff& c, u64 q) {
    if (q == 1) return c;
    u64 p = c.field().characteristic();
    std::optional<Coeff> r = c;
    for (u64 k = q; k > 1; k /= p) {
        if (k % p) throw domain_error("root order is not a power of the characteristic");
        r = p_th_root(*r);
        if (!r) return std::nullopt;
    }
    return r;
}

} // namespace cjs
