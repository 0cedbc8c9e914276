#ifndef CJS_FIELD_HPP
#define CJS_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace cjs {

using u64 = std::uint64_t;

// Dense univariate polynomial over F_p; coefficients low to high, no trailing zeros.
struct UPoly {
    std::vector<u64> c;

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    u64 lead() const { return c.empty() ? 0 : c.back(); }
    bool operator==(const UPoly&) const = default;
    auto operator<=>(const UPoly&) const = default;
};

namespace upoly {
UPoly constant(u64 v, u64 p);
UPoly monomial(u64 coeff, int deg, u64 p);
void trim(UPoly& a);
UPoly add(const UPoly& a, const UPoly& b, u64 p);
UPoly sub(const UPoly& a, const UPoly& b, u64 p);
UPoly neg(const UPoly& a, u64 p);
UPoly mul(const UPoly& a, const UPoly& b, u64 p);
UPoly scale(const UPoly& a, u64 s, u64 p);
// Returns (quotient, remainder); throws on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b, u64 p);
UPoly gcd(UPoly a, UPoly b, u64 p);
UPoly monic(const UPoly& a, u64 p);
UPoly pow_mod(const UPoly& base, mpz_class e, const UPoly& m, u64 p);
// Rabin-style test: no factor of degree <= deg/2.
bool is_irreducible(const UPoly& f, u64 p);
std::string to_string(const UPoly& a, const std::string& var);
} // namespace upoly

u64 mod_inverse(u64 a, u64 p);
u64 mod_pow(u64 a, u64 e, u64 p);
u64 mod_mul(u64 a, u64 b, u64 p);
bool is_prime(u64 n);

enum class FieldKind { rationals, prime_field, rational_functions, finite_extension };

namespace detail {
struct FieldData {
    FieldKind kind;
    u64 p;
    std::string gen_name; // transcendental or algebraic generator
    UPoly modulus;        // only for finite_extension, monic irreducible
    std::string key;
};
} // namespace detail

class Coeff;

// Interned field descriptor; cheap to copy, compared by identity.
class Field {
public:
    Field();
    static Field rationals();
    static Field prime(u64 p);
    static Field rational_functions(u64 p, const std::string& t = "t");
    static Field extension(u64 p, const UPoly& modulus, const std::string& a = "a");

    FieldKind kind() const { return d_->kind; }
    u64 characteristic() const { return d_->p; }
    const std::string& generator_name() const { return d_->gen_name; }
    const UPoly& modulus() const { return d_->modulus; }
    int extension_degree() const;
    bool is_finite() const;
    // Base prime field element count for finite fields (p^d).
    std::optional<u64> cardinality() const;
    std::string describe() const { return d_->key; }

    Coeff zero() const;
    Coeff one() const;
    Coeff from_int(long v) const;
    Coeff from_mpz(const mpz_class& v) const;
    Coeff from_mpq(const mpq_class& v) const;
    // t for rational functions, a for extensions.
    Coeff generator() const;
    // All elements, only for finite fields of size <= limit.
    std::vector<Coeff> elements(u64 limit = 4096) const;

    bool operator==(const Field& o) const { return d_ == o.d_; }
    bool operator!=(const Field& o) const { return d_ != o.d_; }

private:
    explicit Field(const detail::FieldData* d) : d_(d) {}
    static Field intern(detail::FieldData d);
    const detail::FieldData* d_;
    friend class Coeff;
};

// Reduced fraction num/den over F_p, den monic.
struct RatFun {
    UPoly num, den;
    bool operator==(const RatFun&) const = default;
};

class Coeff {
public:
    using Value = std::variant<mpq_class, u64, RatFun, UPoly>;

    Coeff() : f_(Field::rationals()), v_(mpq_class(0)) {}
    Coeff(Field f, Value v);

    Field field() const { return f_; }
    const Value& value() const { return v_; }
    bool is_zero() const;
    bool is_one() const;

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator/(const Coeff& o) const;
    Coeff operator-() const;
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
    Coeff inverse() const;
    Coeff pow(const mpz_class& e) const;
    bool operator==(const Coeff& o) const;
    bool operator!=(const Coeff& o) const { return !(*this == o); }
    // Total order used only for deterministic output.
    bool less(const Coeff& o) const;

    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    u64 residue() const { return std::get<u64>(v_); }

    std::string to_string() const;
    // True when to_string() needs no parentheses as a factor.
    bool is_atomic() const;
    // True for a negative rational (printing sign).
    bool is_negative() const;

private:
    void check(const Coeff& o) const;
    Field f_;
    Value v_;
};

// Unique d with d^p = c, if it exists in the field.
std::optional<Coeff> p_th_root(const Coeff& c);
// Repeated p-th root: d with d^q = c for q a power of p (q = 1 returns c).
std::optional<Coeff> q_th_root(const Coeff& c, u64 q);

} // namespace cjs

#endif
