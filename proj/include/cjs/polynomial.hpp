#ifndef CJS_POLYNOMIAL_HPP
#define CJS_POLYNOMIAL_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cjs/field.hpp"

namespace cjs {

// Exponent vector aligned with a polynomial's ambient variable list.
using Monomial = std::vector<int>;

// Order value; std::nullopt stands for infinity (zero polynomial).
using OrdInf = std::optional<long>;

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(Field f, std::vector<std::string> vars);

    static Polynomial constant(Field f, std::vector<std::string> vars, const Coeff& c);
    static Polynomial variable(Field f, std::vector<std::string> vars, const std::string& name);
    static Polynomial monomial(Field f, std::vector<std::string> vars, Monomial m, const Coeff& c);

    const Field& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Monomial, Coeff>& terms() const { return terms_; }
    size_t nvars() const { return vars_.size(); }
    int var_index(const std::string& name) const;
    std::optional<int> find_var(const std::string& name) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Coeff constant_term() const;
    Coeff coeff(const Monomial& m) const;
    int total_degree() const;
    int degree_in(int idx) const;
    size_t size() const { return terms_.size(); }
    // Variables actually occurring.
    std::set<std::string> support() const;

    void add_term(const Monomial& m, const Coeff& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Coeff& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Exact division by a monomial; throws if some term is not divisible.
    Polynomial divide_monomial(const Monomial& m) const;
    // Re-embed into another variable list containing every occurring variable.
    Polynomial with_vars(const std::vector<std::string>& vars) const;
    Polynomial renamed(const std::map<std::string, std::string>& names) const;
    Polynomial map_coefficients(Field target, const std::function<Coeff(const Coeff&)>& fn) const;
    // Value at the origin of the chart.
    Coeff value_at_origin() const { return constant_term(); }

    // Terms in canonical print order: total degree ascending, then exponent
    // vectors descending in the ambient order.
    std::vector<std::pair<Monomial, Coeff>> sorted_terms() const;
    std::string to_string() const;

private:
    void check(const Polynomial& o) const;
    Field field_;
    std::vector<std::string> vars_;
    std::map<Monomial, Coeff> terms_;
};

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars);

// Parse the text grammar. Identifiers equal to the field's generator name
// (transcendental or algebraic) are coefficients, every other identifier must
// be in `vars`.
Polynomial parse_polynomial(std::string_view text, Field f, const std::vector<std::string>& vars);

OrdInf ord_at(const Polynomial& f, const std::set<std::string>& prime_vars);
OrdInf ord(const Polynomial& f);

Coeff binomial(Field f, long n, long k);
Polynomial hasse_derivative(const Polynomial& f, const Monomial& a);
Polynomial substitute(const Polynomial& f, const std::string& var, const Polynomial& expr);
Polynomial substitute_all(const Polynomial& f, const std::map<std::string, Polynomial>& images);

// All exponent vectors of length n with total degree exactly d (or <= d).
std::vector<Monomial> monomials_of_degree(size_t n, int d);
std::vector<Monomial> monomials_up_to_degree(size_t n, int d);

} // namespace cjs

#endif
