#ifndef CJS_LINALG_HPP
#define CJS_LINALG_HPP

#include <optional>
#include <vector>

#include "cjs/field.hpp"

namespace cjs {

using Row = std::vector<Coeff>;

struct Echelon {
    std::vector<Row> rows; // reduced, pivot entries equal to one
    std::vector<size_t> pivots;
    size_t rank() const { return rows.size(); }
};

// Incremental reduced row echelon form. Pivots are chosen as the first
// nonzero entry in `column_order` (natural order when empty).
class EchelonBuilder {
public:
    EchelonBuilder(Field f, size_t ncols, std::vector<size_t> column_order = {});

    // Adds a row; returns false if it was already in the span.
    bool add(Row r);
    bool contains(const Row& r) const;
    // Remainder of r after reduction.
    Row reduce(Row r) const;
    size_t rank() const { return e_.rows.size(); }
    size_t ncols() const { return ncols_; }
    const Echelon& echelon() const { return e_; }

private:
    Field f_;
    size_t ncols_;
    std::vector<size_t> order_;
    Echelon e_;
};

Echelon rref(const std::vector<Row>& rows, Field f, size_t ncols, const std::vector<size_t>& column_order = {});

// Basis of {x : A x = 0}.
std::vector<Row> nullspace(const std::vector<Row>& rows, Field f, size_t ncols);

// Solve A x = b; a particular solution with free variables set to zero, or
// nothing if inconsistent.
std::optional<Row> solve(const std::vector<Row>& a, const Row& b, Field f, size_t ncols);

} // namespace cjs

#endif
