#include "cjs/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace cjs {

EchelonBuilder::EchelonBuilder(Field f, size_t ncols, std::vector<size_t> column_order)
    : f_(f), ncols_(ncols), order_(std::move(column_order)) {
    if (order_.empty()) {
        order_.resize(ncols);
        std::iota(order_.begin(), order_.end(), 0);
    }
}

Row EchelonBuilder::reduce(Row r) const {
    for (size_t i = 0; i < e_.rows.size(); ++i) {
        Coeff k = r[e_.pivots[i]];
        if (k.is_zero()) continue;
        const Row& b = e_.rows[i];
        for (size_t j = 0; j < ncols_; ++j)
            if (!b[j].is_zero()) r[j] -= k * b[j];
    }
    return r;
}

bool EchelonBuilder::contains(const Row& r) const {
    Row w = reduce(r);
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

bool EchelonBuilder::add(Row r) {
    if (e_.rows.size() == ncols_) return false;
    r = reduce(std::move(r));
    size_t piv = ncols_;
    for (size_t c : order_)
        if (!r[c].is_zero()) {
            piv = c;
            break;
        }
    if (piv == ncols_) return false;
    Coeff inv = r[piv].inverse();
    for (auto& x : r)
        if (!x.is_zero()) x *= inv;
    for (auto& b : e_.rows) {
        Coeff k = b[piv];
        if (k.is_zero()) continue;
        for (size_t j = 0; j < ncols_; ++j)
            if (!r[j].is_zero()) b[j] -= k * r[j];
    }
    // keep rows sorted by pivot position in the column order
    auto rank_of = [&](size_t col) { return std::find(order_.begin(), order_.end(), col) - order_.begin(); };
    size_t at = 0;
    while (at < e_.pivots.size() && rank_of(e_.pivots[at]) < rank_of(piv)) ++at;
    e_.rows.insert(e_.rows.begin() + static_cast<long>(at), std::move(r));
    e_.pivots.insert(e_.pivots.begin() + static_cast<long>(at), piv);
    return true;
}

Echelon rref(const std::vector<Row>& rows, Field f, size_t ncols, const std::vector<size_t>& column_order) {
    EchelonBuilder b(f, ncols, column_order);
    for (const Row& r : rows) b.add(r);
    return b.echelon();
}

std::vector<Row> nullspace(const std::vector<Row>& rows, Field f, size_t ncols) {
    Echelon e = rref(rows, f, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<Row> basis;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Row v(ncols, f.zero());
        v[free] = f.one();
        for (size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Row> solve(const std::vector<Row>& a, const Row& b, Field f, size_t ncols) {
    std::vector<Row> aug;
    for (size_t i = 0; i < a.size(); ++i) {
        Row r = a[i];
        r.push_back(b[i]);
        aug.push_back(std::move(r));
    }
    Echelon e = rref(aug, f, ncols + 1);
    Row x(ncols, f.zero());
    for (size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == ncols) return std::nullopt;
        x[e.pivots[i]] = e.rows[i][ncols];
    }
    return x;
}

} // namespace cjs
