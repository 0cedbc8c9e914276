#include "cjs/polyhedron.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "cjs/errors.hpp"

namespace cjs {

bool lex_less(const QPoint& a, const QPoint& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const mpq_class& x, const mpq_class& y) { return x < y; });
}

std::string to_string(const QPoint& p) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
    os << ')';
    return os.str();
}

namespace {
// Sign of (b - a) x (c - a).
int turn(const QPoint& a, const QPoint& b, const QPoint& c) {
    mpq_class v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return sgn(v);
}
} // namespace

FPolyhedron FPolyhedron::from_points(size_t dim, std::vector<QPoint> pts) {
    FPolyhedron out(dim);
    for (const auto& p : pts)
        if (p.size() != dim) throw domain_error("point dimension mismatch");
    if (pts.empty()) return out;
    if (dim == 0) {
        out.vertices_.push_back({});
        return out;
    }
    if (dim == 1) {
        out.vertices_.push_back(*std::min_element(pts.begin(), pts.end(), lex_less));
        return out;
    }
    if (dim != 2) throw domain_error("F-subsets are supported up to dimension 2");
    std::sort(pts.begin(), pts.end(), lex_less);
    // staircase: strictly decreasing ordinates
    std::vector<QPoint> stair;
    for (const auto& p : pts)
        if (stair.empty() || p[1] < stair.back()[1]) stair.push_back(p);
    // lower convex chain from left to right
    std::vector<QPoint> hull;
    for (const auto& p : stair) {
        while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    out.vertices_ = std::move(hull);
    return out;
}

bool FPolyhedron::is_vertex(const QPoint& p) const { return std::find(vertices_.begin(), vertices_.end(), p) != vertices_.end(); }

bool FPolyhedron::contains(const QPoint& p) const {
    if (vertices_.empty()) return false;
    if (dim_ == 0) return true;
    if (dim_ == 1) return p[0] >= vertices_[0][0];
    const auto& first = vertices_.front();
    const auto& last = vertices_.back();
    if (p[0] < first[0] || p[1] < last[1]) return false;
    if (p[0] >= last[0] || p[1] >= first[1]) return true;
    for (size_t i = 0; i + 1 < vertices_.size(); ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[i + 1];
        if (p[0] >= a[0] && p[0] <= b[0]) return turn(a, b, p) >= 0;
    }
    return false;
}

bool FPolyhedron::subset_of(const FPolyhedron& o) const {
    if (dim_ != o.dim_) return false;
    for (const auto& v : vertices_)
        if (!o.contains(v)) return false;
    return true;
}

FPolyhedron FPolyhedron::swapped() const {
    if (dim_ != 2) throw domain_error("swap needs a two-dimensional polyhedron");
    std::vector<QPoint> pts;
    for (const auto& v : vertices_) pts.push_back({v[1], v[0]});
    return from_points(2, pts);
}

std::string FPolyhedron::to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < vertices_.size(); ++i) s += (i ? "," : "") + cjs::to_string(vertices_[i]);
    return s + "}";
}

QInf delta(const FPolyhedron& d) {
    if (d.empty()) return QInf::infinity();
    std::optional<mpq_class> best;
    for (const auto& v : d.vertices()) {
        mpq_class s = 0;
        for (const auto& x : v) s += x;
        if (!best || s < *best) best = s;
    }
    return QInf(*best);
}

FaceNumbers face_numbers(const FPolyhedron& d, int side) {
    if (d.dim() != 2) throw domain_error("face numbers need a two-dimensional polyhedron");
    if (side != 1 && side != 2) throw domain_error("side must be 1 or 2");
    if (d.empty()) return {QInf::infinity(), QInf::infinity(), QInf::infinity(), QInf::infinity()};
    const FPolyhedron p = side == 1 ? d : d.swapped();
    const auto& vs = p.vertices();
    FaceNumbers out;
    out.alpha = QInf(vs[0][0]);
    out.beta = QInf(vs[0][1]);
    mpq_class del = delta(p).value();
    std::optional<mpq_class> g;
    for (const auto& v : vs)
        if (v[0] + v[1] == del && (!g || v[1] > *g)) g = v[1];
    out.gamma = QInf(*g);
    if (vs.size() <= 1)
        out.s = QInf::infinity();
    else
        out.s = QInf(mpq_class((vs[1][0] - vs[0][0]) / (vs[0][1] - vs[1][1])));
    return out;
}

} // namespace cjs
