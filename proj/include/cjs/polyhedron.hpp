#ifndef CJS_POLYHEDRON_HPP
#define CJS_POLYHEDRON_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

#include "cjs/qinf.hpp"

namespace cjs {

using QPoint = std::vector<mpq_class>;

bool lex_less(const QPoint& a, const QPoint& b);
std::string to_string(const QPoint& p);

// F-subset of Q^e_{>=0} (e <= 2) given by its vertices. The vertex list is
// canonical: extreme points only, sorted by increasing first coordinate.
class FPolyhedron {
public:
    explicit FPolyhedron(size_t dim = 2) : dim_(dim) {}
    // Smallest F-subset containing the points.
    static FPolyhedron from_points(size_t dim, std::vector<QPoint> pts);

    size_t dim() const { return dim_; }
    bool empty() const { return vertices_.empty(); }
    const std::vector<QPoint>& vertices() const { return vertices_; }
    bool is_vertex(const QPoint& p) const;

    bool contains(const QPoint& p) const;
    bool subset_of(const FPolyhedron& o) const;
    // Coordinates exchanged (dim 2 only).
    FPolyhedron swapped() const;

    bool operator==(const FPolyhedron& o) const { return dim_ == o.dim_ && vertices_ == o.vertices_; }
    std::string to_string() const;

private:
    size_t dim_;
    std::vector<QPoint> vertices_;
};

QInf delta(const FPolyhedron& d);

struct FaceNumbers {
    QInf alpha, beta, gamma, s;
};

// side 1 reads the first coordinate as abscissa; side 2 swaps.
FaceNumbers face_numbers(const FPolyhedron& d, int side);

} // namespace cjs

#endif
