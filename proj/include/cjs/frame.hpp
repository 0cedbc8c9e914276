#ifndef CJS_FRAME_HPP
#define CJS_FRAME_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cjs/linalg.hpp"
#include "cjs/polynomial.hpp"

namespace cjs {

enum class BoundaryStatus { old_component, new_component };

std::string to_string(BoundaryStatus s);
BoundaryStatus parse_status(const std::string& s);

struct BoundaryComponent {
    Polynomial generator;
    BoundaryStatus status = BoundaryStatus::new_component;
    int birth_step = 0;

    bool through_origin() const { return generator.value_at_origin().is_zero(); }
    bool is_old() const { return status == BoundaryStatus::old_component; }
    // Name of the coordinate if the generator is a single variable.
    std::optional<std::string> coordinate() const;
};

// (u;y) split of a chart's variables plus the boundary divisors.
struct Frame {
    std::vector<std::string> u;
    std::vector<std::string> y;
    std::vector<BoundaryComponent> boundary;

    size_t e() const { return u.size(); }
    // Throws input_error unless u and y partition `ambient` and every
    // boundary generator through the origin has order one there.
    void validate(const std::vector<std::string>& ambient) const;
    std::vector<const BoundaryComponent*> old_at_origin() const;
    std::vector<const BoundaryComponent*> new_at_origin() const;
};

// Sorted orders of a standard basis, compared lexicographically after
// padding with infinity.
struct NuStar {
    std::vector<long> orders;

    std::string to_string() const;
    bool is_regular() const { return orders.size() == 1 && orders[0] == 1; }
};

int compare(const NuStar& a, const NuStar& b);
inline bool operator<(const NuStar& a, const NuStar& b) { return compare(a, b) < 0; }
inline bool operator==(const NuStar& a, const NuStar& b) { return compare(a, b) == 0; }

Polynomial initial_form(const Polynomial& f, const std::set<std::string>& at);
Polynomial initial_form(const Polynomial& f);

NuStar nu_star(const std::vector<Polynomial>& gens);

// Necessary conditions for `gens` to be a standard basis: orders are
// nondecreasing and no initial form lies in the ideal of the others.
void check_standard_basis(const std::vector<Polynomial>& gens);

// Whether homogeneous g lies in the ideal generated by homogeneous hs.
bool in_homogeneous_ideal(const Polynomial& g, const std::vector<Polynomial>& hs);

// Product of the old boundary generators through the origin.
Polynomial old_boundary_product(const Frame& frame, Field f, const std::vector<std::string>& vars);
std::vector<Polynomial> compose_with_old_boundary(const std::vector<Polynomial>& gens, const Frame& frame);

// Additive generators of the ridge of the cone defined by `initials`.
std::vector<Polynomial> compute_ridge(const std::vector<Polynomial>& initials);

struct Directrix {
    size_t r = 0;
    size_t e = 0;
    std::vector<Polynomial> forms; // reduced echelon linear forms
    std::vector<std::string> vars;
    // Basis of the directrix as a subspace of k^n.
    std::vector<Row> complement_basis() const;
};

Directrix compute_directrix(const std::vector<Polynomial>& initials, const std::vector<std::string>& vars);
// Directrix of J·I_O: forms of J plus initial forms of the old boundary.
Directrix directrix_of_JO(const std::vector<Polynomial>& gens, const Frame& frame);

// F(X + T·w) = F(X) identically in X and T.
bool is_translation_invariant(const Polynomial& F, const Row& w);

struct AdaptedFrame {
    std::vector<Polynomial> gens;
    Frame frame;
    // Images of the old coordinates: each directrix pivot x is replaced by
    // x minus the non-pivot part of its form.
    std::map<std::string, Polynomial> change;
};

// Chooses y as pivots of `dir` (preferring non-boundary variables, new
// boundary variables last) and rewrites generators and boundary so that the
// directrix forms become the y-coordinates.
AdaptedFrame adapt_frame(const std::vector<Polynomial>& gens, const Frame& frame, const Directrix& dir,
                         const std::vector<std::string>& preferred_y = {});

Row linear_row(const Polynomial& L);
Polynomial linear_form(const Row& row, Field f, const std::vector<std::string>& vars);

} // namespace cjs

#endif
