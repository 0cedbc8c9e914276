#ifndef CJS_TESTS_PROPERTIES_HPP
#define CJS_TESTS_PROPERTIES_HPP

// Randomized property suites shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <string>

namespace cjs::testing {

struct PropertyResult {
    int checked = 0;
    int failures = 0;
    int skipped = 0; // instances outside the property's hypothesis
    std::string first_failure;

    void expect(bool ok, const std::string& what);
};

// Newton polygon vertices equal a brute-force extreme point search.
PropertyResult hull_property(std::uint64_t seed, int target = 220);
// transform_polyhedron_expected equals the prepared polyhedron of the child
// at very near origin points of point blow-ups.
PropertyResult transform_property(std::uint64_t seed, int target = 220);
// delta drops by exactly one at very near origin points when e = 1.
PropertyResult delta_drop_property(std::uint64_t seed, int target = 220);
// Every preparation step shrinks the polyhedron; a solve removes its vertex
// and keeps the vertices before it.
PropertyResult preparation_property(std::uint64_t seed, int target = 220);
// Directrix dimension equals the exhaustive translation test over F_2, F_3.
PropertyResult directrix_property(std::uint64_t seed, int target = 220);
// f(X+Z) equals the sum of Hasse derivatives times Z^a.
PropertyResult taylor_property(std::uint64_t seed, int target = 220);

} // namespace cjs::testing

#endif
