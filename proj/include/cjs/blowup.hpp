#ifndef CJS_BLOWUP_HPP
#define CJS_BLOWUP_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cjs/frame.hpp"
#include "cjs/polyhedron.hpp"

namespace cjs {

// Coordinate component V(vars) of a maximal stratum.
struct StratumComponent {
    std::set<std::string> vars;
    int label = 0;
    // Strict transform of the stratum present at the last reset.
    bool original = true;

    std::string to_string() const;
    bool operator==(const StratumComponent& o) const { return vars == o.vars; }
};

enum class CenterKind { closed_point, coordinate_curve, coordinate_subvariety };
std::string to_string(CenterKind k);

struct Center {
    std::set<std::string> vars;
    CenterKind kind = CenterKind::closed_point;
    // Label of the stratum component equal to the center, if any.
    std::optional<int> label;

    std::string to_string() const;
};

Center make_center(const std::set<std::string>& vars, const std::vector<std::string>& ambient,
                   std::optional<int> label = std::nullopt);

struct ChartState {
    int id = 0;
    int parent = -1;
    int step = 0;
    std::vector<Polynomial> gens;
    Frame frame;
    std::vector<StratumComponent> stratum;

    // lineage
    std::optional<Center> center;
    std::string chart_var;
    std::map<std::string, Polynomial> substitution; // parent variable -> expression in child variables
    std::map<std::string, std::string> renames;     // parent variable -> child variable
    // Strict transforms of the parent's stratum components, in child names.
    std::vector<StratumComponent> inherited;
    std::vector<std::string> notes;
    int residue_degree = 1;
    // Order of the parent at its origin and the boundary statuses before the
    // reset on an order drop; locate_point re-decides the reset at the new origin.
    std::optional<NuStar> parent_hs;
    std::vector<BoundaryStatus> transformed_status;

    Field field() const { return gens.at(0).field(); }
    const std::vector<std::string>& vars() const { return gens.at(0).vars(); }
    NuStar hs() const;
    bool origin_on_X() const;
};

struct PermissibilityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

PermissibilityReport permissible_check(const ChartState& chart, const Center& center);

// Name of a substituted center variable in the child chart.
std::string primed(const std::string& v);

ChartState blow_up_chart(const ChartState& chart, const Center& center, const std::string& chart_var);

// Target of a coordinate: a field value, or an irreducible univariate
// condition whose root becomes the new origin.
struct PointAssignment {
    std::string var;
    std::optional<Coeff> value;
    std::optional<Polynomial> condition;
};

ChartState locate_point(const ChartState& chart, const std::vector<PointAssignment>& point);

struct PointClass {
    bool dropped = false;
    bool near = false;
    bool O_near = false;
    bool very_near = false;
    bool very_O_near = false;
    // strongest applicable tag
    std::string tag() const;
};

PointClass classify_point(const ChartState& parent, const ChartState& child);

enum class BlowupShape { point_u1_chart, point_u2_chart, curve_u1, curve_u2 };

struct ExpectedPolyhedron {
    FPolyhedron polyhedron;
    bool dropped = false;
};

ExpectedPolyhedron transform_polyhedron_expected(const FPolyhedron& d, BlowupShape shape);

} // namespace cjs

#endif
