#ifndef CJS_DRIVER_HPP
#define CJS_DRIVER_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "cjs/blowup.hpp"
#include "cjs/invariant.hpp"

namespace cjs {

enum class LabelMode { inherit, fresh };
std::string to_string(LabelMode m);
LabelMode parse_label_mode(const std::string& s);

struct DriverOptions {
    int max_steps = 64;
    int max_charts = 4096;
    LabelMode labels = LabelMode::inherit;
    int prepare_budget = 64;
    int sigma_budget = 32;
};

// Generators of the locus where every generator keeps its order and every
// old boundary component through the origin is met.
std::vector<Polynomial> stratum_equations(const ChartState& chart);

// Coordinate components through the origin of the maximal stratum; throws
// scope_error when a non-coordinate curve through the origin is detected.
std::vector<std::set<std::string>> max_stratum(const ChartState& chart);

// Fills chart.stratum from max_stratum and the lineage (parent == nullptr for a root).
void label_components(ChartState& chart, const ChartState* parent, LabelMode mode);

ChartState make_root(std::vector<Polynomial> gens, Frame frame, LabelMode mode = LabelMode::inherit);

// Regular at the origin, or the origin is off X. `why` receives the reason,
// including whether X has normal crossings with the boundary there.
bool is_terminal(const ChartState& chart, std::string* why = nullptr);

struct CenterChoice {
    Center center;
    CaseTag tag = CaseTag::IV;
    std::string reason;
};

CenterChoice select_center(const ChartState& chart);

struct TrackedPoint {
    int parent = -1;
    int child = -1;
    std::string chart_var;
    bool on_X = false;
    std::string classification;
    std::optional<Order> order; // child compared with parent
};

struct Event {
    int chart = -1;
    int step = 0;
    Center center;
    CaseTag tag = CaseTag::IV;
    std::string reason;
    std::vector<int> children;
    std::vector<TrackedPoint> points;
};

enum class TraceStatus { resolved, step_limit, scope_error };
std::string to_string(TraceStatus s);

struct ResolutionTrace {
    std::vector<ChartState> charts;
    std::vector<std::optional<Iota>> iota; // per chart, at its origin
    std::vector<std::string> terminal;      // per chart, empty when expanded
    std::vector<Event> events;
    TraceStatus status = TraceStatus::resolved;
    std::string error;
    LabelMode labels = LabelMode::inherit;
};

ResolutionTrace resolve(const ChartState& root, const DriverOptions& opt = {});

struct MonotoneReport {
    bool ok = true;
    int checked = 0;
    std::string failure;
};

MonotoneReport check_monotone(const ResolutionTrace& trace);

nlohmann::ordered_json to_json(const ChartState& chart);
nlohmann::ordered_json to_json(const ResolutionTrace& trace);
// DOT rendering of a trace document produced by to_json.
std::string trace_to_dot(const nlohmann::ordered_json& trace);

} // namespace cjs

#endif
