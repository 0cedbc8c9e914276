#ifndef CJS_INVARIANT_HPP
#define CJS_INVARIANT_HPP

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

#include "cjs/blowup.hpp"
#include "cjs/qinf.hpp"

namespace cjs {

enum class CaseTag { I, II, III, IV, V };
std::string to_string(CaseTag c);

struct Iota0 {
    NuStar hs;
    long old_count = 0;
    long e = 0;
    long eO = 0;
};

// Either a fixed tuple (Cases I, II, IV, V) or the Case III data of I_C.
struct IotaC {
    CaseTag tag = CaseTag::IV;
    NuStar hs; // empty orders stand for the zero sentinel
    long old_count = 0;
    long e = 0;
    long eO = 0;
    QInf delta = QInf(0L);
    QInf deltaO = QInf(0L);
    int tail = 0;
    std::vector<std::string> ideal; // generators of I_C, Case III only
};

struct IotaPoly {
    std::array<QInf, 4> v{};
    bool sigma_lower_bound = false;
    std::vector<std::string> notes;
};

struct Iota {
    Iota0 i0;
    IotaC ic;
    IotaPoly ip;
};

enum class Order { less, equal, greater, incomparable };
std::string to_string(Order o);

Iota0 iota0(const ChartState& chart);

// `C` holds the stratum components through the origin that are strict
// transforms of the stratum at the last reset.
CaseTag classify_case(const ChartState& chart, const std::vector<StratumComponent>& C);

// Squarefree monomial generators of the ideal of a union of coordinate components.
std::vector<Polynomial> union_ideal(const std::vector<StratumComponent>& C, Field f, const std::vector<std::string>& vars);

IotaC iota_c(const ChartState& chart, CaseTag tag, const std::vector<StratumComponent>& C);

IotaPoly iota_poly(const ChartState& chart, bool no_original_left, int prepare_budget = 64, int sigma_budget = 32);

// At a regular point ι_poly is the zero tuple.
Iota compute_iota(const ChartState& chart, const std::vector<StratumComponent>& C, int prepare_budget = 64,
                  int sigma_budget = 32);

Order compare(const Iota0& a, const Iota0& b);
Order compare(const IotaC& a, const IotaC& b);
Order compare(const IotaPoly& a, const IotaPoly& b);
Order compare_iota(const Iota& a, const Iota& b);

nlohmann::ordered_json to_json(const QInf& q);
nlohmann::ordered_json to_json(const Iota0& i);
nlohmann::ordered_json to_json(const IotaC& i);
nlohmann::ordered_json to_json(const IotaPoly& i);
nlohmann::ordered_json to_json(const Iota& i);

} // namespace cjs

#endif
