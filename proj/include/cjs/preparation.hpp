#ifndef CJS_PREPARATION_HPP
#define CJS_PREPARATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "cjs/frame.hpp"
#include "cjs/polyhedron.hpp"

namespace cjs {

// Exponents of a term split along a frame.
struct SplitExponent {
    std::vector<int> a; // u-block
    std::vector<int> b; // y-block
    int b_degree() const;
};

SplitExponent split(const Monomial& m, const Frame& frame, const std::vector<std::string>& vars);

// Order used for the projection: ord at the origin.
long generator_order(const Polynomial& g);

FPolyhedron polyhedron_of(const std::vector<Polynomial>& gens, const Frame& frame);

struct VertexInitial {
    QPoint vertex;
    std::vector<Polynomial> forms;   // in_v(f_i)
    std::vector<Polynomial> y_parts; // F_i(Y)
};

VertexInitial vertex_initial(const std::vector<Polynomial>& gens, const Frame& frame, const QPoint& v);

// lambda with in_v(f_i) = F_i(Y + lambda U^v), if one exists.
std::optional<std::vector<Coeff>> is_solvable(const VertexInitial& vi, const Frame& frame);

// Applies y_j <- y_j - lambda_j u^v.
std::vector<Polynomial> translate_y(const std::vector<Polynomial>& gens, const Frame& frame, const QPoint& v,
                                    const std::vector<Coeff>& lambda);

std::vector<Polynomial> normalize_at_vertex(const std::vector<Polynomial>& gens, const Frame& frame, const QPoint& v);

enum class PrepStatus { minimal, budget_exhausted, empty };
std::string to_string(PrepStatus s);

struct PrepStep {
    std::string kind; // "solve" or "normalize"
    QPoint vertex;
    std::vector<Coeff> lambda;
    FPolyhedron after;
};

struct PreparationResult {
    std::vector<Polynomial> gens;
    FPolyhedron polyhedron;
    PrepStatus status = PrepStatus::minimal;
    std::vector<PrepStep> log;
    // Polyhedra after every step, starting with the input polyhedron.
    std::vector<FPolyhedron> history;
    std::vector<std::string> notes;
    // Set when an axis vertex escapes: polyhedron spanned by the other vertices.
    std::optional<FPolyhedron> stable;

    size_t solves() const;
};

constexpr int default_prepare_budget = 64;
constexpr int default_sigma_budget = 32;

PreparationResult prepare(const std::vector<Polynomial>& gens, const Frame& frame,
                          int budget = default_prepare_budget);

struct SigmaResult {
    QInf value;
    bool lower_bound = false;
    std::vector<std::string> substitutions;
};

// Supremum of s over translations of the side's second coordinate; `gens`
// must be prepared.
SigmaResult sigma(const std::vector<Polynomial>& gens, const Frame& frame, int side,
                  int budget = default_sigma_budget);

std::vector<Polynomial> in_delta(const std::vector<Polynomial>& gens, const Frame& frame, const QInf& delta);

} // namespace cjs

#endif
