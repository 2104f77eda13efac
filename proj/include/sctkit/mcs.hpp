#pragma once

#include <string>
#include <vector>

#include "sctkit/sct.hpp"

namespace sctkit {

// Ordered by information content; Gt on top because Eq together with Gt on
// one pair is already contradictory.
enum class Rel { Ge = 1, Eq = 2, Gt = 3 };

// A parameter of the caller (side 0) or of the callee (side 1).
struct McsNode {
    int side = 0;
    int param = 0;
    friend bool operator==(const McsNode&, const McsNode&) = default;
    friend auto operator<=>(const McsNode&, const McsNode&) = default;
};

struct McsEdge {
    McsNode u;
    Rel rel = Rel::Ge;
    McsNode v;
    friend bool operator==(const McsEdge&, const McsEdge&) = default;
};

struct MonotonicityConstraint {
    int source_arity = 0;
    int target_arity = 0;
    std::vector<McsEdge> edges;
};

struct MonotonicityConstraintSystem {
    std::vector<std::string> functions;
    std::vector<std::vector<std::string>> params;
    std::vector<SctCall> calls;
    std::vector<MonotonicityConstraint> constraints;  // constraints[i] belongs to calls[i]
};

enum class ImpliedArcs { None, EqualityOnly, Full };

struct ClosedConstraint {
    MonotonicityConstraint constraint;
    bool inconsistent = false;  // some u > u was derived
};

// Closes under symmetry of =, the two equality substitution rules and (Full
// only) transitive composition, keeping the strongest relation per ordered
// pair. None returns the edges unchanged apart from that deduplication.
ClosedConstraint implied_arcs_closure(const MonotonicityConstraint& mc, ImpliedArcs mode = ImpliedArcs::Full);

// Caller-to-callee edges only: > becomes a 1-arc, >= and = a 0-arc, 1 wins.
// An = edge written callee-to-caller counts in both directions.
ArcGraph project_constraint(const MonotonicityConstraint& mc);

struct McsProjection {
    SctProblem problem;
    std::vector<std::string> warnings;
    std::vector<std::string> inconsistent_calls;  // dropped from problem
};

McsProjection mcs_to_sct(const MonotonicityConstraintSystem& m, ImpliedArcs mode);

std::string rel_symbol(Rel r);

}  // namespace sctkit
