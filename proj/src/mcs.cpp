#include "sctkit/mcs.hpp"

#include <algorithm>
#include <stdexcept>

namespace sctkit {

std::string rel_symbol(Rel r) {
    switch (r) {
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
        case Rel::Eq: return "=";
    }
    return "?";
}

namespace {

// 0 = no edge, else the Rel value.
using RelMatrix = std::vector<std::vector<int>>;

int combine(int a, int b) {
    if (a == static_cast<int>(Rel::Gt) || b == static_cast<int>(Rel::Gt)) return static_cast<int>(Rel::Gt);
    if (a == static_cast<int>(Rel::Eq) && b == static_cast<int>(Rel::Eq)) return static_cast<int>(Rel::Eq);
    return static_cast<int>(Rel::Ge);
}

bool raise(int& slot, int v) {
    if (v > slot) {
        slot = v;
        return true;
    }
    return false;
}

}  // namespace

ClosedConstraint implied_arcs_closure(const MonotonicityConstraint& mc, ImpliedArcs mode) {
    const int ns = mc.source_arity;
    const int n = ns + mc.target_arity;
    auto idx = [ns](const McsNode& x) { return x.side * ns + x.param; };
    auto node = [ns](int i) { return i < ns ? McsNode{0, i} : McsNode{1, i - ns}; };
    RelMatrix m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const auto& e : mc.edges) {
        if (e.u.param < 0 || e.v.param < 0 || e.u.param >= (e.u.side ? mc.target_arity : ns) ||
            e.v.param >= (e.v.side ? mc.target_arity : ns))
            throw std::invalid_argument("constraint edge endpoint out of range");
        raise(m[static_cast<std::size_t>(idx(e.u))][static_cast<std::size_t>(idx(e.v))], static_cast<int>(e.rel));
    }
    auto at = [&m](int u, int v) -> int& { return m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; };
    const int eq = static_cast<int>(Rel::Eq);
    bool changed = mode != ImpliedArcs::None;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (at(u, v) == eq) changed |= raise(at(v, u), eq);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (!at(u, v)) continue;
                for (int w = 0; w < n; ++w) {
                    if (!at(v, w)) continue;
                    // the equality rules are the instances where one side is =
                    if (mode == ImpliedArcs::EqualityOnly && at(u, v) != eq && at(v, w) != eq) continue;
                    int r = mode == ImpliedArcs::EqualityOnly ? (at(u, v) == eq ? at(v, w) : at(u, v))
                                                              : combine(at(u, v), at(v, w));
                    changed |= raise(at(u, w), r);
                }
            }
    }
    ClosedConstraint out;
    out.constraint.source_arity = mc.source_arity;
    out.constraint.target_arity = mc.target_arity;
    for (int u = 0; u < n; ++u) {
        if (at(u, u) == static_cast<int>(Rel::Gt)) out.inconsistent = true;
        for (int v = 0; v < n; ++v)
            if (at(u, v)) out.constraint.edges.push_back({node(u), static_cast<Rel>(at(u, v)), node(v)});
    }
    return out;
}

ArcGraph project_constraint(const MonotonicityConstraint& mc) {
    ArcGraph g(static_cast<std::size_t>(mc.source_arity), static_cast<std::size_t>(mc.target_arity));
    for (const auto& e : mc.edges) {
        int label = e.rel == Rel::Gt ? 1 : 0;
        if (e.u.side == 0 && e.v.side == 1)
            g.add_arc(static_cast<std::size_t>(e.u.param), static_cast<std::size_t>(e.v.param), label);
        else if (e.rel == Rel::Eq && e.u.side == 1 && e.v.side == 0)
            g.add_arc(static_cast<std::size_t>(e.v.param), static_cast<std::size_t>(e.u.param), 0);
    }
    return g;
}

McsProjection mcs_to_sct(const MonotonicityConstraintSystem& m, ImpliedArcs mode) {
    if (m.constraints.size() != m.calls.size()) throw std::invalid_argument("constraint count does not match call count");
    McsProjection out;
    for (std::size_t f = 0; f < m.functions.size(); ++f) out.problem.add_function(m.functions[f], m.params[f]);
    for (std::size_t c = 0; c < m.calls.size(); ++c) {
        const auto& call = m.calls[c];
        ClosedConstraint closed = implied_arcs_closure(m.constraints[c], mode);
        if (closed.inconsistent) {
            out.inconsistent_calls.push_back(call.id);
            out.warnings.push_back("call " + call.id + " has inconsistent constraints and is dropped");
            continue;
        }
        int id = out.problem.add_call(call.id, call.source, call.target);
        out.problem.scgs[static_cast<std::size_t>(id)].graph = project_constraint(closed.constraint);
    }
    validate(out.problem);
    return out;
}

}  // namespace sctkit
