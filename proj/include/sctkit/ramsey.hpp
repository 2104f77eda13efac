#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sctkit/budget.hpp"
#include "sctkit/buchi.hpp"
#include "sctkit/graph.hpp"

namespace sctkit {

inline constexpr std::size_t kWitnessCap = 10000;

// An arc over A's states paired with a graph over B's states. witness is one
// word of the described class, dropped once it would exceed kWitnessCap.
struct Supergraph {
    int from = 0;
    int to = 0;
    ArcGraph graph;
    Word witness;
    bool witness_valid = true;
};

struct ClosureStats {
    std::size_t elements = 0;      // closure size at exit
    std::size_t compositions = 0;  // compose calls
    std::size_t discarded = 0;     // removed or rejected by subsumption
    std::size_t work() const { return elements; }
};

struct ContainmentVerdict {
    bool contained = true;
    bool aborted = false;  // budget exhausted; no verdict
    bool has_pair = false;
    Supergraph g;  // counterexample prefix graph (DGS) or the looping graph (SGS)
    Supergraph h;
    bool has_lasso = false;
    Lasso lasso;
    ClosureStats stats;
    std::vector<std::string> warnings;
};

struct RamseyOptions {
    bool track_witness = true;
    bool subsumption = false;            // SGS only
    bool preconditions_asserted = false;  // SGS only: strong suffix closure
    Budget budget;
};

// Requires g.to == h.from.
Supergraph supergraph_compose(const Supergraph& g, const Supergraph& h);

// One supergraph per A-edge (q, a, r), carrying single_letter_graph(B, a).
std::vector<Supergraph> initial_supergraphs(const BuchiAutomaton& a, const BuchiAutomaton& b);

ContainmentVerdict dgs_containment(const BuchiAutomaton& a, const BuchiAutomaton& b,
                                   const RamseyOptions& opts = {});

ContainmentVerdict ramsey_universality(const BuchiAutomaton& b, const RamseyOptions& opts = {});

// Throws std::invalid_argument when Q_A^in != Q_A or when the caller has not
// asserted strong suffix closure. Unreachable B-states are pruned with a
// warning.
ContainmentVerdict sgs_containment(const BuchiAutomaton& a, const BuchiAutomaton& b,
                                   const RamseyOptions& opts = {});

}  // namespace sctkit
