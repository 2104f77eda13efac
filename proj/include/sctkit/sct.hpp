#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sctkit/budget.hpp"
#include "sctkit/buchi.hpp"
#include "sctkit/graph.hpp"
#include "sctkit/ramsey.hpp"

namespace sctkit {

// Bipartite {0,1}-labelled graph from the parameters of `source` to those of
// `target` (1 = strict decrease, 0 = non-increase).
struct SizeChangeGraph {
    int source = 0;
    int target = 0;
    ArcGraph graph;

    friend bool operator==(const SizeChangeGraph& a, const SizeChangeGraph& b) {
        return a.source == b.source && a.target == b.target && a.graph == b.graph;
    }
};

struct SctCall {
    std::string id;
    int source = 0;
    int target = 0;
};

struct SctProblem {
    std::vector<std::string> functions;
    std::vector<std::vector<std::string>> params;  // per function, declared order
    std::vector<SctCall> calls;
    std::vector<SizeChangeGraph> scgs;              // scgs[i] belongs to calls[i]

    int function_id(const std::string& name) const;  // -1 if absent
    int call_id(const std::string& name) const;
    std::size_t arity(int f) const { return params[static_cast<std::size_t>(f)].size(); }
    std::size_t max_arity() const;
    std::size_t total_params() const;

    int add_function(std::string name, std::vector<std::string> params);
    // Returns the call index; the graph starts empty.
    int add_call(std::string id, int source, int target);
    void add_arc(int call, int x, int label, int y);
};

// Throws std::invalid_argument on duplicate names, out-of-range references or
// graphs whose shape does not match their call.
void validate(const SctProblem& p);

// Drops functions not reachable in the call graph from the first declared
// function, together with their calls. Returns the dropped names.
std::vector<std::string> prune_unreachable(SctProblem& p);

SizeChangeGraph scg_compose(const SizeChangeGraph& g, const SizeChangeGraph& h);

bool scg_is_reverse_deterministic(const SizeChangeGraph& g);
bool sct_is_reverse_deterministic(const SctProblem& p);

std::string format_scg(const SctProblem& p, const SizeChangeGraph& g);

struct LjbOptions {
    bool subsumption = false;
    bool track_witness = true;
    Budget budget;
};

struct SctVerdict {
    bool terminating = true;
    bool aborted = false;
    bool has_counterexample = false;
    SizeChangeGraph counterexample;
    bool has_witness = false;
    std::vector<int> witness;  // call indices; witness^omega is a non-descending call sequence
    ClosureStats stats;
};

SctVerdict ljb_check(const SctProblem& p, const LjbOptions& opts = {});

// The complete closure of the problem's graphs under composition (no early
// exit). Throws std::runtime_error when the budget trips.
std::vector<SizeChangeGraph> scg_closure(const SctProblem& p, const Budget& budget = {});

// Call graph: alphabet = call ids, states = functions, all initial and accepting.
BuchiAutomaton flow_automaton(const SctProblem& p);

// States: functions, then for every parameter x of every function the pair
// (x,0), (x,1). All initial; the 1-flagged parameter states accept.
BuchiAutomaton desc_automaton(const SctProblem& p);

// Parameters replaced by their positions: q0 plus (i,0), (i,1) for
// i = 1..max_arity. All initial; the 1-flagged states accept.
BuchiAutomaton desc_automaton_optimized(const SctProblem& p);

// Index of state (x, flag) in desc_automaton, x the i-th parameter of f.
int desc_param_state(const SctProblem& p, int f, int i, int flag);

// Maps a supergraph over (flow_automaton, desc_automaton) to the size-change
// graph it stands for. Arcs are read from the 0-flagged source parameters;
// a 1 on any arc for a pair wins. Throws std::invalid_argument when the
// supergraph does not fit the problem.
SizeChangeGraph simplify_supergraph(const SctProblem& p, const Supergraph& g);

}  // namespace sctkit
