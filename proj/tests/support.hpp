#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sctkit/buchi.hpp"
#include "sctkit/graph.hpp"
#include "sctkit/sct.hpp"

namespace sctkit::testing {

using Rng = std::mt19937_64;

// Random model: per symbol, round(density * n) distinct transitions;
// each state accepting with probability acc_prob; state 0 initial.
BuchiAutomaton random_automaton(Rng& rng, int n, int k, double density, double acc_prob = 0.5);

// Every automaton over {a,b} with the given state count, indexed by a code
// (transition bits, then initial bits, then accepting bits).
std::uint64_t automaton_count(int n);
BuchiAutomaton automaton_from_code(int n, std::uint64_t code);

// All lassos over k symbols with |u| <= max_prefix and 1 <= |v| <= max_period.
std::vector<Lasso> all_lassos(int k, int max_prefix, int max_period);

// Explicit oracles that share no code with the library's search routines.
bool oracle_accepts_lasso(const BuchiAutomaton& b, const Lasso& w);
Bits oracle_lift(const BuchiAutomaton& b, const Bits& r, const Word& w);
bool oracle_is_empty(const BuchiAutomaton& b);
ArcGraph oracle_graph_of_word(const BuchiAutomaton& b, const Word& w);

// Random problem with 1..max_functions functions of arity 0..max_arity;
// every function reachable from the first.
SctProblem random_sct(Rng& rng, int max_functions, int max_arity, double arc_prob = 0.45, double one_prob = 0.35);
// Same, but every target parameter gets at most one incoming arc.
SctProblem random_reverse_deterministic_sct(Rng& rng, int max_functions, int max_arity);
ArcGraph random_graph(Rng& rng, int rows, int cols, double arc_prob, double one_prob);

// One function of arity n with calls rot (cyclic shift), swap and merge; the
// merge call gives x1 two incoming arcs.
SctProblem permutation_gadget(int n);

// LJB by brute force: closure of the graphs as a plain set, stopping at the
// first idempotent graph without a 1-self-arc.
bool oracle_sct_terminates(const SctProblem& p);

std::string fixture(const std::string& name);

}  // namespace sctkit::testing
