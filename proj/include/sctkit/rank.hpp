#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sctkit/budget.hpp"
#include "sctkit/buchi.hpp"

namespace sctkit {

inline constexpr int kBottom = -1;

// Rank per state, kBottom for states outside the ranking's domain.
using LevelRanking = std::vector<int>;

struct KvState {
    LevelRanking f;
    Bits o;

    friend bool operator==(const KvState& a, const KvState& b) { return a.f == b.f && a.o == b.o; }
};

// Ranks lie in 0..max_rank and accepting states are even or bottom.
bool is_level_ranking(const BuchiAutomaton& b, const LevelRanking& f, int max_rank);

// For every q with f(q) defined and every q2 in rho(q, symbol): f2(q2) is
// defined and f2(q2) <= f(q).
bool covers(const LevelRanking& f, const LevelRanking& f2, int symbol, const BuchiAutomaton& b);

// 2 for reverse-deterministic automata, otherwise 2|Q|-2 raised to at least
// 1 (a lone non-accepting cycle needs rank 1).
int default_rank_bound(const BuchiAutomaton& b);

KvState kv_initial(const BuchiAutomaton& b, int max_rank);

// All successors of s on symbol. A state outside rho(dom f, symbol) stays
// bottom; a reached state takes any value up to the least rank among its
// predecessors (even values only when accepting).
std::vector<KvState> kv_successors(const BuchiAutomaton& b, const KvState& s, int symbol, int max_rank);

std::string format_kv_state(const BuchiAutomaton& b, const KvState& s);

// Explicit complement over the reachable part. Throws std::runtime_error when
// the state count passes max_states (0 = no cap).
BuchiAutomaton kv_complement(const BuchiAutomaton& b, int max_rank, std::size_t max_states = 0);

struct RankOptions {
    int max_rank = -1;         // -1: default_rank_bound of the complemented automaton
    bool subsumption = true;   // antichain fixpoint; false = forward search of the explicit product
    bool track_witness = true;
    Budget budget;
};

struct RankStats {
    std::size_t work = 0;            // states explored (forward) or antichain elements created (backward)
    std::size_t iterations = 0;      // outer fixpoint rounds (backward only)
    std::size_t max_antichain = 0;   // widest antichain seen (backward only)
    std::size_t max_pre_width = 0;   // most incomparable minimal elements from one Pre(state, letter)
};

struct RankVerdict {
    bool holds = true;   // universal / contained
    bool aborted = false;
    int max_rank = 0;
    bool has_lasso = false;
    Lasso lasso;
    RankStats stats;
};

RankVerdict rank_universality(const BuchiAutomaton& b, const RankOptions& opts = {});

// L(A) subset of L(B) via emptiness of A intersected with KV(B, max_rank).
RankVerdict rank_containment(const BuchiAutomaton& a, const BuchiAutomaton& b, const RankOptions& opts = {});

}  // namespace sctkit
