#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sctkit/bits.hpp"

namespace sctkit {

using Word = std::vector<int>;

// The infinite word prefix . period^omega. period is never empty.
struct Lasso {
    Word prefix;
    Word period;
};

// Nondeterministic Buchi automaton over interned symbols and states. The
// transition map is total: a missing (state, symbol) entry is the empty set.
class BuchiAutomaton {
public:
    BuchiAutomaton() = default;
    BuchiAutomaton(std::vector<std::string> alphabet, std::vector<std::string> states);

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_symbols() const { return alphabet_.size(); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& state_name(int q) const { return states_[q]; }
    const std::string& symbol_name(int a) const { return alphabet_[a]; }
    int symbol_id(std::string_view name) const;
    int state_id(std::string_view name) const;

    void add_transition(int q, int a, int r) { delta_[index(q, a)].set(r); }
    bool has_transition(int q, int a, int r) const { return delta_[index(q, a)].test(r); }
    const Bits& post(int q, int a) const { return delta_[index(q, a)]; }
    std::size_t num_transitions() const;

    void set_initial(int q, bool v = true) { initial_.assign(q, v); }
    void set_accepting(int q, bool v = true) { accepting_.assign(q, v); }
    bool is_initial(int q) const { return initial_.test(q); }
    bool is_accepting(int q) const { return accepting_.test(q); }
    const Bits& initial() const { return initial_; }
    const Bits& accepting() const { return accepting_; }

    Bits empty_set() const { return Bits(num_states()); }
    Bits full_set() const;

private:
    std::size_t index(int q, int a) const {
        return static_cast<std::size_t>(q) * alphabet_.size() + static_cast<std::size_t>(a);
    }

    std::vector<std::string> alphabet_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, int> symbol_ids_;
    std::unordered_map<std::string, int> state_ids_;
    Bits initial_;
    Bits accepting_;
    std::vector<Bits> delta_;
};

// rho(R, a) and its extension to words; rho(R, epsilon) = R.
Bits lift(const BuchiAutomaton& b, const Bits& r, int symbol);
Bits lift_transitions(const BuchiAutomaton& b, const Bits& r, const Word& w);

// Every (state, symbol) has at most one predecessor.
bool is_reverse_deterministic(const BuchiAutomaton& b);

// States reachable from the initial set.
Bits reachable_states(const BuchiAutomaton& b);

// Re-indexes b onto the given alphabet by symbol name. Symbols absent from b
// get no transitions; symbols of b outside the alphabet are dropped.
BuchiAutomaton align_alphabet(const BuchiAutomaton& b, const std::vector<std::string>& alphabet);

// Keeps only the listed states (in increasing order), preserving names.
BuchiAutomaton restrict_states(const BuchiAutomaton& b, const Bits& keep);

// One accepting initial state with a self-loop on every symbol.
BuchiAutomaton universal_automaton(const std::vector<std::string>& alphabet);

// Two-phase counter product over a's alphabet (b is aligned to it). A
// product state (p, q, 2) with q accepting is accepting: that is where the
// counter resets to phase 1.
BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);

struct EmptinessResult {
    bool empty = true;
    Lasso witness;
    std::size_t states_explored = 0;
};

EmptinessResult is_empty(const BuchiAutomaton& b);

bool accepts_lasso(const BuchiAutomaton& b, const Lasso& w);

// Automaton accepting exactly prefix . period^omega.
BuchiAutomaton lasso_automaton(const std::vector<std::string>& alphabet, const Lasso& w);

std::string format_word(const std::vector<std::string>& alphabet, const Word& w);
std::string format_lasso(const std::vector<std::string>& alphabet, const Lasso& w);

}  // namespace sctkit
