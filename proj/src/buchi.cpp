#include "sctkit/buchi.hpp"

#include <deque>
#include <stdexcept>

#include "sctkit/lasso_search.hpp"

namespace sctkit {

BuchiAutomaton::BuchiAutomaton(std::vector<std::string> alphabet, std::vector<std::string> states)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      initial_(states_.size()),
      accepting_(states_.size()),
      delta_(states_.size() * alphabet_.size(), Bits(states_.size())) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (!symbol_ids_.emplace(alphabet_[i], static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate symbol " + alphabet_[i]);
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (!state_ids_.emplace(states_[i], static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate state " + states_[i]);
}

int BuchiAutomaton::symbol_id(std::string_view name) const {
    auto it = symbol_ids_.find(std::string(name));
    return it == symbol_ids_.end() ? -1 : it->second;
}

int BuchiAutomaton::state_id(std::string_view name) const {
    auto it = state_ids_.find(std::string(name));
    return it == state_ids_.end() ? -1 : it->second;
}

std::size_t BuchiAutomaton::num_transitions() const {
    std::size_t n = 0;
    for (const auto& s : delta_) n += s.count();
    return n;
}

Bits BuchiAutomaton::full_set() const {
    Bits b(num_states());
    for (std::size_t i = 0; i < num_states(); ++i) b.set(i);
    return b;
}

Bits lift(const BuchiAutomaton& b, const Bits& r, int symbol) {
    Bits out(b.num_states());
    r.for_each([&](std::size_t q) { out |= b.post(static_cast<int>(q), symbol); });
    return out;
}

Bits lift_transitions(const BuchiAutomaton& b, const Bits& r, const Word& w) {
    Bits cur = r;
    for (int a : w) cur = lift(b, cur, a);
    return cur;
}

bool is_reverse_deterministic(const BuchiAutomaton& b) {
    const std::size_t n = b.num_states();
    for (std::size_t a = 0; a < b.num_symbols(); ++a) {
        Bits seen(n);
        for (std::size_t q = 0; q < n; ++q) {
            const Bits& p = b.post(static_cast<int>(q), static_cast<int>(a));
            if (p.intersects(seen)) return false;
            seen |= p;
        }
    }
    return true;
}

Bits reachable_states(const BuchiAutomaton& b) {
    Bits seen = b.initial();
    std::deque<int> queue;
    seen.for_each([&](std::size_t q) { queue.push_back(static_cast<int>(q)); });
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < b.num_symbols(); ++a) {
            b.post(q, static_cast<int>(a)).for_each([&](std::size_t r) {
                if (!seen.test(r)) {
                    seen.set(r);
                    queue.push_back(static_cast<int>(r));
                }
            });
        }
    }
    return seen;
}

BuchiAutomaton align_alphabet(const BuchiAutomaton& b, const std::vector<std::string>& alphabet) {
    if (alphabet == b.alphabet()) return b;
    BuchiAutomaton out(alphabet, b.states());
    for (std::size_t q = 0; q < b.num_states(); ++q) {
        out.set_initial(static_cast<int>(q), b.is_initial(static_cast<int>(q)));
        out.set_accepting(static_cast<int>(q), b.is_accepting(static_cast<int>(q)));
    }
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        int src = b.symbol_id(alphabet[a]);
        if (src < 0) continue;
        for (std::size_t q = 0; q < b.num_states(); ++q)
            b.post(static_cast<int>(q), src).for_each([&](std::size_t r) {
                out.add_transition(static_cast<int>(q), static_cast<int>(a), static_cast<int>(r));
            });
    }
    return out;
}

BuchiAutomaton restrict_states(const BuchiAutomaton& b, const Bits& keep) {
    std::vector<int> map(b.num_states(), -1);
    std::vector<std::string> names;
    keep.for_each([&](std::size_t q) {
        map[q] = static_cast<int>(names.size());
        names.push_back(b.state_name(static_cast<int>(q)));
    });
    BuchiAutomaton out(b.alphabet(), names);
    for (std::size_t q = 0; q < b.num_states(); ++q) {
        if (map[q] < 0) continue;
        out.set_initial(map[q], b.is_initial(static_cast<int>(q)));
        out.set_accepting(map[q], b.is_accepting(static_cast<int>(q)));
        for (std::size_t a = 0; a < b.num_symbols(); ++a)
            b.post(static_cast<int>(q), static_cast<int>(a)).for_each([&](std::size_t r) {
                if (map[r] >= 0) out.add_transition(map[q], static_cast<int>(a), map[r]);
            });
    }
    return out;
}

BuchiAutomaton universal_automaton(const std::vector<std::string>& alphabet) {
    BuchiAutomaton u(alphabet, {"u"});
    u.set_initial(0);
    u.set_accepting(0);
    for (std::size_t a = 0; a < alphabet.size(); ++a) u.add_transition(0, static_cast<int>(a), 0);
    return u;
}

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b_in) {
    const BuchiAutomaton b = align_alphabet(b_in, a.alphabet());
    const std::size_t na = a.num_states(), nb = b.num_states();
    auto id = [&](std::size_t p, std::size_t q, int phase) {
        return static_cast<int>((p * nb + q) * 2 + static_cast<std::size_t>(phase - 1));
    };
    std::vector<std::string> names(na * nb * 2);
    for (std::size_t p = 0; p < na; ++p)
        for (std::size_t q = 0; q < nb; ++q)
            for (int ph = 1; ph <= 2; ++ph)
                names[id(p, q, ph)] = "(" + a.state_name(static_cast<int>(p)) + "," +
                                      b.state_name(static_cast<int>(q)) + "," + std::to_string(ph) + ")";
    BuchiAutomaton out(a.alphabet(), names);
    for (std::size_t p = 0; p < na; ++p) {
        for (std::size_t q = 0; q < nb; ++q) {
            for (int ph = 1; ph <= 2; ++ph) {
                int s = id(p, q, ph);
                if (ph == 1 && a.is_initial(static_cast<int>(p)) && b.is_initial(static_cast<int>(q)))
                    out.set_initial(s);
                if (ph == 2 && b.is_accepting(static_cast<int>(q))) out.set_accepting(s);
                int next;
                if (ph == 1)
                    next = a.is_accepting(static_cast<int>(p)) ? 2 : 1;
                else
                    next = b.is_accepting(static_cast<int>(q)) ? 1 : 2;
                for (std::size_t sym = 0; sym < a.num_symbols(); ++sym) {
                    const Bits& pa = a.post(static_cast<int>(p), static_cast<int>(sym));
                    if (pa.none()) continue;
                    const Bits& pb = b.post(static_cast<int>(q), static_cast<int>(sym));
                    pa.for_each([&](std::size_t p2) {
                        pb.for_each([&](std::size_t q2) {
                            out.add_transition(s, static_cast<int>(sym), id(p2, q2, next));
                        });
                    });
                }
            }
        }
    }
    return out;
}

namespace {

struct AutomatonSpace {
    const BuchiAutomaton& b;

    struct Cursor {
        int state;
        std::size_t symbol = 0;
        std::vector<int> targets;
        std::size_t pos = 0;
    };

    std::vector<int> roots() const { return b.initial().to_vector(); }
    bool accepting(int id) const { return b.is_accepting(id); }
    Cursor open(int id) const {
        Cursor c;
        c.state = id;
        return c;
    }
    bool next(Cursor& c, int& symbol, int& target) const {
        while (true) {
            if (c.pos < c.targets.size()) {
                symbol = static_cast<int>(c.symbol) - 1;
                target = c.targets[c.pos++];
                return true;
            }
            if (c.symbol >= b.num_symbols()) return false;
            c.targets = b.post(c.state, static_cast<int>(c.symbol)).to_vector();
            c.pos = 0;
            ++c.symbol;
        }
    }
    bool exhausted() const { return false; }
};

}  // namespace

EmptinessResult is_empty(const BuchiAutomaton& b) {
    AutomatonSpace space{b};
    LassoSearch<AutomatonSpace> search(space);
    auto r = search.run();
    EmptinessResult out;
    out.empty = !r.found;
    out.witness = std::move(r.lasso);
    out.states_explored = r.visited;
    return out;
}

bool accepts_lasso(const BuchiAutomaton& b, const Lasso& w) {
    if (w.period.empty()) throw std::invalid_argument("lasso period must be nonempty");
    // Nodes (q, i): state q about to read period[i]. Accepting iff q is.
    const std::size_t n = b.num_states(), k = w.period.size();
    Bits start = lift_transitions(b, b.initial(), w.prefix);
    struct Space {
        const BuchiAutomaton& b;
        const Word& period;
        std::vector<int> init;
        std::size_t n, k;
        struct Cursor {
            int id;
            std::vector<int> targets;
            std::size_t pos = 0;
            bool loaded = false;
        };
        std::vector<int> roots() const { return init; }
        bool accepting(int id) const { return b.is_accepting(static_cast<int>(id / k)); }
        Cursor open(int id) const {
        Cursor c;
        c.id = id;
        return c;
    }
        bool next(Cursor& c, int& symbol, int& target) const {
            std::size_t q = static_cast<std::size_t>(c.id) / k, i = static_cast<std::size_t>(c.id) % k;
            if (!c.loaded) {
                c.targets = b.post(static_cast<int>(q), period[i]).to_vector();
                c.loaded = true;
            }
            if (c.pos >= c.targets.size()) return false;
            symbol = period[i];
            target = static_cast<int>(static_cast<std::size_t>(c.targets[c.pos++]) * k + (i + 1) % k);
            return true;
        }
        bool exhausted() const { return false; }
    } space{b, w.period, {}, n, k};
    start.for_each([&](std::size_t q) { space.init.push_back(static_cast<int>(q * k)); });
    LassoSearch<Space> search(space);
    return search.run().found;
}

BuchiAutomaton lasso_automaton(const std::vector<std::string>& alphabet, const Lasso& w) {
    const std::size_t u = w.prefix.size(), v = w.period.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < u + v; ++i) names.push_back("l" + std::to_string(i));
    BuchiAutomaton out(alphabet, names);
    out.set_initial(0);
    for (std::size_t i = 0; i < u; ++i)
        out.add_transition(static_cast<int>(i), w.prefix[i], static_cast<int>(i + 1));
    for (std::size_t j = 0; j < v; ++j) {
        std::size_t from = u + j, to = u + (j + 1) % v;
        out.add_transition(static_cast<int>(from), w.period[j], static_cast<int>(to));
    }
    out.set_accepting(static_cast<int>(u));
    return out;
}

std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += alphabet[w[i]];
    }
    return s;
}

std::string format_lasso(const std::vector<std::string>& alphabet, const Lasso& w) {
    return "prefix: [" + format_word(alphabet, w.prefix) + "] period: [" + format_word(alphabet, w.period) + "]";
}

}  // namespace sctkit
