#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sctkit::testing {

namespace {

std::vector<std::string> names(const char* prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

std::vector<std::string> letters(int k) {
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

}  // namespace

BuchiAutomaton random_automaton(Rng& rng, int n, int k, double density, double acc_prob) {
    BuchiAutomaton b(letters(k), names("q", n));
    b.set_initial(0);
    std::bernoulli_distribution acc(acc_prob);
    for (int q = 0; q < n; ++q)
        if (acc(rng)) b.set_accepting(q);
    const int per_symbol = std::min(n * n, static_cast<int>(std::lround(density * n)));
    std::vector<int> pairs(static_cast<std::size_t>(n * n));
    for (int a = 0; a < k; ++a) {
        for (int i = 0; i < n * n; ++i) pairs[static_cast<std::size_t>(i)] = i;
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (int i = 0; i < per_symbol; ++i) b.add_transition(pairs[static_cast<std::size_t>(i)] / n, a, pairs[static_cast<std::size_t>(i)] % n);
    }
    return b;
}

std::uint64_t automaton_count(int n) { return std::uint64_t{1} << (2 * n * n + 2 * n); }

BuchiAutomaton automaton_from_code(int n, std::uint64_t code) {
    BuchiAutomaton b(letters(2), names("q", n));
    int bit = 0;
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < 2; ++a)
            for (int r = 0; r < n; ++r)
                if ((code >> bit++) & 1u) b.add_transition(q, a, r);
    for (int q = 0; q < n; ++q)
        if ((code >> bit++) & 1u) b.set_initial(q);
    for (int q = 0; q < n; ++q)
        if ((code >> bit++) & 1u) b.set_accepting(q);
    return b;
}

std::vector<Lasso> all_lassos(int k, int max_prefix, int max_period) {
    std::vector<Word> words{{}};
    std::vector<Word> frontier{{}};
    for (int len = 1; len <= std::max(max_prefix, max_period); ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (int a = 0; a < k; ++a) {
                Word x = w;
                x.push_back(a);
                next.push_back(x);
            }
        words.insert(words.end(), next.begin(), next.end());
        frontier.swap(next);
    }
    std::vector<Lasso> out;
    for (const auto& u : words)
        for (const auto& v : words)
            if (static_cast<int>(u.size()) <= max_prefix && !v.empty() && static_cast<int>(v.size()) <= max_period)
                out.push_back({u, v});
    return out;
}

bool oracle_accepts_lasso(const BuchiAutomaton& b, const Lasso& w) {
    // nodes (q, i): about to read position i of u.v; positions >= |u| wrap in v
    const int n = static_cast<int>(b.num_states());
    const int len = static_cast<int>(w.prefix.size() + w.period.size());
    const int nodes = n * len;
    auto sym = [&](int i) { return i < static_cast<int>(w.prefix.size()) ? w.prefix[static_cast<std::size_t>(i)] : w.period[static_cast<std::size_t>(i) - w.prefix.size()]; };
    auto next_pos = [&](int i) { return i + 1 < len ? i + 1 : static_cast<int>(w.prefix.size()); };
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(nodes), std::vector<char>(static_cast<std::size_t>(nodes), 0));
    for (int q = 0; q < n; ++q)
        for (int i = 0; i < len; ++i)
            for (int r = 0; r < n; ++r)
                if (b.has_transition(q, sym(i), r)) reach[static_cast<std::size_t>(q * len + i)][static_cast<std::size_t>(r * len + next_pos(i))] = 1;
    for (int m = 0; m < nodes; ++m)
        for (int i = 0; i < nodes; ++i)
            if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)])
                for (int j = 0; j < nodes; ++j)
                    if (reach[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]) reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    for (int q0 = 0; q0 < n; ++q0) {
        if (!b.is_initial(q0)) continue;
        for (int f = 0; f < n; ++f) {
            if (!b.is_accepting(f)) continue;
            for (int i = 0; i < len; ++i) {
                int node = f * len + i;
                bool from_start = node == q0 * len || reach[static_cast<std::size_t>(q0 * len)][static_cast<std::size_t>(node)];
                if (from_start && reach[static_cast<std::size_t>(node)][static_cast<std::size_t>(node)]) return true;
            }
        }
    }
    return false;
}

Bits oracle_lift(const BuchiAutomaton& b, const Bits& r, const Word& w) {
    // enumerate paths state by state
    Bits out(b.num_states());
    std::vector<std::pair<int, std::size_t>> stack;
    r.for_each([&](std::size_t q) { stack.emplace_back(static_cast<int>(q), 0); });
    std::set<std::pair<int, std::size_t>> seen;
    while (!stack.empty()) {
        auto [q, i] = stack.back();
        stack.pop_back();
        if (!seen.insert({q, i}).second) continue;
        if (i == w.size()) {
            out.set(static_cast<std::size_t>(q));
            continue;
        }
        for (std::size_t s = 0; s < b.num_states(); ++s)
            if (b.has_transition(q, w[i], static_cast<int>(s))) stack.emplace_back(static_cast<int>(s), i + 1);
    }
    return out;
}

bool oracle_is_empty(const BuchiAutomaton& b) {
    const std::size_t n = b.num_states();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t a = 0; a < b.num_symbols(); ++a)
            for (std::size_t r = 0; r < n; ++r)
                if (b.has_transition(static_cast<int>(q), static_cast<int>(a), static_cast<int>(r))) reach[q][r] = 1;
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][m])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[m][j]) reach[i][j] = 1;
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t f = 0; f < n; ++f)
            if (b.is_initial(static_cast<int>(q)) && b.is_accepting(static_cast<int>(f)) && (q == f || reach[q][f]) && reach[f][f])
                return false;
    return true;
}

ArcGraph oracle_graph_of_word(const BuchiAutomaton& b, const Word& w) {
    // for each start state, track (state, visited-accepting) along w
    const std::size_t n = b.num_states();
    ArcGraph g(n, n);
    for (std::size_t q = 0; q < n; ++q) {
        std::set<std::pair<std::size_t, bool>> cur{{q, b.is_accepting(static_cast<int>(q))}};
        for (int a : w) {
            std::set<std::pair<std::size_t, bool>> next;
            for (auto [s, acc] : cur)
                for (std::size_t r = 0; r < n; ++r)
                    if (b.has_transition(static_cast<int>(s), a, static_cast<int>(r)))
                        next.insert({r, acc || b.is_accepting(static_cast<int>(r))});
            cur.swap(next);
        }
        for (auto [r, acc] : cur) g.add_arc(q, r, acc ? 1 : 0);
    }
    return g;
}

ArcGraph random_graph(Rng& rng, int rows, int cols, double arc_prob, double one_prob) {
    ArcGraph g(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::bernoulli_distribution arc(arc_prob), one(one_prob);
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y)
            if (arc(rng)) g.set_arc(static_cast<std::size_t>(x), static_cast<std::size_t>(y), one(rng) ? 1 : 0);
    return g;
}

namespace {

SctProblem random_skeleton(Rng& rng, int max_functions, int max_arity) {
    std::uniform_int_distribution<int> nf_d(1, max_functions), ar_d(1, max_arity);
    const int nf = nf_d(rng);
    SctProblem p;
    for (int f = 0; f < nf; ++f) {
        std::vector<std::string> ps;
        const int ar = ar_d(rng);
        for (int i = 0; i < ar; ++i) ps.push_back(std::string(1, static_cast<char>('x' + i % 3)) + std::to_string(i));
        p.add_function("f" + std::to_string(f), ps);
    }
    std::uniform_int_distribution<int> fn(0, nf - 1);
    int c = 0;
    // a spanning chain keeps every function reachable, then a few extra calls
    for (int f = 1; f < nf; ++f) p.add_call("c" + std::to_string(c++), std::uniform_int_distribution<int>(0, f - 1)(rng), f);
    std::uniform_int_distribution<int> extra(1, nf + 1);
    for (int i = extra(rng); i > 0; --i) p.add_call("c" + std::to_string(c++), fn(rng), fn(rng));
    return p;
}

}  // namespace

SctProblem random_sct(Rng& rng, int max_functions, int max_arity, double arc_prob, double one_prob) {
    SctProblem p = random_skeleton(rng, max_functions, max_arity);
    for (auto& g : p.scgs)
        g.graph = random_graph(rng, static_cast<int>(g.graph.rows()), static_cast<int>(g.graph.cols()), arc_prob, one_prob);
    return p;
}

SctProblem random_reverse_deterministic_sct(Rng& rng, int max_functions, int max_arity) {
    SctProblem p = random_skeleton(rng, max_functions, max_arity);
    std::bernoulli_distribution has(0.75), one(0.35);
    for (auto& g : p.scgs) {
        std::uniform_int_distribution<int> src(0, static_cast<int>(g.graph.rows()) - 1);
        for (std::size_t y = 0; y < g.graph.cols(); ++y)
            if (g.graph.rows() && has(rng)) g.graph.set_arc(static_cast<std::size_t>(src(rng)), y, one(rng) ? 1 : 0);
    }
    return p;
}

SctProblem permutation_gadget(int n) {
    SctProblem p;
    std::vector<std::string> ps;
    for (int i = 1; i <= n; ++i) ps.push_back("x" + std::to_string(i));
    p.add_function("f", ps);
    const int rot = p.add_call("rot", 0, 0), swap = p.add_call("swap", 0, 0), merge = p.add_call("merge", 0, 0);
    for (int i = 0; i < n; ++i) p.add_arc(rot, i, 0, (i + 1) % n);
    p.add_arc(swap, 0, 1, 1);
    p.add_arc(swap, 1, 0, 0);
    for (int i = 2; i < n; ++i) p.add_arc(swap, i, 0, i);
    p.add_arc(merge, 0, 1, 0);
    p.add_arc(merge, 1, 1, 0);
    for (int i = 1; i < n; ++i) p.add_arc(merge, i, 0, i);
    return p;
}

bool oracle_sct_terminates(const SctProblem& p) {
    struct Key {
        int s, t;
        std::vector<std::tuple<int, int, int>> arcs;
        bool operator<(const Key& o) const { return std::tie(s, t, arcs) < std::tie(o.s, o.t, o.arcs); }
    };
    auto refutes = [](const SizeChangeGraph& g) {
        if (g.source != g.target || compose_reference(g.graph, g.graph) != g.graph) return false;
        for (std::size_t x = 0; x < g.graph.rows(); ++x)
            if (g.graph.label(x, x) == 1) return false;
        return true;
    };
    std::set<Key> seen;
    std::vector<SizeChangeGraph> all;
    bool refuted = false;
    auto add = [&](const SizeChangeGraph& g) {
        if (!seen.insert({g.source, g.target, g.graph.arcs()}).second) return;
        all.push_back(g);
        refuted |= refutes(g);
    };
    for (const auto& g : p.scgs) add(g);
    // one refuting graph settles the answer, so the closure can stop early
    for (std::size_t i = 0; i < all.size() && !refuted; ++i)
        for (std::size_t j = 0; j <= i && !refuted; ++j) {
            if (all[i].target == all[j].source) add({all[i].source, all[j].target, compose_reference(all[i].graph, all[j].graph)});
            if (all[j].target == all[i].source) add({all[j].source, all[i].target, compose_reference(all[j].graph, all[i].graph)});
        }
    return !refuted;
}

std::string fixture(const std::string& name) { return std::string(SCTKIT_FIXTURES) + "/" + name; }

}  // namespace sctkit::testing
