#include "sctkit/ramsey.hpp"

#include <stdexcept>

#include "closure.hpp"

namespace sctkit {

Supergraph supergraph_compose(const Supergraph& g, const Supergraph& h) {
    if (g.to != h.from) throw std::invalid_argument("supergraph_compose: arcs do not chain");
    Supergraph out;
    out.from = g.from;
    out.to = h.to;
    out.graph = compose(g.graph, h.graph);
    out.witness_valid = g.witness_valid && h.witness_valid && g.witness.size() + h.witness.size() <= kWitnessCap;
    if (out.witness_valid) {
        out.witness.reserve(g.witness.size() + h.witness.size());
        out.witness.insert(out.witness.end(), g.witness.begin(), g.witness.end());
        out.witness.insert(out.witness.end(), h.witness.begin(), h.witness.end());
    }
    return out;
}

std::vector<Supergraph> initial_supergraphs(const BuchiAutomaton& a, const BuchiAutomaton& b_in) {
    const BuchiAutomaton b = align_alphabet(b_in, a.alphabet());
    std::vector<ArcGraph> letters;
    for (std::size_t s = 0; s < a.num_symbols(); ++s) letters.push_back(single_letter_graph(b, static_cast<int>(s)));
    std::vector<Supergraph> out;
    for (std::size_t q = 0; q < a.num_states(); ++q)
        for (std::size_t s = 0; s < a.num_symbols(); ++s)
            a.post(static_cast<int>(q), static_cast<int>(s)).for_each([&](std::size_t r) {
                Supergraph sg;
                sg.from = static_cast<int>(q);
                sg.to = static_cast<int>(r);
                sg.graph = letters[s];
                sg.witness = {static_cast<int>(s)};
                out.push_back(std::move(sg));
            });
    return out;
}

namespace {

using detail::Closure;

// Self-loops (r,1,r) of g as a row mask.
Bits one_loops(const ArcGraph& g) {
    Bits m(g.rows());
    for (std::size_t r = 0; r < g.rows(); ++r)
        if (g.label(r, r) == 1) m.set(r);
    return m;
}

void attach_lasso(ContainmentVerdict& v, const Word* prefix, const Supergraph& loop) {
    if ((prefix == nullptr || v.g.witness_valid) && loop.witness_valid && !loop.witness.empty()) {
        v.has_lasso = true;
        v.lasso.prefix = prefix ? *prefix : Word{};
        v.lasso.period = loop.witness;
    }
}

}  // namespace

ContainmentVerdict dgs_containment(const BuchiAutomaton& a, const BuchiAutomaton& b_in, const RamseyOptions& opts) {
    const BuchiAutomaton b = align_alphabet(b_in, a.alphabet());
    ContainmentVerdict verdict;
    Closure closure(a.num_states(), false, opts.track_witness, opts.budget);
    std::vector<std::vector<int>> loops(a.num_states()), prefixes(a.num_states());
    const Bits& b_init = b.initial();

    auto counterexample = [&](int gi, int hi) {
        const Supergraph& g = closure.at(gi);
        const Supergraph& h = closure.at(hi);
        ++verdict.stats.compositions;
        if (compose(g.graph, h.graph) != g.graph) return false;
        Bits loops1 = one_loops(h.graph);
        bool satisfied = false;
        b_init.for_each([&](std::size_t q) {
            if (!satisfied && kernels::intersects(g.graph.any_row(q), loops1.data(), loops1.words())) satisfied = true;
        });
        if (satisfied) return false;
        verdict.contained = false;
        verdict.has_pair = true;
        verdict.g = g;
        verdict.h = h;
        attach_lasso(verdict, &g.witness, h);
        return true;
    };

    closure.on_insert = [&](int id) {
        const Supergraph& e = closure.at(id);
        if (e.from == e.to && a.is_accepting(e.to) && is_idempotent(e.graph)) {
            loops[e.to].push_back(id);
            for (int g : prefixes[e.to])
                if (counterexample(g, id)) return true;
        }
        if (a.is_initial(e.from) && a.is_accepting(e.to)) {
            prefixes[e.to].push_back(id);
            for (int h : loops[e.to])
                if (counterexample(id, h)) return true;
        }
        return false;
    };

    closure.run(initial_supergraphs(a, b));
    ClosureStats s = closure.stats();
    s.compositions += verdict.stats.compositions;
    verdict.stats = s;
    if (closure.aborted()) {
        verdict.aborted = true;
        verdict.contained = false;
    }
    return verdict;
}

ContainmentVerdict ramsey_universality(const BuchiAutomaton& b, const RamseyOptions& opts) {
    return dgs_containment(universal_automaton(b.alphabet()), b, opts);
}

ContainmentVerdict sgs_containment(const BuchiAutomaton& a, const BuchiAutomaton& b_in, const RamseyOptions& opts) {
    if (!opts.preconditions_asserted)
        throw std::invalid_argument(
            "single-graph search needs L(B) strongly suffix closed with respect to L(A); "
            "this cannot be checked here and must be asserted by the caller");
    if (!(a.initial() == a.full_set()))
        throw std::invalid_argument("single-graph search needs every state of A to be initial");

    ContainmentVerdict verdict;
    BuchiAutomaton b = align_alphabet(b_in, a.alphabet());
    Bits reach = reachable_states(b);
    if (!(reach == b.full_set())) {
        verdict.warnings.push_back("pruned " + std::to_string(b.num_states() - reach.count()) +
                                   " unreachable state(s) of B");
        b = restrict_states(b, reach);
    }

    Closure closure(a.num_states(), opts.subsumption, opts.track_witness, opts.budget);
    closure.on_insert = [&](int id) {
        const Supergraph& k = closure.at(id);
        if (k.from != k.to || !a.is_accepting(k.from)) return false;
        bool bad;
        if (opts.subsumption)
            bad = scc_counterexample_test(k.graph);
        else
            bad = !has_one_self_loop(k.graph) && is_idempotent(k.graph);
        if (!bad) return false;
        verdict.contained = false;
        verdict.has_pair = true;
        verdict.g = k;
        verdict.h = k;
        attach_lasso(verdict, nullptr, k);
        return true;
    };
    closure.run(initial_supergraphs(a, b));
    verdict.stats = closure.stats();
    if (closure.aborted()) {
        verdict.aborted = true;
        verdict.contained = false;
    }
    return verdict;
}

}  // namespace sctkit
