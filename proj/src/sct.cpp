#include "sctkit/sct.hpp"

#include <set>
#include <stdexcept>

#include "closure.hpp"

namespace sctkit {

int SctProblem::function_id(const std::string& name) const {
    for (std::size_t i = 0; i < functions.size(); ++i)
        if (functions[i] == name) return static_cast<int>(i);
    return -1;
}

int SctProblem::call_id(const std::string& name) const {
    for (std::size_t i = 0; i < calls.size(); ++i)
        if (calls[i].id == name) return static_cast<int>(i);
    return -1;
}

std::size_t SctProblem::max_arity() const {
    std::size_t n = 0;
    for (const auto& ps : params) n = std::max(n, ps.size());
    return n;
}

std::size_t SctProblem::total_params() const {
    std::size_t n = 0;
    for (const auto& ps : params) n += ps.size();
    return n;
}

int SctProblem::add_function(std::string name, std::vector<std::string> ps) {
    functions.push_back(std::move(name));
    params.push_back(std::move(ps));
    return static_cast<int>(functions.size() - 1);
}

int SctProblem::add_call(std::string id, int source, int target) {
    calls.push_back({std::move(id), source, target});
    scgs.push_back({source, target, ArcGraph(arity(source), arity(target))});
    return static_cast<int>(calls.size() - 1);
}

void SctProblem::add_arc(int call, int x, int label, int y) {
    scgs[static_cast<std::size_t>(call)].graph.set_arc(static_cast<std::size_t>(x), static_cast<std::size_t>(y), label);
}

void validate(const SctProblem& p) {
    if (p.params.size() != p.functions.size()) throw std::invalid_argument("parameter lists do not match functions");
    if (p.scgs.size() != p.calls.size()) throw std::invalid_argument("graph count does not match call count");
    std::set<std::string> names;
    for (std::size_t f = 0; f < p.functions.size(); ++f) {
        if (!names.insert(p.functions[f]).second) throw std::invalid_argument("duplicate function " + p.functions[f]);
        std::set<std::string> ps(p.params[f].begin(), p.params[f].end());
        if (ps.size() != p.params[f].size())
            throw std::invalid_argument("duplicate parameter in function " + p.functions[f]);
    }
    std::set<std::string> ids;
    const int nf = static_cast<int>(p.functions.size());
    for (std::size_t c = 0; c < p.calls.size(); ++c) {
        const auto& call = p.calls[c];
        if (!ids.insert(call.id).second) throw std::invalid_argument("duplicate call " + call.id);
        if (call.source < 0 || call.source >= nf || call.target < 0 || call.target >= nf)
            throw std::invalid_argument("call " + call.id + " references an unknown function");
        const auto& g = p.scgs[c];
        if (g.source != call.source || g.target != call.target || g.graph.rows() != p.arity(call.source) ||
            g.graph.cols() != p.arity(call.target))
            throw std::invalid_argument("graph of call " + call.id + " does not match its endpoints");
    }
}

std::vector<std::string> prune_unreachable(SctProblem& p) {
    if (p.functions.empty()) return {};
    std::vector<bool> seen(p.functions.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (const auto& c : p.calls)
            if (c.source == f && !seen[static_cast<std::size_t>(c.target)]) {
                seen[static_cast<std::size_t>(c.target)] = true;
                stack.push_back(c.target);
            }
    }
    std::vector<std::string> dropped;
    std::vector<int> remap(p.functions.size(), -1);
    SctProblem out;
    for (std::size_t f = 0; f < p.functions.size(); ++f) {
        if (!seen[f]) {
            dropped.push_back(p.functions[f]);
            continue;
        }
        remap[f] = out.add_function(p.functions[f], p.params[f]);
    }
    if (dropped.empty()) return dropped;
    for (std::size_t c = 0; c < p.calls.size(); ++c) {
        const auto& call = p.calls[c];
        if (!seen[static_cast<std::size_t>(call.source)]) continue;
        out.calls.push_back({call.id, remap[static_cast<std::size_t>(call.source)], remap[static_cast<std::size_t>(call.target)]});
        SizeChangeGraph g = p.scgs[c];
        g.source = out.calls.back().source;
        g.target = out.calls.back().target;
        out.scgs.push_back(std::move(g));
    }
    p = std::move(out);
    return dropped;
}

SizeChangeGraph scg_compose(const SizeChangeGraph& g, const SizeChangeGraph& h) {
    if (g.target != h.source) throw std::invalid_argument("scg_compose: endpoint mismatch");
    return {g.source, h.target, compose(g.graph, h.graph)};
}

bool scg_is_reverse_deterministic(const SizeChangeGraph& g) {
    for (std::size_t y = 0; y < g.graph.cols(); ++y) {
        int in = 0;
        for (std::size_t x = 0; x < g.graph.rows(); ++x)
            if (g.graph.has_arc(x, y) && ++in > 1) return false;
    }
    return true;
}

bool sct_is_reverse_deterministic(const SctProblem& p) {
    for (const auto& g : p.scgs)
        if (!scg_is_reverse_deterministic(g)) return false;
    return true;
}

std::string format_scg(const SctProblem& p, const SizeChangeGraph& g) {
    const auto& src = p.params[static_cast<std::size_t>(g.source)];
    const auto& dst = p.params[static_cast<std::size_t>(g.target)];
    std::string out = p.functions[static_cast<std::size_t>(g.source)] + " -> " + p.functions[static_cast<std::size_t>(g.target)] + " {";
    bool first = true;
    for (auto [x, label, y] : g.graph.arcs()) {
        out += first ? " " : " ; ";
        first = false;
        out += src[static_cast<std::size_t>(x)] + (label ? " > " : " >= ") + dst[static_cast<std::size_t>(y)];
    }
    return out + (first ? "}" : " }");
}

namespace {

std::vector<Supergraph> scg_seeds(const SctProblem& p) {
    std::vector<Supergraph> seeds;
    for (std::size_t c = 0; c < p.calls.size(); ++c) {
        Supergraph s;
        s.from = p.scgs[c].source;
        s.to = p.scgs[c].target;
        s.graph = p.scgs[c].graph;
        s.witness = {static_cast<int>(c)};
        seeds.push_back(std::move(s));
    }
    return seeds;
}

}  // namespace

SctVerdict ljb_check(const SctProblem& p, const LjbOptions& opts) {
    validate(p);
    SctVerdict v;
    detail::Closure closure(p.functions.size(), opts.subsumption, opts.track_witness, opts.budget);
    int found = -1;
    closure.on_insert = [&](int id) {
        const Supergraph& g = closure.at(id);
        if (g.from != g.to) return false;
        bool bad = opts.subsumption ? scc_counterexample_test(g.graph)
                                    : (!has_one_self_loop(g.graph) && is_idempotent(g.graph));
        if (bad) found = id;
        return bad;
    };
    closure.run(scg_seeds(p));
    v.stats = closure.stats();
    if (found >= 0) {
        const Supergraph& g = closure.at(found);
        v.terminating = false;
        v.has_counterexample = true;
        v.counterexample = {g.from, g.to, g.graph};
        if (g.witness_valid && !g.witness.empty()) {
            v.has_witness = true;
            v.witness = g.witness;
        }
    } else if (closure.aborted()) {
        v.aborted = true;
        v.terminating = false;
    }
    return v;
}

std::vector<SizeChangeGraph> scg_closure(const SctProblem& p, const Budget& budget) {
    validate(p);
    detail::Closure closure(p.functions.size(), false, false, budget);
    closure.run(scg_seeds(p));
    if (closure.aborted()) throw std::runtime_error("closure budget exhausted");
    std::vector<SizeChangeGraph> out;
    closure.for_each_alive([&](int id) {
        const Supergraph& g = closure.at(id);
        out.push_back({g.from, g.to, g.graph});
    });
    return out;
}

namespace {

std::vector<std::string> call_alphabet(const SctProblem& p) {
    std::vector<std::string> out;
    for (const auto& c : p.calls) out.push_back(c.id);
    return out;
}

}  // namespace

BuchiAutomaton flow_automaton(const SctProblem& p) {
    validate(p);
    BuchiAutomaton a(call_alphabet(p), p.functions);
    for (std::size_t f = 0; f < p.functions.size(); ++f) {
        a.set_initial(static_cast<int>(f));
        a.set_accepting(static_cast<int>(f));
    }
    for (std::size_t c = 0; c < p.calls.size(); ++c)
        a.add_transition(p.calls[c].source, static_cast<int>(c), p.calls[c].target);
    return a;
}

int desc_param_state(const SctProblem& p, int f, int i, int flag) {
    std::size_t base = p.functions.size();
    for (int g = 0; g < f; ++g) base += 2 * p.arity(g);
    return static_cast<int>(base + 2 * static_cast<std::size_t>(i) + static_cast<std::size_t>(flag));
}

BuchiAutomaton desc_automaton(const SctProblem& p) {
    validate(p);
    std::vector<std::string> names = p.functions;
    for (std::size_t f = 0; f < p.functions.size(); ++f)
        for (const auto& x : p.params[f]) {
            names.push_back(p.functions[f] + "." + x + "/0");
            names.push_back(p.functions[f] + "." + x + "/1");
        }
    BuchiAutomaton a(call_alphabet(p), names);
    for (std::size_t q = 0; q < names.size(); ++q) a.set_initial(static_cast<int>(q));
    for (std::size_t f = 0; f < p.functions.size(); ++f)
        for (std::size_t i = 0; i < p.arity(static_cast<int>(f)); ++i)
            a.set_accepting(desc_param_state(p, static_cast<int>(f), static_cast<int>(i), 1));
    for (std::size_t c = 0; c < p.calls.size(); ++c) {
        const auto& call = p.calls[c];
        const int s = static_cast<int>(c);
        a.add_transition(call.source, s, call.target);
        for (std::size_t y = 0; y < p.arity(call.target); ++y)
            a.add_transition(call.source, s, desc_param_state(p, call.target, static_cast<int>(y), 0));
        for (auto [x, label, y] : p.scgs[c].graph.arcs())
            for (int r = 0; r < 2; ++r)
                a.add_transition(desc_param_state(p, call.source, x, r), s, desc_param_state(p, call.target, y, label));
    }
    return a;
}

BuchiAutomaton desc_automaton_optimized(const SctProblem& p) {
    validate(p);
    const std::size_t n = p.max_arity();
    std::vector<std::string> names{"q0"};
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back(std::to_string(i) + "/0");
        names.push_back(std::to_string(i) + "/1");
    }
    auto pos = [](std::size_t i, int flag) { return static_cast<int>(1 + 2 * i + static_cast<std::size_t>(flag)); };
    BuchiAutomaton a(call_alphabet(p), names);
    for (std::size_t q = 0; q < names.size(); ++q) a.set_initial(static_cast<int>(q));
    for (std::size_t i = 0; i < n; ++i) a.set_accepting(pos(i, 1));
    for (std::size_t c = 0; c < p.calls.size(); ++c) {
        const auto& call = p.calls[c];
        const int s = static_cast<int>(c);
        a.add_transition(0, s, 0);
        for (std::size_t y = 0; y < p.arity(call.target); ++y) a.add_transition(0, s, pos(y, 0));
        for (auto [x, label, y] : p.scgs[c].graph.arcs())
            for (int r = 0; r < 2; ++r)
                a.add_transition(pos(static_cast<std::size_t>(x), r), s, pos(static_cast<std::size_t>(y), label));
    }
    return a;
}

SizeChangeGraph simplify_supergraph(const SctProblem& p, const Supergraph& g) {
    const int nf = static_cast<int>(p.functions.size());
    const std::size_t nstates = p.functions.size() + 2 * p.total_params();
    if (g.from < 0 || g.from >= nf || g.to < 0 || g.to >= nf)
        throw std::invalid_argument("simplify_supergraph: arc is not a pair of functions");
    if (g.graph.rows() != nstates || g.graph.cols() != nstates)
        throw std::invalid_argument("simplify_supergraph: graph is not over the descent automaton");
    SizeChangeGraph out{g.from, g.to, ArcGraph(p.arity(g.from), p.arity(g.to))};
    for (std::size_t x = 0; x < p.arity(g.from); ++x) {
        const auto q = static_cast<std::size_t>(desc_param_state(p, g.from, static_cast<int>(x), 0));
        for (std::size_t y = 0; y < p.arity(g.to); ++y)
            for (int c = 0; c < 2; ++c) {
                int label = g.graph.label(q, static_cast<std::size_t>(desc_param_state(p, g.to, static_cast<int>(y), c)));
                if (label >= 0) out.graph.add_arc(x, y, label);
            }
    }
    return out;
}

}  // namespace sctkit
