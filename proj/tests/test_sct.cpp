#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "sctkit/formats.hpp"
#include "sctkit/ramsey.hpp"
#include "sctkit/rank.hpp"
#include "sctkit/sct.hpp"
#include "support.hpp"

using namespace sctkit;
using namespace sctkit::testing;

namespace {

SctProblem load(const char* name) { return parse_sct(read_file(fixture(name))); }

SizeChangeGraph scg(int rows, int cols, std::vector<std::tuple<int, int, int>> arcs, int source = 0, int target = 0) {
    SizeChangeGraph g{source, target, ArcGraph(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols))};
    for (auto [x, label, y] : arcs) g.graph.set_arc(static_cast<std::size_t>(x), static_cast<std::size_t>(y), label);
    return g;
}

LjbOptions ljb(bool subsumption) {
    LjbOptions o;
    o.subsumption = subsumption;
    return o;
}

RamseyOptions sgs() {
    RamseyOptions o;
    o.preconditions_asserted = true;
    o.subsumption = true;
    return o;
}

std::vector<SctProblem> fixtures() {
    std::vector<SctProblem> out;
    for (const char* f : {"fig3.sct", "descent.sct", "stall.sct", "swap.sct", "mutual.sct", "ackermann.sct",
                          "gadget_2.sct", "gadget_3.sct"})
        out.push_back(load(f));
    return out;
}

// u.v^omega is a call sequence: consecutive calls chain and v closes a cycle.
bool valid_call_sequence(const SctProblem& p, const Lasso& w) {
    Word all = w.prefix;
    all.insert(all.end(), w.period.begin(), w.period.end());
    all.push_back(w.period.front());
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
        if (p.calls[static_cast<std::size_t>(all[i])].target != p.calls[static_cast<std::size_t>(all[i + 1])].source)
            return false;
    return true;
}

std::vector<Lasso> lassos_over(std::size_t k, std::size_t max_len) {
    std::vector<Word> words{{}};
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i].size() < max_len)
            for (std::size_t a = 0; a < k; ++a) {
                Word w = words[i];
                w.push_back(static_cast<int>(a));
                words.push_back(std::move(w));
            }
    std::vector<Lasso> out;
    for (const auto& u : words)
        for (const auto& v : words)
            if (!v.empty()) out.push_back({u, v});
    return out;
}

}  // namespace

TEST(Sct, ComposeExamples) {
    auto g = scg(1, 1, {{0, 1, 0}});
    auto h = scg(1, 1, {{0, 0, 0}});
    EXPECT_EQ(scg_compose(g, h).graph, g.graph);
    EXPECT_EQ(scg_compose(h, h).graph, h.graph);
    EXPECT_THROW(scg_compose(scg(1, 1, {}, 0, 1), scg(1, 1, {}, 0, 0)), std::invalid_argument);
    EXPECT_EQ(scg_compose(scg(1, 1, {}, 0, 1), scg(1, 1, {}, 1, 2)).target, 2);
}

TEST(Sct, CompositionIsAssociative) {
    Rng rng(31);
    for (int rep = 0; rep < 300; ++rep) {
        std::uniform_int_distribution<int> ar(1, 4);
        const int a = ar(rng), b = ar(rng), c = ar(rng), d = ar(rng);
        SizeChangeGraph g{0, 0, random_graph(rng, a, b, 0.4, 0.3)};
        SizeChangeGraph h{0, 0, random_graph(rng, b, c, 0.4, 0.3)};
        SizeChangeGraph k{0, 0, random_graph(rng, c, d, 0.4, 0.3)};
        EXPECT_EQ(scg_compose(scg_compose(g, h), k), scg_compose(g, scg_compose(h, k)));
    }
}

TEST(Sct, RunningExample) {
    SctProblem p = load("fig3.sct");
    ASSERT_EQ(p.functions.size(), 2u);
    ASSERT_EQ(p.calls.size(), 3u);
    const auto& gb = p.scgs[static_cast<std::size_t>(p.call_id("b"))];
    const auto& gc = p.scgs[static_cast<std::size_t>(p.call_id("c"))];
    SizeChangeGraph bc = scg_compose(gb, gc);
    EXPECT_EQ(scg_compose(bc, bc), bc);
    EXPECT_EQ(bc.graph.label(1, 1), 1);  // y > y
    EXPECT_TRUE(is_idempotent(bc.graph));
    for (bool sub : {false, true}) EXPECT_TRUE(ljb_check(p, ljb(sub)).terminating);

    // a(bc)^omega: f's parameter is dropped by a, so the descending thread
    // can only start inside g.
    const int a = p.call_id("a"), b = p.call_id("b"), c = p.call_id("c");
    BuchiAutomaton desc = desc_automaton(p);
    EXPECT_TRUE(accepts_lasso(flow_automaton(p), {{a}, {b, c}}));
    EXPECT_TRUE(accepts_lasso(desc, {{a}, {b, c}}));
    BuchiAutomaton from_f = desc;
    for (std::size_t q = 0; q < from_f.num_states(); ++q) from_f.set_initial(static_cast<int>(q), false);
    from_f.set_initial(desc_param_state(p, p.function_id("f"), 0, 0));
    EXPECT_FALSE(accepts_lasso(from_f, {{a}, {b, c}}));
}

TEST(Sct, LjbExamples) {
    for (bool sub : {false, true}) {
        EXPECT_TRUE(ljb_check(load("descent.sct"), ljb(sub)).terminating);
        EXPECT_TRUE(ljb_check(load("swap.sct"), ljb(sub)).terminating);
        EXPECT_TRUE(ljb_check(load("ackermann.sct"), ljb(sub)).terminating);
        SctProblem stall = load("stall.sct");
        SctVerdict v = ljb_check(stall, ljb(sub));
        EXPECT_FALSE(v.terminating);
        ASSERT_TRUE(v.has_counterexample);
        EXPECT_EQ(v.counterexample, stall.scgs[0]);
        ASSERT_TRUE(v.has_witness);
        EXPECT_EQ(v.witness, std::vector<int>{0});
    }
    // swap: the square {x > x, y > y} is the only idempotent
    SctProblem swap = load("swap.sct");
    auto closure = scg_closure(swap);
    int idempotents = 0;
    for (const auto& g : closure)
        if (is_idempotent(g.graph)) {
            ++idempotents;
            EXPECT_EQ(g.graph.label(0, 0), 1);
            EXPECT_EQ(g.graph.label(1, 1), 1);
        }
    EXPECT_EQ(idempotents, 1);
}

TEST(Sct, LjbMatchesBruteForceOracle) {
    Rng rng(32);
    for (int rep = 0; rep < 200; ++rep) {
        SctProblem p = random_sct(rng, 3, 3);
        const bool expected = oracle_sct_terminates(p);
        for (bool sub : {false, true}) {
            SctVerdict v = ljb_check(p, ljb(sub));
            ASSERT_EQ(v.terminating, expected) << rep << "\n" << render_sct(p);
            if (v.terminating) continue;
            ASSERT_TRUE(v.has_counterexample);
            const ArcGraph& g = v.counterexample.graph;
            if (sub)
                EXPECT_TRUE(scc_counterexample_test(g));
            else
                EXPECT_TRUE(is_idempotent(g) && !has_one_self_loop(g));
            ASSERT_TRUE(v.has_witness);
            Lasso w{{}, v.witness};
            EXPECT_TRUE(accepts_lasso(flow_automaton(p), w));
            EXPECT_FALSE(oracle_accepts_lasso(desc_automaton(p), w));
            EXPECT_FALSE(oracle_accepts_lasso(desc_automaton_optimized(p), w));
        }
    }
}

TEST(Sct, FlowAutomaton) {
    BuchiAutomaton one = flow_automaton(load("descent.sct"));
    EXPECT_EQ(one.num_states(), 1u);
    EXPECT_EQ(one.num_transitions(), 1u);
    EXPECT_TRUE(one.has_transition(0, 0, 0));
    EXPECT_TRUE(one.is_initial(0) && one.is_accepting(0));

    SctProblem p = load("fig3.sct");
    BuchiAutomaton fig = flow_automaton(p);
    const int f = fig.state_id("f"), g = fig.state_id("g");
    EXPECT_EQ(fig.num_transitions(), 3u);
    EXPECT_TRUE(fig.has_transition(f, fig.symbol_id("a"), g));
    EXPECT_TRUE(fig.has_transition(g, fig.symbol_id("b"), g));
    EXPECT_TRUE(fig.has_transition(g, fig.symbol_id("c"), g));

    Rng rng(33);
    for (int rep = 0; rep < 20; ++rep) {
        SctProblem r = random_sct(rng, 3, 2);
        BuchiAutomaton a = flow_automaton(r);
        for (const auto& w : lassos_over(r.calls.size(), 3))
            ASSERT_EQ(oracle_accepts_lasso(a, w), valid_call_sequence(r, w)) << rep;
    }
}

TEST(Sct, DescAutomaton) {
    SctProblem p = load("descent.sct");
    BuchiAutomaton d = desc_automaton(p);
    const int x0 = desc_param_state(p, 0, 0, 0), x1 = desc_param_state(p, 0, 0, 1);
    EXPECT_EQ(d.state_name(x0), "f.x/0");
    EXPECT_EQ(d.state_name(x1), "f.x/1");
    EXPECT_TRUE(d.has_transition(x0, 0, x1));
    EXPECT_TRUE(d.has_transition(x1, 0, x1));
    EXPECT_TRUE(d.has_transition(0, 0, x0));
    EXPECT_TRUE(d.is_accepting(x1) && !d.is_accepting(x0) && !d.is_accepting(0));
    EXPECT_TRUE(accepts_lasso(d, {{}, {0}}));

    SctProblem stall = load("stall.sct");
    EXPECT_FALSE(accepts_lasso(desc_automaton(stall), {{}, {0}}));
}

TEST(Sct, OptimizedDescAutomaton) {
    BuchiAutomaton d = desc_automaton_optimized(load("descent.sct"));
    ASSERT_EQ(d.num_states(), 3u);
    const int q0 = d.state_id("q0"), p0 = d.state_id("1/0"), p1 = d.state_id("1/1");
    EXPECT_TRUE(d.has_transition(q0, 0, q0));
    EXPECT_TRUE(d.has_transition(q0, 0, p0));
    EXPECT_TRUE(d.has_transition(p0, 0, p1));
    EXPECT_TRUE(d.has_transition(p1, 0, p1));
    EXPECT_EQ(d.num_transitions(), 4u);
    EXPECT_TRUE(d.is_accepting(p1) && !d.is_accepting(p0) && !d.is_accepting(q0));

    Rng rng(34);
    for (int rep = 0; rep < 30; ++rep) {
        SctProblem r = random_sct(rng, 5, 4);
        EXPECT_EQ(desc_automaton_optimized(r).num_states(), 2 * r.max_arity() + 1);
    }
}

// Flow within Desc, Flow within the optimized Desc, and LJB all agree.
TEST(Sct, ReductionsMatchLjb) {
    Rng rng(35);
    std::vector<SctProblem> corpus = fixtures();
    for (int i = 0; i < 60; ++i) corpus.push_back(random_sct(rng, 3, 3));
    for (const auto& p : corpus) {
        const bool t = ljb_check(p).terminating;
        const BuchiAutomaton flow = flow_automaton(p);
        EXPECT_EQ(dgs_containment(flow, desc_automaton(p)).contained, t) << render_sct(p);
        EXPECT_EQ(dgs_containment(flow, desc_automaton_optimized(p)).contained, t) << render_sct(p);
        EXPECT_EQ(sgs_containment(flow, desc_automaton_optimized(p), sgs()).contained, t) << render_sct(p);
        EXPECT_EQ(rank_containment(flow, desc_automaton_optimized(p)).holds, t) << render_sct(p);
    }
}

TEST(Sct, ReverseDeterminism) {
    EXPECT_TRUE(scg_is_reverse_deterministic(scg(1, 1, {{0, 1, 0}})));
    EXPECT_FALSE(scg_is_reverse_deterministic(scg(2, 1, {{0, 0, 0}, {1, 1, 0}})));
    EXPECT_TRUE(sct_is_reverse_deterministic(load("swap.sct")));
    EXPECT_FALSE(sct_is_reverse_deterministic(load("gadget_2.sct")));

    // the optimized descent automaton is not reverse-deterministic even when
    // the problem is: q0 and 1/r both reach 1/0 on c
    SctProblem stall = load("stall.sct");
    ASSERT_TRUE(sct_is_reverse_deterministic(stall));
    EXPECT_FALSE(is_reverse_deterministic(desc_automaton_optimized(stall)));
}

// Every reverse-deterministic graph shape with up to three nodes per side.
TEST(Sct, ReverseDeterministicGraphsAreClosedUnderComposition) {
    auto all_rd = [](int rows, int cols) {
        std::vector<ArcGraph> out;
        const int choices = 2 * rows + 1;
        const int total = static_cast<int>(std::pow(choices, cols));
        for (int code = 0; code < total; ++code) {
            ArcGraph g(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
            int c = code;
            for (int y = 0; y < cols; ++y, c /= choices) {
                int pick = c % choices;
                if (pick) g.set_arc(static_cast<std::size_t>((pick - 1) / 2), static_cast<std::size_t>(y), (pick - 1) % 2);
            }
            out.push_back(std::move(g));
        }
        return out;
    };
    std::size_t checked = 0;
    for (int r = 1; r <= 3; ++r)
        for (int m = 1; m <= 3; ++m)
            for (int c = 1; c <= 3; ++c) {
                auto left = all_rd(r, m), right = all_rd(m, c);
                for (const auto& g : left)
                    for (const auto& h : right) {
                        ASSERT_TRUE(scg_is_reverse_deterministic({0, 0, compose(g, h)}));
                        ++checked;
                    }
            }
    EXPECT_GT(checked, 100000u);
}

TEST(Sct, ReverseDeterministicClosureBound) {
    Rng rng(36);
    for (int rep = 0; rep < 40; ++rep) {
        SctProblem p = random_reverse_deterministic_sct(rng, 4, 3);
        ASSERT_TRUE(sct_is_reverse_deterministic(p));
        std::map<std::pair<int, int>, std::size_t> per_pair;
        for (const auto& g : scg_closure(p)) {
            ASSERT_TRUE(scg_is_reverse_deterministic(g));
            ++per_pair[{g.source, g.target}];
        }
        for (auto [key, count] : per_pair) {
            const double s = static_cast<double>(p.arity(key.first)), t = static_cast<double>(p.arity(key.second));
            EXPECT_LE(static_cast<double>(count), std::pow(2 * s + 1, t));
        }
    }
}

TEST(Sct, RankTwoSufficesForReverseDeterministicProblems) {
    Rng rng(37);
    for (int rep = 0; rep < 30; ++rep) {
        SctProblem p = random_reverse_deterministic_sct(rng, 3, 3);
        BuchiAutomaton flow = flow_automaton(p), desc = desc_automaton_optimized(p);
        RankOptions two, full;
        two.max_rank = 2;
        full.max_rank = std::max(1, 2 * static_cast<int>(desc.num_states()) - 2);
        const bool t = ljb_check(p).terminating;
        EXPECT_EQ(rank_containment(flow, desc, two).holds, t);
        EXPECT_EQ(rank_containment(flow, desc, full).holds, t);
    }
}

TEST(Sct, SimplificationMatchesGraphs) {
    SctProblem p = load("fig3.sct");
    BuchiAutomaton flow = flow_automaton(p), desc = desc_automaton(p);
    for (const Supergraph& s : initial_supergraphs(flow, desc)) {
        ASSERT_EQ(s.witness.size(), 1u);
        EXPECT_EQ(simplify_supergraph(p, s), p.scgs[static_cast<std::size_t>(s.witness[0])]);
    }

    // simplify(g;h) = simplify(g);simplify(h) along random call paths
    Rng rng(38);
    std::vector<SctProblem> corpus = fixtures();
    for (int i = 0; i < 40; ++i) corpus.push_back(random_sct(rng, 3, 3));
    for (const auto& q : corpus) {
        BuchiAutomaton fa = flow_automaton(q), da = desc_automaton(q);
        auto seeds = initial_supergraphs(fa, da);
        for (int walk = 0; walk < 10; ++walk) {
            std::uniform_int_distribution<std::size_t> pick(0, seeds.size() - 1);
            Supergraph cur = seeds[pick(rng)];
            SizeChangeGraph expect = simplify_supergraph(q, cur);
            for (int step = 0; step < 6; ++step) {
                std::vector<std::size_t> next;
                for (std::size_t i = 0; i < seeds.size(); ++i)
                    if (seeds[i].from == cur.to) next.push_back(i);
                if (next.empty()) break;
                std::uniform_int_distribution<std::size_t> choose(0, next.size() - 1);
                const Supergraph& s = seeds[next[choose(rng)]];
                cur = supergraph_compose(cur, s);
                expect = scg_compose(expect, simplify_supergraph(q, s));
                ASSERT_EQ(simplify_supergraph(q, cur), expect);
            }
        }
    }
    Supergraph wrong{0, 0, ArcGraph(2, 2), {}, true};
    EXPECT_THROW(simplify_supergraph(p, wrong), std::invalid_argument);
}

TEST(Sct, SubsumptionShrinksTheClosure) {
    bool smaller = false;
    for (const auto& p : fixtures()) {
        SctVerdict exact = ljb_check(p, ljb(false)), sub = ljb_check(p, ljb(true));
        EXPECT_EQ(exact.terminating, sub.terminating);
        if (sub.stats.elements < exact.stats.elements) smaller = true;
    }
    EXPECT_TRUE(smaller);
}

TEST(Sct, PruneUnreachable) {
    SctProblem p;
    int f = p.add_function("f", {"x"});
    int g = p.add_function("g", {"y"});
    int h = p.add_function("h", {"z"});
    p.add_call("c1", f, f);
    p.add_call("c2", h, g);
    p.add_arc(0, 0, 1, 0);
    auto dropped = prune_unreachable(p);
    EXPECT_EQ(dropped, (std::vector<std::string>{"g", "h"}));
    ASSERT_EQ(p.functions.size(), 1u);
    ASSERT_EQ(p.calls.size(), 1u);
    EXPECT_EQ(p.scgs[0].graph.label(0, 0), 1);
    EXPECT_TRUE(prune_unreachable(p).empty());
}

TEST(Sct, ValidateRejectsMalformedProblems) {
    SctProblem p;
    p.add_function("f", {"x", "x"});
    EXPECT_THROW(validate(p), std::invalid_argument);
    SctProblem q;
    int f = q.add_function("f", {"x"});
    q.add_call("c", f, f);
    q.add_call("c", f, f);
    EXPECT_THROW(validate(q), std::invalid_argument);
    SctProblem r;
    r.add_function("f", {"x"});
    r.calls.push_back({"c", 0, 3});
    r.scgs.push_back({0, 3, ArcGraph(1, 1)});
    EXPECT_THROW(ljb_check(r), std::invalid_argument);
}

TEST(Sct, BudgetAborts) {
    LjbOptions o;
    o.budget.set_max_work(3);
    SctVerdict v = ljb_check(load("gadget_4.sct"), o);
    EXPECT_TRUE(v.aborted);
    EXPECT_THROW(scg_closure(load("gadget_4.sct"), o.budget), std::runtime_error);
}
