#include "sctkit/rank.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "sctkit/lasso_search.hpp"

namespace sctkit {

bool is_level_ranking(const BuchiAutomaton& b, const LevelRanking& f, int max_rank) {
    if (f.size() != b.num_states()) return false;
    for (std::size_t q = 0; q < f.size(); ++q) {
        if (f[q] == kBottom) continue;
        if (f[q] < 0 || f[q] > max_rank) return false;
        if (b.is_accepting(static_cast<int>(q)) && f[q] % 2 != 0) return false;
    }
    return true;
}

bool covers(const LevelRanking& f, const LevelRanking& f2, int symbol, const BuchiAutomaton& b) {
    for (std::size_t q = 0; q < f.size(); ++q) {
        if (f[q] == kBottom) continue;
        bool ok = true;
        b.post(static_cast<int>(q), symbol).for_each([&](std::size_t r) {
            if (f2[r] == kBottom || f2[r] > f[q]) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

int default_rank_bound(const BuchiAutomaton& b) {
    if (is_reverse_deterministic(b)) return 2;
    // A lone non-accepting cycle needs rank 1, which 2n-2 misses at n = 1.
    return std::max(1, 2 * static_cast<int>(b.num_states()) - 2);
}

namespace {

int top_rank(bool accepting, int max_rank) { return accepting && max_rank % 2 ? max_rank - 1 : max_rank; }

// Preference order for a state's rank under a bound: odd values first (they
// discharge obligations), high before low. Accepting states only take evens.
std::vector<int> rank_choices(bool accepting, int bound) {
    std::vector<int> out;
    if (!accepting)
        for (int v = bound; v >= 0; --v)
            if (v % 2) out.push_back(v);
    for (int v = bound; v >= 0; --v)
        if (v % 2 == 0) out.push_back(v);
    return out;
}

}  // namespace

KvState kv_initial(const BuchiAutomaton& b, int max_rank) {
    KvState s{LevelRanking(b.num_states(), kBottom), Bits(b.num_states())};
    b.initial().for_each([&](std::size_t q) { s.f[q] = top_rank(b.is_accepting(static_cast<int>(q)), max_rank); });
    for (std::size_t q = 0; q < s.f.size(); ++q)
        if (s.f[q] < 0 && b.is_initial(static_cast<int>(q))) s.f[q] = kBottom;
    return s;
}

std::vector<KvState> kv_successors(const BuchiAutomaton& b, const KvState& s, int symbol, int max_rank) {
    const std::size_t n = b.num_states();
    std::vector<int> bound(n, -1);
    for (std::size_t q = 0; q < n; ++q) {
        if (s.f[q] == kBottom) continue;
        b.post(static_cast<int>(q), symbol).for_each([&](std::size_t r) {
            bound[r] = bound[r] < 0 ? s.f[q] : std::min(bound[r], s.f[q]);
        });
    }
    std::vector<int> reached;
    std::vector<std::vector<int>> choices;
    for (std::size_t r = 0; r < n; ++r) {
        if (bound[r] < 0) continue;
        reached.push_back(static_cast<int>(r));
        choices.push_back(rank_choices(b.is_accepting(static_cast<int>(r)), std::min(bound[r], max_rank)));
        if (choices.back().empty()) return {};
    }
    std::vector<KvState> out;
    std::vector<std::size_t> idx(reached.size(), 0);
    while (true) {
        KvState t{LevelRanking(n, kBottom), Bits(n)};
        for (std::size_t i = 0; i < reached.size(); ++i) t.f[reached[i]] = choices[i][idx[i]];
        if (s.o.any()) {
            t.o = lift(b, s.o, symbol);
            for (std::size_t r = 0; r < n; ++r)
                if (t.f[r] != kBottom && t.f[r] % 2) t.o.reset(r);
        } else {
            for (std::size_t r = 0; r < n; ++r)
                if (t.f[r] != kBottom && t.f[r] % 2 == 0) t.o.set(r);
        }
        out.push_back(std::move(t));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

std::string format_kv_state(const BuchiAutomaton& b, const KvState& s) {
    std::string out = "[";
    for (std::size_t q = 0; q < s.f.size(); ++q) {
        if (q) out += ',';
        out += s.f[q] == kBottom ? std::string("_") : std::to_string(s.f[q]);
    }
    out += "]{";
    bool first = true;
    s.o.for_each([&](std::size_t q) {
        if (!first) out += ',';
        first = false;
        out += b.state_name(static_cast<int>(q));
    });
    return out + "}";
}

BuchiAutomaton kv_complement(const BuchiAutomaton& b, int max_rank, std::size_t max_states) {
    if (max_rank < 0) throw std::invalid_argument("max rank must be nonnegative");
    std::vector<KvState> states;
    std::unordered_map<std::string, int> ids;
    std::vector<std::tuple<int, int, int>> edges;
    auto intern = [&](KvState s) {
        std::string key = format_kv_state(b, s);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (max_states && states.size() >= max_states) throw std::runtime_error("complement exceeds state cap");
        int id = static_cast<int>(states.size());
        ids.emplace(std::move(key), id);
        states.push_back(std::move(s));
        return id;
    };
    intern(kv_initial(b, max_rank));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t a = 0; a < b.num_symbols(); ++a)
            for (auto& t : kv_successors(b, states[i], static_cast<int>(a), max_rank))
                edges.emplace_back(static_cast<int>(i), static_cast<int>(a), intern(std::move(t)));
    std::vector<std::string> names;
    for (const auto& s : states) names.push_back(format_kv_state(b, s));
    BuchiAutomaton out(b.alphabet(), names);
    out.set_initial(0);
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].o.none()) out.set_accepting(static_cast<int>(i));
    for (auto [p, a, q] : edges) out.add_transition(p, a, q);
    return out;
}

namespace {

constexpr std::uint8_t kBot = 0xFF;
using Mask = std::uint64_t;

// B in mask form. States are limited to 64 so every set is one word.
struct MaskAutomaton {
    int n = 0;
    int k = 0;
    Mask accepting = 0;
    Mask initial = 0;
    std::vector<Mask> post;  // [q * k + a]
    std::vector<Mask> pre;   // [r * k + a]

    explicit MaskAutomaton(const BuchiAutomaton& b)
        : n(static_cast<int>(b.num_states())), k(static_cast<int>(b.num_symbols())) {
        if (n > 64) throw std::invalid_argument("rank engine supports at most 64 states in the complemented automaton");
        post.assign(static_cast<std::size_t>(n * k), 0);
        pre.assign(static_cast<std::size_t>(n * k), 0);
        for (int q = 0; q < n; ++q) {
            if (b.is_accepting(q)) accepting |= Mask{1} << q;
            if (b.is_initial(q)) initial |= Mask{1} << q;
            for (int a = 0; a < k; ++a)
                b.post(q, a).for_each([&](std::size_t r) {
                    post[static_cast<std::size_t>(q * k + a)] |= Mask{1} << r;
                    pre[static_cast<std::size_t>(static_cast<int>(r) * k + a)] |= Mask{1} << q;
                });
        }
    }
    Mask succ(Mask d, int a) const {
        Mask out = 0;
        for (Mask x = d; x; x &= x - 1) out |= post[static_cast<std::size_t>(std::countr_zero(x) * k + a)];
        return out;
    }
    Mask preds(Mask d, int a) const {
        Mask out = 0;
        for (Mask x = d; x; x &= x - 1) out |= pre[static_cast<std::size_t>(std::countr_zero(x) * k + a)];
        return out;
    }
    bool acc(int q) const { return (accepting >> q) & 1u; }
};

struct Kv {
    std::vector<std::uint8_t> f;  // kBot outside dom
    Mask dom = 0;
    Mask o = 0;
};

// s is below t: dom t within dom s, f_s <= f_t on dom t, o_t within o_s.
// The larger element has a language at least as large.
bool kv_le(const Kv& s, const Kv& t) {
    if ((t.dom & ~s.dom) || (t.o & ~s.o)) return false;
    for (Mask x = t.dom; x; x &= x - 1) {
        int q = std::countr_zero(x);
        if (s.f[static_cast<std::size_t>(q)] > t.f[static_cast<std::size_t>(q)]) return false;
    }
    return true;
}

std::string kv_key(const Kv& s) {
    std::string key(reinterpret_cast<const char*>(s.f.data()), s.f.size());
    key.append(reinterpret_cast<const char*>(&s.o), sizeof(Mask));
    return key;
}

Mask odd_mask(const std::vector<std::uint8_t>& f, Mask dom) {
    Mask m = 0;
    for (Mask x = dom; x; x &= x - 1) {
        int q = std::countr_zero(x);
        if (f[static_cast<std::size_t>(q)] % 2) m |= Mask{1} << q;
    }
    return m;
}

// A minimal predecessor candidate together with the successor ranking it
// moves to (needed to replay witnesses).
struct Cand {
    Kv s;
    std::vector<std::uint8_t> t;
};

// Minimal KV states s with s -a-> t for some t above x, split by whether s has
// an empty obligation set (with_empty) or not (with_obl).
void kv_pre(const MaskAutomaton& m, int max_rank, const Kv& x, int a, std::vector<Cand>& with_empty,
            std::vector<Cand>& with_obl) {
    const int n = m.n;
    with_empty.clear();
    with_obl.clear();
    Mask dmax = 0;
    for (int q = 0; q < n; ++q)
        if ((m.post[static_cast<std::size_t>(q * m.k + a)] & ~x.dom) == 0) dmax |= Mask{1} << q;
    const Mask reach = m.succ(dmax, a);
    std::vector<int> flip;
    for (Mask y = reach; y; y &= y - 1) {
        int r = std::countr_zero(y);
        std::uint8_t h = x.f[static_cast<std::size_t>(r)];
        if (h % 2 == 0 && !((x.o >> r) & 1u) && !m.acc(r) && h + 1 <= max_rank) flip.push_back(r);
    }
    if (flip.size() > 20) throw std::runtime_error("rank predecessor enumeration too wide");
    std::vector<std::uint8_t> g(x.f);
    for (std::uint32_t sub = 0; sub < (1u << flip.size()); ++sub) {
        for (std::size_t i = 0; i < flip.size(); ++i)
            g[static_cast<std::size_t>(flip[i])] =
                static_cast<std::uint8_t>(x.f[static_cast<std::size_t>(flip[i])] + ((sub >> i) & 1u));
        const Mask odd = odd_mask(g, x.dom);
        std::vector<std::uint8_t> f(static_cast<std::size_t>(n), kBot);
        Mask feasible = 0;
        for (Mask y = dmax; y; y &= y - 1) {
            int q = std::countr_zero(y);
            int v = 0;
            for (Mask z = m.post[static_cast<std::size_t>(q * m.k + a)]; z; z &= z - 1)
                v = std::max<int>(v, g[static_cast<std::size_t>(std::countr_zero(z))]);
            if (m.acc(q) && v % 2) ++v;
            if (v > max_rank) continue;
            f[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(v);
            feasible |= Mask{1} << q;
        }
        auto emit = [&](Mask dom, Mask o, std::vector<Cand>& out) {
            Cand c;
            c.s.f.assign(static_cast<std::size_t>(n), kBot);
            for (Mask y = dom; y; y &= y - 1) {
                int q = std::countr_zero(y);
                c.s.f[static_cast<std::size_t>(q)] = f[static_cast<std::size_t>(q)];
            }
            c.s.dom = dom;
            c.s.o = o;
            Mask tdom = m.succ(dom, a);
            c.t.assign(static_cast<std::size_t>(n), kBot);
            for (Mask y = tdom; y; y &= y - 1) {
                int r = std::countr_zero(y);
                c.t[static_cast<std::size_t>(r)] = g[static_cast<std::size_t>(r)];
            }
            out.push_back(std::move(c));
        };
        // nonempty obligation: every successor of an obliged state is odd or still obliged in x
        Mask obl = 0;
        for (Mask y = feasible; y; y &= y - 1) {
            int q = std::countr_zero(y);
            if ((m.post[static_cast<std::size_t>(q * m.k + a)] & ~odd & ~x.o) == 0) obl |= Mask{1} << q;
        }
        if (obl) emit(feasible, obl, with_obl);
        // empty obligation: the successor's even states must all be obliged in x
        const Mask bad = x.dom & ~odd & ~x.o;
        emit(feasible & ~m.preds(bad, a), 0, with_empty);
    }
    auto reduce = [](std::vector<Cand>& v) {
        std::vector<bool> dominated(v.size(), false);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size() && !dominated[i]; ++j) {
                if (i == j || !kv_le(v[j].s, v[i].s)) continue;
                // strictly below, or equal with a lower index
                if (!kv_le(v[i].s, v[j].s) || j < i) dominated[i] = true;
            }
        std::vector<Cand> keep;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!dominated[i]) keep.push_back(std::move(v[i]));
        v.swap(keep);
    };
    reduce(with_empty);
    reduce(with_obl);
}

// Backward nested fixpoint over (A-state, phase, KV-state) with upward-closed
// sets kept as antichains of minimal elements. Phase 1 waits for an accepting
// A-state, phase 2 for an empty obligation set; (.,2,o=0) is accepting.
class AntichainSearch {
public:
    AntichainSearch(const BuchiAutomaton& a, const BuchiAutomaton& b, int max_rank, const RankOptions& opts)
        : a_(a), m_(b), max_rank_(max_rank), opts_(opts) {}

    RankVerdict run() {
        RankVerdict v;
        v.max_rank = max_rank_;
        const int na = static_cast<int>(a_.num_states());
        pre_a_.assign(static_cast<std::size_t>(na * m_.k), {});
        for (int p = 0; p < na; ++p)
            for (int s = 0; s < m_.k; ++s)
                a_.post(p, s).for_each([&](std::size_t r) {
                    pre_a_[static_cast<std::size_t>(static_cast<int>(r) * m_.k + s)].push_back(p);
                });

        Kv bottom;
        bottom.f.assign(static_cast<std::size_t>(m_.n), 0);
        bottom.dom = m_.n == 64 ? ~Mask{0} : (Mask{1} << m_.n) - 1;
        bottom.o = bottom.dom;
        Chains y = empty_chains();
        for (int p = 0; p < na; ++p)
            for (int ph = 0; ph < 2; ++ph) y[chain(p, ph)].push_back(new_node(p, ph + 1, bottom, -1, -1, false, {}));

        init_kv_.f.assign(static_cast<std::size_t>(m_.n), kBot);
        for (Mask x = m_.initial; x; x &= x - 1) {
            int q = std::countr_zero(x);
            init_kv_.f[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(top_rank(m_.acc(q), max_rank_));
        }
        init_kv_.dom = m_.initial;

        while (true) {
            ++v.stats.iterations;
            Chains x = empty_chains();
            std::deque<int> work;
            std::vector<Cand> empty, obl;
            for (const auto& c : y)
                for (int id : c) {
                    if (pool_[static_cast<std::size_t>(id)].ph != 1) continue;
                    for (int s = 0; s < m_.k; ++s) {
                        const auto& preds = pre_a_[static_cast<std::size_t>(pool_[static_cast<std::size_t>(id)].a * m_.k + s)];
                        if (preds.empty()) continue;
                        kv_pre(m_, max_rank_, pool_[static_cast<std::size_t>(id)].kv, s, empty, obl);
                        note_width(v, empty.size() + obl.size());
                        for (int p : preds)
                            for (auto& c2 : empty) insert(x, work, p, 2, c2, s, id, true);
                    }
                }
            while (!work.empty()) {
                if (opts_.budget.expired(pool_.size())) {
                    v.aborted = true;
                    v.holds = false;
                    v.stats.work = pool_.size();
                    return v;
                }
                int id = work.front();
                work.pop_front();
                if (!alive_[static_cast<std::size_t>(id)]) continue;
                const int tph = pool_[static_cast<std::size_t>(id)].ph;
                for (int s = 0; s < m_.k; ++s) {
                    const auto& preds = pre_a_[static_cast<std::size_t>(pool_[static_cast<std::size_t>(id)].a * m_.k + s)];
                    if (preds.empty()) continue;
                    kv_pre(m_, max_rank_, pool_[static_cast<std::size_t>(id)].kv, s, empty, obl);
                    note_width(v, empty.size() + obl.size());
                    for (int p : preds) {
                        if ((a_.is_accepting(p) ? 2 : 1) == tph) {
                            for (auto& c : empty) insert(x, work, p, 1, c, s, id, false);
                            for (auto& c : obl) insert(x, work, p, 1, c, s, id, false);
                        }
                        for (auto& c : tph == 1 ? empty : obl) insert(x, work, p, 2, c, s, id, false);
                    }
                }
            }
            for (const auto& c : x) v.stats.max_antichain = std::max(v.stats.max_antichain, c.size());

            int start = -1, start_a = -1;
            for (int p = 0; p < na && start < 0; ++p) {
                if (!a_.is_initial(p)) continue;
                for (int id : x[chain(p, 0)])
                    if (kv_le(pool_[static_cast<std::size_t>(id)].kv, init_kv_)) {
                        start = id;
                        start_a = p;
                        break;
                    }
            }
            if (start < 0) {
                v.holds = true;
                break;
            }
            bool stable = true;
            for (std::size_t c = 0; c < y.size() && stable; ++c)
                for (int yid : y[c])
                    if (below(x[c], pool_[static_cast<std::size_t>(yid)].kv) < 0) {
                        stable = false;
                        break;
                    }
            if (stable) {
                v.holds = false;
                if (opts_.track_witness) {
                    v.lasso = replay(x, start, start_a);
                    v.has_lasso = true;
                }
                break;
            }
            y = std::move(x);
        }
        v.stats.work = pool_.size();
        return v;
    }

private:
    using Chains = std::vector<std::vector<int>>;

    struct Node {
        int a;
        int ph;
        Kv kv;
        int sym;
        int succ;
        bool succ_prev;  // succ lives in the previous outer round
        std::vector<std::uint8_t> t;
    };

    Chains empty_chains() const { return Chains(a_.num_states() * 2); }
    std::size_t chain(int p, int ph0) const { return static_cast<std::size_t>(p * 2 + ph0); }

    int new_node(int p, int ph, Kv kv, int sym, int succ, bool prev, std::vector<std::uint8_t> t) {
        pool_.push_back(Node{p, ph, std::move(kv), sym, succ, prev, std::move(t)});
        alive_.push_back(true);
        return static_cast<int>(pool_.size() - 1);
    }

    void note_width(RankVerdict& v, std::size_t w) { v.stats.max_pre_width = std::max(v.stats.max_pre_width, w); }

    int below(const std::vector<int>& c, const Kv& t) const {
        for (int id : c)
            if (kv_le(pool_[static_cast<std::size_t>(id)].kv, t)) return id;
        return -1;
    }

    void insert(Chains& x, std::deque<int>& work, int p, int ph, const Cand& c, int sym, int succ, bool prev) {
        auto& ch = x[chain(p, ph - 1)];
        if (below(ch, c.s) >= 0) return;
        std::erase_if(ch, [&](int id) {
            if (kv_le(c.s, pool_[static_cast<std::size_t>(id)].kv)) {
                alive_[static_cast<std::size_t>(id)] = false;
                return true;
            }
            return false;
        });
        int id = new_node(p, ph, c.s, sym, succ, prev, c.t);
        ch.push_back(id);
        work.push_back(id);
    }

    // Follows the derivation pointers from the start element while driving a
    // concrete product run from the initial state; the run is periodic once a
    // (run state, element) pair repeats.
    Lasso replay(const Chains& x, int start, int start_a) {
        struct Run {
            int a;
            int ph;
            Kv kv;
        } d{start_a, 1, init_kv_};
        int e = start;
        std::map<std::string, std::size_t> seen;
        Word word;
        while (true) {
            std::string key = kv_key(d.kv) + '|' + std::to_string(d.a) + '|' + std::to_string(d.ph) + '|' + std::to_string(e);
            auto [it, fresh] = seen.emplace(key, word.size());
            if (!fresh) {
                Lasso l;
                l.prefix.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(it->second));
                l.period.assign(word.begin() + static_cast<std::ptrdiff_t>(it->second), word.end());
                return l;
            }
            const Node& node = pool_[static_cast<std::size_t>(e)];
            const int s = node.sym;
            int next = node.succ;
            const Node& target = pool_[static_cast<std::size_t>(next)];
            if (node.succ_prev) next = below(x[chain(target.a, target.ph - 1)], target.kv);
            Run nd;
            nd.a = target.a;
            nd.ph = d.ph == 1 ? (a_.is_accepting(d.a) ? 2 : 1) : (d.kv.o == 0 ? 1 : 2);
            nd.kv.dom = m_.succ(d.kv.dom, s);
            nd.kv.f.assign(static_cast<std::size_t>(m_.n), kBot);
            for (Mask y = nd.kv.dom; y; y &= y - 1) {
                int r = std::countr_zero(y);
                nd.kv.f[static_cast<std::size_t>(r)] = node.t[static_cast<std::size_t>(r)];
            }
            const Mask odd = odd_mask(nd.kv.f, nd.kv.dom);
            nd.kv.o = d.kv.o ? (m_.succ(d.kv.o, s) & ~odd) : (nd.kv.dom & ~odd);
            word.push_back(s);
            d = std::move(nd);
            e = next;
        }
    }

    const BuchiAutomaton& a_;
    MaskAutomaton m_;
    int max_rank_;
    const RankOptions& opts_;
    std::vector<std::vector<int>> pre_a_;
    std::vector<Node> pool_;
    std::vector<bool> alive_;
    Kv init_kv_;
};

// Forward search of the explicit product A x KV(B) with the two-phase
// counter, successors generated lazily.
class ForwardSpace {
public:
    ForwardSpace(const BuchiAutomaton& a, const BuchiAutomaton& b, int max_rank, const RankOptions& opts)
        : a_(a), m_(b), max_rank_(max_rank), opts_(opts) {}

    struct Cursor {
        int id;
        int sym = -1;
        std::vector<int> a_succ;
        std::size_t a_pos = 0;
        std::vector<int> reached;
        std::vector<std::vector<std::uint8_t>> choices;
        std::vector<std::size_t> idx;
        bool has_kv = false;
        bool done_kv = true;
        Kv cur;
    };

    std::vector<int> roots() {
        std::vector<int> out;
        Kv kv;
        kv.f.assign(static_cast<std::size_t>(m_.n), kBot);
        for (Mask x = m_.initial; x; x &= x - 1) {
            int q = std::countr_zero(x);
            kv.f[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(top_rank(m_.acc(q), max_rank_));
        }
        kv.dom = m_.initial;
        for (std::size_t p = 0; p < a_.num_states(); ++p)
            if (a_.is_initial(static_cast<int>(p))) out.push_back(intern(static_cast<int>(p), 1, kv));
        return out;
    }
    bool accepting(int id) const {
        const auto& s = states_[static_cast<std::size_t>(id)];
        return s.ph == 2 && s.kv.o == 0;
    }
    Cursor open(int id) const {
        Cursor c;
        c.id = id;
        return c;
    }
    bool exhausted() const { return opts_.budget.expired(states_.size()); }

    bool next(Cursor& c, int& symbol, int& target) {
        while (true) {
            if (c.has_kv && c.a_pos < c.a_succ.size()) {
                const auto& src = states_[static_cast<std::size_t>(c.id)];
                int ph = src.ph == 1 ? (a_.is_accepting(src.a) ? 2 : 1) : (src.kv.o == 0 ? 1 : 2);
                symbol = c.sym;
                target = intern(c.a_succ[c.a_pos++], ph, c.cur);
                return true;
            }
            if (!advance_kv(c)) {
                // next symbol
                ++c.sym;
                if (c.sym >= m_.k) return false;
                const auto& src = states_[static_cast<std::size_t>(c.id)];
                c.a_succ = a_.post(src.a, c.sym).to_vector();
                c.has_kv = false;
                if (c.a_succ.empty()) continue;
                start_kv(c);
            }
        }
    }

    std::size_t size() const { return states_.size(); }

private:
    struct State {
        int a;
        int ph;
        Kv kv;
    };

    void start_kv(Cursor& c) {
        const auto& src = states_[static_cast<std::size_t>(c.id)].kv;
        std::vector<int> bound(static_cast<std::size_t>(m_.n), -1);
        for (Mask x = src.dom; x; x &= x - 1) {
            int q = std::countr_zero(x);
            for (Mask y = m_.post[static_cast<std::size_t>(q * m_.k + c.sym)]; y; y &= y - 1) {
                int r = std::countr_zero(y);
                int fq = src.f[static_cast<std::size_t>(q)];
                bound[static_cast<std::size_t>(r)] = bound[static_cast<std::size_t>(r)] < 0 ? fq : std::min(bound[static_cast<std::size_t>(r)], fq);
            }
        }
        c.reached.clear();
        c.choices.clear();
        for (int r = 0; r < m_.n; ++r) {
            if (bound[static_cast<std::size_t>(r)] < 0) continue;
            auto ch = rank_choices(m_.acc(r), std::min(bound[static_cast<std::size_t>(r)], max_rank_));
            if (ch.empty()) {
                c.done_kv = true;
                c.has_kv = false;
                return;
            }
            c.reached.push_back(r);
            c.choices.emplace_back(ch.begin(), ch.end());
        }
        c.idx.assign(c.reached.size(), 0);
        c.done_kv = false;
        load(c);
    }

    void load(Cursor& c) {
        const auto& src = states_[static_cast<std::size_t>(c.id)].kv;
        c.cur.f.assign(static_cast<std::size_t>(m_.n), kBot);
        c.cur.dom = 0;
        for (std::size_t i = 0; i < c.reached.size(); ++i) {
            c.cur.f[static_cast<std::size_t>(c.reached[i])] = c.choices[i][c.idx[i]];
            c.cur.dom |= Mask{1} << c.reached[i];
        }
        const Mask odd = odd_mask(c.cur.f, c.cur.dom);
        c.cur.o = src.o ? (m_.succ(src.o, c.sym) & ~odd) : (c.cur.dom & ~odd);
        c.has_kv = true;
        c.a_pos = 0;
    }

    bool advance_kv(Cursor& c) {
        if (c.done_kv || !c.has_kv) return false;
        std::size_t i = 0;
        while (i < c.idx.size() && ++c.idx[i] == c.choices[i].size()) c.idx[i++] = 0;
        if (i == c.idx.size()) {
            c.done_kv = true;
            c.has_kv = false;
            return false;
        }
        load(c);
        return true;
    }

    int intern(int a, int ph, const Kv& kv) {
        std::string key = kv_key(kv);
        key += static_cast<char>(ph);
        key.append(reinterpret_cast<const char*>(&a), sizeof a);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(states_.size());
        ids_.emplace(std::move(key), id);
        states_.push_back(State{a, ph, kv});
        return id;
    }

    const BuchiAutomaton& a_;
    MaskAutomaton m_;
    int max_rank_;
    const RankOptions& opts_;
    std::vector<State> states_;
    std::unordered_map<std::string, int> ids_;
};

}  // namespace

RankVerdict rank_containment(const BuchiAutomaton& a, const BuchiAutomaton& b_in, const RankOptions& opts) {
    const BuchiAutomaton b = align_alphabet(b_in, a.alphabet());
    const int max_rank = opts.max_rank >= 0 ? opts.max_rank : default_rank_bound(b);
    if (opts.subsumption) {
        AntichainSearch search(a, b, max_rank, opts);
        return search.run();
    }
    ForwardSpace space(a, b, max_rank, opts);
    LassoSearch<ForwardSpace> search(space);
    auto r = search.run();
    RankVerdict v;
    v.max_rank = max_rank;
    v.stats.work = r.visited;
    if (r.aborted) {
        v.aborted = true;
        v.holds = false;
        return v;
    }
    v.holds = !r.found;
    if (r.found) {
        v.has_lasso = true;
        v.lasso = std::move(r.lasso);
    }
    return v;
}

RankVerdict rank_universality(const BuchiAutomaton& b, const RankOptions& opts) {
    RankOptions o = opts;
    if (o.max_rank < 0) o.max_rank = default_rank_bound(b);
    return rank_containment(universal_automaton(b.alphabet()), b, o);
}

}  // namespace sctkit
