#pragma once

#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "sctkit/ramsey.hpp"

namespace sctkit::detail {

// Closure of a set of supergraphs under composition. With subsumption on,
// only the approximating (smaller) member of a comparable pair with equal
// arcs is kept. on_insert sees every element that enters the closure and
// returns true to stop the search.
class Closure {
public:
    Closure(std::size_t num_a_states, bool subsumption, bool track_witness, const Budget& budget)
        : by_from_(num_a_states), by_to_(num_a_states), subsumption_(subsumption),
          track_witness_(track_witness), budget_(budget) {}

    std::function<bool(int)> on_insert;

    bool run(std::vector<Supergraph> seeds) {
        for (auto& s : seeds) {
            if (!track_witness_) s.witness.clear(), s.witness_valid = false;
            if (add(std::move(s))) return true;
        }
        while (!work_.empty()) {
            if (budget_.expired(alive_count_)) {
                aborted_ = true;
                return false;
            }
            int x = work_.front();
            work_.pop_front();
            if (!alive_[x]) continue;
            std::vector<int> right = by_from_[elems_[x].to];
            for (int y : right) {
                if (!alive_[x]) break;
                if (!alive_[y]) continue;
                ++stats_.compositions;
                if (add(supergraph_compose(elems_[x], elems_[y]))) return true;
            }
            std::vector<int> left = by_to_[elems_[x].from];
            for (int y : left) {
                if (!alive_[x]) break;
                if (!alive_[y]) continue;
                ++stats_.compositions;
                if (add(supergraph_compose(elems_[y], elems_[x]))) return true;
            }
        }
        return false;
    }

    const Supergraph& at(int i) const { return elems_[i]; }
    bool alive(int i) const { return alive_[i]; }
    bool aborted() const { return aborted_; }
    ClosureStats stats() const {
        ClosureStats s = stats_;
        s.elements = alive_count_;
        return s;
    }
    template <class F>
    void for_each_alive(F&& f) const {
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (alive_[i]) f(static_cast<int>(i));
    }

private:
    using ArcKey = std::pair<int, int>;

    bool add(Supergraph&& sg) {
        if (!track_witness_) sg.witness_valid = false;
        ArcKey key{sg.from, sg.to};
        auto& peers = by_arc_[key];
        if (subsumption_) {
            for (int k : peers)
                if (subsumes(elems_[k].graph, sg.graph)) {
                    ++stats_.discarded;
                    return false;
                }
            std::vector<int> keep;
            for (int k : peers) {
                if (subsumes(sg.graph, elems_[k].graph)) {
                    kill(k);
                    ++stats_.discarded;
                } else {
                    keep.push_back(k);
                }
            }
            peers.swap(keep);
        } else {
            auto& bucket = by_hash_[hash_of(sg)];
            for (int k : bucket)
                if (elems_[k].graph == sg.graph && elems_[k].from == sg.from && elems_[k].to == sg.to)
                    return false;
            bucket.push_back(static_cast<int>(elems_.size()));
        }
        int id = static_cast<int>(elems_.size());
        by_arc_[key].push_back(id);
        by_from_[sg.from].push_back(id);
        by_to_[sg.to].push_back(id);
        elems_.push_back(std::move(sg));
        alive_.push_back(true);
        ++alive_count_;
        work_.push_back(id);
        return on_insert && on_insert(id);
    }

    void kill(int k) {
        alive_[k] = false;
        --alive_count_;
        auto drop = [k](std::vector<int>& v) { std::erase(v, k); };
        drop(by_from_[elems_[k].from]);
        drop(by_to_[elems_[k].to]);
    }

    static std::size_t hash_of(const Supergraph& sg) {
        return sg.graph.hash() ^ (static_cast<std::size_t>(sg.from) * 0x9e3779b1u + static_cast<std::size_t>(sg.to));
    }

    std::vector<Supergraph> elems_;
    std::vector<bool> alive_;
    std::size_t alive_count_ = 0;
    std::deque<int> work_;
    std::vector<std::vector<int>> by_from_, by_to_;
    std::map<ArcKey, std::vector<int>> by_arc_;
    std::unordered_map<std::size_t, std::vector<int>> by_hash_;
    bool subsumption_;
    bool track_witness_;
    const Budget& budget_;
    bool aborted_ = false;
    ClosureStats stats_;
};

}  // namespace sctkit::detail
