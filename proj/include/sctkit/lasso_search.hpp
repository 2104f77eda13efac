#pragma once

#include <cstddef>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sctkit/buchi.hpp"

namespace sctkit {

// On-the-fly emptiness check over an implicit state-labelled Buchi graph
// (Couvreur-style SCC search). The space hands out dense node ids and lazy
// successor cursors:
//
//   std::vector<int> roots();
//   bool accepting(int id);
//   Cursor open(int id);
//   bool next(Cursor&, int& symbol, int& target);
//   bool exhausted();   // budget stop, checked once per expansion step
//
// The search stops at the first SCC that closes a cycle through an accepting
// node and reconstructs a lasso from it.
template <class Space>
class LassoSearch {
public:
    explicit LassoSearch(Space& space) : space_(space) {}

    struct Result {
        bool found = false;
        bool aborted = false;
        Lasso lasso;
        std::size_t visited = 0;
    };

    Result run() {
        Result res;
        for (int r : space_.roots()) {
            if (num(r) != 0) continue;
            push(r, -1, -1);
            while (!frames_.empty()) {
                if (space_.exhausted()) {
                    res.aborted = true;
                    res.visited = counter_;
                    return res;
                }
                Frame& top = frames_.back();
                int sym = -1, w = -1;
                if (space_.next(top.cursor, sym, w)) {
                    if (num(w) == 0) {
                        push(w, top.id, sym);
                    } else if (live(w)) {
                        bool acc = false;
                        while (roots_.back().num > num(w)) {
                            acc = acc || roots_.back().acc;
                            roots_.pop_back();
                        }
                        roots_.back().acc = roots_.back().acc || acc;
                        if (roots_.back().acc) {
                            res.found = true;
                            res.lasso = extract(roots_.back().num);
                            res.visited = counter_;
                            return res;
                        }
                    }
                } else {
                    int v = top.id;
                    frames_.pop_back();
                    if (roots_.back().num == num(v)) {
                        roots_.pop_back();
                        while (true) {
                            int x = active_.back();
                            active_.pop_back();
                            dead_[x] = true;
                            if (x == v) break;
                        }
                    }
                }
            }
        }
        res.visited = counter_;
        return res;
    }

private:
    using Cursor = typename Space::Cursor;

    struct Frame {
        int id;
        Cursor cursor;
    };
    struct Root {
        std::size_t num;
        bool acc;
    };

    std::size_t num(int id) const { return static_cast<std::size_t>(id) < num_.size() ? num_[id] : 0; }
    bool live(int id) const { return num(id) != 0 && !dead_[id]; }

    void push(int id, int parent, int sym) {
        if (num_.size() <= static_cast<std::size_t>(id)) {
            std::size_t n = std::max<std::size_t>(static_cast<std::size_t>(id) + 1, num_.size() * 2);
            num_.resize(n, 0);
            dead_.resize(n, false);
            parent_.resize(n, -1);
            parent_sym_.resize(n, -1);
        }
        num_[id] = ++counter_;
        parent_[id] = parent;
        parent_sym_[id] = sym;
        active_.push_back(id);
        roots_.push_back({num_[id], space_.accepting(id)});
        frames_.push_back({id, space_.open(id)});
    }

    Lasso extract(std::size_t root_num) {
        std::unordered_set<int> scc;
        int target = -1;
        for (auto it = active_.rbegin(); it != active_.rend() && num_[*it] >= root_num; ++it) {
            scc.insert(*it);
            if (target < 0 && space_.accepting(*it)) target = *it;
        }
        Lasso out;
        for (int x = target; parent_[x] >= 0; x = parent_[x]) out.prefix.push_back(parent_sym_[x]);
        std::reverse(out.prefix.begin(), out.prefix.end());

        // shortest nonempty cycle target -> target inside the component
        std::unordered_map<int, std::pair<int, int>> pred;
        std::deque<int> queue;
        queue.push_back(target);
        bool closed = false;
        int last = -1, last_sym = -1;
        while (!queue.empty() && !closed) {
            int v = queue.front();
            queue.pop_front();
            Cursor c = space_.open(v);
            int sym, w;
            while (space_.next(c, sym, w)) {
                if (!scc.count(w)) continue;
                if (w == target) {
                    closed = true;
                    last = v;
                    last_sym = sym;
                    break;
                }
                if (!pred.count(w)) {
                    pred[w] = {v, sym};
                    queue.push_back(w);
                }
            }
        }
        out.period.push_back(last_sym);
        for (int x = last; x != target; x = pred[x].first) out.period.push_back(pred[x].second);
        std::reverse(out.period.begin(), out.period.end());
        return out;
    }

    Space& space_;
    std::size_t counter_ = 0;
    std::vector<std::size_t> num_;
    std::vector<bool> dead_;
    std::vector<int> parent_;
    std::vector<int> parent_sym_;
    std::vector<int> active_;
    std::vector<Root> roots_;
    std::vector<Frame> frames_;
};

}  // namespace sctkit
