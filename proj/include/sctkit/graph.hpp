#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "sctkit/buchi.hpp"

namespace sctkit {

// {0,1}-arc-labelled bipartite graph, rows -> cols. Stored as two bit
// matrices: `any` holds every arc, `one` the 1-labelled ones (one is a
// subset of any), so a pair carries at most one label by construction.
class ArcGraph {
public:
    ArcGraph() = default;
    ArcGraph(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t row_words() const { return wpr_; }

    // -1 when there is no arc.
    int label(std::size_t r, std::size_t c) const;
    bool has_arc(std::size_t r, std::size_t c) const { return bit(any_row(r), c); }
    // Sets the arc label exactly.
    void set_arc(std::size_t r, std::size_t c, int label);
    // Adds an arc, keeping the stronger label when one already exists.
    void add_arc(std::size_t r, std::size_t c, int label);
    void remove_arc(std::size_t r, std::size_t c);

    const std::uint64_t* any_row(std::size_t r) const { return data_.data() + r * wpr_; }
    const std::uint64_t* one_row(std::size_t r) const { return data_.data() + (rows_ + r) * wpr_; }
    std::uint64_t* any_row(std::size_t r) { return data_.data() + r * wpr_; }
    std::uint64_t* one_row(std::size_t r) { return data_.data() + (rows_ + r) * wpr_; }
    const std::vector<std::uint64_t>& raw() const { return data_; }

    std::size_t arc_count() const;
    // (row, label, col) triples in row-major order.
    std::vector<std::tuple<int, int, int>> arcs() const;
    std::size_t hash() const;
    std::string to_string() const;

    friend bool operator==(const ArcGraph& a, const ArcGraph& b);
    friend bool operator!=(const ArcGraph& a, const ArcGraph& b) { return !(a == b); }

private:
    static bool bit(const std::uint64_t* row, std::size_t c) { return (row[c >> 6] >> (c & 63)) & 1u; }

    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

struct ArcGraphHash {
    std::size_t operator()(const ArcGraph& g) const { return g.hash(); }
};

// g;h. An arc (q,1,r) exists iff some q->s->r path through g then h carries a
// 1; (q,0,r) iff a path exists and none of them carries a 1.
ArcGraph compose(const ArcGraph& g, const ArcGraph& h);

// Reference composition straight from the definition; used by tests.
ArcGraph compose_reference(const ArcGraph& g, const ArcGraph& h);

// g approximates h: every (q,a,r) of g has (q,a',r) in h with a <= a'.
bool subsumes(const ArcGraph& g, const ArcGraph& h);

bool is_idempotent(const ArcGraph& g);
bool has_one_self_loop(const ArcGraph& g);

// Square graphs only. True iff no 1-labelled arc has both endpoints in the
// same strongly connected component; an acyclic graph is a counterexample.
bool scc_counterexample_test(const ArcGraph& g);

// Arc (q,1,r) iff r in rho(q,a) and q or r accepting; (q,0,r) otherwise.
ArcGraph single_letter_graph(const BuchiAutomaton& b, int symbol);

// The graph describing the nonempty word w: left fold of single-letter graphs.
ArcGraph graph_of_word(const BuchiAutomaton& b, const Word& w);

}  // namespace sctkit
