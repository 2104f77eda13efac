#include "sctkit/graph.hpp"

#include <bit>
#include <stdexcept>

#include "sctkit/kernels.hpp"

namespace sctkit {

ArcGraph::ArcGraph(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(2 * rows * ((cols + 63) / 64), 0) {}

int ArcGraph::label(std::size_t r, std::size_t c) const {
    if (!bit(any_row(r), c)) return -1;
    return bit(one_row(r), c) ? 1 : 0;
}

void ArcGraph::set_arc(std::size_t r, std::size_t c, int label) {
    const std::uint64_t m = std::uint64_t{1} << (c & 63);
    any_row(r)[c >> 6] |= m;
    if (label == 1)
        one_row(r)[c >> 6] |= m;
    else
        one_row(r)[c >> 6] &= ~m;
}

void ArcGraph::add_arc(std::size_t r, std::size_t c, int label) {
    const std::uint64_t m = std::uint64_t{1} << (c & 63);
    any_row(r)[c >> 6] |= m;
    if (label == 1) one_row(r)[c >> 6] |= m;
}

void ArcGraph::remove_arc(std::size_t r, std::size_t c) {
    const std::uint64_t m = ~(std::uint64_t{1} << (c & 63));
    any_row(r)[c >> 6] &= m;
    one_row(r)[c >> 6] &= m;
}

std::size_t ArcGraph::arc_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < rows_ * wpr_; ++i) n += std::popcount(data_[i]);
    return n;
}

std::vector<std::tuple<int, int, int>> ArcGraph::arcs() const {
    std::vector<std::tuple<int, int, int>> out;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            int l = label(r, c);
            if (l >= 0) out.emplace_back(static_cast<int>(r), l, static_cast<int>(c));
        }
    return out;
}

std::size_t ArcGraph::hash() const {
    std::size_t h = (rows_ * 31 + cols_) * 0x9e3779b97f4a7c15ull;
    for (auto x : data_) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::string ArcGraph::to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto [r, l, c] : arcs()) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(r) + (l ? "-1->" : "-0->") + std::to_string(c);
    }
    return s + "}";
}

bool operator==(const ArcGraph& a, const ArcGraph& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           kernels::equal(a.data_.data(), b.data_.data(), a.data_.size());
}

ArcGraph compose(const ArcGraph& g, const ArcGraph& h) {
    if (g.cols() != h.rows()) throw std::invalid_argument("compose: dimension mismatch");
    ArcGraph out(g.rows(), h.cols());
    const std::size_t w = h.row_words();
    const auto& k = kernels::active();
    for (std::size_t q = 0; q < g.rows(); ++q) {
        std::uint64_t* any = out.any_row(q);
        std::uint64_t* one = out.one_row(q);
        const std::uint64_t* ga = g.any_row(q);
        const std::uint64_t* go = g.one_row(q);
        for (std::size_t word = 0; word < g.row_words(); ++word) {
            std::uint64_t bits = ga[word];
            while (bits) {
                std::size_t s = word * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                k.or_into(any, h.any_row(s), w);
                if ((go[word] >> (s & 63)) & 1u)
                    k.or_into(one, h.any_row(s), w);
                else
                    k.or_into(one, h.one_row(s), w);
            }
        }
    }
    return out;
}

ArcGraph compose_reference(const ArcGraph& g, const ArcGraph& h) {
    if (g.cols() != h.rows()) throw std::invalid_argument("compose: dimension mismatch");
    ArcGraph out(g.rows(), h.cols());
    for (std::size_t q = 0; q < g.rows(); ++q)
        for (std::size_t r = 0; r < h.cols(); ++r) {
            bool path = false, one = false;
            for (std::size_t s = 0; s < g.cols(); ++s) {
                int b = g.label(q, s), c = h.label(s, r);
                if (b < 0 || c < 0) continue;
                path = true;
                if (b == 1 || c == 1) one = true;
            }
            if (path) out.set_arc(q, r, one ? 1 : 0);
        }
    return out;
}

bool subsumes(const ArcGraph& g, const ArcGraph& h) {
    if (g.rows() != h.rows() || g.cols() != h.cols()) return false;
    // any_g within any_h and one_g within one_h, in one pass over both halves
    return kernels::subset(g.raw().data(), h.raw().data(), g.raw().size());
}

bool is_idempotent(const ArcGraph& g) { return g.rows() == g.cols() && compose(g, g) == g; }

bool has_one_self_loop(const ArcGraph& g) {
    for (std::size_t r = 0; r < g.rows() && r < g.cols(); ++r)
        if (g.label(r, r) == 1) return true;
    return false;
}

bool scc_counterexample_test(const ArcGraph& g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("scc test needs a square graph");
    const std::size_t n = g.rows(), w = g.row_words();
    // reflexive-transitive closure of the arc relation
    std::vector<std::uint64_t> reach(n * w, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(g.any_row(i), g.any_row(i) + w, reach.begin() + static_cast<std::ptrdiff_t>(i * w));
        reach[i * w + (i >> 6)] |= std::uint64_t{1} << (i & 63);
    }
    const auto& k = kernels::active();
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            if ((reach[i * w + (m >> 6)] >> (m & 63)) & 1u) k.or_into(&reach[i * w], &reach[m * w], w);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r)
            if (g.label(q, r) == 1 && ((reach[r * w + (q >> 6)] >> (q & 63)) & 1u)) return false;
    return true;
}

ArcGraph single_letter_graph(const BuchiAutomaton& b, int symbol) {
    const std::size_t n = b.num_states();
    ArcGraph g(n, n);
    for (std::size_t q = 0; q < n; ++q)
        b.post(static_cast<int>(q), symbol).for_each([&](std::size_t r) {
            bool acc = b.is_accepting(static_cast<int>(q)) || b.is_accepting(static_cast<int>(r));
            g.set_arc(q, r, acc ? 1 : 0);
        });
    return g;
}

ArcGraph graph_of_word(const BuchiAutomaton& b, const Word& w) {
    if (w.empty()) throw std::invalid_argument("graph_of_word needs a nonempty word");
    ArcGraph g = single_letter_graph(b, w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) g = compose(g, single_letter_graph(b, w[i]));
    return g;
}

}  // namespace sctkit
