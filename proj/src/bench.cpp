#include "sctkit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sctkit/formats.hpp"
#include "sctkit/mcs.hpp"
#include "sctkit/ramsey.hpp"
#include "sctkit/rank.hpp"

namespace sctkit {

const std::vector<std::string>& bench_engines() {
    static const std::vector<std::string> engines{"ljb-exact", "ljb-subsume", "ramsey-dgs", "ramsey-sgs", "rank", "rank-r2"};
    return engines;
}

BenchRecord run_bench_cell(const std::string& name, const SctProblem& p, const std::string& engine, long timeout_ms) {
    BenchRecord rec{name, engine, "-", 0, 0, false};
    Budget budget = timeout_ms > 0 ? Budget::millis(timeout_ms) : Budget::unlimited();
    const auto t0 = std::chrono::steady_clock::now();
    bool holds = false, aborted = false;
    if (engine == "ljb-exact" || engine == "ljb-subsume") {
        LjbOptions o;
        o.subsumption = engine == "ljb-subsume";
        o.track_witness = false;
        o.budget = budget;
        SctVerdict v = ljb_check(p, o);
        holds = v.terminating;
        aborted = v.aborted;
        rec.work = v.stats.work();
    } else if (engine == "ramsey-dgs" || engine == "ramsey-sgs") {
        const BuchiAutomaton flow = flow_automaton(p), desc = desc_automaton_optimized(p);
        RamseyOptions o;
        o.track_witness = false;
        o.preconditions_asserted = true;
        o.budget = budget;
        ContainmentVerdict v = engine == "ramsey-dgs" ? dgs_containment(flow, desc, o) : sgs_containment(flow, desc, o);
        holds = v.contained;
        aborted = v.aborted;
        rec.work = v.stats.work();
    } else if (engine == "rank" || engine == "rank-r2") {
        const BuchiAutomaton flow = flow_automaton(p), desc = desc_automaton_optimized(p);
        RankOptions o;
        o.track_witness = false;
        o.budget = budget;
        // rank 2 is only complete for reverse-deterministic problems
        if (engine == "rank-r2" && sct_is_reverse_deterministic(p)) o.max_rank = 2;
        RankVerdict v = rank_containment(flow, desc, o);
        holds = v.holds;
        aborted = v.aborted;
        rec.work = v.stats.work;
    } else {
        throw std::invalid_argument("unknown engine " + engine);
    }
    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (aborted)
        rec.timeout = true;
    else
        rec.verdict = holds ? "terminating" : "nonterminating";
    return rec;
}

std::vector<BenchProblem> load_bench_dir(const std::string& dir, std::vector<std::string>* warnings) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && (e.path().extension() == ".sct" || e.path().extension() == ".mcs"))
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<BenchProblem> out;
    for (const auto& f : files) {
        const std::string text = read_file(f.string());
        BenchProblem bp{f.filename().string(), {}};
        if (f.extension() == ".sct") {
            bp.problem = parse_sct(text);
        } else {
            McsProjection pr = mcs_to_sct(parse_mcs(text), ImpliedArcs::Full);
            bp.problem = std::move(pr.problem);
            if (warnings)
                for (auto& w : pr.warnings) warnings->push_back(bp.name + ": " + w);
        }
        auto dropped = prune_unreachable(bp.problem);
        if (warnings)
            for (auto& d : dropped) warnings->push_back(bp.name + ": unreachable function " + d + " pruned");
        out.push_back(std::move(bp));
    }
    return out;
}

std::vector<BenchRecord> run_bench(const std::vector<BenchProblem>& problems, const BenchOptions& opts) {
    const auto& engines = opts.engines.empty() ? bench_engines() : opts.engines;
    for (const auto& e : engines)
        if (std::find(bench_engines().begin(), bench_engines().end(), e) == bench_engines().end())
            throw std::invalid_argument("unknown engine " + e);
    const std::size_t cells = problems.size() * engines.size();
    std::vector<BenchRecord> rows(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells; i = next++) {
            const auto& bp = problems[i / engines.size()];
            rows[i] = run_bench_cell(bp.name, bp.problem, engines[i % engines.size()], opts.timeout_ms);
        }
    };
    const int jobs = std::max(1, opts.jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string render_csv(const std::vector<BenchRecord>& rows) {
    std::ostringstream out;
    out << "problem,engine,verdict,time_ms,work,timeout\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto& r : rows)
        out << r.problem << ',' << r.engine << ',' << r.verdict << ',' << r.time_ms << ',' << r.work << ','
            << (r.timeout ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace sctkit
