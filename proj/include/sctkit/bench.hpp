#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sctkit/sct.hpp"

namespace sctkit {

struct BenchRecord {
    std::string problem;
    std::string engine;
    std::string verdict;  // "terminating" / "nonterminating"; "-" on timeout
    double time_ms = 0;
    std::size_t work = 0;
    bool timeout = false;
};

const std::vector<std::string>& bench_engines();

// One (problem, engine) cell. Unknown engines throw std::invalid_argument.
BenchRecord run_bench_cell(const std::string& name, const SctProblem& p, const std::string& engine, long timeout_ms);

struct BenchOptions {
    long timeout_ms = 60000;
    int jobs = 1;
    std::vector<std::string> engines;  // empty: all
};

struct BenchProblem {
    std::string name;
    SctProblem problem;
};

// Every .sct file of dir, plus every .mcs file projected with full implied
// arcs, sorted by file name.
std::vector<BenchProblem> load_bench_dir(const std::string& dir, std::vector<std::string>* warnings = nullptr);

std::vector<BenchRecord> run_bench(const std::vector<BenchProblem>& problems, const BenchOptions& opts);

std::string render_csv(const std::vector<BenchRecord>& rows);

}  // namespace sctkit
