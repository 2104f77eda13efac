#include "sctkit/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "sctkit/bench.hpp"
#include "sctkit/formats.hpp"
#include "sctkit/mcs.hpp"
#include "sctkit/ramsey.hpp"
#include "sctkit/rank.hpp"
#include "sctkit/sct.hpp"

namespace sctkit {

namespace {

constexpr int kHolds = 0;
constexpr int kRefuted = 1;
constexpr int kError = 2;

SctProblem load_sct(const std::string& path, std::ostream& err) {
    SctProblem p = parse_sct(read_file(path));
    for (const auto& f : prune_unreachable(p)) err << "warning: unreachable function " << f << " pruned\n";
    return p;
}

std::string call_word(const SctProblem& p, const std::vector<int>& w) {
    std::string s;
    for (int c : w) s += (s.empty() ? "" : " ") + p.calls[static_cast<std::size_t>(c)].id;
    return s;
}

struct SctCheckArgs {
    std::string file;
    std::string engine = "ljb";
    bool no_subsumption = false;
    bool witness = false;
};

int sct_check(const SctCheckArgs& a, std::ostream& out, std::ostream& err) {
    const SctProblem p = load_sct(a.file, err);
    bool holds;
    if (a.engine == "ljb") {
        LjbOptions o;
        o.subsumption = !a.no_subsumption;
        SctVerdict v = ljb_check(p, o);
        holds = v.terminating;
        out << (holds ? "Terminating" : "NotTerminating") << "\n";
        if (!holds && v.has_counterexample) out << "counterexample: " << format_scg(p, v.counterexample) << "\n";
        if (!holds && a.witness && v.has_witness) out << "witness: (" << call_word(p, v.witness) << ")^omega\n";
        return holds ? kHolds : kRefuted;
    }
    const BuchiAutomaton flow = flow_automaton(p), desc = desc_automaton_optimized(p);
    Lasso lasso;
    bool has_lasso = false;
    if (a.engine == "dgs" || a.engine == "sgs") {
        RamseyOptions o;
        o.subsumption = !a.no_subsumption;
        o.preconditions_asserted = true;
        ContainmentVerdict v = a.engine == "dgs" ? dgs_containment(flow, desc, o) : sgs_containment(flow, desc, o);
        holds = v.contained;
        lasso = v.lasso;
        has_lasso = v.has_lasso;
    } else if (a.engine == "rank") {
        RankOptions o;
        o.subsumption = !a.no_subsumption;
        if (sct_is_reverse_deterministic(p)) o.max_rank = 2;
        RankVerdict v = rank_containment(flow, desc, o);
        holds = v.holds;
        lasso = v.lasso;
        has_lasso = v.has_lasso;
    } else {
        err << "error: unknown engine " << a.engine << "\n";
        return kError;
    }
    out << (holds ? "Terminating" : "NotTerminating") << "\n";
    if (!holds && a.witness && has_lasso) out << "witness: " << format_lasso(flow.alphabet(), lasso) << "\n";
    return holds ? kHolds : kRefuted;
}

struct ReduceArgs {
    std::string file, out_flow, out_desc;
    bool optimized = false;
};

int sct_reduce(const ReduceArgs& a, std::ostream& err) {
    const SctProblem p = load_sct(a.file, err);
    const Headers stamp{{kSuffixClosedHeader, "yes"}};
    write_file(a.out_flow, render_ba(flow_automaton(p)));
    write_file(a.out_desc, render_ba(a.optimized ? desc_automaton_optimized(p) : desc_automaton(p), stamp));
    return kHolds;
}

struct BuchiArgs {
    std::string a, b;
    std::string engine;
    int max_rank = -1;
    bool assert_suffix_closed = false;
    bool no_subsumption = false;
    bool witness = false;
};

int buchi_universal(const BuchiArgs& a, std::ostream& out, std::ostream& err) {
    const BuchiAutomaton b = parse_ba(read_file(a.a)).automaton;
    bool holds;
    Lasso lasso;
    bool has_lasso = false;
    if (a.engine == "ramsey") {
        RamseyOptions o;
        ContainmentVerdict v = ramsey_universality(b, o);
        holds = v.contained;
        lasso = v.lasso;
        has_lasso = v.has_lasso;
    } else if (a.engine == "rank") {
        RankOptions o;
        o.max_rank = a.max_rank;
        o.subsumption = !a.no_subsumption;
        RankVerdict v = rank_universality(b, o);
        holds = v.holds;
        lasso = v.lasso;
        has_lasso = v.has_lasso;
    } else {
        err << "error: unknown engine " << a.engine << "\n";
        return kError;
    }
    out << (holds ? "Universal" : "NotUniversal") << "\n";
    if (!holds && a.witness && has_lasso) out << "witness: " << format_lasso(b.alphabet(), lasso) << "\n";
    return holds ? kHolds : kRefuted;
}

int buchi_contains(const BuchiArgs& a, std::ostream& out, std::ostream& err) {
    const BaFile fa = parse_ba(read_file(a.a));
    const BaFile fb = parse_ba(read_file(a.b));
    bool holds;
    Lasso lasso;
    bool has_lasso = false;
    if (a.engine == "dgs" || a.engine == "sgs") {
        RamseyOptions o;
        o.subsumption = !a.no_subsumption;
        if (a.engine == "sgs") {
            o.preconditions_asserted = a.assert_suffix_closed || has_header(fb.headers, kSuffixClosedHeader, "yes");
            if (!o.preconditions_asserted) {
                err << "error: sgs needs L(B) strongly suffix closed w.r.t. L(A); pass --assert-suffix-closed or use "
                       "a file produced by `sct reduce`\n";
                return kError;
            }
        }
        ContainmentVerdict v = a.engine == "dgs" ? dgs_containment(fa.automaton, fb.automaton, o)
                                                 : sgs_containment(fa.automaton, fb.automaton, o);
        for (const auto& w : v.warnings) err << "warning: " << w << "\n";
        holds = v.contained;
        lasso = v.lasso;
        has_lasso = v.has_lasso;
    } else if (a.engine == "rank") {
        RankOptions o;
        o.max_rank = a.max_rank;
        o.subsumption = !a.no_subsumption;
        RankVerdict v = rank_containment(fa.automaton, fb.automaton, o);
        holds = v.holds;
        lasso = v.lasso;
        has_lasso = v.has_lasso;
    } else {
        err << "error: unknown engine " << a.engine << "\n";
        return kError;
    }
    out << (holds ? "Contained" : "NotContained") << "\n";
    if (!holds && a.witness && has_lasso) out << "witness: " << format_lasso(fa.automaton.alphabet(), lasso) << "\n";
    return holds ? kHolds : kRefuted;
}

int buchi_complement(const BuchiArgs& a, std::ostream& out) {
    const BuchiAutomaton b = parse_ba(read_file(a.a)).automaton;
    const int r = a.max_rank >= 0 ? a.max_rank : default_rank_bound(b);
    out << render_ba(kv_complement(b, r));
    return kHolds;
}

int mcs_project(const std::string& file, const std::string& implied, std::ostream& out, std::ostream& err) {
    ImpliedArcs mode = implied == "none" ? ImpliedArcs::None
                       : implied == "equality" ? ImpliedArcs::EqualityOnly
                                               : ImpliedArcs::Full;
    McsProjection pr = mcs_to_sct(parse_mcs(read_file(file)), mode);
    for (const auto& w : pr.warnings) err << "warning: " << w << "\n";
    out << render_sct(pr.problem);
    return kHolds;
}

struct BenchArgs {
    std::string dir, csv;
    long timeout_ms = 60000;
    int jobs = 1;
};

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<std::string> warnings;
    auto problems = load_bench_dir(a.dir, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    BenchOptions o;
    o.timeout_ms = a.timeout_ms;
    o.jobs = a.jobs;
    auto rows = run_bench(problems, o);
    write_file(a.csv, render_csv(rows));
    out << rows.size() << " rows written to " << a.csv << "\n";
    return kHolds;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Buchi containment and size-change termination toolkit", "sctkit"};
    app.require_subcommand(1);

    auto* sct = app.add_subcommand("sct", "size-change termination problems");
    sct->require_subcommand(1);
    SctCheckArgs check;
    auto* sct_check_cmd = sct->add_subcommand("check", "decide size-change termination");
    sct_check_cmd->add_option("file", check.file, ".sct problem")->required();
    sct_check_cmd->add_option("--engine", check.engine, "ljb, dgs, sgs or rank")
        ->check(CLI::IsMember({"ljb", "dgs", "sgs", "rank"}));
    sct_check_cmd->add_flag("--no-subsumption", check.no_subsumption, "keep every closure element");
    sct_check_cmd->add_flag("--witness", check.witness, "print a non-descending call sequence");

    ReduceArgs reduce;
    auto* sct_reduce_cmd = sct->add_subcommand("reduce", "write the flow and descent automata");
    sct_reduce_cmd->add_option("file", reduce.file, ".sct problem")->required();
    sct_reduce_cmd->add_option("--out-flow", reduce.out_flow, "flow automaton output")->required();
    sct_reduce_cmd->add_option("--out-desc", reduce.out_desc, "descent automaton output")->required();
    sct_reduce_cmd->add_flag("--optimized", reduce.optimized, "position-based descent automaton");

    auto* buchi = app.add_subcommand("buchi", "Buchi automata");
    buchi->require_subcommand(1);
    BuchiArgs uni;
    uni.engine = "ramsey";
    auto* uni_cmd = buchi->add_subcommand("universal", "decide universality");
    uni_cmd->add_option("file", uni.a, ".ba automaton")->required();
    uni_cmd->add_option("--engine", uni.engine, "ramsey or rank")->check(CLI::IsMember({"ramsey", "rank"}));
    uni_cmd->add_option("--max-rank", uni.max_rank, "rank bound (default 2|Q|-2, or 2 if reverse-deterministic)");
    uni_cmd->add_flag("--no-subsumption", uni.no_subsumption, "rank engine: explicit forward search");
    uni_cmd->add_flag("--witness", uni.witness, "print a rejected lasso");

    BuchiArgs con;
    con.engine = "dgs";
    auto* con_cmd = buchi->add_subcommand("contains", "decide L(A) within L(B)");
    con_cmd->add_option("A", con.a, ".ba automaton")->required();
    con_cmd->add_option("B", con.b, ".ba automaton")->required();
    con_cmd->add_option("--engine", con.engine, "dgs, sgs or rank")->check(CLI::IsMember({"dgs", "sgs", "rank"}));
    con_cmd->add_option("--max-rank", con.max_rank, "rank bound");
    con_cmd->add_flag("--assert-suffix-closed", con.assert_suffix_closed, "L(B) is strongly suffix closed w.r.t. L(A)");
    con_cmd->add_flag("--no-subsumption", con.no_subsumption, "disable subsumption");
    con_cmd->add_flag("--witness", con.witness, "print a lasso in L(A) outside L(B)");

    BuchiArgs comp;
    auto* comp_cmd = buchi->add_subcommand("complement", "print the rank-based complement");
    comp_cmd->add_option("file", comp.a, ".ba automaton")->required();
    comp_cmd->add_option("--max-rank", comp.max_rank, "rank bound");

    auto* mcs = app.add_subcommand("mcs", "monotonicity constraint systems");
    mcs->require_subcommand(1);
    std::string mcs_file, implied = "full";
    auto* proj_cmd = mcs->add_subcommand("project", "project to a size-change problem");
    proj_cmd->add_option("file", mcs_file, ".mcs system")->required();
    proj_cmd->add_option("--implied", implied, "none, equality or full")->check(CLI::IsMember({"none", "equality", "full"}));

    BenchArgs bargs;
    auto* bench_cmd = app.add_subcommand("bench", "run every engine on a directory of problems");
    bench_cmd->add_option("dir", bargs.dir, "directory of .sct / .mcs files")->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--csv", bargs.csv, "output file")->required();
    bench_cmd->add_option("--timeout-ms", bargs.timeout_ms, "per-cell timeout")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--jobs", bargs.jobs, "parallel cells")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }

    try {
        if (*sct_check_cmd) return sct_check(check, out, err);
        if (*sct_reduce_cmd) return sct_reduce(reduce, err);
        if (*uni_cmd) return buchi_universal(uni, out, err);
        if (*con_cmd) return buchi_contains(con, out, err);
        if (*comp_cmd) return buchi_complement(comp, out);
        if (*proj_cmd) return mcs_project(mcs_file, implied, out, err);
        if (*bench_cmd) return bench(bargs, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

}  // namespace sctkit
