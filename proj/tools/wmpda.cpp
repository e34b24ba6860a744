#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wmpda/classify.hpp"
#include "wmpda/format.hpp"
#include "wmpda/gadgets.hpp"
#include "wmpda/marked.hpp"
#include "wmpda/oracle.hpp"
#include "wmpda/regset.hpp"
#include "wmpda/separator.hpp"
#include "wmpda/wqo.hpp"

using namespace wmpda;
using json = nlohmann::json;

namespace {

enum Exit { exit_yes = 0, exit_no = 1, exit_unknown = 2, exit_error = 3 };

/// A reachability endpoint: a configuration literal or `@file` naming a regset.
struct Endpoint {
    std::optional<Configuration> config;
    std::optional<RegSet> set;
    std::string text;

    [[nodiscard]] bool singleton() const { return config.has_value(); }
    [[nodiscard]] RegSet as_set(const Mpda& m) const { return config ? wmpda::singleton(m, *config) : *set; }
    [[nodiscard]] bool contains(const Configuration& c) const { return config ? *config == c : member(*set, c); }
};

Endpoint parse_endpoint(const Mpda& m, const std::string& text)
{
    Endpoint e;
    e.text = text;
    if (!text.empty() && text.front() == '@')
        e.set = parse_regset(m, read_file(text.substr(1)));
    else
        e.config = parse_configuration(m, text);
    return e;
}

struct Report {
    std::string command;
    json record = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    int finish(int code, const std::string& verdict)
    {
        record["command"] = command;
        record["verdict"] = verdict;
        record["exit"] = code;
        record["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << record.dump() << "\n";
        return code;
    }
};

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

std::string pair_text(const Mpda& m, const std::pair<StateId, SymbolId>& p)
{
    return "(" + m.state_name(p.first) + "," + m.symbol_name(p.second) + ")";
}

int cmd_classify(Report& rep, const std::string& file)
{
    auto m = parse_mpda(read_file(file));
    auto weak = is_weak(m);
    std::string weak_text = "weak: " + yes_no(weak.weak);
    if (weak.weak) {
        std::string order;
        for (auto q : weak.order)
            order += (order.empty() ? "" : ">") + m.state_name(q);
        weak_text += " (" + order + ")";
        rep.record["order"] = order;
    } else {
        std::string cycle;
        for (auto q : weak.cycle)
            cycle += m.state_name(q) + " -> ";
        cycle += m.state_name(weak.cycle.front());
        weak_text += " (cycle " + cycle + ")";
        rep.record["cycle"] = cycle;
    }

    auto sn = is_strongly_normed(m);
    std::string sn_text = "strongly-normed: " + yes_no(sn.strongly_normed);
    if (sn.failing) {
        sn_text += " " + pair_text(m, *sn.failing);
        rep.record["strongly_normed_failing"] = pair_text(m, *sn.failing);
    } else {
        sn_text += " (" + std::to_string(sn.cancel.size()) + " canceling sequences)";
        rep.record["canceling_sequences"] = sn.cancel.size();
    }

    std::string normed_text = "normed: ";
    if (weak.weak) {
        auto n = is_normed(m);
        normed_text += yes_no(n.normed);
        if (n.failing) {
            normed_text += " " + pair_text(m, *n.failing);
            rep.record["normed_failing"] = pair_text(m, *n.failing);
        }
        rep.record["normed"] = n.normed;
    } else {
        normed_text += "n/a (not weak)";
        rep.record["normed"] = nullptr;
    }
    rep.record["weak"] = weak.weak;
    rep.record["strongly_normed"] = sn.strongly_normed;
    std::cout << weak_text << "; " << sn_text << "; " << normed_text << "\n";
    return rep.finish(exit_yes, "classified");
}

struct ReachOptions {
    std::string file;
    std::string method = "auto";
    std::string from;
    std::string to;
    std::size_t max_size = 16;
    std::size_t max_explored = 1'000'000;
    std::optional<std::size_t> src_cap;
    std::optional<std::size_t> tgt_cap;
    std::optional<std::size_t> rounds;
    std::size_t max_nodes = 0;
    bool allow_empty_uncolored = false;
    bool waive_normed = false;
    std::string witness_out;
    std::string certificate_out;
};

/// Re-checks a witness by replay and writes it when asked.
void emit_witness(Report& rep, const Mpda& m, const Witness& w, const Endpoint& from, const Endpoint& to,
                  const std::string& out)
{
    const auto final = replay(m, w);
    if (!from.contains(w.start) || !to.contains(final))
        throw error("internal: witness does not connect the endpoints");
    rep.record["witness_length"] = w.steps.size();
    rep.record["witness_start"] = format_configuration(m, w.start);
    std::cout << "witness: " << w.steps.size() << " steps from " << format_configuration(m, w.start) << " to "
              << format_configuration(m, final) << " (replay checked)\n";
    if (!out.empty()) {
        write_file(out, serialize_witness(m, w));
        rep.record["witness"] = out;
    }
}

std::string choose_method(const Mpda& m, const Endpoint& to)
{
    const bool weak = is_weak(m).weak;
    const bool sn = is_strongly_normed(m).strongly_normed;
    if (weak && sn)
        return "marked";
    if (weak && to.singleton())
        return "wqo";
    if (sn)
        return "separator";
    return "oracle";
}

int reach_oracle(Report& rep, const Mpda& m, const Endpoint& from, const Endpoint& to, const ReachOptions& o)
{
    OracleBudget budget;
    budget.max_config_size = o.max_size;
    budget.max_explored = o.max_explored;
    rep.record["caps"] = {{"max_size", o.max_size}, {"max_explored", o.max_explored}};
    std::vector<Configuration> sources;
    if (from.config) {
        sources.push_back(*from.config);
    } else {
        const std::size_t cap = o.src_cap.value_or(4);
        rep.record["caps"]["src_cap"] = cap;
        sources = enumerate_members(m, *from.set, cap);
    }
    bool complete = from.singleton();
    for (const auto& s : sources) {
        auto v = bfs_reach(m, s, [&](const Configuration& c) { return to.contains(c); }, budget);
        if (v.reachable()) {
            std::cout << "reachable (oracle)\n";
            emit_witness(rep, m, *v.witness, from, to, o.witness_out);
            return rep.finish(exit_yes, "reachable");
        }
        complete = complete && v.status == OracleStatus::unreachable_complete;
    }
    if (complete) {
        std::cout << "unreachable (oracle, exhaustive)\n";
        return rep.finish(exit_no, "unreachable");
    }
    std::cout << "unknown (oracle budget exhausted)\n";
    return rep.finish(exit_unknown, "unknown");
}

std::optional<Witness> oracle_witness(const Mpda& m, const Configuration& s, const Endpoint& to)
{
    OracleBudget generous;
    generous.max_config_size = 64;
    generous.max_explored = 5'000'000;
    auto v = bfs_reach(m, s, [&](const Configuration& c) { return to.contains(c); }, generous);
    return v.witness;
}

int reach_marked(Report& rep, const Mpda& m, const Endpoint& from, const Endpoint& to, const ReachOptions& o)
{
    require_marked_preconditions(m);
    if (from.singleton() && to.singleton()) {
        auto v = decide_marked(m, *from.config, *to.config);
        rep.record["caps"] = {{"bound", v.bound}};
        rep.record["explored"] = v.explored;
        if (!v.reachable) {
            std::cout << "unreachable (marked, size bound " << v.bound << ")\n";
            return rep.finish(exit_no, "unreachable");
        }
        auto w = reconstruct(m, *from.config, *v.path, is_strongly_normed(m).cancel);
        std::cout << "reachable (marked, " << v.path->steps.size() << " marked steps)\n";
        emit_witness(rep, m, w, from, to, o.witness_out);
        return rep.finish(exit_yes, "reachable");
    }
    RegRegCaps caps{o.src_cap, o.tgt_cap};
    auto v = decide_regreg(m, from.as_set(m), to.as_set(m), caps);
    rep.record["caps"] = {{"src_cap", v.src_cap}, {"tgt_cap", v.tgt_cap}};
    rep.record["targets_tried"] = v.targets_tried;
    if (v.reachable) {
        std::cout << "reachable (marked, regular endpoints)\n";
        emit_witness(rep, m, *v.witness, from, to, o.witness_out);
        return rep.finish(exit_yes, "reachable");
    }
    std::cout << "no path up to caps (src_cap " << v.src_cap << ", tgt_cap " << v.tgt_cap << ")\n";
    return rep.finish(exit_unknown, "unknown");
}

int reach_wqo(Report& rep, const Mpda& m, const Endpoint& from, const Endpoint& to, const ReachOptions& o)
{
    if (!to.singleton())
        throw precondition_failed("the wqo method needs a single target configuration");
    WqoOptions opts;
    opts.allow_empty_uncolored = o.allow_empty_uncolored;
    opts.max_nodes = o.max_nodes;
    std::optional<Configuration> source;
    bool complete = true;
    if (from.singleton()) {
        auto v = decide_wqo(m, *from.config, *to.config, opts);
        rep.record["nodes"] = v.stats.nodes;
        rep.record["dominated"] = v.stats.dominated;
        complete = v.complete;
        if (v.reachable)
            source = *from.config;
    } else {
        auto v = decide_reg_to_one(m, *from.set, *to.config, o.src_cap, opts);
        rep.record["caps"] = {{"src_cap", v.src_cap}};
        rep.record["sources_tried"] = v.sources_tried;
        complete = v.complete && !o.src_cap;
        source = v.source;
    }
    if (source) {
        std::cout << "reachable (wqo) from " << format_configuration(m, *source) << "\n";
        rep.record["source"] = format_configuration(m, *source);
        if (!o.witness_out.empty()) {
            if (auto w = oracle_witness(m, *source, to))
                emit_witness(rep, m, *w, from, to, o.witness_out);
            else
                std::cout << "witness: the oracle found none within its budget\n";
        }
        return rep.finish(exit_yes, "reachable");
    }
    if (complete) {
        std::cout << "unreachable (wqo)\n";
        return rep.finish(exit_no, "unreachable");
    }
    std::cout << "unknown (wqo node cap or user source cap)\n";
    return rep.finish(exit_unknown, "unknown");
}

int reach_separator(Report& rep, const Mpda& m, const Endpoint& from, const Endpoint& to, const ReachOptions& o)
{
    SeparatorBudget budget;
    if (o.rounds) {
        budget.positive_rounds = *o.rounds;
        budget.fixpoint_rounds = *o.rounds;
    }
    budget.require_strongly_normed = !o.waive_normed;
    auto L = from.as_set(m);
    auto K = to.as_set(m);
    auto v = decide_separator(m, L, K, budget);
    rep.record["caps"] = {{"positive_rounds", budget.positive_rounds}, {"fixpoint_rounds", budget.fixpoint_rounds}};
    rep.record["candidates_checked"] = v.candidates_checked;
    switch (v.status) {
    case SeparatorStatus::reachable:
        std::cout << "reachable (separator, positive side)\n";
        emit_witness(rep, m, *v.witness, from, to, o.witness_out);
        return rep.finish(exit_yes, "reachable");
    case SeparatorStatus::unreachable: {
        auto check = check_separator(m, L, K, v.certificate->sep);
        if (!check.ok())
            throw error("internal: separator certificate does not verify");
        std::cout << "unreachable (separator certificate verified)\n";
        if (!o.certificate_out.empty()) {
            write_file(o.certificate_out, serialize_regset(m, v.certificate->sep));
            rep.record["certificate"] = o.certificate_out;
        }
        return rep.finish(exit_no, "unreachable");
    }
    case SeparatorStatus::unknown:
        break;
    }
    std::cout << "unknown (separator budget exhausted)\n";
    return rep.finish(exit_unknown, "unknown");
}

int cmd_reach(Report& rep, const ReachOptions& o)
{
    auto m = parse_mpda(read_file(o.file));
    auto from = parse_endpoint(m, o.from);
    auto to = parse_endpoint(m, o.to);
    std::string method = o.method == "auto" ? choose_method(m, to) : o.method;
    rep.record["method"] = method;
    if (o.method == "auto")
        std::cout << "method: " << method << " (auto)\n";
    if (method == "oracle")
        return reach_oracle(rep, m, from, to, o);
    if (method == "marked")
        return reach_marked(rep, m, from, to, o);
    if (method == "wqo")
        return reach_wqo(rep, m, from, to, o);
    return reach_separator(rep, m, from, to, o);
}

int cmd_gen(Report& rep, const std::string& family, const std::string& out, const std::string& target_out)
{
    auto inst = generate(family);
    const auto text = serialize_mpda(inst.mpda);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    if (!target_out.empty())
        write_file(target_out, serialize_regset(inst.mpda, inst.target));
    std::cout << "source: " << format_configuration(inst.mpda, inst.source) << "\n";
    rep.record["family"] = family;
    rep.record["source"] = format_configuration(inst.mpda, inst.source);
    rep.record["states"] = inst.mpda.state_count();
    rep.record["rules"] = inst.mpda.rules().size();
    return rep.finish(exit_yes, "generated");
}

int cmd_regset(Report& rep, const std::string& op, const std::string& file, const std::string& set,
               const std::string& other, const std::string& config, const std::string& out)
{
    auto m = parse_mpda(read_file(file));
    auto A = parse_regset(m, read_file(set));
    auto need_other = [&]() {
        if (other.empty())
            throw error("'" + op + "' needs --other");
        return parse_regset(m, read_file(other));
    };
    auto write_set = [&](const RegSet& R) {
        const auto text = serialize_regset(m, R);
        if (out.empty())
            std::cout << text;
        else
            write_file(out, text);
        return rep.finish(exit_yes, "written");
    };
    rep.record["op"] = op;
    if (op == "union")
        return write_set(unite(A, need_other()));
    if (op == "intersect")
        return write_set(intersect(A, need_other()));
    if (op == "complement")
        return write_set(complement(m, A));
    if (op == "member") {
        if (config.empty())
            throw error("'member' needs --config");
        const bool in = member(A, parse_configuration(m, config));
        std::cout << (in ? "member" : "not a member") << "\n";
        return rep.finish(in ? exit_yes : exit_no, in ? "yes" : "no");
    }
    if (op == "empty") {
        const bool e = is_empty(A);
        std::cout << (e ? "empty" : "nonempty") << "\n";
        return rep.finish(e ? exit_yes : exit_no, e ? "yes" : "no");
    }
    if (op == "subset") {
        const bool s = is_subset(m, A, need_other());
        std::cout << (s ? "subset" : "not a subset") << "\n";
        return rep.finish(s ? exit_yes : exit_no, s ? "yes" : "no");
    }
    throw error("unknown regset operation '" + op + "'");
}

int cmd_pre(Report& rep, const std::string& file, const std::string& set, const std::string& out)
{
    auto m = parse_mpda(read_file(file));
    auto P = pre_image(m, parse_regset(m, read_file(set)));
    const auto text = serialize_regset(m, P);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return rep.finish(exit_yes, "written");
}

int cmd_shrink(Report& rep, const std::string& file, const std::string& witness, const std::string& source_set)
{
    auto m = parse_mpda(read_file(file));
    auto w = parse_witness(m, read_file(witness));
    auto L = parse_regset(m, read_file(source_set));
    auto s = shrink_source(m, w, L);
    std::cout << "shrunk source: " << format_configuration(m, s) << " (size " << s.size() << ", was "
              << w.start.size() << ")\n";
    rep.record["source"] = format_configuration(m, s);
    rep.record["size"] = s.size();
    rep.record["original_size"] = w.start.size();
    return rep.finish(exit_yes, "shrunk");
}

} // namespace

int main(int argc, char** argv)
{
    Report rep;
    for (int i = 0; i < argc; ++i)
        rep.command += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"Reachability toolkit for weak multi-pushdown automata"};
    app.require_subcommand(1);

    std::string file;
    auto* classify = app.add_subcommand("classify", "Report weak / strongly normed / normed");
    classify->add_option("file", file, "Automaton file")->required();

    ReachOptions ro;
    auto* reach = app.add_subcommand("reach", "Decide reachability between configurations or regular sets");
    reach->add_option("file", ro.file, "Automaton file")->required();
    reach->add_option("--method", ro.method, "oracle | marked | wqo | separator | auto")
        ->check(CLI::IsMember({"oracle", "marked", "wqo", "separator", "auto"}))
        ->capture_default_str();
    reach->add_option("--from", ro.from, "Source: configuration literal or @regset file")->required();
    reach->add_option("--to", ro.to, "Target: configuration literal or @regset file")->required();
    reach->add_option("--max-size", ro.max_size, "Oracle: largest configuration explored")->capture_default_str();
    reach->add_option("--max-explored", ro.max_explored, "Oracle: configurations expanded")->capture_default_str();
    reach->add_option("--src-cap", ro.src_cap,
                      "Largest source tried from a regset (default (size(t)+|Q|)(N+1)+N*k; 4 for the oracle)");
    reach->add_option("--tgt-cap", ro.tgt_cap, "Largest target tried from a regset (default (N_K+1)^2 (|Q|+max_rhs))");
    reach->add_option("--rounds", ro.rounds, "Separator: positive rounds and fixpoint rounds (default 6 and 8)");
    reach->add_option("--max-nodes", ro.max_nodes, "Wqo: node cap, 0 for none")->capture_default_str();
    reach->add_flag("--allow-empty-uncolored", ro.allow_empty_uncolored,
                    "Wqo: let empty state-preserving rules erase uncolored occurrences");
    reach->add_flag("--waive-normed", ro.waive_normed, "Separator: run on automata that are not strongly normed");
    reach->add_option("--witness", ro.witness_out, "Write the replay-checked witness here");
    reach->add_option("--certificate", ro.certificate_out, "Write the separator certificate here");

    std::string family, gen_out, target_out;
    auto* gen = app.add_subcommand("gen", "Generate an example family");
    gen->add_option("--family", family, "anbncn | expo:N | nonreg-forward | commfree:FILE | cfg:FILE1:FILE2")
        ->required();
    gen->add_option("--out", gen_out, "Automaton file (default standard output)");
    gen->add_option("--target-out", target_out, "Write the suggested target set here");

    std::string op, set, other, config, set_out;
    auto* regset = app.add_subcommand("regset", "Operations on recognizable sets");
    regset->add_option("op", op, "union | intersect | complement | member | empty | subset")
        ->required()
        ->check(CLI::IsMember({"union", "intersect", "complement", "member", "empty", "subset"}));
    regset->add_option("file", file, "Automaton file")->required();
    regset->add_option("--set", set, "Regset file")->required();
    regset->add_option("--other", other, "Second regset file");
    regset->add_option("--config", config, "Configuration literal");
    regset->add_option("--out", set_out, "Output regset file (default standard output)");

    std::string pre_set, pre_out;
    auto* pre = app.add_subcommand("pre", "One-step pre-image of a regset");
    pre->add_option("file", file, "Automaton file")->required();
    pre->add_option("--set", pre_set, "Regset file")->required();
    pre->add_option("--out", pre_out, "Output regset file (default standard output)");

    std::string witness, source_set;
    auto* shrink = app.add_subcommand("shrink", "Pump irrelevant occurrences out of a witness source");
    shrink->add_option("file", file, "Automaton file")->required();
    shrink->add_option("--witness", witness, "Witness file")->required();
    shrink->add_option("--source-set", source_set, "Regset the source belongs to")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (classify->parsed())
            return cmd_classify(rep, file);
        if (reach->parsed())
            return cmd_reach(rep, ro);
        if (gen->parsed())
            return cmd_gen(rep, family, gen_out, target_out);
        if (regset->parsed())
            return cmd_regset(rep, op, file, set, other, config, set_out);
        if (pre->parsed())
            return cmd_pre(rep, file, pre_set, pre_out);
        return cmd_shrink(rep, file, witness, source_set);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rep.record["error"] = e.what();
        return rep.finish(exit_error, "error");
    }
}
