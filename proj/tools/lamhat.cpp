#include "lamhat/classifier.hpp"
#include "lamhat/encodings.hpp"
#include "lamhat/fixtures.hpp"
#include "lamhat/reduction.hpp"
#include "lamhat/synthesis.hpp"
#include "lamhat/text.hpp"
#include "lamhat/types.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lamhat;

namespace {

enum Exit { Ok = 0, Usage = 1, Semantic = 2, Fuel = 3 };

struct Input {
    std::string file;
    std::string expr;
    bool open = false;
};

std::string read_text(const std::string& file) {
    if (file == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("Usage", "cannot read " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string source_text(const Input& in) {
    if (!in.expr.empty()) return in.expr;
    if (in.file.empty()) throw Error("Usage", "give a term file, '-' for stdin, or -e TERM");
    return read_text(in.file);
}

TermPtr load_term(const Input& in, bool allow_open) {
    auto prog = parse_program(source_text(in));
    auto v = well_formed(prog.term, prog.tags);
    if (!v.empty()) throw Error("Usage", "ill-formed term: " + v[0].kind + " at " + v[0].where);
    if (!allow_open && !closed(prog.term)) throw Error("Usage", "the term is open; pass --open to allow free variables");
    return prog.term;
}

void add_input(CLI::App* cmd, Input& in, bool with_open) {
    cmd->add_option("file", in.file, "term file, or - for stdin");
    cmd->add_option("-e,--expr", in.expr, "term given inline");
    if (with_open) cmd->add_flag("--open", in.open, "allow open terms");
}

std::string clash_line(const TermPtr& t) {
    auto c = is_clash(t);
    if (!c.is_clash) return "clash: no";
    return "clash: yes@" + position_name(c.witness) + " (" + base_clash_name(*c.kind) + ")";
}

int cmd_eval(const Input& in, size_t fuel, bool trace, bool all_paths, size_t bound) {
    auto t = load_term(in, in.open);
    if (all_paths) {
        auto ps = all_paths_to_nf(t, bound);
        std::cout << "paths=" << ps.path_count << " states=" << ps.states << (ps.exceeded ? " bound-exceeded" : "")
                  << "\n";
        for (auto& tr : ps.traces)
            std::cout << "length=" << tr.length() << " " << render_counters(tr) << " normal: "
                      << pretty(tr.steps.empty() ? t : tr.steps.back().after) << "\n";
        return ps.exceeded ? Fuel : Ok;
    }
    auto ev = evaluate(t, fuel);
    std::cout << (trace ? render_trace(ev.trace) : render_counters(ev.trace) + "\n");
    if (!ev.normal) {
        std::cout << "fuel exhausted after " << ev.trace.length() << " steps: " << pretty(ev.term) << "\n";
        return Fuel;
    }
    std::cout << "normal: " << pretty(ev.term) << "\n";
    if (is_clash(ev.term).is_clash) {
        std::cout << clash_line(ev.term) << "\n";
        return Semantic;
    }
    return Ok;
}

int cmd_classify(const Input& in, bool evidence) {
    auto t = load_term(in, in.open);
    std::cout << nf_class(t).str() << ", " << clash_line(t)
              << ", clash-free-nf: " << (is_clash_free_nf(t) ? "yes" : "no") << "\n";
    if (closed(t) && is_clash_free_nf(t)) {
        auto s = closed_nf_shape(t);
        std::cout << "closed shape: " << (s.kind == NfShape::Kind::Abstraction ? "abstraction" : "data " + s.tag) << "\n";
    }
    if (evidence && is_clash(t).is_clash) {
        try {
            auto ev = assert_clash_untypable(t);
            std::cout << "untypable: clash at " << position_name(ev.witness) << "\n";
            for (auto& r : ev.reasons) std::cout << "  " << r << "\n";
        } catch (const Error& e) {
            std::cout << "no evidence (" << e.code() << "): " << e.what() << "\n";
        }
    }
    return Ok;
}

int cmd_encode(const Input& in, const std::string& from) {
    auto k = parse_calculus(from);
    auto s = parse_source(source_text(in), k);
    std::cout << pretty(translate(s, k)) << "\n";
    return Ok;
}

std::string rules_of(const Trace& tr) {
    std::string s;
    for (auto& st : tr.steps) s += (s.empty() ? "" : ",") + rule_name(st.rule);
    return s;
}

int cmd_simulate(const Input& in, const std::string& from, size_t steps, size_t bound) {
    auto k = parse_calculus(from);
    auto s = parse_source(source_text(in), k);
    auto rep = check_simulation(s, k, steps, bound);
    for (auto& c : rep.certificates)
        std::cout << c.source_rule << ": " << pretty(c.source_before) << " -> " << pretty(c.source_after) << "\n  "
                  << c.target.length() << " steps " << rules_of(c.target) << ": " << pretty(c.target_before)
                  << " ->> " << pretty(c.target_after) << "\n";
    if (!rep.ok) {
        std::cout << "failed: " << rep.failure << "\n";
        return rep.bound_exceeded ? Fuel : Semantic;
    }
    std::cout << "ok certificates=" << rep.certificates.size() << "\n";
    return Ok;
}

int cmd_check(const std::string& file) {
    auto d = from_json(read_text(file));
    auto v = check_derivation(d);
    for (auto& x : v) std::cout << "violation " << x.path << " (" << x.rule << ") " << x.kind << ": " << x.message << "\n";
    if (!v.empty()) return Semantic;
    if (auto r = relevance_check(d)) {
        std::cout << "violation " << r->path << " (" << r->rule << ") " << r->kind << ": " << r->message << "\n";
        return Semantic;
    }
    std::cout << "ok size=" << size(d) << "\n";
    return Ok;
}

int cmd_synth(const Input& in, size_t fuel, const std::string& emit) {
    auto t = load_term(in, false);
    auto o = synthesize(t, fuel);
    std::cout << "outcome: " << o.kind_name() << "\n";
    switch (o.kind) {
    case SynthesisOutcome::Kind::Typable:
        std::cout << "steps: " << o.steps << "\nbound: " << o.bound << "\ntype: " << str(o.derivation->type) << "\n";
        if (!emit.empty()) {
            std::ofstream out(emit);
            if (!out) throw Error("Usage", "cannot write " + emit);
            out << to_json(o.derivation) << "\n";
            std::cout << "derivation: " << emit << "\n";
        }
        return Ok;
    case SynthesisOutcome::Kind::Untypable:
        std::cout << "steps: " << o.steps << "\nnormal: " << pretty(o.normal) << "\nwitness: "
                  << pretty(subterm_at(o.normal, o.witness)) << " @ " << position_name(o.witness) << "\n";
        return Semantic;
    case SynthesisOutcome::Kind::Unknown:
        std::cout << "fuel: " << o.fuel_spent << "\n";
        return Fuel;
    }
    return Ok;
}

int cmd_examples() {
    for (auto& f : worked_terms()) {
        auto t = parse_term(f.text);
        std::cout << f.name << ": " << pretty(t) << "\n  " << f.about << "\n  " << nf_class(t).str() << ", "
                  << clash_line(t) << "\n";
        auto ev = evaluate(t, 50);
        std::cout << "  eval " << render_counters(ev.trace) << " "
                  << (ev.normal ? "normal: " + pretty(ev.term) : std::string("fuel exhausted")) << "\n";
    }
    return Ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lamhat: evaluator, classifier, encodings and quantitative types for a pattern calculus"};
    app.require_subcommand(1);

    Input in;
    size_t fuel = 10000, bound = 40, sim_bound = 64, steps = 10;
    bool trace = false, all_paths = false, evidence = false;
    std::string from, file, emit;

    auto* eval = app.add_subcommand("eval", "evaluate with the deterministic weak head strategy");
    add_input(eval, in, true);
    eval->add_option("--fuel", fuel, "maximum number of steps");
    eval->add_flag("--trace", trace, "print every step");
    eval->add_flag("--all-paths", all_paths, "explore every weak head reduction path");
    eval->add_option("--bound", bound, "path length bound for --all-paths");

    auto* classify = app.add_subcommand("classify", "normal form class and clash status");
    add_input(classify, in, true);
    classify->add_flag("--evidence", evidence, "explain why a clash cannot be typed");

    auto* encode = app.add_subcommand("encode", "translate a source term");
    add_input(encode, in, false);
    encode->add_option("--from", from, "cbn, cbv or bang")->required();

    auto* simulate = app.add_subcommand("simulate", "check the simulation of source steps");
    add_input(simulate, in, false);
    simulate->add_option("--from", from, "cbn, cbv or bang")->required();
    simulate->add_option("--steps", steps, "number of source steps to follow");
    simulate->add_option("--bound", sim_bound, "search bound for each target path");

    auto* check = app.add_subcommand("check", "check a derivation file");
    check->add_option("derivation", file, "derivation JSON")->required();

    auto* synth = app.add_subcommand("synth", "build a typing derivation by evaluation and expansion");
    add_input(synth, in, false);
    synth->add_option("--fuel", fuel, "maximum number of steps");
    synth->add_option("--emit", emit, "write the derivation here");

    auto* examples = app.add_subcommand("examples", "print the worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Usage;
    }

    try {
        if (*eval) return cmd_eval(in, fuel, trace, all_paths, bound);
        if (*classify) return cmd_classify(in, evidence);
        if (*encode) return cmd_encode(in, from);
        if (*simulate) return cmd_simulate(in, from, steps, sim_bound);
        if (*check) return cmd_check(file);
        if (*synth) return cmd_synth(in, fuel, emit);
        if (*examples) return cmd_examples();
    } catch (const Error& e) {
        std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
        const auto& c = e.code();
        if (c == "Usage" || c == "ParseError" || c == "DerivationFormat" || c == "TypeSyntax") return Usage;
        return Semantic;
    }
    return Ok;
}
