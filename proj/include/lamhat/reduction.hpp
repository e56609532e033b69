#pragma once

#include "lamhat/syntax.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lamhat {

enum class Rule { dB, c, m, e };

// Steps through the weak head context grammar.
enum class Dir { Fun, Body, Arg, Scrut };
using Position = std::vector<Dir>;

std::string rule_name(Rule r);
std::string position_name(const Position& p);
// Subterm at a position (no check that the position is a weak head one).
TermPtr subterm_at(const TermPtr& t, const Position& pos);
TermPtr replace_at(const TermPtr& t, const Position& pos, const TermPtr& u);

struct Redex {
    Position position;
    Rule rule;
};

struct Step {
    Rule rule;
    Position position;
    TermPtr before;
    TermPtr after;
};

struct Trace {
    std::vector<Step> steps;
    std::array<size_t, 4> counters{}; // b, c, m, e

    void push(Step s);
    size_t length() const { return steps.size(); }
};

std::string render_trace(const Trace& tr);
std::string render_counters(const Trace& tr);

// Every weak head redex, listed leftmost-outermost.
std::vector<Redex> enumerate_redexes(const TermPtr& t);
// Is t itself (at the root) a redex of the given rule?
bool is_root_redex(const TermPtr& t, Rule r);

// The alpha-variant of the redex r in which the side conditions on bound variables hold.
TermPtr prepare_redex(const TermPtr& r, Rule rule);
// Contracts a prepared root redex without any renaming.
TermPtr contract_prepared(const TermPtr& r, Rule rule);
TermPtr contract(const TermPtr& r, Rule rule);
TermPtr apply_at(const TermPtr& t, const Position& pos, Rule rule);

struct DetStep {
    TermPtr after;
    Rule rule;
    Position position;
};

// The deterministic strategy.
std::optional<DetStep> step_det(const TermPtr& t);

struct EvalResult {
    bool normal = false;
    TermPtr term; // the normal form, or the last term reached
    Trace trace;
};

EvalResult evaluate(const TermPtr& t, size_t fuel);

struct PathSet {
    bool exceeded = false;
    // One witness trace for each distinct (alpha-class of endpoint, length) pair.
    std::vector<Trace> traces;
    // Number of distinct maximal reduction sequences (saturating).
    unsigned long long path_count = 0;
    size_t states = 0;
};

PathSet all_paths_to_nf(const TermPtr& t, size_t bound, size_t max_states = 200000);

} // namespace lamhat
