#pragma once

#include "lamhat/reduction.hpp"
#include "lamhat/syntax.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lamhat {

enum class Calculus { Cbn, Cbv, Bang };

std::string calculus_name(Calculus k);
Calculus parse_calculus(const std::string& s);

struct Src;
using SrcPtr = std::shared_ptr<const Src>;

// Terms of the three source calculi; Bang and Sub only occur in the bang calculus.
struct Src {
    enum class Kind { Var, Abs, App, Bang, Sub };
    Kind kind;
    std::string name; // Var, and the binder of Abs / Sub
    std::vector<SrcPtr> kids; // Abs: body | App: fun,arg | Bang: body | Sub: body,arg
    Names fv;
};

SrcPtr svar(std::string x);
SrcPtr sabs(std::string x, SrcPtr body);
SrcPtr sapp(SrcPtr f, SrcPtr a);
SrcPtr sbang(SrcPtr t);
SrcPtr ssub(SrcPtr body, std::string x, SrcPtr arg);

// `\x. t`, application, `!t`, `t[x/u]`, parentheses, `#` comments.
SrcPtr parse_source(std::string_view text, Calculus k);
std::string pretty(const SrcPtr& t);
bool alpha_eq(const SrcPtr& a, const SrcPtr& b);
SrcPtr substitute(const SrcPtr& t, const std::string& x, const SrcPtr& u);
bool valid_in(const SrcPtr& t, Calculus k);

// A source reduction step; `where` is a path of child indices.
struct SrcStep {
    std::string rule; // beta | beta_v | dB | s
    std::vector<int> where;
    SrcPtr after;
};

std::optional<SrcStep> cbn_step(const SrcPtr& t);
std::vector<SrcStep> cbv_steps(const SrcPtr& t);
std::optional<SrcStep> cbv_step(const SrcPtr& t);
std::vector<SrcStep> bang_steps(const SrcPtr& t);
std::optional<SrcStep> bang_step(const SrcPtr& t);
std::vector<SrcStep> source_steps(const SrcPtr& t, Calculus k);

TermPtr embed_cbn(const SrcPtr& t);
TermPtr translate_cbv(const SrcPtr& t);
TermPtr translate_cbv_value(const SrcPtr& v); // the inner translation of a value
TermPtr translate_bang(const SrcPtr& t);
TermPtr translate(const SrcPtr& t, Calculus k);

struct SimulationCertificate {
    Calculus kind;
    std::string source_rule;
    SrcPtr source_before, source_after;
    TermPtr target_before, target_after;
    Trace target; // a nonempty weak head path from target_before to a term alpha-equal to target_after
};

struct SimulationReport {
    std::vector<SimulationCertificate> certificates;
    bool ok = true;
    bool bound_exceeded = false; // the failure is "not found within bound", not a refutation
    std::string failure;
};

// Finds a nonempty weak head reduction path between two terms by breadth-first search.
std::optional<Trace> find_path(const TermPtr& from, const TermPtr& to, size_t bound, bool* exceeded = nullptr);

// Checks every enumerated source step along the path that follows the first step, up to max_steps.
SimulationReport check_simulation(const SrcPtr& t, Calculus k, size_t max_steps, size_t bound = 64);

// case t of {V(x) -> case u of {V(y) -> x y | E(z) -> E(z)} | E(z) -> E(z)}
TermPtr moggi_app(const TermPtr& t, const TermPtr& u);

} // namespace lamhat
