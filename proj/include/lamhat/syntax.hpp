#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamhat {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

using Names = std::vector<std::string>; // kept sorted and duplicate free

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
    enum class Kind { Var, Data };
    Kind kind;
    std::string name; // variable name or tag
    std::vector<PatternPtr> args;
    Names vars;       // sorted
    std::vector<std::string> var_order; // left to right, may repeat if non-linear

    bool is_var() const { return kind == Kind::Var; }
};

PatternPtr pvar(std::string name);
PatternPtr pdata(std::string tag, std::vector<PatternPtr> args = {});

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Branch {
    PatternPtr pattern;
    TermPtr body;
};

struct Term {
    enum class Kind { Var, Abs, App, Match, Data, Case };
    Kind kind;
    std::string name;            // Var: variable, Data: tag
    PatternPtr pattern;          // Abs, Match
    std::vector<TermPtr> kids;   // Abs: body | App: fun,arg | Match: body,arg | Data: args | Case: scrutinee
    std::vector<Branch> branches;
    Names fv;
    size_t size = 1;

    const TermPtr& body() const { return kids[0]; }
    const TermPtr& fun() const { return kids[0]; }
    const TermPtr& arg() const { return kids[1]; }
    const TermPtr& scrutinee() const { return kids[0]; }
};

TermPtr var(std::string name);
TermPtr abs(PatternPtr p, TermPtr body);
TermPtr app(TermPtr f, TermPtr a);
TermPtr match(TermPtr body, PatternPtr p, TermPtr arg);
TermPtr data(std::string tag, std::vector<TermPtr> args = {});
TermPtr case_of(TermPtr scrutinee, std::vector<Branch> branches);
TermPtr identity(); // \x.x

bool has(const Names& s, const std::string& x);
Names set_union(const Names& a, const Names& b);
Names set_minus(const Names& a, const Names& b);
Names set_inter(const Names& a, const Names& b);

const Names& free_vars(const TermPtr& t);
bool closed(const TermPtr& t);

// Fresh names: `base_N` with N drawn from a process-wide atomic counter.
std::string fresh(const std::string& base);
// Makes sure later fresh names never collide with `name`.
void note_name(const std::string& name);
void note_names(const TermPtr& t);

// renaming and substitution
PatternPtr rename_pattern(const PatternPtr& p, const std::map<std::string, std::string>& m);
TermPtr rename_free(const TermPtr& t, const std::map<std::string, std::string>& m);
// Renames the binders of t that would capture a free variable of `avoid` at a free occurrence of x.
TermPtr freshen_for_subst(const TermPtr& t, const std::string& x, const Names& avoid);
// Plain replacement of the free occurrences of x, assuming no capture can happen.
TermPtr naive_subst(const TermPtr& t, const std::string& x, const TermPtr& u);
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u);

bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool same(const TermPtr& a, const TermPtr& b); // exact syntactic equality
bool same(const PatternPtr& a, const PatternPtr& b);
// A string that is equal for two terms iff they are alpha-equivalent.
std::string canonical(const TermPtr& t);

struct Frame {
    PatternPtr pattern;
    TermPtr arg;
};

// L as a list of frames, innermost first: L = <>[p1/u1][p2/u2]... .
struct ListContext {
    std::vector<Frame> frames;
    Names bound() const;
    TermPtr plug(TermPtr core) const;
};

std::pair<ListContext, TermPtr> decompose_list_context(const TermPtr& t);
const Term& list_core(const TermPtr& t);
bool is_abs(const TermPtr& t);
bool is_case(const TermPtr& t);
std::optional<std::string> const_tag(const TermPtr& t);
bool is_const(const TermPtr& t, const std::string& c);
// Renames the binders of the list context around t's core that belong to `avoid`.
TermPtr freshen_list_context(const TermPtr& t, const Names& avoid);

class TagRegistry {
public:
    // Returns false on a conflicting arity.
    bool declare(const std::string& tag, size_t arity);
    std::optional<size_t> arity(const std::string& tag) const;
    const std::map<std::string, size_t>& all() const { return arity_; }

private:
    std::map<std::string, size_t> arity_;
};

struct Violation {
    std::string kind; // ArityMismatch | NonlinearPattern | DuplicateBranchTag | EmptyCase | VarPatternInCase
    std::string where;
};

std::vector<Violation> well_formed(const TermPtr& t, const TagRegistry& reg);
// Registers every tag of t, reporting arity conflicts.
std::vector<Violation> collect_tags(const TermPtr& t, TagRegistry& reg);

} // namespace lamhat
