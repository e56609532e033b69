#pragma once

#include "lamhat/classifier.hpp"
#include "lamhat/reduction.hpp"
#include "lamhat/syntax.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lamhat {

struct TermType;
using TypePtr = std::shared_ptr<const TermType>;

// An unordered collection with multiplicity; items are kept sorted by key.
struct Multiset {
    std::vector<TypePtr> items;

    size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    std::string key() const;
};

struct TermType {
    enum class Kind { Data, Star, Arrow };
    Kind kind;
    std::string tag;          // Data
    std::vector<Multiset> args; // Data: arguments | Arrow: the domain
    TypePtr codomain;         // Arrow
    std::string key;          // equal keys iff equal types

    const Multiset& domain() const { return args[0]; }
};

TypePtr data_type(std::string tag, std::vector<Multiset> args = {});
TypePtr star();
TypePtr arrow(Multiset dom, TypePtr cod);
Multiset mset(std::vector<TypePtr> items = {});
Multiset mset_union(const Multiset& a, const Multiset& b);
bool operator==(const Multiset& a, const Multiset& b);
bool same_type(const TypePtr& a, const TypePtr& b);

std::string str(const TypePtr& t);
std::string str(const Multiset& m);
TypePtr parse_type(std::string_view text);
Multiset parse_multiset(std::string_view text);

// Absent variables are mapped to the empty multiset, so only nonempty entries are stored.
using Context = std::map<std::string, Multiset>;

Context ctx_union(const Context& a, const Context& b);
Context restrict_to(const Context& g, const Names& xs);
Context remove(const Context& g, const Names& xs);
Multiset lookup(const Context& g, const std::string& x);
Names dom(const Context& g);
std::string str(const Context& g);

enum class TypingRule { PatV, PatC, Ax, Many, Abs, AbsB, App, Const, Match, Case };
std::string typing_rule_name(TypingRule r);
std::optional<TypingRule> parse_typing_rule(const std::string& s);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    TypingRule rule;
    Context ctx;
    TermPtr term;       // subject of term judgments
    PatternPtr pattern; // subject of pattern judgments (patv, patc)
    TypePtr type;       // term type, or null for multiset judgments
    Multiset mtype;     // many, patv, patc
    std::vector<DerivPtr> kids;
    int branch = -1;    // case: the selected branch

    bool is_pattern() const { return rule == TypingRule::PatV || rule == TypingRule::PatC; }
    bool is_multiset() const { return rule == TypingRule::Many || is_pattern(); }
    std::string type_str() const;
};

// Smart constructors; contexts and types follow the typing rules.
DerivPtr d_patv(const std::string& x, Multiset m);
DerivPtr d_patc(const PatternPtr& p, std::vector<DerivPtr> kids);
DerivPtr d_ax(const std::string& x, TypePtr t);
DerivPtr d_many(TermPtr t, std::vector<DerivPtr> kids);
// For a variable pattern, pat may be null: the pattern premise is then left implicit.
DerivPtr d_abs(TermPtr t, DerivPtr body, DerivPtr pat = nullptr);
DerivPtr d_absb(TermPtr t);
DerivPtr d_app(TermPtr t, DerivPtr fun, DerivPtr arg);
DerivPtr d_const(TermPtr t, std::vector<DerivPtr> args);
DerivPtr d_match(TermPtr t, DerivPtr body, DerivPtr pat, DerivPtr arg);
DerivPtr d_case(TermPtr t, DerivPtr scrut, DerivPtr pat, DerivPtr body, int k);

// Same rule and branch over a new subject and premises; context and type are recomputed.
DerivPtr rebuild(const DerivPtr& d, TermPtr subject, std::vector<DerivPtr> kids);

size_t size(const DerivPtr& d);
size_t node_count(const DerivPtr& d);

struct DerivViolation {
    std::string path; // child indices from the root, e.g. "root.0.1"
    std::string rule;
    std::string kind; // RuleShape | SubjectMismatch | ContextMismatch | MultisetMismatch | TypeMismatch | Arity | BranchSelection
    std::string message;
};

std::vector<DerivViolation> check_derivation(const DerivPtr& d);
std::optional<DerivViolation> relevance_check(const DerivPtr& d);

std::pair<DerivPtr, Multiset> type_pattern(const PatternPtr& p, const Context& g);

std::vector<DerivPtr> split(const DerivPtr& d, const std::vector<Multiset>& parts);
DerivPtr merge(const std::vector<DerivPtr>& parts);

struct ClashEvidence {
    Position witness;
    BaseClash kind;
    std::vector<std::string> reasons; // from the root down to the conflict
};

// Throws NotAClash, or UnforcedClash when every clash of t sits below the argument of a variable pattern.
ClashEvidence assert_clash_untypable(const TermPtr& t);
// The clash reached through positions that any term-type derivation must type.
std::optional<std::pair<Position, BaseClash>> forced_clash(const TermPtr& t);

std::string to_json(const DerivPtr& d, int indent = 2);
DerivPtr from_json(const std::string& text);

} // namespace lamhat
