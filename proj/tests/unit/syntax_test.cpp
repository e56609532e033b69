#include "gen.hpp"
#include "lamhat/syntax.hpp"
#include "lamhat/text.hpp"

#include <doctest.h>

using namespace lamhat;

namespace {
TermPtr P(const char* s) { return parse_term(s); }
}

TEST_CASE("free variables") {
    CHECK(free_vars(P("\\x. x y")) == Names{"y"});
    CHECK(free_vars(P("case w of {Pair(x,y) -> x z}")) == Names{"w", "z"});
    CHECK(free_vars(P("y[Pair(x,y)/Duo(C0,C1)]")).empty());
    CHECK(closed(P("\\x.x")));
}

TEST_CASE("substitution avoids capture") {
    CHECK(alpha_eq(substitute(var("x"), "x", data("C0")), data("C0")));
    auto r = substitute(P("\\y.x"), "x", var("y"));
    CHECK(r->kind == Term::Kind::Abs);
    CHECK(r->pattern->name != "y");
    CHECK(alpha_eq(r, P("\\z.y")));
    CHECK(free_vars(r) == Names{"y"});
}

TEST_CASE("substitution composition on random terms") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        auto s = testing::random_term(rng, {4, false, 3});
        auto u = testing::random_term(rng, {3, false, 3});
        auto r = testing::random_term(rng, {3, false, 3});
        if (has(u->fv, "y")) continue;
        auto lhs = substitute(substitute(s, "x", u), "y", substitute(r, "x", u));
        auto rhs = substitute(substitute(s, "y", r), "x", u);
        CHECK(alpha_eq(lhs, rhs));
    }
}

TEST_CASE("alpha equivalence") {
    CHECK(alpha_eq(P("\\x.x"), P("\\y.y")));
    CHECK_FALSE(alpha_eq(P("\\x.x y"), P("\\z.z w")));
    CHECK(alpha_eq(P("case C0 of {Pair(a,b) -> a}"), P("case C0 of {Pair(u,v) -> u}")));
    CHECK_FALSE(alpha_eq(P("case C0 of {Pair(a,b) -> a}"), P("case C0 of {Pair(u,v) -> v}")));
    CHECK(canonical(P("\\x.x")) == canonical(P("\\q.q")));
}

TEST_CASE("list contexts") {
    auto t = P("(\\p.b)[x/u][y/v]");
    auto [l, core] = decompose_list_context(t);
    REQUIRE(l.frames.size() == 2);
    CHECK(l.frames[0].pattern->name == "x");
    CHECK(l.frames[1].pattern->name == "y");
    CHECK(is_abs(t));
    CHECK(same(l.plug(core), t));
    CHECK(is_const(P("C0"), "C0"));
    auto xu = P("x u");
    CHECK_FALSE(is_abs(xu));
    CHECK_FALSE(const_tag(xu));
    CHECK_FALSE(is_case(xu));
}

TEST_CASE("well-formedness") {
    TagRegistry reg;
    reg.declare("Pair", 2);
    reg.declare("One", 1);
    CHECK(well_formed(P("Pair(I, I)"), reg).empty());
    auto bad = well_formed(data("Pair", {identity()}), reg);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].kind == "ArityMismatch");
    auto dup = well_formed(P("case t of {One(x) -> x | One(y) -> y}"), reg);
    REQUIRE_FALSE(dup.empty());
    CHECK(dup[0].kind == "DuplicateBranchTag");
    auto nl = well_formed(P("\\Pair(x,x).x"), reg);
    REQUIRE_FALSE(nl.empty());
    CHECK(nl[0].kind == "NonlinearPattern");
}

TEST_CASE("fresh names do not collide with noted names") {
    note_name("k_900");
    auto a = fresh("k");
    auto b = fresh("k");
    CHECK(a != b);
    CHECK(a != "k_900");
}
