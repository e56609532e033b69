#include "lamhat/classifier.hpp"
#include "lamhat/text.hpp"
#include "lamhat/types.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace lamhat;

namespace {
TermPtr P(const char* s) { return parse_term(s); }

DerivPtr sigma() {
    std::ifstream in(std::string(LAMHAT_FIXTURES) + "/sigma.json");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

TypePtr c0() { return data_type("C0"); }
}

TEST_CASE("types print and parse") {
    auto t = parse_type("[Triple([C0],[],[])] -> C0");
    CHECK(t->kind == TermType::Kind::Arrow);
    CHECK(str(t) == "[Triple([C0],[],[])] -> C0");
    CHECK(str(parse_multiset("[C1, C0, C0]")) == "[C0, C0, C1]");
    CHECK(same_type(parse_type("[C0, *] -> *"), parse_type("[*, C0] -> *")));
    CHECK_THROWS_AS(parse_type("[C0 -> "), Error);
}

TEST_CASE("context algebra") {
    Context g{{"x", mset({c0()})}};
    auto gg = ctx_union(g, g);
    CHECK(lookup(gg, "x").size() == 2);
    CHECK_FALSE(gg == g);
    Context h{{"x", mset({c0()})}, {"y", mset({star()})}};
    CHECK(restrict_to(h, {"x"}) == g);
    CHECK(remove(h, {}) == h);
    CHECK(remove(h, {"y"}) == g);
    CHECK(lookup(h, "z").empty());
    CHECK(ctx_union(Context{}, h) == h);
    CHECK(ctx_union(g, h) == ctx_union(h, g));
}

TEST_CASE("patterns are always typable") {
    auto [dx, mx] = type_pattern(pvar("x"), {{"x", mset({c0()})}});
    CHECK(str(mx) == "[C0]");
    auto [dt, mt] = type_pattern(parse_pattern("Triple(x,y,z)"), {{"x", mset({c0()})}});
    CHECK(str(mt) == "[Triple([C0],[],[])]");
    CHECK(size(dt) == 4);
    CHECK(check_derivation(dt).empty());
    auto [de, me] = type_pattern(pvar("x"), {});
    CHECK(me.empty());
}

TEST_CASE("the running derivation") {
    auto s = sigma();
    CHECK(check_derivation(s).empty());
    CHECK_FALSE(relevance_check(s));
    CHECK(size(s) == 11);
    CHECK(s->ctx.empty());
    CHECK(str(s->type) == "C0");
    CHECK(size(s->kids[0]->kids[0]->kids[1]) == 4);
    CHECK(to_json(from_json(to_json(s))) == to_json(s));
}

TEST_CASE("an empty many node types anything") {
    auto d = d_many(P("(\\x.x x) (\\x.x x)"), {});
    CHECK(check_derivation(d).empty());
    CHECK(size(d) == 0);
    CHECK(d->mtype.empty());
}

TEST_CASE("the checker localizes a broken premise") {
    auto s = sigma();
    auto arg = s->kids[1];
    auto triple = arg->kids[0];
    auto broken_triple = d_const(triple->term, {d_many(P("C0"), {}), triple->kids[1], triple->kids[2]});
    auto node = std::make_shared<Derivation>(*s);
    node->kids[1] = d_many(arg->term, {broken_triple});
    auto v = check_derivation(node);
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "root");
    CHECK(v[0].rule == "app");
    CHECK(v[0].kind == "MultisetMismatch");
}

TEST_CASE("axioms") {
    CHECK(check_derivation(d_ax("x", c0())).empty());
    auto bad = std::make_shared<Derivation>(*d_ax("x", c0()));
    bad->ctx = {{"y", mset({c0()})}};
    auto v = check_derivation(bad);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].kind == "ContextMismatch");
}

TEST_CASE("split and merge") {
    auto i = P("\\x.x");
    auto at = [&](const char* tag) { return d_abs(i, d_ax("x", data_type(tag))); };
    auto d = d_many(i, {at("C0"), at("C1")});
    auto parts = split(d, {mset({d->kids[0]->type}), mset({d->kids[1]->type})});
    REQUIRE(parts.size() == 2);
    CHECK(size(parts[0]) + size(parts[1]) == size(d));
    for (auto& p : parts) CHECK(check_derivation(p).empty());
    auto back = merge(parts);
    CHECK(back->mtype == d->mtype);
    CHECK(size(back) == size(d));
    auto trivial = split(d, {d->mtype, mset()});
    CHECK(size(trivial[0]) == size(d));
    CHECK(trivial[1]->kids.empty());
    CHECK_THROWS_AS(split(d, {mset({c0()})}), Error);
}

TEST_CASE("clash evidence") {
    auto a = assert_clash_untypable(P("Pair(I,I) I"));
    CHECK(a.kind == BaseClash::DataApplied);
    CHECK_FALSE(a.reasons.empty());
    auto m = assert_clash_untypable(P("t[Pair(p,q)/(\\r.s)[x/y]]"));
    CHECK(m.kind == BaseClash::MatchAbs);
    auto c = assert_clash_untypable(P("case Duo(I,I) of {Pair(x,y)->y}"));
    CHECK(c.kind == BaseClash::CaseTag);
    bool mentions = false;
    for (auto& r : c.reasons) mentions = mentions || r.find("Duo") != std::string::npos;
    CHECK(mentions);
    CHECK_THROWS_AS(assert_clash_untypable(P("\\x.x")), Error);
}

TEST_CASE("a clash below a variable pattern has no forced evidence") {
    auto t = P("C0[x/Pair(I,I) I]");
    CHECK(is_clash(t).is_clash);
    CHECK_FALSE(forced_clash(t));
    try {
        assert_clash_untypable(t);
        FAIL("expected UnforcedClash");
    } catch (const Error& e) {
        CHECK(e.code() == "UnforcedClash");
    }
}

TEST_CASE("malformed derivation files") {
    CHECK_THROWS_AS(from_json("{"), Error);
    CHECK_THROWS_AS(from_json(R"({"rule":"nope","conclusion":{"context":{},"subject":"x","type":"C0"},"children":[]})"),
                    Error);
}
