#include "gen.hpp"
#include "lamhat/classifier.hpp"
#include "lamhat/text.hpp"

#include <doctest.h>

using namespace lamhat;

namespace {
TermPtr P(const char* s) { return parse_term(s); }
}

TEST_CASE("normal form classes") {
    CHECK(nf_class(P("case Duo(I,I) of {Pair(x,y)->y}")).kind == NfClass::Kind::Neutral);
    auto pair = nf_class(P("Pair(I I, I)"));
    CHECK(pair.kind == NfClass::Kind::NeutralData);
    CHECK(pair.normal());
    CHECK(pair.tag == std::optional<std::string>("Pair"));
    CHECK(nf_class(P("I I")).kind == NfClass::Kind::NotNormal);
    CHECK(nf_class(P("x (I I)")).kind == NfClass::Kind::Neutral);
    CHECK(nf_class(P("Pair(I,I)[One(x)/y z]")).kind == NfClass::Kind::NeutralData);
    CHECK(nf_class(P("Pair(I,I)[x/y z]")).kind == NfClass::Kind::NotNormal);
    CHECK(nf_class(P("\\x.x")).str() == "normal(no)");
    CHECK(in_no(P("Pair(I I, I)"), "Pair"));
}

TEST_CASE("clashes") {
    auto app = is_clash(P("Pair(I I, I) I"));
    CHECK(app.is_clash);
    CHECK(app.kind == BaseClash::DataApplied);
    auto cabs = is_clash(P("case I of {Pair(x,y)->y}"));
    CHECK(cabs.is_clash);
    CHECK(cabs.kind == BaseClash::CaseAbs);
    CHECK_FALSE(is_clash(P("Pair(I I, I)")).is_clash);
    CHECK(is_clash(P("y[Pair(x,y)/Duo(t,u)]")).kind == BaseClash::MatchTag);
    CHECK(is_clash(P("y[Pair(x,y)/I[z/w]]")).kind == BaseClash::MatchAbs);
    auto deep = is_clash(P("C0[x/case Duo(I) of {One(y) -> y}] z"));
    CHECK(deep.is_clash);
    CHECK(position_name(deep.witness) == "fun.arg");
}

TEST_CASE("clash-free normal forms") {
    CHECK(is_clash_free_nf(P("\\p.t")));
    CHECK_FALSE(is_clash_free_nf(P("case Duo(I,I) of {Pair(x,y)->y}")));
    CHECK(is_clash_free_nf(P("x (I I)")));
    CHECK_FALSE(is_clash_free_nf(P("I I")));
}

TEST_CASE("closed normal forms are values") {
    CHECK(closed_nf_shape(P("\\x.x")).kind == NfShape::Kind::Abstraction);
    auto t = closed_nf_shape(P("Triple(C0,C1,C2)"));
    CHECK(t.kind == NfShape::Kind::Data);
    CHECK(t.tag == "Triple");
    CHECK(closed_nf_shape(P("C0")).tag == "C0");
}

TEST_CASE("clash closure") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 500; ++i) {
        auto c = testing::random_base_clash(rng, 2);
        REQUIRE(is_clash(c).is_clash);
        auto t = testing::random_term(rng, {3, true, 3});
        CHECK(is_clash(app(c, t)).is_clash);
        CHECK(is_clash(match(c, pvar("q"), t)).is_clash);
        CHECK(is_clash(match(t, pdata("One", {pvar("q")}), c)).is_clash);
        CHECK(is_clash(match(t, pvar("q"), c)).is_clash);
        CHECK(is_clash(case_of(c, {{pdata("Nil"), t}})).is_clash);
    }
}
