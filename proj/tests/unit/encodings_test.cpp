#include "gen.hpp"
#include "lamhat/encodings.hpp"
#include "lamhat/reduction.hpp"
#include "lamhat/text.hpp"

#include <doctest.h>

using namespace lamhat;

namespace {
SrcPtr S(const char* s, Calculus k) { return parse_source(s, k); }

std::string rules(const Trace& tr) {
    std::string s;
    for (auto& st : tr.steps) s += (s.empty() ? "" : ",") + rule_name(st.rule);
    return s;
}
}

TEST_CASE("source reductions") {
    auto n = cbn_step(S("(\\x.x) y", Calculus::Cbn));
    REQUIRE(n);
    CHECK(pretty(n->after) == "y");
    auto v = cbv_steps(S("(\\x.x) (\\y.y)", Calculus::Cbv));
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "beta_v");
    CHECK(alpha_eq(v[0].after, S("\\y.y", Calculus::Cbv)));
    CHECK(cbv_steps(S("(\\x.x) (y z)", Calculus::Cbv)).empty());
    auto b = bang_steps(S("(x x)[x/!u]", Calculus::Bang));
    REQUIRE(b.size() == 1);
    CHECK(b[0].rule == "s");
    CHECK(pretty(b[0].after) == "u u");
    CHECK(bang_steps(S("x x[x/!u]", Calculus::Bang)).empty());
    auto dist = bang_steps(S("(\\x.x)[y/z] w", Calculus::Bang));
    REQUIRE_FALSE(dist.empty());
    CHECK(dist[0].rule == "dB");
    CHECK(alpha_eq(dist[0].after, S("x[x/w][y/z]", Calculus::Bang)));
}

TEST_CASE("call-by-name embedding") {
    CHECK(pretty(embed_cbn(S("\\x.x", Calculus::Cbn))) == "\\x.x");
    CHECK(pretty(embed_cbn(S("(\\x.x) y", Calculus::Cbn))) == "(\\x.x) y");
    CHECK(pretty(embed_cbn(S("\\x.\\y.x y", Calculus::Cbn))) == "\\x.\\y.x y");
}

TEST_CASE("call-by-value translation") {
    CHECK(alpha_eq(translate_cbv(S("\\x.x", Calculus::Cbv)), parse_term("V(\\x.V(x))")));
    auto xu = translate_cbv(S("x u", Calculus::Cbv));
    CHECK(alpha_eq(xu, parse_term("(a b)[V(b)/V(u)][V(a)/V(x)]")));
    CHECK(pretty(translate_cbv(S("x u", Calculus::Cbv))) == pretty(xu));
    auto clash = translate_cbv(S("f_1 a_2", Calculus::Cbv));
    CHECK(free_vars(clash) == Names{"a_2", "f_1"});
}

TEST_CASE("bang translation") {
    CHECK(pretty(translate_bang(S("!x", Calculus::Bang))) == "B(x)");
    CHECK(pretty(translate_bang(S("\\x.x", Calculus::Bang))) == "\\B(x).x");
    auto t = translate_bang(S("x[x/!u]", Calculus::Bang));
    auto p = find_path(t, var("u"), 8);
    REQUIRE(p);
    CHECK(rules(*p) == "m,e");
}

TEST_CASE("simulation certificates") {
    auto cbn = check_simulation(S("(\\x.x) y", Calculus::Cbn), Calculus::Cbn, 1);
    REQUIRE(cbn.certificates.size() == 1);
    CHECK(rules(cbn.certificates[0].target) == "dB,e");
    auto cbv = check_simulation(S("(\\x.x) (\\y.y)", Calculus::Cbv), Calculus::Cbv, 1);
    REQUIRE(cbv.certificates.size() == 1);
    CHECK(rules(cbv.certificates[0].target) == "m,e,m,e,dB,e");
    CHECK(alpha_eq(cbv.certificates[0].target_after, parse_term("V(\\y.V(y))")));
    auto bang = check_simulation(S("(\\x.x) u", Calculus::Bang), Calculus::Bang, 1);
    REQUIRE(bang.certificates.size() == 1);
    CHECK(rules(bang.certificates[0].target) == "dB");
}

TEST_CASE("translations commute with substitution") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        auto t = testing::random_source(rng, Calculus::Cbv, 4);
        auto v = S("\\q.q y", Calculus::Cbv);
        CHECK(alpha_eq(translate_cbv(substitute(t, "x", v)),
                       substitute(translate_cbv(t), "x", translate_cbv_value(v))));
        auto b = testing::random_source(rng, Calculus::Bang, 4);
        auto u = S("!(y z)", Calculus::Bang);
        CHECK(alpha_eq(translate_bang(substitute(b, "x", u)), substitute(translate_bang(b), "x", translate_bang(u))));
    }
}

TEST_CASE("exceptions") {
    auto t1 = parse_term("case V(\\w.w) of {V(x) -> \\z. x z | E(y) -> y}");
    CHECK(alpha_eq(evaluate(t1, 50).term, parse_term("\\z.(\\w.w) z")));
    auto raise = moggi_app(parse_term("E(C0)"), parse_term("V(C1)"));
    CHECK(alpha_eq(evaluate(raise, 50).term, parse_term("E(C0)")));
    auto ok = moggi_app(parse_term("V(\\x.V(x))"), parse_term("V(C1)"));
    CHECK(alpha_eq(evaluate(ok, 50).term, parse_term("V(C1)")));
}

TEST_CASE("calculus names") {
    CHECK(parse_calculus("cbv") == Calculus::Cbv);
    CHECK_THROWS_AS(parse_calculus("cbx"), Error);
    CHECK_THROWS_AS(S("!x", Calculus::Cbn), Error);
}
