#include "lamhat/fixtures.hpp"
#include "lamhat/syntax.hpp"

namespace lamhat {

const std::vector<WorkedTerm>& worked_terms() {
    static const std::vector<WorkedTerm> terms{
        {"t0", R"((\x. case x of {Pair(x,y) -> y | Triple(x,y,z) -> x}) Triple(C0,C1,C2))",
         "evaluates to C0 in 6 steps with counters (1,1,0,4)"},
        {"stuck-beta", R"((\Pair(x,y). y) Duo(t,u))", "a dB step leaves a stuck matching"},
        {"stuck-match", R"(y[Pair(x,y)/Duo(t,u)])", "stuck matching"},
        {"ne-case-tag", R"(case Duo(I,I) of {Pair(x,y) -> y})", "neutral, and a clash"},
        {"ne-case-abs", R"(case I of {Pair(x,y) -> y})", "neutral, and a clash"},
        {"no-pair", R"(Pair(I I, I))", "normal, not a clash"},
        {"clash-app", R"(Pair(I I, I) I)", "normal, and a clash"},
        {"to-clash", R"(((\x. Pair(I,I)) I) I)", "evaluates to the clash Pair(I,I) I"},
        {"exc-t1", R"(case V(\w.w) of {V(x) -> \z. x z | E(y) -> y})", "evaluates to (\\z. x z){x/\\w.w}"},
        {"exc-t2", R"(case E(\r.r) of {V(x) -> \z. x z | E(y) -> y})", "evaluates to r = \\r.r"},
        {"exc-t3", R"(case E(\r.r) of {V(x) -> \z. x z | E(y) -> E(y)})", "evaluates to E(\\r.r)"},
        {"omega", R"((\x. x x) (\x. x x))", "diverges"},
    };
    return terms;
}

const WorkedTerm& worked_term(const std::string& name) {
    for (auto& t : worked_terms())
        if (t.name == name) return t;
    throw Error("UnknownFixture", "no fixture named " + name);
}

} // namespace lamhat
