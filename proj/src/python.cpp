#include "lamhat/classifier.hpp"
#include "lamhat/encodings.hpp"
#include "lamhat/reduction.hpp"
#include "lamhat/synthesis.hpp"
#include "lamhat/text.hpp"
#include "lamhat/types.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lamhat;

namespace {

py::list steps_of(const Trace& tr) {
    py::list out;
    for (auto& s : tr.steps) {
        py::dict d;
        d["rule"] = rule_name(s.rule);
        d["position"] = position_name(s.position);
        d["after"] = pretty(s.after);
        out.append(d);
    }
    return out;
}

py::dict evaluate_text(const std::string& text, size_t fuel) {
    auto ev = evaluate(parse_term(text), fuel);
    py::dict d;
    d["normal"] = ev.normal;
    d["term"] = pretty(ev.term);
    d["counters"] = ev.trace.counters;
    d["steps"] = steps_of(ev.trace);
    return d;
}

py::dict classify_text(const std::string& text) {
    auto t = parse_term(text);
    auto c = is_clash(t);
    py::dict d;
    d["class"] = nf_class(t).str();
    d["clash"] = c.is_clash;
    if (c.is_clash) {
        d["witness"] = position_name(c.witness);
        d["clash_kind"] = base_clash_name(*c.kind);
    }
    d["clash_free_nf"] = is_clash_free_nf(t);
    return d;
}

py::dict synthesize_text(const std::string& text, size_t fuel) {
    auto o = synthesize(parse_term(text), fuel);
    py::dict d;
    d["outcome"] = o.kind_name();
    d["steps"] = o.steps;
    if (o.kind == SynthesisOutcome::Kind::Typable) {
        d["bound"] = o.bound;
        d["type"] = str(o.derivation->type);
        d["derivation"] = to_json(o.derivation);
    }
    if (o.kind == SynthesisOutcome::Kind::Untypable) d["witness"] = pretty(subterm_at(o.normal, o.witness));
    return d;
}

py::list check_json(const std::string& text) {
    auto d = from_json(text);
    py::list out;
    auto add = [&](const DerivViolation& v) {
        py::dict x;
        x["path"] = v.path;
        x["rule"] = v.rule;
        x["kind"] = v.kind;
        x["message"] = v.message;
        out.append(x);
    };
    for (auto& v : check_derivation(d)) add(v);
    if (out.empty())
        if (auto r = relevance_check(d)) add(*r);
    return out;
}

py::dict simulate_text(const std::string& text, const std::string& from, size_t steps) {
    auto k = parse_calculus(from);
    auto rep = check_simulation(parse_source(text, k), k, steps);
    py::list certs;
    for (auto& c : rep.certificates) {
        py::dict x;
        x["source_rule"] = c.source_rule;
        x["target_rules"] = steps_of(c.target);
        certs.append(x);
    }
    py::dict d;
    d["ok"] = rep.ok;
    d["certificates"] = certs;
    d["failure"] = rep.failure;
    return d;
}

} // namespace

PYBIND11_MODULE(lamhat, m) {
    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), (e.code() + ": " + e.what()).c_str());
        }
    });

    m.def("pretty", [](const std::string& text) { return pretty(parse_term(text)); }, py::arg("term"));
    m.def("alpha_eq", [](const std::string& a, const std::string& b) { return alpha_eq(parse_term(a), parse_term(b)); });
    m.def("evaluate", &evaluate_text, py::arg("term"), py::arg("fuel") = 10000);
    m.def("classify", &classify_text, py::arg("term"));
    m.def("encode", [](const std::string& text, const std::string& from) {
        auto k = parse_calculus(from);
        return pretty(translate(parse_source(text, k), k));
    }, py::arg("term"), py::arg("source"));
    m.def("simulate", &simulate_text, py::arg("term"), py::arg("source"), py::arg("steps") = 10);
    m.def("synthesize", &synthesize_text, py::arg("term"), py::arg("fuel") = 10000);
    m.def("check", &check_json, py::arg("derivation"));
    m.def("size", [](const std::string& text) { return size(from_json(text)); }, py::arg("derivation"));
}
