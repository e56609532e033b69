#include "lamhat/text.hpp"
#include "lamhat/types.hpp"

#include <json.hpp>

namespace lamhat {

using json = nlohmann::ordered_json;

static json encode(const DerivPtr& d) {
    json ctx = json::object();
    for (auto& [x, m] : d->ctx) ctx[x] = str(m);
    json j;
    j["rule"] = typing_rule_name(d->rule);
    j["conclusion"] = {{"context", ctx},
                       {"subject", d->is_pattern() ? pretty(d->pattern) : pretty(d->term)},
                       {"type", d->type_str()}};
    json kids = json::array();
    for (auto& k : d->kids) kids.push_back(encode(k));
    j["children"] = kids;
    if (d->rule == TypingRule::Case) j["selected_branch"] = d->branch;
    return j;
}

std::string to_json(const DerivPtr& d, int indent) { return encode(d).dump(indent); }

static DerivPtr decode(const json& j, TagRegistry& tags, const std::string& path) {
    auto bad = [&](const std::string& msg) { return Error("DerivationFormat", path + ": " + msg); };
    if (!j.is_object()) throw bad("expected an object");
    if (!j.contains("rule") || !j["rule"].is_string()) throw bad("missing rule");
    auto rule = parse_typing_rule(j["rule"].get<std::string>());
    if (!rule) throw bad("unknown rule '" + j["rule"].get<std::string>() + "'");
    if (!j.contains("conclusion") || !j["conclusion"].is_object()) throw bad("missing conclusion");
    auto& c = j["conclusion"];
    auto d = std::make_shared<Derivation>();
    d->rule = *rule;
    try {
        auto subject = c.at("subject").get<std::string>();
        if (d->is_pattern())
            d->pattern = parse_pattern(subject, &tags);
        else
            d->term = parse_term(subject, &tags);
        auto type = c.at("type").get<std::string>();
        if (d->is_multiset())
            d->mtype = parse_multiset(type);
        else
            d->type = parse_type(type);
        if (c.contains("context"))
            for (auto& [x, m] : c["context"].items()) {
                auto ms = parse_multiset(m.get<std::string>());
                if (!ms.empty()) d->ctx.emplace(x, ms);
            }
    } catch (const json::exception& e) {
        throw bad(e.what());
    } catch (const Error& e) {
        throw bad(e.what());
    }
    if (j.contains("children")) {
        if (!j["children"].is_array()) throw bad("children must be an array");
        for (size_t i = 0; i < j["children"].size(); ++i)
            d->kids.push_back(decode(j["children"][i], tags, path + "." + std::to_string(i)));
    }
    if (j.contains("selected_branch")) {
        if (!j["selected_branch"].is_number_integer()) throw bad("selected_branch must be an integer");
        d->branch = j["selected_branch"].get<int>();
    } else if (d->rule == TypingRule::Case) {
        throw bad("case node without selected_branch");
    }
    return d;
}

DerivPtr from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error("DerivationFormat", e.what());
    }
    TagRegistry tags;
    return decode(j, tags, "root");
}

} // namespace lamhat
