#pragma once

#include "lamhat/reduction.hpp"
#include "lamhat/syntax.hpp"

#include <optional>
#include <string>

namespace lamhat {

struct NfClass {
    enum class Kind { NotNormal, Neutral, NeutralData, Normal };
    Kind kind = Kind::NotNormal;
    std::optional<std::string> tag; // the exposed tag c with const_c(t)

    bool normal() const { return kind != Kind::NotNormal; }
    bool neutral_data() const { return kind == Kind::Neutral || kind == Kind::NeutralData; }
    bool neutral() const { return kind == Kind::Neutral; }
    std::string str() const;
};

// Most specific grammar class: ne, then na_c, then no_c.
NfClass nf_class(const TermPtr& t);
bool in_ne(const TermPtr& t);
bool in_na(const TermPtr& t, const std::string& c);
bool in_no(const TermPtr& t, const std::string& c);

enum class BaseClash { DataApplied, MatchAbs, MatchTag, CaseAbs, CaseTag };
std::string base_clash_name(BaseClash k);
std::optional<BaseClash> base_clash(const TermPtr& t);

struct ClashReport {
    bool is_clash = false;
    Position witness; // innermost base clash, through fun / body / arg / scrut steps
    std::optional<BaseClash> kind;
};

ClashReport is_clash(const TermPtr& t);
bool in_ncf(const TermPtr& t);
bool is_clash_free_nf(const TermPtr& t);

struct NfShape {
    enum class Kind { Abstraction, Data };
    Kind kind;
    std::string tag;
};

NfShape closed_nf_shape(const TermPtr& t);

} // namespace lamhat
