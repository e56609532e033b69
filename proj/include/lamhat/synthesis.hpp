#pragma once

#include "lamhat/reduction.hpp"
#include "lamhat/types.hpp"

#include <string>

namespace lamhat {

// Renames a derivation onto an alpha-equivalent subject.
DerivPtr realign(const DerivPtr& d, const TermPtr& t);

DerivPtr type_cf_normal_form(const TermPtr& t);

// From Γ; x:M ⊢ t : σ and Δ ⊢ u : M to Γ+Δ ⊢ t{x/u} : σ.
DerivPtr weighted_substitute(const DerivPtr& phi_t, const std::string& x, const DerivPtr& phi_u);

struct AntiSubstitution {
    DerivPtr phi_t;
    DerivPtr phi_u;
    Multiset m;
};

AntiSubstitution anti_substitute(const DerivPtr& phi, const TermPtr& t, const std::string& x, const TermPtr& u);

DerivPtr transport_step(const DerivPtr& phi, const Step& step);
DerivPtr expand_step(const DerivPtr& phi, const Step& step);

struct SynthesisOutcome {
    enum class Kind { Typable, Untypable, Unknown };
    Kind kind = Kind::Unknown;
    DerivPtr derivation;
    size_t bound = 0;
    size_t steps = 0;
    TermPtr normal;       // the normal form reached, if any
    Position witness;     // Untypable: the clash inside the normal form
    size_t fuel_spent = 0;
    Trace trace;

    std::string kind_name() const;
};

SynthesisOutcome synthesize(const TermPtr& t, size_t fuel);

} // namespace lamhat
