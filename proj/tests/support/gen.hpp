#pragma once

#include "lamhat/encodings.hpp"
#include "lamhat/syntax.hpp"

#include <random>

namespace lamhat::testing {

struct GenConfig {
    int max_depth = 6;
    bool closed = false;
    int redex_weight = 3; // relative weight of building a redex on purpose
};

// Nil/0, One/1, Pair/2, Triple/3
const TagRegistry& registry();

TermPtr random_term(std::mt19937_64& rng, const GenConfig& cfg = {});
SrcPtr random_source(std::mt19937_64& rng, Calculus k, int max_depth = 4);

// A base clash of a random kind, closed.
TermPtr random_base_clash(std::mt19937_64& rng, int depth = 2);
// Plugs a base clash into a random clash context: Cl t, Cl[p/u], t[p/Cl], case Cl of ...
TermPtr random_clash(std::mt19937_64& rng, int depth = 3, bool closed = true);

} // namespace lamhat::testing
