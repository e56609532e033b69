#pragma once

#include <string>
#include <vector>

namespace lamhat {

struct WorkedTerm {
    std::string name;
    std::string text; // lamhat concrete syntax
    std::string about;
};

// The worked terms of the calculus, in concrete syntax.
const std::vector<WorkedTerm>& worked_terms();
const WorkedTerm& worked_term(const std::string& name);

} // namespace lamhat
