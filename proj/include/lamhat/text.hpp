#pragma once

#include "lamhat/syntax.hpp"

#include <string>
#include <string_view>

namespace lamhat {

struct SourceSpan {
    size_t begin = 0;
    size_t end = 0;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourceSpan span, size_t line, size_t col)
        : Error("ParseError", std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          span(span), line(line), col(col) {}
    SourceSpan span;
    size_t line, col;
};

struct Program {
    TagRegistry tags;
    TermPtr term;
};

// Parses `tag T/n;` declarations followed by one term. Tags met for the first time get their arity from that use.
Program parse_program(std::string_view text, TagRegistry tags = {});
TermPtr parse_term(std::string_view text, TagRegistry* tags = nullptr);
PatternPtr parse_pattern(std::string_view text, TagRegistry* tags = nullptr);

std::string pretty(const TermPtr& t);
std::string pretty(const PatternPtr& p);

} // namespace lamhat
