#pragma once

#include <stdexcept>
#include <string>

namespace adasync {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(std::string msg, int line_, int column_ = 0)
        : Error("parse error at line " + std::to_string(line_) +
                (column_ > 0 ? ":" + std::to_string(column_) : "") + ": " + std::move(msg)),
          line(line_),
          column(column_) {}
};

struct MalformedTree : Error {
    using Error::Error;
};

struct NotDeterministic : Error {
    using Error::Error;
};

struct NotEnabled : Error {
    using Error::Error;
};

struct NotNormalized : Error {
    using Error::Error;
};

struct InvalidSubset : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

struct PullBackFailure : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

}  // namespace adasync
