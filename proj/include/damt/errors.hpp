#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace damt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DegenerateTreatment : Error {
    using Error::Error;
};

// Non-finite outcome value; row/col are 0-based matrix positions.
struct NonFiniteValue : Error {
    NonFiniteValue(std::size_t row, std::size_t col)
        : Error("non-finite outcome value at row " + std::to_string(row) +
                ", column " + std::to_string(col)),
          row(row),
          col(col) {}
    std::size_t row;
    std::size_t col;
};

struct DuplicateName : Error {
    explicit DuplicateName(const std::string& name)
        : Error("duplicate outcome name: " + name), name(name) {}
    std::string name;
};

struct TooManyFolds : Error {
    using Error::Error;
};

struct FoldOutOfRange : Error {
    using Error::Error;
};

struct DegenerateSubsample : Error {
    using Error::Error;
};

struct EmptyPool : Error {
    using Error::Error;
};

struct InconsistentDimensions : Error {
    using Error::Error;
};

struct OutOfRangeP : Error {
    using Error::Error;
};

struct DegenerateDraw : Error {
    using Error::Error;
};

// Input file problem; line is 1-based, field is 1-based (0 = whole line).
struct ParseError : Error {
    ParseError(const std::string& path, std::size_t line, std::size_t field,
               const std::string& what)
        : Error(path + ":" + std::to_string(line) +
                (field ? ": field " + std::to_string(field) : "") + ": " + what),
          line(line),
          field(field) {}
    std::size_t line;
    std::size_t field;
};

}  // namespace damt
