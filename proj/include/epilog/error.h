#ifndef EPILOG_ERROR_H
#define EPILOG_ERROR_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epilog
{

/// Input outside the mathematical domain of an operation (invalid rates, controls, initial state).
class DomainError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure inside a numerical kernel: non-finite values, state overflow.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed case-count input. `row()` is 1-based and counts the header as row 1.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t row, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) + ": " + what)
        , m_row(row)
    {
    }

    std::size_t row() const noexcept
    {
        return m_row;
    }

private:
    std::size_t m_row;
};

} // namespace epilog

#endif // EPILOG_ERROR_H
