#ifndef DUTCHBOOK_ERROR_HPP
#define DUTCHBOOK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dutchbook {

/// Raised when textual input (a formula or a book file) is malformed.
/// The message always embeds the offending location; `position()` exposes
/// it separately so callers can point at the character or line in question.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message), position_(position) {}

    /// Character offset (formula text) or line number (book file) of the error.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Raised when a request exceeds a configured resource cap: too many
/// variables to enumerate, too large an exchangeable-state index, or a
/// solver that ran past its pivot budget.  Never a silent wrong answer.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace dutchbook

#endif // DUTCHBOOK_ERROR_HPP
