#ifndef DUTCHBOOK_BOOKFILE_HPP
#define DUTCHBOOK_BOOKFILE_HPP

#include "dutchbook/algebra.hpp"
#include "dutchbook/coherence.hpp"
#include "dutchbook/formula.hpp"
#include "dutchbook/rational.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dutchbook {

/// Parsed contents of a book file.  The line-oriented format:
///
///   # comment (anywhere; rest of line ignored)
///   vars X1 X2 X3              mandatory first content line
///   constraint <formula>       optional, at most once
///   <formula> := <prob>        one assessment per line
///   query <formula>            zero or more query events
///
/// Probabilities are exact rationals: "3/5", "0.6" (an exact base-10
/// fraction), or "0"/"1".  Prices outside [0,1] are rejected here.
/// The words `vars`, `constraint`, and `query` are reserved and cannot
/// name variables.
struct BookFile {
    Universe universe;
    FormulaPtr constraint; ///< null when absent
    std::vector<std::pair<FormulaPtr, Rat>> assessments;
    std::vector<FormulaPtr> queries;
};

/// Parse a book file; throws ParseError with a 1-based line number.
BookFile parse_book_file(std::istream& in);

/// Convenience overload for in-memory text.
BookFile parse_book_file_text(const std::string& text);

/// A book file realized against an actual algebra: the surviving worlds
/// are enumerated, formulas become events, and prices become a Book.
struct LoadedBook {
    AlgebraPtr algebra;
    Book book;
    std::vector<std::pair<FormulaPtr, Event>> queries;
};

/// Build the algebra (respecting `world_cap`) and interpret every formula
/// of the file in it.
LoadedBook realize(const BookFile& file, std::size_t world_cap = kDefaultWorldCap);

} // namespace dutchbook

#endif // DUTCHBOOK_BOOKFILE_HPP
