#include "dutchbook/bookfile.hpp"

#include "dutchbook/error.hpp"

#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace dutchbook {

namespace {

const char* const kReserved[] = {"vars", "constraint", "query"};

bool is_identifier(const std::string& token) {
    if (token.empty() || !std::isalpha(static_cast<unsigned char>(token[0])))
        return false;
    for (char c : token)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::string strip(const std::string& line) {
    std::string s = line;
    if (std::size_t hash = s.find('#'); hash != std::string::npos)
        s.erase(hash);
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what, line_no);
}

/// First whitespace-delimited word and the remainder of the line.
std::pair<std::string, std::string> split_keyword(const std::string& line) {
    std::size_t end = line.find_first_of(" \t");
    if (end == std::string::npos) return {line, ""};
    std::size_t rest = line.find_first_not_of(" \t", end);
    return {line.substr(0, end),
            rest == std::string::npos ? "" : line.substr(rest)};
}

FormulaPtr parse_line_formula(const std::string& text, const Universe& universe,
                              std::size_t line_no) {
    try {
        return parse(text, universe);
    } catch (const ParseError& e) {
        fail(line_no, e.what());
    }
}

} // namespace

BookFile parse_book_file(std::istream& in) {
    BookFile file;
    std::string raw;
    std::size_t line_no = 0;
    bool saw_vars = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (line.empty()) continue;
        auto [keyword, rest] = split_keyword(line);

        if (keyword == "vars") {
            if (saw_vars) fail(line_no, "duplicate vars line");
            std::istringstream tokens(rest);
            std::string token;
            while (tokens >> token) {
                if (!is_identifier(token))
                    fail(line_no, "invalid variable name '" + token + "'");
                for (const char* reserved : kReserved)
                    if (token == reserved)
                        fail(line_no, "'" + token +
                                          "' is a reserved word and cannot "
                                          "name a variable");
                for (const std::string& existing : file.universe)
                    if (existing == token)
                        fail(line_no, "duplicate variable '" + token + "'");
                file.universe.push_back(token);
            }
            if (file.universe.empty())
                fail(line_no, "vars line declares no variables");
            saw_vars = true;
            continue;
        }

        if (!saw_vars)
            fail(line_no, "expected a vars line before '" + keyword + "'");

        if (keyword == "constraint") {
            if (file.constraint) fail(line_no, "duplicate constraint line");
            file.constraint = parse_line_formula(rest, file.universe, line_no);
            continue;
        }

        if (keyword == "query") {
            file.queries.push_back(
                parse_line_formula(rest, file.universe, line_no));
            continue;
        }

        // Assessment line: <formula> := <prob>
        std::size_t assign = line.find(":=");
        if (assign == std::string::npos)
            fail(line_no,
                 "expected '<formula> := <probability>' (no ':=' found)");
        std::string formula_text = line.substr(0, assign);
        std::string price_text = line.substr(assign + 2);
        FormulaPtr event =
            parse_line_formula(formula_text, file.universe, line_no);
        Rat price;
        try {
            price = parse_rational(price_text);
        } catch (const std::invalid_argument& e) {
            fail(line_no, e.what());
        }
        if (price < 0 || price > 1)
            fail(line_no,
                 "price " + to_string(price) + " lies outside [0,1]");
        file.assessments.emplace_back(std::move(event), std::move(price));
    }

    if (!saw_vars)
        fail(line_no == 0 ? 1 : line_no, "book file has no vars line");
    return file;
}

BookFile parse_book_file_text(const std::string& text) {
    std::istringstream in(text);
    return parse_book_file(in);
}

LoadedBook realize(const BookFile& file, std::size_t world_cap) {
    AlgebraPtr algebra =
        build_algebra(file.universe, file.constraint, world_cap);

    std::vector<std::pair<Event, Rat>> priced;
    priced.reserve(file.assessments.size());
    for (const auto& [formula, price] : file.assessments)
        priced.emplace_back(event_of(algebra, formula), price);

    std::vector<std::pair<FormulaPtr, Event>> queries;
    queries.reserve(file.queries.size());
    for (const FormulaPtr& q : file.queries)
        queries.emplace_back(q, event_of(algebra, q));

    return LoadedBook{algebra, Book(algebra, std::move(priced)),
                      std::move(queries)};
}

} // namespace dutchbook
