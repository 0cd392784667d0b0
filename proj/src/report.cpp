#include "dutchbook/report.hpp"

#include "dutchbook/error.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace dutchbook {

namespace {

using Json = nlohmann::ordered_json;

/// Exact rendering, plus a rounded decimal when requested (text mode only).
std::string fmt(const Rat& value, const ReportOptions& options) {
    std::string out = to_string(value);
    if (options.decimal_digits)
        out += " (" + to_decimal_string(value, *options.decimal_digits) + ")";
    return out;
}

std::vector<std::string> world_labels(const AlgebraPtr& algebra) {
    std::vector<std::string> labels;
    labels.reserve(algebra->size());
    for (const World& w : algebra->worlds()) labels.push_back(w.to_string());
    return labels;
}

Json rational_array(const std::vector<Rat>& values) {
    Json array = Json::array();
    for (const Rat& v : values) array.push_back(to_string(v));
    return array;
}

void append_mass_lines(std::ostringstream& out, const AlgebraPtr& algebra,
                       const std::vector<Rat>& masses,
                       const ReportOptions& options) {
    const std::vector<World>& worlds = algebra->worlds();
    for (std::size_t i = 0; i < worlds.size(); ++i)
        out << "  " << worlds[i].to_string() << ": " << fmt(masses[i], options)
            << "\n";
}

/// The smallest integer stake vector pointing the same way: multiply the
/// exact unit-loss stakes by the common denominator.
std::vector<Rat> integer_stakes(const std::vector<Rat>& stakes) {
    Rat factor(common_denominator(stakes));
    std::vector<Rat> cleared;
    cleared.reserve(stakes.size());
    for (const Rat& s : stakes) cleared.push_back(s * factor);
    return cleared;
}

std::vector<Rat> parse_rational_array(const Json& array) {
    std::vector<Rat> values;
    values.reserve(array.size());
    for (const auto& item : array)
        values.push_back(parse_rational(item.get<std::string>()));
    return values;
}

Json source_json(const ExchangeSource& source) {
    Json j;
    if (source.kind == ExchangeSource::Kind::Xi) {
        j["kind"] = "xi";
        j["N"] = source.N;
        j["K"] = source.K;
    } else {
        j["kind"] = "product";
        j["N"] = source.N;
        j["bias"] = to_string(source.bias);
    }
    return j;
}

ExchangeSource source_from_json(const Json& j) {
    ExchangeSource source;
    std::string kind = j.at("kind").get<std::string>();
    source.N = j.at("N").get<std::size_t>();
    if (kind == "xi") {
        source.kind = ExchangeSource::Kind::Xi;
        source.K = j.at("K").get<std::size_t>();
    } else if (kind == "product") {
        source.kind = ExchangeSource::Kind::Product;
        source.bias = parse_rational(j.at("bias").get<std::string>());
    } else {
        throw std::invalid_argument("unknown exchange source kind '" + kind +
                                    "'");
    }
    return source;
}

void append_class_lines(std::ostringstream& out, char symbol,
                        const std::vector<Rat>& values,
                        const ReportOptions& options) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out << "  " << symbol << "=" << i << ": " << fmt(values[i], options)
            << "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

VerifyOutcome pass() { return {true, "certificate re-checked exactly"}; }
VerifyOutcome failure(std::string detail) { return {false, std::move(detail)}; }

VerifyOutcome verify_check_object(const LoadedBook& loaded, const Json& j) {
    const Book& book = loaded.book;
    if (j.contains("worlds")) {
        std::vector<std::string> expect = world_labels(loaded.algebra);
        if (j["worlds"].get<std::vector<std::string>>() != expect)
            return failure("world list does not match the book's algebra");
    }
    std::string verdict_name = j.at("verdict").get<std::string>();
    if (verdict_name == "consistent") {
        Verdict verdict;
        verdict.tag = Verdict::Tag::Consistent;
        try {
            verdict.state.emplace(loaded.algebra,
                                  parse_rational_array(j.at("state")));
        } catch (const std::invalid_argument& e) {
            return failure(std::string("reported state is not a state: ") +
                           e.what());
        }
        if (!verify_verdict(book, verdict))
            return failure("reported state does not reproduce every price");
        return pass();
    }
    if (verdict_name == "inconsistent") {
        Verdict verdict;
        verdict.tag = Verdict::Tag::Inconsistent;
        verdict.stakes = parse_rational_array(j.at("stakes"));
        if (!verify_verdict(book, verdict))
            return failure(
                "reported stakes do not lose at least 1 in every world");
        if (j.contains("balances")) {
            std::vector<Rat> reported = parse_rational_array(j["balances"]);
            if (reported != balances(book, verdict.stakes))
                return failure("reported balances do not match the stakes");
        }
        return pass();
    }
    return failure("unknown verdict '" + verdict_name + "'");
}

VerifyOutcome verify_interval_object(const LoadedBook& loaded, const Json& j) {
    const Book& book = loaded.book;
    FormulaPtr query_formula;
    try {
        query_formula = parse(j.at("query").get<std::string>(),
                              loaded.algebra->universe());
    } catch (const ParseError& e) {
        return failure(std::string("reported query does not parse: ") +
                       e.what());
    }
    Event query = event_of(loaded.algebra, query_formula);

    std::string verdict_name = j.at("verdict").get<std::string>();
    ProbInterval interval;
    if (verdict_name == "empty") {
        interval.is_empty = true;
        if (!verify_interval(book, query, interval))
            return failure("book is consistent, so the interval cannot be "
                           "empty");
        return pass();
    }
    if (verdict_name != "interval")
        return failure("unknown verdict '" + verdict_name + "'");
    if (j.contains("worlds")) {
        std::vector<std::string> expect = world_labels(loaded.algebra);
        if (j["worlds"].get<std::vector<std::string>>() != expect)
            return failure("world list does not match the book's algebra");
    }
    interval.lo = parse_rational(j.at("interval").at(0).get<std::string>());
    interval.hi = parse_rational(j.at("interval").at(1).get<std::string>());
    try {
        interval.witness_lo.emplace(
            loaded.algebra, parse_rational_array(j.at("witnesses").at("lo")));
        interval.witness_hi.emplace(
            loaded.algebra, parse_rational_array(j.at("witnesses").at("hi")));
    } catch (const std::invalid_argument& e) {
        return failure(std::string("reported witness is not a state: ") +
                       e.what());
    }
    if (!verify_interval(book, query, interval))
        return failure("witnesses fail to extend the book or to attain the "
                       "reported endpoints");
    return pass();
}

VerifyOutcome verify_exchange_object(const Json& j) {
    ExchangeSource source = source_from_json(j.at("source"));
    ExchangeableState state = source.build();
    std::string operation = j.at("operation").get<std::string>();
    if (operation == "restrict") {
        std::size_t n = j.at("n").get<std::size_t>();
        if (parse_rational_array(j.at("values")) !=
            restrict_state(state, n).class_values())
            return failure("reported restriction differs from recomputation");
        return pass();
    }
    if (operation == "decompose") {
        if (parse_rational_array(j.at("weights")) !=
            decompose(state).weights())
            return failure("reported weights differ from recomputation");
        return pass();
    }
    if (operation == "approx") {
        std::size_t n = j.at("n").get<std::size_t>();
        MixtureApproximation approx = mixture_approximation(state, n);
        if (parse_rational_array(j.at("weights")) !=
            approx.weights().weights())
            return failure("reported weights differ from recomputation");
        if (parse_rational_array(j.at("approximation")) !=
            approx.approximate_class_values())
            return failure("reported approximation differs from recomputation");
        if (parse_rational_array(j.at("restriction")) !=
            approx.restricted_class_values())
            return failure("reported restriction differs from recomputation");
        if (parse_rational(j.at("sup_error").get<std::string>()) !=
            approx.sup_error())
            return failure("reported sup error differs from recomputation");
        return pass();
    }
    return failure("unknown exchange operation '" + operation + "'");
}

VerifyOutcome verify_parsed(const LoadedBook* loaded, const Json& j) {
    if (j.is_array()) {
        for (const Json& element : j) {
            VerifyOutcome outcome = verify_parsed(loaded, element);
            if (!outcome.ok) return outcome;
        }
        return pass();
    }
    std::string command = j.at("command").get<std::string>();
    if (command == "exchange") return verify_exchange_object(j);
    if (!loaded)
        return failure("a '" + command +
                       "' report needs the book file it came from");
    if (command == "check") return verify_check_object(*loaded, j);
    if (command == "interval") return verify_interval_object(*loaded, j);
    return failure("unknown report command '" + command + "'");
}

VerifyOutcome verify_text(const LoadedBook* loaded, const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        return failure(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        return verify_parsed(loaded, j);
    } catch (const Json::exception& e) {
        return failure(std::string("report is missing required fields: ") +
                       e.what());
    } catch (const std::invalid_argument& e) {
        return failure(std::string("report holds malformed values: ") +
                       e.what());
    }
}

} // namespace

std::string ExchangeSource::label() const {
    if (kind == Kind::Xi)
        return "xi(" + std::to_string(N) + "," + std::to_string(K) + ")";
    return "product(" + to_string(bias) + ", N=" + std::to_string(N) + ")";
}

ExchangeableState ExchangeSource::build(std::size_t cap) const {
    if (kind == Kind::Xi) return xi_state(N, K, cap);
    return product_state(bias, N, cap);
}

std::string render_check(const Book& book, const Verdict& verdict,
                         const ReportOptions& options) {
    if (verdict.tag == Verdict::Tag::Consistent) {
        const std::vector<Rat>& masses = verdict.state->masses();
        if (options.json) {
            Json j;
            j["command"] = "check";
            j["verdict"] = "consistent";
            j["worlds"] = world_labels(book.algebra());
            j["state"] = rational_array(masses);
            return dump(j);
        }
        std::ostringstream out;
        out << "CONSISTENT\nstate:\n";
        append_mass_lines(out, book.algebra(), masses, options);
        return out.str();
    }

    std::vector<Rat> stakes = integer_stakes(verdict.stakes);
    std::vector<Rat> balance = balances(book, stakes);
    if (options.json) {
        Json j;
        j["command"] = "check";
        j["verdict"] = "inconsistent";
        j["worlds"] = world_labels(book.algebra());
        j["stakes"] = rational_array(stakes);
        j["balances"] = rational_array(balance);
        return dump(j);
    }
    std::ostringstream out;
    out << "INCONSISTENT\nstakes (bettor):";
    for (const Rat& s : stakes) out << " " << to_string(s);
    out << "\nbalances (bookmaker):\n";
    append_mass_lines(out, book.algebra(), balance, options);
    return out.str();
}

std::string render_interval(const Book& book,
                            const std::vector<IntervalResult>& results,
                            const ReportOptions& options) {
    if (options.json) {
        Json array = Json::array();
        for (const IntervalResult& r : results) {
            Json j;
            j["command"] = "interval";
            j["query"] = to_string(r.query);
            if (r.interval.is_empty) {
                j["verdict"] = "empty";
            } else {
                j["verdict"] = "interval";
                j["worlds"] = world_labels(book.algebra());
                j["interval"] = Json::array({to_string(r.interval.lo),
                                             to_string(r.interval.hi)});
                j["witnesses"]["lo"] =
                    rational_array(r.interval.witness_lo->masses());
                j["witnesses"]["hi"] =
                    rational_array(r.interval.witness_hi->masses());
            }
            array.push_back(std::move(j));
        }
        return dump(array.size() == 1 ? array[0] : array);
    }

    std::ostringstream out;
    bool first = true;
    for (const IntervalResult& r : results) {
        if (!first) out << "\n";
        first = false;
        out << "query: " << to_string(r.query) << "\n";
        if (r.interval.is_empty) {
            out << "EMPTY\n";
            continue;
        }
        out << fmt(r.interval.lo, options) << " " << fmt(r.interval.hi, options)
            << "\n";
        out << "witness lo:\n";
        append_mass_lines(out, book.algebra(), r.interval.witness_lo->masses(),
                          options);
        out << "witness hi:\n";
        append_mass_lines(out, book.algebra(), r.interval.witness_hi->masses(),
                          options);
    }
    return out.str();
}

std::string render_exchange_restrict(const ExchangeSource& source,
                                     const ExchangeableState& restricted,
                                     const ReportOptions& options) {
    if (options.json) {
        Json j;
        j["command"] = "exchange";
        j["operation"] = "restrict";
        j["source"] = source_json(source);
        j["n"] = restricted.n();
        j["values"] = rational_array(restricted.class_values());
        return dump(j);
    }
    std::ostringstream out;
    out << "restriction of " << source.label() << " to n = " << restricted.n()
        << "\n";
    append_class_lines(out, 'k', restricted.class_values(), options);
    return out.str();
}

std::string render_exchange_decompose(const ExchangeSource& source,
                                      const MixtureWeights& weights,
                                      const ReportOptions& options) {
    if (options.json) {
        Json j;
        j["command"] = "exchange";
        j["operation"] = "decompose";
        j["source"] = source_json(source);
        j["N"] = weights.N();
        j["weights"] = rational_array(weights.weights());
        return dump(j);
    }
    std::ostringstream out;
    out << "extremal weights of " << source.label() << "\n";
    append_class_lines(out, 'K', weights.weights(), options);
    return out.str();
}

std::string render_exchange_approx(const ExchangeSource& source,
                                   const MixtureApproximation& approximation,
                                   const ReportOptions& options) {
    if (options.json) {
        Json j;
        j["command"] = "exchange";
        j["operation"] = "approx";
        j["source"] = source_json(source);
        j["n"] = approximation.n();
        j["weights"] = rational_array(approximation.weights().weights());
        j["approximation"] =
            rational_array(approximation.approximate_class_values());
        j["restriction"] =
            rational_array(approximation.restricted_class_values());
        j["sup_error"] = to_string(approximation.sup_error());
        return dump(j);
    }
    std::ostringstream out;
    out << "product-mixture approximation of " << source.label()
        << " at n = " << approximation.n() << "\n";
    out << "weights:\n";
    append_class_lines(out, 'K', approximation.weights().weights(), options);
    out << "approximation:\n";
    append_class_lines(out, 'k', approximation.approximate_class_values(),
                       options);
    out << "restriction:\n";
    append_class_lines(out, 'k', approximation.restricted_class_values(),
                       options);
    out << "sup error: " << fmt(approximation.sup_error(), options) << "\n";
    return out.str();
}

VerifyOutcome verify_report(const LoadedBook& loaded,
                            const std::string& report_json) {
    return verify_text(&loaded, report_json);
}

VerifyOutcome verify_exchange_report(const std::string& report_json) {
    return verify_text(nullptr, report_json);
}

bool is_exchange_report(const std::string& report_json) {
    try {
        Json j = Json::parse(report_json);
        if (j.is_array()) {
            for (const Json& element : j)
                if (element.at("command").get<std::string>() != "exchange")
                    return false;
            return !j.empty();
        }
        return j.at("command").get<std::string>() == "exchange";
    } catch (const Json::exception&) {
        return false;
    }
}

} // namespace dutchbook
