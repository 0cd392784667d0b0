#ifndef DUTCHBOOK_REPORT_HPP
#define DUTCHBOOK_REPORT_HPP

#include "dutchbook/bookfile.hpp"
#include "dutchbook/coherence.hpp"
#include "dutchbook/exchangeability.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dutchbook {

/// Output shaping shared by every report.  `decimal_digits` appends a
/// correctly rounded decimal next to each exact rational in text mode;
/// JSON mode always carries exact "p/q" strings only.
struct ReportOptions {
    bool json = false;
    std::optional<unsigned> decimal_digits;
};

/// How an exchangeable source state was specified on the command line;
/// echoed into reports so a verifier can rebuild the state.
struct ExchangeSource {
    enum class Kind { Xi, Product };

    Kind kind;
    std::size_t N = 0;
    std::size_t K = 0; ///< Xi only
    Rat bias;          ///< Product only

    std::string label() const;
    ExchangeableState build(std::size_t cap = kDefaultExchangeableCap) const;
};

/// One interval result bundled with the query it answers.
struct IntervalResult {
    FormulaPtr query;
    ProbInterval interval;
};

/// Render the outcome of `check`.  Inconsistent stakes are scaled to the
/// smallest integer vector with the same unit-loss direction; balances are
/// recomputed for those integer stakes.
std::string render_check(const Book& book, const Verdict& verdict,
                         const ReportOptions& options);

/// Render the outcome of `interval` for one or more queries.
std::string render_interval(const Book& book,
                            const std::vector<IntervalResult>& results,
                            const ReportOptions& options);

/// Render the three exchange operations.
std::string render_exchange_restrict(const ExchangeSource& source,
                                     const ExchangeableState& restricted,
                                     const ReportOptions& options);
std::string render_exchange_decompose(const ExchangeSource& source,
                                      const MixtureWeights& weights,
                                      const ReportOptions& options);
std::string render_exchange_approx(const ExchangeSource& source,
                                   const MixtureApproximation& approximation,
                                   const ReportOptions& options);

/// Re-check a machine-readable report (the --json output of check,
/// interval, or exchange) against the book file it came from.  Check and
/// interval certificates are re-verified by plain arithmetic through
/// verify_verdict / verify_interval; exchange reports are recomputed from
/// the embedded source.  Returns an explanation on failure.
struct VerifyOutcome {
    bool ok;
    std::string detail;
};
VerifyOutcome verify_report(const LoadedBook& loaded,
                            const std::string& report_json);

/// Exchange reports embed no book; this overload verifies them without one.
VerifyOutcome verify_exchange_report(const std::string& report_json);

/// True when the JSON document is an exchange report (so no book file is
/// needed to verify it).
bool is_exchange_report(const std::string& report_json);

} // namespace dutchbook

#endif // DUTCHBOOK_REPORT_HPP
