#include "dutchbook/cli.hpp"

#include "dutchbook/bookfile.hpp"
#include "dutchbook/coherence.hpp"
#include "dutchbook/error.hpp"
#include "dutchbook/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace dutchbook {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

LoadedBook load_book(const std::string& path, std::size_t world_cap) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return realize(parse_book_file(in), world_cap);
}

/// Parsed "N,K" pair of the --xi option.
std::pair<std::size_t, std::size_t> parse_xi_spec(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--xi expects 'N,K'");
    try {
        std::size_t used_n = 0, used_k = 0;
        std::size_t N = std::stoul(text.substr(0, comma), &used_n);
        std::size_t K = std::stoul(text.substr(comma + 1), &used_k);
        if (used_n != comma || used_k != text.size() - comma - 1)
            throw std::invalid_argument("");
        return {N, K};
    } catch (const std::exception&) {
        throw std::invalid_argument("--xi expects 'N,K' with integer N and K");
    }
}

struct CheckSettings {
    std::vector<std::string> paths;
    ReportOptions options;
    std::size_t world_cap = kDefaultWorldCap;
    unsigned jobs = 1;
};

int cmd_check(const CheckSettings& settings, std::ostream& out,
              std::ostream& err) {
    struct FileResult {
        int code = 2;
        std::string report;
        std::string error;
    };
    std::vector<FileResult> results(settings.paths.size());

    auto work = [&](std::size_t index) {
        FileResult& result = results[index];
        try {
            LoadedBook loaded =
                load_book(settings.paths[index], settings.world_cap);
            if (loaded.book.size() == 0)
                throw std::invalid_argument(
                    "book file has no assessments to check");
            Verdict verdict = assess(loaded.book);
            result.report =
                render_check(loaded.book, verdict, settings.options);
            result.code = verdict.tag == Verdict::Tag::Consistent ? 0 : 1;
        } catch (const std::exception& e) {
            result.code = 2;
            result.error = e.what();
        }
    };

    std::size_t thread_count =
        std::min<std::size_t>(std::max(1u, settings.jobs),
                              settings.paths.size());
    if (thread_count <= 1) {
        for (std::size_t i = 0; i < settings.paths.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= results.size()) break;
                    work(i);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    // Reports are emitted in input order regardless of completion order so
    // repeated runs are bit-identical.
    int exit_code = 0;
    bool multi = settings.paths.size() > 1;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const FileResult& result = results[i];
        if (!result.error.empty()) {
            err << settings.paths[i] << ": error: " << result.error << "\n";
        } else {
            if (multi) out << "== " << settings.paths[i] << " ==\n";
            out << result.report;
        }
        exit_code = std::max(exit_code, result.code);
    }
    return exit_code;
}

int cmd_interval(const std::string& path, const std::string& query_text,
                 const ReportOptions& options, std::size_t world_cap,
                 std::ostream& out, std::ostream& err) {
    try {
        LoadedBook loaded = load_book(path, world_cap);

        std::vector<std::pair<FormulaPtr, Event>> queries;
        if (!query_text.empty()) {
            FormulaPtr formula =
                parse(query_text, loaded.algebra->universe());
            queries.emplace_back(formula, event_of(loaded.algebra, formula));
        } else {
            queries = loaded.queries;
        }
        if (queries.empty())
            throw std::invalid_argument(
                "no query: pass --query or add query lines to the book file");

        std::vector<IntervalResult> results;
        results.reserve(queries.size());
        bool any_empty = false;
        for (const auto& [formula, event] : queries) {
            ProbInterval interval =
                fundamental_interval(loaded.book, event);
            any_empty = any_empty || interval.is_empty;
            results.push_back(IntervalResult{formula, std::move(interval)});
        }
        out << render_interval(loaded.book, results, options);
        return any_empty ? 1 : 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const std::string& report_path, const std::string& book_path,
               std::ostream& out, std::ostream& err) {
    try {
        std::string report = read_file(report_path);
        VerifyOutcome outcome{false, ""};
        if (!book_path.empty()) {
            LoadedBook loaded = load_book(book_path, kDefaultWorldCap);
            outcome = verify_report(loaded, report);
        } else if (is_exchange_report(report)) {
            outcome = verify_exchange_report(report);
        } else {
            throw std::invalid_argument(
                "this report refers to a book: pass the book file as the "
                "second argument");
        }
        if (outcome.ok) {
            out << "VERIFIED\n";
            return 0;
        }
        out << "VERIFICATION FAILED: " << outcome.detail << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Coherence toolkit: decide whether partial probability "
                 "assignments extend to a state, bound query probabilities, "
                 "and manipulate exchangeable states, all in exact rational "
                 "arithmetic."};
    app.require_subcommand(1);

    CheckSettings check_settings;
    CLI::App* check = app.add_subcommand(
        "check", "Decide whether a book extends to a state");
    check->add_option("files", check_settings.paths, "book file(s)")
        ->required()
        ->expected(-1);
    unsigned check_decimal = 0;
    check->add_flag("--json", check_settings.options.json,
                    "machine-readable report");
    check->add_option("--decimal", check_decimal,
                      "append k-digit decimals to exact values");
    check->add_option("--max-vars", check_settings.world_cap,
                      "variable-count cap");
    check->add_option("--jobs", check_settings.jobs,
                      "assess multiple files concurrently");

    std::string interval_path, interval_query;
    ReportOptions interval_options;
    unsigned interval_decimal = 0;
    std::size_t interval_cap = kDefaultWorldCap;
    CLI::App* interval = app.add_subcommand(
        "interval", "Tight probability bounds for query events");
    interval->add_option("file", interval_path, "book file")->required();
    interval->add_option("--query", interval_query,
                         "query formula (default: the file's query lines)");
    interval->add_flag("--json", interval_options.json,
                       "machine-readable report");
    interval->add_option("--decimal", interval_decimal,
                         "append k-digit decimals to exact values");
    interval->add_option("--max-vars", interval_cap, "variable-count cap");

    CLI::App* exchange = app.add_subcommand(
        "exchange", "Exchangeable-state computations");
    exchange->require_subcommand(1);
    struct ExchangeArgs {
        std::string xi_spec;
        std::string product_bias;
        std::size_t N = 0;
        std::size_t n = 0;
        bool json = false;
        unsigned decimal = 0;
        CLI::App* cmd = nullptr;
    };
    ExchangeArgs restrict_args, decompose_args, approx_args;
    auto add_exchange_options = [](CLI::App* cmd, ExchangeArgs& args,
                                   bool wants_target) {
        args.cmd = cmd;
        cmd->add_option("--xi", args.xi_spec,
                        "source: the extremal state 'N,K'");
        cmd->add_option("--product", args.product_bias,
                        "source: the product state of this bias (with --N)");
        cmd->add_option("--N", args.N, "variable count of a product source");
        if (wants_target)
            cmd->add_option("--n", args.n, "target variable count")
                ->required();
        cmd->add_flag("--json", args.json, "machine-readable report");
        cmd->add_option("--decimal", args.decimal,
                        "append k-digit decimals to exact values");
    };
    add_exchange_options(
        exchange->add_subcommand("restrict",
                                 "Restrict a state to fewer variables"),
        restrict_args, true);
    add_exchange_options(
        exchange->add_subcommand("decompose",
                                 "Weights over extremal states"),
        decompose_args, false);
    add_exchange_options(
        exchange->add_subcommand("approx",
                                 "Product-mixture approximation and its "
                                 "exact error"),
        approx_args, true);

    std::string verify_report_path, verify_book_path;
    CLI::App* verify = app.add_subcommand(
        "verify", "Re-check a machine-readable report");
    verify->add_option("report", verify_report_path, "JSON report file")
        ->required();
    verify->add_option("book", verify_book_path,
                       "book file the report was produced from");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("dutchbook");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(check)) {
            if (check->count("--decimal"))
                check_settings.options.decimal_digits = check_decimal;
            return cmd_check(check_settings, out, err);
        }
        if (app.got_subcommand(interval)) {
            if (interval->count("--decimal"))
                interval_options.decimal_digits = interval_decimal;
            return cmd_interval(interval_path, interval_query,
                                interval_options, interval_cap, out, err);
        }
        if (app.got_subcommand(exchange)) {
            ExchangeArgs* args_ptr = nullptr;
            for (ExchangeArgs* candidate :
                 {&restrict_args, &decompose_args, &approx_args})
                if (exchange->got_subcommand(candidate->cmd))
                    args_ptr = candidate;
            ExchangeArgs& a = *args_ptr;

            ExchangeSource source;
            bool has_xi = a.cmd->count("--xi") > 0;
            bool has_product = a.cmd->count("--product") > 0;
            if (has_xi == has_product)
                throw std::invalid_argument(
                    "specify the source state with exactly one of --xi or "
                    "--product");
            if (has_xi) {
                source.kind = ExchangeSource::Kind::Xi;
                std::tie(source.N, source.K) = parse_xi_spec(a.xi_spec);
            } else {
                if (a.cmd->count("--N") == 0)
                    throw std::invalid_argument(
                        "--product needs --N for the variable count");
                source.kind = ExchangeSource::Kind::Product;
                source.bias = parse_rational(a.product_bias);
                source.N = a.N;
            }

            ReportOptions options;
            options.json = a.json;
            if (a.cmd->count("--decimal")) options.decimal_digits = a.decimal;

            ExchangeableState state = source.build();
            if (args_ptr == &restrict_args) {
                out << render_exchange_restrict(
                    source, restrict_state(state, a.n), options);
            } else if (args_ptr == &decompose_args) {
                out << render_exchange_decompose(source, decompose(state),
                                                 options);
            } else {
                out << render_exchange_approx(
                    source, mixture_approximation(state, a.n), options);
            }
            return 0;
        }
        if (app.got_subcommand(verify))
            return cmd_verify(verify_report_path, verify_book_path, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command given\n";
    return 2;
}

} // namespace dutchbook
