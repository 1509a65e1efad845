#include "collatz_mersenne/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <regex>
#include <sstream>
#include <thread>

#include "collatz_mersenne/catalog.hpp"
#include "collatz_mersenne/checkpoint.hpp"
#include "collatz_mersenne/csv.hpp"
#include "collatz_mersenne/errors.hpp"
#include "collatz_mersenne/heuristics.hpp"
#include "collatz_mersenne/survey.hpp"

namespace cm {

PathlenOutcome run_pathlen(const NumberExpression& expr, const PathlenOptions& options) {
    PathlenOutcome outcome{false, false, {}};
    if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
        Checkpoint saved = checkpoint_read(*options.checkpoint);
        if (!(saved.origin == expr)) {
            throw OriginMismatch("checkpoint " + options.checkpoint->string() + " belongs to " + render(saved.origin) +
                                 ", not " + render(expr));
        }
        outcome.state = restore(saved);
        outcome.resumed = true;
    } else {
        outcome.state = IterationState::start(evaluate(expr), expr);
    }

    IterationState& state = outcome.state;
    std::uint64_t budget = options.step_budget.value_or(UINT64_MAX);
    const std::uint64_t interval = options.checkpoint ? std::max<std::uint64_t>(options.checkpoint_interval, 1) : UINT64_MAX;

    while (!state.halted()) {
        if (state.steps >= options.cycle_guard) {
            throw CycleGuardExceeded(render(expr) + " did not reach 1 within " + std::to_string(options.cycle_guard) +
                                         " steps",
                                     options.cycle_guard);
        }
        if (budget == 0) return outcome;
        const std::uint64_t chunk = std::min({interval, budget, options.cycle_guard - state.steps});
        const std::uint64_t before = state.steps;
        state = advance(std::move(state), chunk);
        budget -= state.steps - before;
        if (options.checkpoint) checkpoint_write(*options.checkpoint, state);
    }
    outcome.completed = true;
    return outcome;
}

namespace {

struct GlobalOptions {
    std::string format = "csv";
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    std::uint64_t cycle_guard = kDefaultCycleGuard;

    TableFormat table_format() const { return format == "tsv" ? TableFormat::Tsv : TableFormat::Csv; }
};

// Exponents above this take minutes or more each.
constexpr std::uint64_t kSlowExponent = 250'000;

std::pair<int, int> parse_rank_range(const std::string& text) {
    static const std::regex kRange(R"((\d+)\.\.(\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, kRange)) throw CLI::ValidationError("--ranks", "expected A..B, got '" + text + "'");
    int from = std::stoi(m[1]);
    int to = std::stoi(m[2]);
    catalog_entry(from);
    catalog_entry(to);
    if (from > to) throw CLI::ValidationError("--ranks", "range is reversed");
    return {from, to};
}

void warn_if_slow(std::span<const std::uint64_t> exponents, std::ostream& err) {
    if (exponents.empty()) return;
    auto largest = *std::max_element(exponents.begin(), exponents.end());
    if (largest > kSlowExponent) {
        err << "warning: computing D(2^n-1) for n up to " << largest
            << "; this is a long-running job (hours to days for n in the millions)\n";
    }
}

std::vector<std::string> path_row(const NumberExpression& expr, const PathResult& r) {
    auto n = expression_exponent(expr);
    return {render(expr), n ? std::to_string(*n) : "", std::to_string(r.d), std::to_string(r.odd_steps),
            std::to_string(r.even_steps), std::to_string(r.peak_bit_length)};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Collatz path lengths of Mersenne numbers", "collatz_mersenne"};
    app.require_subcommand(1);
    GlobalOptions global;
    app.add_option("--format", global.format, "Output table format")->check(CLI::IsMember({"csv", "tsv"}));
    app.add_option("--jobs", global.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--cycle-guard", global.cycle_guard, "Step ceiling for a single path")->check(CLI::PositiveNumber);

    // pathlen
    auto* pathlen = app.add_subcommand("pathlen", "Path length D of one number")->fallthrough();
    std::string expr_text;
    std::string checkpoint_file;
    std::uint64_t checkpoint_interval = kDefaultCheckpointInterval;
    std::size_t trace_limit = 0;
    pathlen->add_option("expr", expr_text, "Number: 27, 2^20, 2^89-1, M89 or Mp10")->required();
    pathlen->add_option("--checkpoint", checkpoint_file, "Checkpoint file to write and resume from");
    pathlen->add_option("--checkpoint-interval", checkpoint_interval, "Steps between checkpoints")
        ->check(CLI::PositiveNumber);
    pathlen->add_option("--trace-limit", trace_limit, "Also emit up to K visited values");

    auto* catalog_cmd = app.add_subcommand("catalog", "Known Mersenne prime exponents with reference D")->fallthrough();
    bool catalog_csv = false;
    catalog_cmd->add_flag("--csv", catalog_csv, "Machine-readable output");

    auto* verify = app.add_subcommand("verify", "Recompute D for catalog ranks")->fallthrough();
    std::string ranks_text;
    verify->add_option("--ranks", ranks_text, "Rank range A..B")->required();

    auto* scan = app.add_subcommand("scan", "D(2^n-1)/n around an exponent")->fallthrough();
    std::uint64_t center = 0;
    std::uint64_t each_side = 25;
    std::uint64_t stride = 5;
    bool primes_only = false;
    scan->add_option("--center", center, "Center exponent")->required()->check(CLI::PositiveNumber);
    scan->add_option("--each-side", each_side, "Points on each side of the center");
    scan->add_option("--stride", stride, "Take every S-th candidate")->check(CLI::PositiveNumber);
    scan->add_flag("--primes-only", primes_only, "Only prime exponents");

    auto* stats = app.add_subcommand("stats", "Mean and variance of D/n over a comparison set")->fallthrough();
    std::string set_text;
    int from_rank = 26;
    int to_rank = 38;
    bool use_reference = false;
    stats->add_option("--set", set_text, "mersenne, A, B, C or D")->required();
    auto* from_opt = stats->add_option("--from-rank", from_rank, "First catalog rank");
    auto* to_opt = stats->add_option("--to-rank", to_rank, "Last catalog rank");
    stats->add_flag("--reference", use_reference, "Use published D values instead of computing them");

    auto* fit = app.add_subcommand("fit", "Least-squares line of log2(log2 Mp(k)) against k")->fallthrough();

    auto* heuristic = app.add_subcommand("heuristic", "Heuristic estimate of D(2^n-1)")->fallthrough();
    std::uint64_t heuristic_n = 0;
    heuristic->add_option("--n", heuristic_n, "Exponent")->required()->check(CLI::PositiveNumber);

    auto* ll = app.add_subcommand("lucas-lehmer", "Lucas-Lehmer test of 2^p-1")->fallthrough();
    std::uint64_t ll_p = 0;
    ll->add_option("p", ll_p, "Odd prime exponent")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    TableWriter table(out, global.table_format());
    try {
        if (pathlen->parsed()) {
            NumberExpression expr = parse_expression(expr_text);
            PathlenOptions options;
            if (!checkpoint_file.empty()) options.checkpoint = checkpoint_file;
            options.checkpoint_interval = checkpoint_interval;
            options.cycle_guard = global.cycle_guard;
            auto outcome = run_pathlen(expr, options);
            std::vector<std::string> header{"expr", "n", "d", "odd_steps", "even_steps", "peak_bit_length"};
            auto row = path_row(expr, to_result(outcome.state));
            if (trace_limit > 0) {
                header.emplace_back("trace");
                std::string joined;
                for (const auto& v : trace(evaluate(expr), trace_limit)) {
                    if (!joined.empty()) joined += ' ';
                    joined += v.to_decimal();
                }
                row.push_back(std::move(joined));
            }
            table.row(header);
            table.row(row);
            return kExitOk;
        }

        if (catalog_cmd->parsed()) {
            if (catalog_csv || global.format == "tsv") {
                table.row({"rank", "exponent", "reference_d", "reference_ratio"});
                for (const auto& e : catalog()) {
                    table.row({std::to_string(e.rank), std::to_string(e.exponent), std::to_string(e.reference_d),
                               format_double(e.reference_ratio)});
                }
            } else {
                out << " rank    exponent    reference_d  ratio\n";
                for (const auto& e : catalog()) {
                    char line[128];
                    std::snprintf(line, sizeof line, "%5d %11llu %14llu  %s%s\n", e.rank,
                                  static_cast<unsigned long long>(e.exponent),
                                  static_cast<unsigned long long>(e.reference_d), format_double(e.reference_ratio).c_str(),
                                  e.exponent != e.printed_exponent ? "  (published exponent corrected)" : "");
                    out << line;
                }
            }
            return kExitOk;
        }

        if (verify->parsed()) {
            auto [from, to] = parse_rank_range(ranks_text);
            std::vector<std::uint64_t> exponents;
            for (int k = from; k <= to; ++k) exponents.push_back(catalog_entry(k).exponent);
            warn_if_slow(exponents, err);
            auto lengths = mersenne_path_lengths(exponents, global.jobs, global.cycle_guard);
            table.row({"rank", "exponent", "reference_d", "d", "match"});
            bool all_match = true;
            for (int k = from; k <= to; ++k) {
                const auto& e = catalog_entry(k);
                std::uint64_t d = lengths[static_cast<std::size_t>(k - from)];
                bool match = d == e.reference_d;
                all_match = all_match && match;
                table.row({std::to_string(k), std::to_string(e.exponent), std::to_string(e.reference_d),
                           std::to_string(d), match ? "true" : "false"});
            }
            return all_match ? kExitOk : kExitMismatch;
        }

        if (scan->parsed()) {
            auto indices = scan_indices(center, each_side, stride, primes_only);
            warn_if_slow(indices, err);
            auto records = scan_ratios(center, each_side, stride, primes_only, global.jobs, global.cycle_guard);
            table.row({"n", "is_prime", "d", "ratio"});
            for (const auto& r : records) {
                table.row({std::to_string(r.exponent), r.is_prime_index ? "true" : "false", std::to_string(r.d),
                           format_double(r.ratio)});
            }
            return kExitOk;
        }

        if (stats->parsed()) {
            const SetLabel label = parse_label(set_text);
            const bool custom_range = from_opt->count() > 0 || to_opt->count() > 0;
            std::vector<ExponentPathLength> pairs;
            if (use_reference) {
                if (label == SetLabel::Mersenne) {
                    for (int k = from_rank; k <= to_rank; ++k) {
                        const auto& e = catalog_entry(k);
                        pairs.push_back({e.exponent, e.reference_d});
                    }
                } else if (custom_range) {
                    err << "error: published D values exist only for the default rank range 26..38\n";
                    return kExitUsage;
                } else {
                    pairs = reference_pairs(label);
                }
            } else {
                IndexSet set;
                switch (label) {
                    case SetLabel::Mersenne: set = mersenne_set(from_rank, to_rank); break;
                    case SetLabel::A: set = generate_set_A(mersenne_set(from_rank, to_rank)); break;
                    case SetLabel::B: set = generate_set_B(from_rank - 1, to_rank); break;
                    case SetLabel::C:
                        set = custom_range ? doubled_set(mersenne_set(from_rank, to_rank)) : fixture_set_C();
                        break;
                    case SetLabel::D: {
                        std::vector<RankExponent> points;
                        for (const auto& e : catalog()) points.push_back({e.rank, e.exponent});
                        set = custom_range ? fit_line_set(fit_loglog(points), from_rank, to_rank) : fixture_set_D();
                        break;
                    }
                }
                warn_if_slow(set.indices, err);
                auto lengths = mersenne_path_lengths(set.indices, global.jobs, global.cycle_guard);
                for (std::size_t i = 0; i < lengths.size(); ++i) pairs.push_back({set.indices[i], lengths[i]});
            }
            auto s = ratio_stats(pairs);
            table.row({"label", "count", "mean", "sample_variance"});
            table.row({std::string(label_name(label)), std::to_string(s.count), format_double(s.mean),
                       format_double(s.sample_variance)});
            return kExitOk;
        }

        if (fit->parsed()) {
            std::vector<RankExponent> points;
            for (const auto& e : catalog()) points.push_back({e.rank, e.exponent});
            auto f = fit_loglog(points);
            table.row({"intercept", "slope", "rms_residual"});
            table.row({format_double(f.intercept), format_double(f.slope), format_double(f.rms_residual)});
            return kExitOk;
        }

        if (heuristic->parsed()) {
            table.row({"n", "slope", "estimate"});
            table.row({std::to_string(heuristic_n), format_double(mersenne_slope()),
                       format_double(mersenne_heuristic(heuristic_n))});
            return kExitOk;
        }

        if (ll->parsed()) {
            bool prime = lucas_lehmer(ll_p);
            table.row({"p", "mersenne_prime"});
            table.row({std::to_string(ll_p), prime ? "true" : "false"});
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RangeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace cm
