#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "citeshare/credit_stochastics.hpp"
#include "citeshare/errors.hpp"
#include "citeshare/json_io.hpp"
#include "citeshare/metric_engine.hpp"
#include "citeshare/ranking.hpp"
#include "citeshare/record_model.hpp"

namespace citeshare::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class OutputFormat { table, json, tsv };

struct Options {
    std::vector<std::string> inputs;
    std::string input_format;  // empty: infer from extension
    OutputFormat format = OutputFormat::table;
    SpanMode span_mode = SpanMode::to_last_publication;
    std::optional<std::int32_t> collection_date;
    std::string by;
    double epsilon_h = 0.0;
    std::vector<std::string> epsilons;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    double x_bar = 10.0;
    unsigned threads = 0;
    std::size_t bins = 20;
};

std::string fixed(double v, int decimals) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(decimals) << round_to(v, decimals);
    return s.str();
}

std::string fixed_or_na(const std::optional<double>& v, int decimals) { return v ? fixed(*v, decimals) : "N/A"; }

std::string read_all(std::istream& in) {
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CorpusFormat resolve_format(const std::string& path, const std::string& declared) {
    if (declared == "csv") return CorpusFormat::csv;
    if (declared == "json") return CorpusFormat::json;
    if (!declared.empty()) throw ArgumentError("unknown input format '" + declared + "'");
    if (path == "-") throw ArgumentError("reading standard input needs --input-format csv|json");
    if (auto f = format_from_extension(path)) return *f;
    throw ArgumentError("cannot infer format of '" + path + "' (use .csv/.json or --input-format)");
}

std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") return read_all(in);
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ArgumentError("cannot open '" + path + "'");
    return read_all(file);
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, "json", e.what());
    }
}

std::string stem_of(const std::string& path) { return path == "-" ? "stdin" : fs::path(path).stem().string(); }

void apply_collection_date(AuthorCorpus& corpus, const Options& opt) {
    if (opt.collection_date && !corpus.collection_date) corpus.collection_date = opt.collection_date;
}

AuthorCorpus load_single(const Options& opt, std::istream& in) {
    if (opt.inputs.size() != 1) throw ArgumentError("this command takes exactly one --input");
    const auto& path = opt.inputs.front();
    auto corpus = parse_corpus(read_source(path, in), resolve_format(path, opt.input_format), stem_of(path));
    apply_collection_date(corpus, opt);
    return corpus;
}

// Publications of one author with the unknown-author works removed; throws
// when nothing is left to measure.
FilteredCorpus usable_or_throw(const AuthorCorpus& corpus) {
    if (corpus.publications.empty()) throw ValidationError("no publications");
    auto filtered = filter_usable(corpus);
    if (filtered.corpus.publications.empty())
        throw ValidationError("no publications with known author information (" + std::to_string(filtered.removed) +
                              " works ignored)");
    return filtered;
}

std::string ignored_note(std::size_t removed) {
    return std::to_string(removed) + (removed == 1 ? " work" : " works") + " ignored (author information unknown)";
}

void print_rows(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
}

// ---------------------------------------------------------------- compute

int cmd_compute(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    auto corpus = load_single(opt, in);
    auto filtered = usable_or_throw(corpus);
    const auto& usable = filtered.corpus;
    auto report = compute_report(usable);
    auto h_max = h_max_bound(report.n_c, report.n_p);

    std::optional<double> h_tilde_value, t_years, h_tilde_t_value;
    if (report.i_index) {
        h_tilde_value = h_tilde(report.h, *report.i_index);
        t_years = career_span(usable, opt.span_mode);
        h_tilde_t_value = h_tilde_t(*h_tilde_value, *t_years);
    }

    if (filtered.removed > 0) err << "note: " << ignored_note(filtered.removed) << '\n';

    switch (opt.format) {
        case OutputFormat::json: {
            json doc{{"author_id", usable.author_id},
                     {"report", report},
                     {"h_max", h_max},
                     {"h_tilde", h_tilde_value ? json(*h_tilde_value) : json(nullptr)},
                     {"t_years", t_years ? json(*t_years) : json(nullptr)},
                     {"h_tilde_t", h_tilde_t_value ? json(*h_tilde_t_value) : json(nullptr)},
                     {"ignored_works", filtered.removed}};
            out << doc.dump(2) << '\n';
            break;
        }
        case OutputFormat::tsv:
            out << "author\tN_p\tN_c\th\th_max\tC_share\tI\tC\th_tilde\tT\th_tilde_T\tignored\n";
            out << usable.author_id << '\t' << report.n_p << '\t' << report.n_c << '\t' << report.h << '\t' << h_max
                << '\t' << fixed(report.c_share, 2) << '\t' << fixed_or_na(report.i_index, 2) << '\t'
                << fixed_or_na(report.c_index, 2) << '\t' << fixed_or_na(h_tilde_value, 2) << '\t'
                << fixed_or_na(t_years, 0) << '\t' << fixed_or_na(h_tilde_t_value, 1) << '\t' << filtered.removed
                << '\n';
            break;
        case OutputFormat::table:
            print_rows(out, {{"author", usable.author_id},
                             {"N_p", std::to_string(report.n_p)},
                             {"N_c", std::to_string(report.n_c)},
                             {"h", std::to_string(report.h)},
                             {"h_max", std::to_string(h_max)},
                             {"C_share", fixed(report.c_share, 2)},
                             {"I (%)", fixed_or_na(report.i_index, 2)},
                             {"C (%)", fixed_or_na(report.c_index, 2)},
                             {"h~", fixed_or_na(h_tilde_value, 2)},
                             {"T (years)", fixed_or_na(t_years, 0)},
                             {"h~_T", fixed_or_na(h_tilde_t_value, 1)}});
            if (filtered.removed > 0) out << "note: " << ignored_note(filtered.removed) << '\n';
            break;
    }
    return kSuccess;
}

// ---------------------------------------------------------------- rank

void collect_authors(const std::string& path, const Options& opt, std::istream& in,
                     std::vector<AuthorSummary>& summaries) {
    auto add_corpus = [&](AuthorCorpus corpus) {
        apply_collection_date(corpus, opt);
        usable_or_throw(corpus);
        summaries.push_back(summarize(corpus, opt.span_mode));
    };

    if (path != "-" && fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && format_from_extension(entry.path())) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw ArgumentError("no .csv or .json corpora in directory '" + path + "'");
        for (const auto& f : files) collect_authors(f.string(), opt, in, summaries);
        return;
    }

    auto format = resolve_format(path, opt.input_format);
    auto text = read_source(path, in);
    if (format == CorpusFormat::csv) {
        add_corpus(parse_corpus(text, format, stem_of(path)));
        return;
    }
    auto doc = parse_json_text(text);
    if (doc.is_object() && doc.contains("authors")) {
        for (auto& s : summaries_from_json(doc)) summaries.push_back(std::move(s));
    } else if (doc.is_object() && !doc.contains("publications")) {
        for (const auto& [author, value] : doc.items()) add_corpus(corpus_from_json(value, author));
    } else {
        add_corpus(corpus_from_json(doc, stem_of(path)));
    }
}

EpsilonMap parse_epsilons(const Options& opt) {
    EpsilonMap eps;
    if (opt.epsilon_h != 0.0) eps[Metric::h] = opt.epsilon_h;
    for (const auto& item : opt.epsilons) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ArgumentError("--epsilon expects metric=value, got '" + item + "'");
        double value;
        try {
            std::size_t used = 0;
            value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ArgumentError("bad epsilon value in '" + item + "'");
        }
        eps[parse_metric(item.substr(0, eq))] = value;
    }
    return eps;
}

int cmd_rank(const Options& opt, std::istream& in, std::ostream& out) {
    if (opt.inputs.empty()) throw ArgumentError("rank needs at least one --input");
    std::vector<AuthorSummary> summaries;
    for (const auto& path : opt.inputs) collect_authors(path, opt, in, summaries);
    if (summaries.empty()) throw ValidationError("no authors to rank");

    auto epsilon = parse_epsilons(opt);
    std::vector<RankedEntry> ranked;
    auto key = parse_ranking_key(opt.by.empty() ? "htilde" : opt.by);
    bool plain_h_tilde = key.terms.size() == 1 && key.terms[0].metric == Metric::h_tilde &&
                         key.terms[0].direction == Direction::descending;
    if (plain_h_tilde && epsilon.empty())
        ranked = rank_by_h_tilde(summaries);
    else
        ranked = rank_lexicographic(summaries, key, epsilon);

    switch (opt.format) {
        case OutputFormat::json:
            out << ranked_to_json(ranked).dump(2) << '\n';
            break;
        case OutputFormat::tsv:
            out << "rank\tauthor\tN_c\th\tI\th_tilde\th_tilde_T\n";
            for (const auto& e : ranked) {
                const auto& s = e.summary;
                out << e.rank << (e.tied ? "=" : "") << '\t' << s.author_id << '\t' << s.report.n_c << '\t'
                    << s.report.h << '\t' << fixed_or_na(s.report.i_index, 2) << '\t' << fixed(s.h_tilde, 2) << '\t'
                    << fixed(s.h_tilde_t, 1) << '\n';
            }
            break;
        case OutputFormat::table: {
            std::vector<std::vector<std::string>> rows{{"rank", "author", "N_c", "h", "I (%)", "h~", "h~_T"}};
            for (const auto& e : ranked) {
                const auto& s = e.summary;
                rows.push_back({std::to_string(e.rank) + (e.tied ? "=" : ""), s.author_id,
                                std::to_string(s.report.n_c), std::to_string(s.report.h),
                                fixed_or_na(s.report.i_index, 2), fixed(s.h_tilde, 2), fixed(s.h_tilde_t, 1)});
            }
            std::vector<std::size_t> widths(rows.front().size(), 0);
            for (const auto& r : rows)
                for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
            for (const auto& r : rows) {
                for (std::size_t c = 0; c < r.size(); ++c) {
                    if (c == 1)
                        out << std::left << std::setw(static_cast<int>(widths[c])) << r[c];
                    else
                        out << std::right << std::setw(static_cast<int>(widths[c])) << r[c];
                    out << (c + 1 < r.size() ? "  " : "\n");
                }
            }
            break;
        }
    }
    return kSuccess;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    if (!(opt.x_bar >= 0.0 && opt.x_bar <= kMaxSpreadPercent)) throw ArgumentError("--xbar must lie in [0, 20]");
    auto corpus = load_single(opt, in);
    auto filtered = usable_or_throw(corpus);
    if (filtered.removed > 0) err << "note: " << ignored_note(filtered.removed) << '\n';

    NoiseSpec noise{opt.x_bar, {}};
    SimulationOptions sim{opt.trials, opt.seed, opt.threads, opt.bins};
    auto result = simulate_i_distribution(filtered.corpus, noise, sim);

    if (opt.format == OutputFormat::json) {
        json doc = result;
        doc["corpus_digest"] = corpus_digest(filtered.corpus);
        doc["noise"] = noise;
        out << doc.dump(2) << '\n';
        return kSuccess;
    }

    const char* sep = opt.format == OutputFormat::tsv ? "\t" : "  ";
    if (opt.format == OutputFormat::tsv) {
        out << "quantity\tempirical\tpredicted\n";
    } else {
        print_rows(out, {{"author", filtered.corpus.author_id},
                         {"corpus digest", corpus_digest(filtered.corpus)},
                         {"trials", std::to_string(result.trials)},
                         {"seed", std::to_string(result.seed)},
                         {"l (h-index)", std::to_string(result.significant_papers)},
                         {"n_bar", fixed(result.n_bar, 4)},
                         {"x_bar", fixed(result.x_bar, 4)}});
        out << '\n' << std::left << std::setw(16) << "quantity" << std::setw(12) << "empirical" << "predicted\n";
    }
    auto line = [&](const std::string& name, double emp, std::optional<double> pred) {
        if (opt.format == OutputFormat::tsv)
            out << name << sep << fixed(emp, 6) << sep << (pred ? fixed(*pred, 6) : "") << '\n';
        else
            out << std::left << std::setw(16) << name << std::setw(12) << fixed(emp, 4)
                << (pred ? fixed(*pred, 4) : "") << '\n';
    };
    line("mean I (%)", result.empirical_mean, result.predicted_mean);
    line("sigma (%)", result.empirical_std, result.predicted_sigma);
    line("skewness", result.skewness, 0.0);
    line("excess kurtosis", result.excess_kurtosis, 0.0);

    out << (opt.format == OutputFormat::tsv ? "\nbin_center\tcount\n" : "\nhistogram\n");
    for (const auto& b : result.histogram) {
        if (opt.format == OutputFormat::tsv)
            out << fixed(b.center, 6) << '\t' << b.count << '\n';
        else
            out << "  " << std::left << std::setw(12) << fixed(b.center, 4) << b.count << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    if (opt.inputs.size() != 1) throw ArgumentError("validate takes exactly one --input");
    const auto& path = opt.inputs.front();
    auto format = resolve_format(path, opt.input_format);
    auto text = read_source(path, in);

    MetricReport report;
    std::string label = stem_of(path);
    std::optional<json> doc;
    if (format == CorpusFormat::json) doc = parse_json_text(text);
    if (doc && doc->is_object() && (doc->contains("report") || doc->contains("n_c"))) {
        try {
            report = (doc->contains("report") ? doc->at("report") : *doc).get<MetricReport>();
        } catch (const json::exception& e) {
            throw ParseError(0, "report", e.what());
        }
    } else {
        auto corpus = doc ? corpus_from_json(*doc, label) : parse_corpus(text, format, label);
        auto filtered = usable_or_throw(corpus);
        if (filtered.removed > 0) err << "note: " << ignored_note(filtered.removed) << '\n';
        report = compute_report(filtered.corpus);
    }

    auto checks = check_bounds(report);
    bool all_passed = std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
    auto h_max = h_max_bound(std::max<std::int64_t>(report.n_c, 0), std::max<std::int64_t>(report.n_p, 0));

    if (opt.format == OutputFormat::json) {
        json rows = json::array();
        for (const auto& c : checks) rows.push_back({{"bound", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        out << json{{"report", report}, {"h_max", h_max}, {"checks", rows}, {"passed", all_passed}}.dump(2) << '\n';
    } else {
        const char* sep = opt.format == OutputFormat::tsv ? "\t" : "  ";
        for (const auto& c : checks) out << (c.passed ? "PASS" : "FAIL") << sep << c.name << sep << c.detail << '\n';
        out << "h_max" << sep << h_max << '\n';
    }
    return all_passed ? kSuccess : kInvariantViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Citation triplet metrics (N_c, h, I), derived indices and credit-split simulation", "citeshare"};
    app.require_subcommand(1);
    Options opt;

    const std::map<std::string, OutputFormat> formats{
        {"table", OutputFormat::table}, {"json", OutputFormat::json}, {"tsv", OutputFormat::tsv}};
    const std::map<std::string, SpanMode> span_modes{{"last", SpanMode::to_last_publication},
                                                     {"to_last_publication", SpanMode::to_last_publication},
                                                     {"collection", SpanMode::to_collection_date},
                                                     {"to_collection_date", SpanMode::to_collection_date}};

    auto add_common = [&](CLI::App* sub, bool many_inputs) {
        auto* input = sub->add_option("-i,--input", opt.inputs, "Corpus file (.csv/.json), directory, or - for stdin")
                          ->required();
        if (!many_inputs) input->expected(1);
        sub->add_option("--input-format", opt.input_format, "Input format when it cannot be inferred (csv|json)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("-f,--format", opt.format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--collection-date", opt.collection_date, "Year of data collection");
    };
    auto add_span = [&](CLI::App* sub) {
        sub->add_option("--span-mode", opt.span_mode, "Career span end point: last | collection")
            ->transform(CLI::CheckedTransformer(span_modes, CLI::ignore_case));
    };

    auto* compute = app.add_subcommand("compute", "Metrics of one author corpus");
    add_common(compute, false);
    add_span(compute);

    auto* rank = app.add_subcommand("rank", "Rank several authors");
    add_common(rank, true);
    add_span(rank);
    rank->add_option("--by", opt.by, "Ranking key, e.g. h,I,Nc (default: htilde)");
    rank->add_option("--epsilon-h", opt.epsilon_h, "Tolerance under which h values count as tied")
        ->check(CLI::NonNegativeNumber);
    rank->add_option("--epsilon", opt.epsilons, "Tolerance for any metric, as metric=value (repeatable)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo distribution of the I-function");
    add_common(simulate, false);
    simulate->add_option("--trials", opt.trials, "Number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", opt.seed, "Master seed");
    simulate->add_option("--xbar", opt.x_bar, "Relative credit spread in percent, 0..20");
    simulate->add_option("--threads", opt.threads, "Worker threads (0: all cores)");
    simulate->add_option("--bins", opt.bins, "Histogram bins")->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "Check the bound relations of a corpus or report");
    add_common(validate_cmd, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (compute->parsed()) return cmd_compute(opt, in, out, err);
        if (rank->parsed()) return cmd_rank(opt, in, out);
        if (simulate->parsed()) return cmd_simulate(opt, in, out, err);
        return cmd_validate(opt, in, out, err);
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kDataError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const UndefinedMetricError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

}  // namespace citeshare::cli
