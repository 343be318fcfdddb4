#include "entroscope/cli.hpp"

#include <CLI11.hpp>

#include "entroscope/report.hpp"

namespace entroscope {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct CommonFlags {
    std::string lang_spec;
    int n_max = 4;
    int prefix_bound = 10;
    std::string mode = "upto";
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 1;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_lang = true) {
    if (with_lang) cmd->add_option("--lang", flags.lang_spec, "language spec string")->required();
    cmd->add_option("--n-max", flags.n_max, "largest suffix horizon")->check(CLI::Range(1, 24));
    cmd->add_option("--prefix-bound", flags.prefix_bound, "deepest prefix length explored");
    cmd->add_option("--mode", flags.mode, "suffix set mode: upto or exact");
    cmd->add_option("--budget", flags.budget, "membership query budget");
    cmd->add_option("--seed", flags.seed, "seed for sampled checks");
    cmd->add_option("--format", flags.format, "output format: csv or json");
}

GammaOptions options_from(const CommonFlags& flags) {
    GammaOptions opts;
    opts.prefix_bound = flags.prefix_bound;
    opts.budget = flags.budget;
    return opts;
}

Json base_document(const CommonFlags& flags, const Budget& budget) {
    Json j;
    j["version"] = kToolVersion;
    j["seed"] = flags.seed;
    j["budget"] = Json{{"limit", budget.limit}, {"used", budget.used}};
    return j;
}

bool table_partial(const GammaTable& table) {
    for (const auto& rec : table.records)
        if (rec.budget_exhausted) return true;
    return false;
}

int emit(CommandResult& result, const CommonFlags& flags, Json document, bool partial,
         const std::string& csv) {
    document["partial"] = partial;
    if (flags.format == "csv")
        result.output = csv;
    else if (flags.format == "json")
        result.output = document.dump(2) + "\n";
    else
        throw InputError("unknown format \"" + flags.format + "\"");
    return partial ? kExitBudget : kExitOk;
}

int cmd_gamma(const CommonFlags& flags, CommandResult& result) {
    Lang lang = parse_lang(flags.lang_spec);
    LengthMode mode = mode_from_name(flags.mode);
    Budget budget{flags.budget, 0};
    GammaTable table = gamma_table(lang, flags.n_max, mode, options_from(flags), budget);
    Json j = base_document(flags, budget);
    j["lang"] = flags.lang_spec;
    j["gamma_table"] = table_json(table);
    return emit(result, flags, std::move(j), table_partial(table), table_csv(table));
}

int cmd_entropy(const CommonFlags& flags, CommandResult& result) {
    Lang lang = parse_lang(flags.lang_spec);
    Budget budget{flags.budget, 0};
    GammaTable table = gamma_table(lang, flags.n_max, LengthMode::UpTo, options_from(flags), budget);
    EntropyEstimate est = entropy_estimate(table, lang.alphabet().size());
    Json j = base_document(flags, budget);
    j["lang"] = flags.lang_spec;
    j["gamma_table"] = table_json(table);
    j["entropy"] = entropy_json(est);
    return emit(result, flags, std::move(j), table_partial(table), table_csv(table));
}

int cmd_dim(const CommonFlags& flags, CommandResult& result) {
    Lang lang = parse_lang(flags.lang_spec);
    Budget budget{flags.budget, 0};
    GammaTable table = gamma_table(lang, flags.n_max, LengthMode::UpTo, options_from(flags), budget);
    DimensionEstimate est = dimension_estimate(lang, table);
    Json j = base_document(flags, budget);
    j["lang"] = flags.lang_spec;
    j["gamma_table"] = table_json(table);
    j["dimension"] = dimension_json(est);
    return emit(result, flags, std::move(j), table_partial(table), table_csv(table));
}

int cmd_cover(const CommonFlags& flags, CommandResult& result) {
    Lang lang = parse_lang(flags.lang_spec);
    Budget budget{flags.budget, 0};
    GammaOptions opts = options_from(flags);
    int prefix_bound = std::max(flags.prefix_bound, flags.n_max);
    TruncatedAutomaton automaton =
        build_truncated(lang, std::max(1, flags.n_max), prefix_bound, opts, budget);
    bool partial = automaton.prefix_bound < prefix_bound;
    CoverEntropySequence seq;
    for (int n = 0; n <= flags.n_max; ++n) {
        seq.counts.push_back(cover_complexity(automaton, n, LengthMode::UpTo));
        if (n >= 1) seq.ratios.push_back(std::log2(static_cast<double>(seq.counts.back())) / n);
    }
    // the row-based counts over the same prefix universe must agree
    GammaOptions check_opts = opts;
    check_opts.prefix_bound = automaton.prefix_bound;
    bool matches = true;
    for (int n = 0; n <= flags.n_max && matches; ++n) {
        SuffixSet F = SuffixSet::make(lang.alphabet(), n, LengthMode::UpTo);
        GammaRecord rec = gamma_bruteforce(lang, F, check_opts, budget);
        if (rec.budget_exhausted)
            partial = true;
        else if (rec.gamma != seq.counts[n])
            matches = false;
    }
    Json j = base_document(flags, budget);
    j["lang"] = flags.lang_spec;
    j["cover_entropy"] = cover_json(seq);
    j["matches_entropy"] = matches;
    std::ostringstream csv;
    csv << "n,count,log2_ratio\n";
    for (std::size_t n = 0; n < seq.counts.size(); ++n) {
        csv << n << ',' << seq.counts[n] << ',';
        if (n >= 1) csv << seq.ratios[n - 1];
        csv << '\n';
    }
    return emit(result, flags, std::move(j), partial, csv.str());
}

int cmd_growth(const std::string& group_spec, const CommonFlags& flags, CommandResult& result) {
    auto colon = group_spec.find(':');
    if (colon == std::string::npos)
        throw InputError("group spec must look like free:2 or abelian:2");
    std::string kind = group_spec.substr(0, colon);
    int rank = 0;
    try {
        rank = std::stoi(group_spec.substr(colon + 1));
    } catch (...) {
        throw InputError("bad group rank in \"" + group_spec + "\"");
    }
    Group group(kind == "free"      ? GroupKind::Free
                : kind == "abelian" ? GroupKind::FreeAbelian
                                    : throw InputError("unknown group kind \"" + kind + "\""),
                rank);
    Budget budget{flags.budget, 0};
    BallTable table = ball_table(group, flags.n_max, budget);
    Json j = base_document(flags, budget);
    j["group"] = group_spec;
    if (table.budget_exhausted) {
        j["growth"] = growth_json(table, GrowthEstimate{0.0, std::nullopt});
        return emit(result, flags, std::move(j), true, growth_csv(table, GrowthEstimate{}));
    }
    GrowthEstimate est{table.log2_ratios.empty() ? 0.0 : table.log2_ratios.back(),
                       table.group.growth_limit()};
    j["growth"] = growth_json(table, est);
    return emit(result, flags, std::move(j), false, growth_csv(table, est));
}

int cmd_report(const CommonFlags& flags, CommandResult& result) {
    Lang lang = parse_lang(flags.lang_spec);
    Budget budget{flags.budget, 0};
    GammaOptions opts = options_from(flags);
    GammaTable table = gamma_table(lang, flags.n_max, LengthMode::UpTo, opts, budget);
    bool partial = table_partial(table);

    Json j = base_document(flags, budget);
    j["lang"] = flags.lang_spec;
    j["gamma_table"] = table_json(table);
    if (flags.n_max >= 4) {
        EntropyEstimate ent = entropy_estimate(table, lang.alphabet().size());
        j["entropy"] = entropy_json(ent);
        j["dimension"] = dimension_json(dimension_estimate(lang, table));
    }

    // cover-complexity cross-check at a small horizon
    int cover_n = std::min(flags.n_max, 3);
    Budget cover_budget{flags.budget, 0};
    TruncatedAutomaton automaton = build_truncated(
        lang, std::max(1, cover_n), std::max(flags.prefix_bound, cover_n), opts, cover_budget);
    Json cover;
    Json counts = Json::array();
    for (int n = 0; n <= cover_n; ++n) counts.push_back(cover_complexity(automaton, n, LengthMode::UpTo));
    cover["counts"] = std::move(counts);
    cover["saturated"] = automaton.saturated;
    j["cover_complexity"] = std::move(cover);

    // sampled pseudo-ultrametric sanity check, seeded for reproducibility
    auto words = enumerate_words(lang.alphabet().size(), std::min(flags.n_max, 4), LengthMode::UpTo);
    Budget metric_budget{flags.budget, 0};
    UltrametricReport metric = ultrametric_check(lang, words, 200, flags.seed, 4, metric_budget);
    j["ultrametric"] = Json{{"ok", metric.ok}, {"triples", metric.triples_checked}};

    // group growth backdrop for group-backed catalog languages
    if (lang.kind() == LangKind::Dyck || lang.kind() == LangKind::CommutativeDyck ||
        lang.kind() == LangKind::CountDiff) {
        Group group = lang.kind() == LangKind::Dyck
                          ? Group(GroupKind::Free, lang.node().sorts)
                          : Group(GroupKind::FreeAbelian,
                                  lang.kind() == LangKind::CountDiff ? 1 : lang.node().sorts);
        Budget growth_budget{flags.budget, 0};
        BallTable balls = ball_table(group, std::min(flags.n_max, 10), growth_budget);
        GrowthEstimate est{balls.log2_ratios.empty() ? 0.0 : balls.log2_ratios.back(),
                           balls.group.growth_limit()};
        j["growth"] = growth_json(balls, est);
    }

    return emit(result, flags, std::move(j), partial, table_csv(table));
}

} // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult result;
    CLI::App app{"myhill-nerode complexity and language entropy toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string group_spec;

    CLI::App* gamma = app.add_subcommand("gamma", "per-n gamma table");
    add_common(gamma, flags);
    CLI::App* entropy = app.add_subcommand("entropy", "gamma table plus entropy estimate");
    add_common(entropy, flags);
    CLI::App* dim = app.add_subcommand("dim", "entropic dimension of the prefix space");
    add_common(dim, flags);
    CLI::App* cover = app.add_subcommand("cover-entropy", "cover-complexity entropy sequence");
    add_common(cover, flags);
    CLI::App* report = app.add_subcommand("report", "full machine-readable report");
    add_common(report, flags);
    CLI::App* growth = app.add_subcommand("growth", "group ball sizes and growth rate");
    add_common(growth, flags, false);
    growth->add_option("--group", group_spec, "group spec, e.g. free:2")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        result.exit_code = kExitInput;
        result.diagnostics = std::string("input error: ") + e.what() + "\n";
        return result;
    }

    try {
        // validate all inputs before any computation starts
        if (flags.format != "csv" && flags.format != "json")
            throw InputError("unknown format \"" + flags.format + "\"");
        mode_from_name(flags.mode);
        if (flags.prefix_bound < 0 || flags.prefix_bound > 30)
            throw InputError("prefix bound must be in [0, 30]");
        if (gamma->parsed()) result.exit_code = cmd_gamma(flags, result);
        else if (entropy->parsed()) result.exit_code = cmd_entropy(flags, result);
        else if (dim->parsed()) result.exit_code = cmd_dim(flags, result);
        else if (cover->parsed()) result.exit_code = cmd_cover(flags, result);
        else if (report->parsed()) result.exit_code = cmd_report(flags, result);
        else if (growth->parsed()) result.exit_code = cmd_growth(group_spec, flags, result);
    } catch (const BudgetExceeded& e) {
        result.exit_code = kExitBudget;
        Json j;
        j["version"] = kToolVersion;
        j["partial"] = true;
        j["error"] = e.what();
        result.output = j.dump(2) + "\n";
    } catch (const InputError& e) {
        result.exit_code = kExitInput;
        result.diagnostics = std::string("input error: ") + e.what() + "\n";
    }
    return result;
}

} // namespace entroscope
