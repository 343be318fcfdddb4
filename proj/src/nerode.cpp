#include "entroscope/nerode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <unordered_map>

namespace entroscope {

SuffixSet SuffixSet::make(const Alphabet& a, int n, LengthMode mode) {
    if (n < 0) throw InputError("suffix horizon must be >= 0");
    return SuffixSet{a, n, mode, enumerate_words(a.size(), n, mode)};
}

Row row(const Oracle& oracle, const Word& u, const SuffixSet& F) {
    Row r;
    r.resize(F.words.size());
    for (std::size_t j = 0; j < F.words.size(); ++j)
        if (oracle.test(concat(u, F.words[j]))) r.set(j);
    return r;
}

namespace {

// ENTROSCOPE_THREADS caps the worker count; results never depend on it
int resolve_threads(int requested) {
    int cap = 64;
    if (const char* env = std::getenv("ENTROSCOPE_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) cap = std::min(v, 64);
    }
    if (requested > 0) return std::min(requested, cap);
    if (std::getenv("ENTROSCOPE_THREADS")) return cap;
    return 1;
}

Word word_at(std::size_t k, int len, std::uint64_t index) {
    Word w(len);
    for (int pos = len - 1; pos >= 0; --pos) {
        w[pos] = static_cast<Symbol>(index % k);
        index /= k;
    }
    return w;
}

Row row_unmetered(const Lang& lang, const Word& u, const SuffixSet& F) {
    Row r;
    r.resize(F.words.size());
    for (std::size_t j = 0; j < F.words.size(); ++j)
        if (lang.member(concat(u, F.words[j]))) r.set(j);
    return r;
}

} // namespace

RowScan scan_rows(const Lang& lang, const SuffixSet& F, const GammaOptions& opts, Budget& budget) {
    if (F.alphabet != lang.alphabet()) throw InputError("suffix set alphabet mismatch");
    const std::size_t k = lang.alphabet().size();
    const int threads = resolve_threads(opts.threads);

    RowScan result;
    std::unordered_map<Row, int, RowHash> seen;
    std::vector<int> new_rows_at_length;

    for (int len = 0; len <= opts.prefix_bound; ++len) {
        std::uint64_t count = word_count(k, len, LengthMode::Exact);
        std::uint64_t remaining = budget.limit - budget.used;
        // division avoids overflow in count * |F|
        if (count > remaining / std::max<std::size_t>(1, F.words.size())) {
            result.budget_exhausted = true;
            result.explored_bound = len - 1;
            break;
        }
        budget.charge(count * F.words.size());
        int new_here = 0;
        constexpr std::uint64_t kBatch = 1 << 16;
        for (std::uint64_t start = 0; start < count; start += kBatch) {
            std::uint64_t end = std::min(count, start + kBatch);
            std::vector<Row> batch(end - start);
            auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
                for (std::uint64_t i = lo; i < hi; ++i)
                    batch[i - start] = row_unmetered(lang, word_at(k, len, i), F);
            };
            if (threads <= 1 || end - start < 256) {
                worker(start, end);
            } else {
                std::vector<std::thread> pool;
                std::uint64_t chunk = (end - start + threads - 1) / threads;
                for (int t = 0; t < threads; ++t) {
                    std::uint64_t lo = start + t * chunk;
                    std::uint64_t hi = std::min(end, lo + chunk);
                    if (lo < hi) pool.emplace_back(worker, lo, hi);
                }
                for (auto& th : pool) th.join();
            }
            for (std::uint64_t i = start; i < end; ++i) {
                auto [it, inserted] = seen.emplace(std::move(batch[i - start]),
                                                   static_cast<int>(seen.size()));
                if (inserted) {
                    result.witnesses.push_back(word_at(k, len, i));
                    ++new_here;
                }
            }
        }
        new_rows_at_length.push_back(new_here);
        result.explored_bound = len;
    }

    result.rows.resize(seen.size());
    for (auto& [r, idx] : seen) result.rows[idx] = r;

    int window = std::max(1, opts.saturation_window);
    if (static_cast<int>(new_rows_at_length.size()) > window) {
        result.saturated = true;
        for (int i = 0; i < window; ++i)
            if (new_rows_at_length[new_rows_at_length.size() - 1 - i] != 0) result.saturated = false;
    }
    return result;
}

RowScan scan_rows(const Lang& lang, const SuffixSet& F, const GammaOptions& opts) {
    Budget budget{opts.budget, 0};
    return scan_rows(lang, F, opts, budget);
}

GammaRecord gamma_bruteforce(const Lang& lang, const SuffixSet& F, const GammaOptions& opts,
                             Budget& budget) {
    RowScan scan = scan_rows(lang, F, opts, budget);
    GammaRecord rec;
    rec.n = F.n;
    rec.mode = F.mode;
    rec.gamma = scan.rows.size();
    rec.exact = false;
    rec.prefix_bound = scan.explored_bound;
    rec.saturated = scan.saturated;
    rec.budget_exhausted = scan.budget_exhausted;
    return rec;
}

GammaRecord gamma_bruteforce(const Lang& lang, const SuffixSet& F, const GammaOptions& opts) {
    Budget budget{opts.budget, 0};
    return gamma_bruteforce(lang, F, opts, budget);
}

std::uint64_t distinct_rows(const Lang& lang, const std::vector<Word>& prefixes,
                            const SuffixSet& F, Budget& budget) {
    std::uint64_t cost = prefixes.size() * F.words.size();
    if (!budget.can_afford(cost)) throw BudgetExceeded("distinct row count budget exhausted");
    budget.charge(cost);
    std::unordered_map<Row, int, RowHash> seen;
    for (const Word& u : prefixes) seen.emplace(row_unmetered(lang, u, F), static_cast<int>(seen.size()));
    return seen.size();
}

bool has_certificate(const Lang& lang) { return make_certificate(lang, 1) != nullptr; }

GammaRecord gamma_exact(const ExploredCertificate& graph, int n, LengthMode mode) {
    if (n > graph.horizon) throw InputError("certificate horizon too small for requested n");
    auto counts = refinement_counts(graph, n, mode);
    GammaRecord rec;
    rec.n = n;
    rec.mode = mode;
    rec.gamma = counts[n];
    rec.exact = true;
    rec.saturated = true;
    std::size_t deepest = 0;
    for (const auto& w : graph.witness) deepest = std::max(deepest, w.size());
    rec.prefix_bound = static_cast<int>(deepest);
    return rec;
}

GammaRecord gamma_exact(const Lang& lang, int n, LengthMode mode) {
    auto cert = make_certificate(lang, n);
    if (!cert) throw InputError("language has no row abstraction certificate");
    auto graph = explore(*cert, lang.alphabet().size());
    return gamma_exact(graph, n, mode);
}

GammaTable gamma_table(const Lang& lang, int n_max, LengthMode mode, const GammaOptions& opts,
                       Budget& budget) {
    if (n_max < 0) throw InputError("n_max must be >= 0");
    GammaTable table;
    table.lang = lang.describe();
    table.mode = mode;

    auto cert = make_certificate(lang, n_max);
    if (cert) {
        auto graph = explore(*cert, lang.alphabet().size());
        auto counts = refinement_counts(graph, n_max, mode);
        std::size_t deepest = 0;
        for (const auto& w : graph.witness) deepest = std::max(deepest, w.size());
        for (int n = 0; n <= n_max; ++n) {
            GammaRecord rec;
            rec.n = n;
            rec.mode = mode;
            rec.gamma = counts[n];
            rec.exact = true;
            rec.saturated = true;
            rec.prefix_bound = static_cast<int>(deepest);
            table.records.push_back(rec);
        }
    } else {
        for (int n = 0; n <= n_max; ++n) {
            SuffixSet F = SuffixSet::make(lang.alphabet(), n, mode);
            table.records.push_back(gamma_bruteforce(lang, F, opts, budget));
        }
    }
    for (auto& rec : table.records) {
        TheoremBounds b = bounds_for(lang, rec.n, mode);
        rec.lower_bound = b.gamma_lower;
        rec.upper_bound = b.gamma_upper;
    }
    return table;
}

GammaTable gamma_table(const Lang& lang, int n_max, LengthMode mode, const GammaOptions& opts) {
    Budget budget{opts.budget, 0};
    return gamma_table(lang, n_max, mode, opts, budget);
}

std::string to_string(EntropyVerdict v) {
    switch (v) {
        case EntropyVerdict::Zero: return "zero";
        case EntropyVerdict::PositiveFinite: return "positive-finite";
        case EntropyVerdict::UnboundedTrend: return "unbounded-trend";
        case EntropyVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    Fit f;
    std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    f.slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i) {
        double e = ys[i] - (f.slope * xs[i] + f.intercept);
        f.sse += e * e;
    }
    return f;
}

} // namespace

EntropyEstimate entropy_estimate(const GammaTable& table, std::size_t alphabet_size,
                                 const EntropyThresholds& th) {
    EntropyEstimate est;
    std::vector<int> ns;
    std::vector<double> log_gamma;
    for (const auto& rec : table.records) {
        if (rec.n < 1) continue;
        if (rec.gamma == 0) continue;
        ns.push_back(rec.n);
        log_gamma.push_back(std::log2(static_cast<double>(rec.gamma)));
        est.a_n.push_back(log_gamma.back() / rec.n);
    }
    if (ns.size() < 4) throw InputError("entropy estimate needs at least 4 records with n >= 1");

    std::size_t tail_start = ns.size() / 2;
    est.tail_max = 0;
    for (std::size_t i = tail_start; i < ns.size(); ++i) est.tail_max = std::max(est.tail_max, est.a_n[i]);

    std::vector<double> tail_x(ns.begin() + tail_start, ns.end());
    std::vector<double> tail_y(log_gamma.begin() + tail_start, log_gamma.end());
    est.slope = least_squares(tail_x, tail_y).slope;

    // accelerating growth of a_n marks the unbounded trend
    std::size_t m = est.a_n.size();
    double d1 = est.a_n[m - 2] - est.a_n[m - 3];
    double d2 = est.a_n[m - 1] - est.a_n[m - 2];
    if (est.a_n[m - 3] < est.a_n[m - 2] && est.a_n[m - 2] < est.a_n[m - 1] &&
        d2 > d1 + th.accel_margin && d2 >= th.accel_floor) {
        est.verdict = EntropyVerdict::UnboundedTrend;
        return est;
    }

    bool tail_constant = true;
    for (std::size_t i = tail_start + 1; i < ns.size(); ++i)
        if (log_gamma[i] != log_gamma[tail_start]) tail_constant = false;
    if (tail_constant) {
        est.verdict = EntropyVerdict::Zero;
        return est;
    }

    if (est.slope < th.slope_zero) {
        est.verdict = EntropyVerdict::Zero;
        return est;
    }

    // sub-exponential growth: c*log2(n+1) + d explains log2 gamma better
    // than a*n + b does
    std::vector<double> xs_lin, xs_log;
    for (int n : ns) {
        xs_lin.push_back(n);
        xs_log.push_back(std::log2(n + 1.0));
    }
    Fit lin = least_squares(xs_lin, log_gamma);
    Fit logf = least_squares(xs_log, log_gamma);
    if (logf.sse < lin.sse) {
        est.verdict = EntropyVerdict::Zero;
        return est;
    }

    double cap = std::log2(static_cast<double>(alphabet_size)) + th.slope_margin;
    if (est.slope <= cap)
        est.verdict = EntropyVerdict::PositiveFinite;
    else
        est.verdict = EntropyVerdict::Inconclusive;
    return est;
}

TheoremBounds bounds_for(const Lang& lang, int n, LengthMode mode) {
    TheoremBounds b;
    const std::size_t k_alpha = lang.alphabet().size();
    switch (lang.kind()) {
        case LangKind::Dyck: {
            int k = lang.node().sorts;
            Group free(GroupKind::Free, k);
            b.gamma_upper = free.ball_closed_form(n) + 1;
            if (mode == LengthMode::Exact) {
                std::uint64_t pow = 1;
                for (int i = 0; i < n; ++i) pow *= k;
                b.gamma_lower = pow;
            }
            b.h_lower = std::log2(static_cast<double>(k));
            b.h_upper = std::log2(2.0 * k - 1.0);
            if (k == 1) b.h_lower = 0.0;
            break;
        }
        case LangKind::CommutativeDyck: {
            Group ab(GroupKind::FreeAbelian, lang.node().sorts);
            b.gamma_upper = ab.ball_closed_form(n) + 1;
            b.h_lower = 0.0;
            b.h_upper = 0.0;
            break;
        }
        case LangKind::CountDiff: {
            b.gamma_upper = 2ull * n + 2;
            b.h_lower = 0.0;
            b.h_upper = 0.0;
            break;
        }
        case LangKind::Palindromes: {
            std::uint64_t pow = 1;
            for (int i = 0; i < n; ++i) pow *= k_alpha;
            b.gamma_lower = pow;
            b.gamma_upper = word_count(k_alpha, n, LengthMode::UpTo) + (pow << n);
            b.h_lower = std::log2(static_cast<double>(k_alpha));
            b.h_upper = std::log2(2.0 * k_alpha);
            break;
        }
        case LangKind::Dfa: {
            // reachable state count bounds every gamma
            const DfaDesc& d = *lang.node().dfa;
            std::vector<bool> seen(d.n_states, false);
            std::vector<int> stack{d.initial};
            seen[d.initial] = true;
            std::uint64_t reachable = 0;
            while (!stack.empty()) {
                int s = stack.back();
                stack.pop_back();
                ++reachable;
                for (int t : d.transitions[s])
                    if (!seen[t]) {
                        seen[t] = true;
                        stack.push_back(t);
                    }
            }
            b.gamma_upper = reachable;
            b.h_lower = 0.0;
            b.h_upper = 0.0;
            break;
        }
        case LangKind::Empty:
        case LangKind::Universal: {
            b.gamma_upper = 1;
            b.h_lower = 0.0;
            b.h_upper = 0.0;
            break;
        }
        case LangKind::InfiniteEntropy: {
            if (mode == LengthMode::Exact && n <= 5)
                b.gamma_lower = 1ull << (1ull << n);
            break;
        }
        case LangKind::GroupLanguage: {
            // |E| * |phi(Sigma^(n))| + 1 by closure over the image monoid
            const auto& d = *lang.node().group_lang;
            std::unordered_map<GroupElement, int, GroupElementHash> seen;
            std::vector<GroupElement> frontier{d.group.identity()};
            seen.emplace(d.group.identity(), 0);
            for (int step = 0; step < n; ++step) {
                std::vector<GroupElement> next;
                for (const auto& g : frontier)
                    for (const auto& img : d.images) {
                        GroupElement h = d.group.multiply(g, img);
                        if (seen.emplace(h, 0).second) next.push_back(h);
                    }
                frontier = std::move(next);
                if (seen.size() > 2'000'000) return b;  // too large, no bound
            }
            b.gamma_upper = d.targets.size() * seen.size() + 1;
            break;
        }
        default: break;
    }
    return b;
}

std::uint64_t dfa_minimal_classes(const DfaDesc& d) {
    std::vector<bool> reach(d.n_states, false);
    std::vector<int> stack{d.initial};
    reach[d.initial] = true;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int t : d.transitions[s])
            if (!reach[t]) {
                reach[t] = true;
                stack.push_back(t);
            }
    }
    std::vector<int> cls(d.n_states, -1);
    for (int s = 0; s < d.n_states; ++s)
        if (reach[s]) cls[s] = d.accepting[s] ? 1 : 0;
    std::size_t count = 0;
    while (true) {
        std::unordered_map<std::string, int> ids;
        std::vector<int> next_cls(d.n_states, -1);
        for (int s = 0; s < d.n_states; ++s) {
            if (!reach[s]) continue;
            std::string sig = std::to_string(cls[s]);
            for (std::size_t a = 0; a < d.alphabet.size(); ++a)
                sig += "," + std::to_string(cls[d.transitions[s][a]]);
            auto [it, inserted] = ids.emplace(sig, static_cast<int>(ids.size()));
            next_cls[s] = it->second;
        }
        bool stable = ids.size() == count;
        count = ids.size();
        cls.swap(next_cls);
        if (stable) break;
    }
    return count;
}

RegularityReport regularity_probe(const Lang& lang, int n_max, const GammaOptions& opts) {
    RegularityReport report;
    if (lang.kind() == LangKind::Dfa || lang.kind() == LangKind::Empty ||
        lang.kind() == LangKind::Universal) {
        report.exact = true;
        report.bounded = true;
        std::uint64_t classes;
        if (lang.kind() == LangKind::Dfa) {
            classes = dfa_minimal_classes(*lang.node().dfa);
        } else {
            classes = 1;
        }
        report.classes = classes;
        auto cert = make_certificate(lang, n_max);
        auto graph = explore(*cert, lang.alphabet().size());
        auto counts = refinement_counts(graph, n_max, LengthMode::UpTo);
        for (int n = 0; n <= n_max; ++n) {
            if (counts[n] == classes) {
                report.stabilization_n = n;
                report.F0 = SuffixSet::make(lang.alphabet(), n, LengthMode::UpTo);
                break;
            }
        }
        report.stabilized_in_window = report.stabilization_n.has_value();
        return report;
    }
    GammaTable table = gamma_table(lang, n_max, LengthMode::UpTo, opts);
    const auto& recs = table.records;
    std::uint64_t last = recs.back().gamma;
    int window = std::max(1, opts.saturation_window);
    bool stable = static_cast<int>(recs.size()) > window;
    for (int i = 0; i < window && stable; ++i)
        if (recs[recs.size() - 1 - i].gamma != last || recs[recs.size() - 1 - i].budget_exhausted)
            stable = false;
    report.stabilized_in_window = stable;
    report.bounded = stable;
    if (stable) {
        for (std::size_t i = 0; i < recs.size(); ++i)
            if (recs[i].gamma == last) {
                report.stabilization_n = recs[i].n;
                report.F0 = SuffixSet::make(lang.alphabet(), recs[i].n, LengthMode::UpTo);
                break;
            }
    }
    return report;
}

CensusResult anbncn_census(int n, Budget& budget) {
    if (n < 0) throw InputError("census horizon must be >= 0");
    Lang lang = Lang::anbncn();
    std::vector<Word> reps;
    auto rep = [](int a, int b, int c) {
        Word w;
        for (int i = 0; i < a; ++i) w.push_back(0);
        for (int i = 0; i < b; ++i) w.push_back(1);
        for (int i = 0; i < c; ++i) w.push_back(2);
        return w;
    };
    for (int k = 0; 2 * k <= n; ++k) reps.push_back(rep(k, 0, 0));
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= k; ++l)
            if (2 * k - l <= n) reps.push_back(rep(k, l, 0));
    for (int k = 1; k <= n + 1; ++k)
        for (int l = std::max(1, k - n); l <= k; ++l) reps.push_back(rep(k, k, l));
    reps.push_back(rep(0, 1, 0));

    SuffixSet F = SuffixSet::make(lang.alphabet(), n, LengthMode::UpTo);
    CensusResult result;
    result.representatives = reps;
    result.distinct_rows = distinct_rows(lang, reps, F, budget);
    return result;
}

std::vector<Word> palindrome_ell(const Lang& palin, const Word& u, int n) {
    if (static_cast<int>(u.size()) < n)
        throw InputError("palindrome_ell needs |u| >= n");
    std::vector<Word> out;
    for (int i = 1; i <= n; ++i) {
        Word remainder(u.begin() + i, u.end());
        if (palin.member(remainder)) out.emplace_back(u.begin(), u.begin() + i);
    }
    return out;
}

} // namespace entroscope
