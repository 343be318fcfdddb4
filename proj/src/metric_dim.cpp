#include "entroscope/metric_dim.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

namespace entroscope {

namespace {

// first horizon whose exact-length suffixes separate u and v; -1 if none
// up to n_max. The least separating up-to horizon equals the length of the
// shortest distinguishing suffix.
int first_separating_level(const Lang& lang, const Word& u, const Word& v, int n_max,
                           Budget& budget) {
    const std::size_t k = lang.alphabet().size();
    for (int n = 0; n <= n_max; ++n) {
        std::uint64_t count = word_count(k, n, LengthMode::Exact);
        if (!budget.can_afford(2 * count)) throw BudgetExceeded("d_theta budget exhausted");
        budget.charge(2 * count);
        for (const Word& w : enumerate_words(k, n, LengthMode::Exact))
            if (lang.member(concat(u, w)) != lang.member(concat(v, w))) return n;
    }
    return -1;
}

} // namespace

ThetaDistance d_theta(const Lang& lang, const Word& u, const Word& v, int n_max, Budget& budget) {
    ThetaDistance d;
    int level = first_separating_level(lang, u, v, n_max, budget);
    if (level < 0) return d;  // unresolved: value 0, true distance <= 2^-(n_max+1)
    d.resolved = true;
    d.level = level;
    d.value = std::ldexp(1.0, -level);
    return d;
}

ThetaDistance d_theta(const Lang& lang, const Word& u, const Word& v, int n_max) {
    Budget unlimited{UINT64_MAX, 0};
    return d_theta(lang, u, v, n_max, unlimited);
}

UltrametricReport ultrametric_check(const Lang& lang, const std::vector<Word>& words,
                                    std::size_t sample_triples, std::uint64_t seed, int n_max,
                                    Budget& budget) {
    UltrametricReport report;
    if (words.empty()) return report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (std::size_t t = 0; t < sample_triples; ++t) {
        const Word& x = words[pick(rng)];
        const Word& y = words[pick(rng)];
        const Word& z = words[pick(rng)];
        double dxz = d_theta(lang, x, z, n_max, budget).value;
        double dxy = d_theta(lang, x, y, n_max, budget).value;
        double dyz = d_theta(lang, y, z, n_max, budget).value;
        double dyx = d_theta(lang, y, x, n_max, budget).value;
        double dxx = d_theta(lang, x, x, n_max, budget).value;
        ++report.triples_checked;
        if (dxz > std::max(dxy, dyz) || dxy != dyx || dxx != 0.0) {
            report.ok = false;
            report.counterexample = lang.alphabet().render(x) + "|" + lang.alphabet().render(y) +
                                    "|" + lang.alphabet().render(z);
            return report;
        }
    }
    return report;
}

DimensionEstimate dimension_estimate(const Lang& lang, const GammaTable& table,
                                     const EntropyThresholds& thresholds) {
    if (table.mode != LengthMode::UpTo)
        throw InputError("dimension estimate needs an up-to-mode gamma table");
    DimensionEstimate est;
    for (const auto& rec : table.records) est.covering.push_back(rec.gamma);
    for (const auto& rec : table.records) {
        if (rec.n < 1) continue;
        est.values.push_back(std::log2(static_cast<double>(rec.gamma)) / rec.n);
    }
    EntropyEstimate ent = entropy_estimate(table, lang.alphabet().size(), thresholds);
    est.verdict = ent.verdict;
    est.dimension = ent.tail_max;
    est.matches_entropy = est.values.size() == ent.a_n.size();
    for (std::size_t i = 0; i < est.values.size() && est.matches_entropy; ++i)
        if (est.values[i] != ent.a_n[i]) est.matches_entropy = false;
    return est;
}

std::uint64_t greedy_cover_count(const Lang& lang, const std::vector<Word>& words, int n,
                                 Budget& budget) {
    SuffixSet F = SuffixSet::make(lang.alphabet(), n, LengthMode::UpTo);
    // d(u, v) < 2^-n iff the rows of u and v at horizon n coincide, so a
    // greedy pass over any word order needs exactly one center per row class
    std::uint64_t cost = words.size() * F.words.size();
    if (!budget.can_afford(cost)) throw BudgetExceeded("greedy cover budget exhausted");
    budget.charge(cost);
    Oracle oracle(lang);
    std::vector<Row> centers;
    std::uint64_t count = 0;
    for (const Word& w : words) {
        Row r = row(oracle, w, F);
        bool covered = false;
        for (const Row& c : centers)
            if (c == r) {
                covered = true;
                break;
            }
        if (!covered) {
            centers.push_back(std::move(r));
            ++count;
        }
    }
    return count;
}

} // namespace entroscope
