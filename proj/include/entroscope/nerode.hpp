#ifndef ENTROSCOPE_NERODE_HPP
#define ENTROSCOPE_NERODE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entroscope/certificate.hpp"
#include "entroscope/language.hpp"

namespace entroscope {

/// Canonically enumerated suffix set: all words of length <= n (UpTo) or
/// exactly n (Exact) in length-lexicographic order.
struct SuffixSet {
    Alphabet alphabet;
    int n = 0;
    LengthMode mode = LengthMode::UpTo;
    std::vector<Word> words;

    static SuffixSet make(const Alphabet& a, int n, LengthMode mode = LengthMode::UpTo);
};

/// Fixed-length bit row; bit j records membership of prefix * suffix[j].
struct Row {
    std::vector<std::uint64_t> bits;
    std::size_t size = 0;

    void resize(std::size_t n) {
        size = n;
        bits.assign((n + 63) / 64, 0);
    }
    void set(std::size_t i) { bits[i >> 6] |= (1ull << (i & 63)); }
    bool get(std::size_t i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
    bool any() const {
        for (auto b : bits)
            if (b) return true;
        return false;
    }
    bool operator==(const Row& o) const { return size == o.size && bits == o.bits; }
};

struct RowHash {
    std::size_t operator()(const Row& r) const {
        std::size_t h = r.size * 0x9e3779b97f4a7c15ull;
        for (auto b : r.bits) h = (h ^ b) * 0x100000001b3ull;
        return h;
    }
};

Row row(const Oracle& oracle, const Word& u, const SuffixSet& F);

struct GammaRecord {
    int n = 0;
    LengthMode mode = LengthMode::UpTo;
    std::uint64_t gamma = 0;
    bool exact = false;
    int prefix_bound = 0;
    bool saturated = false;
    bool budget_exhausted = false;
    std::optional<std::uint64_t> lower_bound;
    std::optional<std::uint64_t> upper_bound;
};

struct GammaOptions {
    int prefix_bound = 10;
    int saturation_window = 2;        // frontier lengths with no new row
    std::uint64_t budget = 1'000'000; // membership queries
    int threads = 0;                  // 0 = from ENTROSCOPE_THREADS, else 1
};

/// Certified lower bound on gamma(F, L): counts distinct rows over all
/// prefixes up to the bound, frontier by increasing length. Stops early at a
/// length boundary when the budget cannot pay for the next frontier; the
/// record then carries budget_exhausted and the bound found so far.
GammaRecord gamma_bruteforce(const Lang& lang, const SuffixSet& F, const GammaOptions& opts);
GammaRecord gamma_bruteforce(const Lang& lang, const SuffixSet& F, const GammaOptions& opts,
                             Budget& budget);

/// Distinct rows with witnesses, over all prefixes up to the bound (same
/// exploration as gamma_bruteforce). Witnesses are first-seen, length-lex.
struct RowScan {
    std::vector<Row> rows;
    std::vector<Word> witnesses;
    int explored_bound = 0;
    bool saturated = false;
    bool budget_exhausted = false;
};

RowScan scan_rows(const Lang& lang, const SuffixSet& F, const GammaOptions& opts);
RowScan scan_rows(const Lang& lang, const SuffixSet& F, const GammaOptions& opts, Budget& budget);

/// Distinct rows over an explicit prefix list.
std::uint64_t distinct_rows(const Lang& lang, const std::vector<Word>& prefixes,
                            const SuffixSet& F, Budget& budget);

/// Exact gamma via the language's audited finite-state certificate. Fails if
/// the language has none or the requested horizon exceeds the certificate's.
GammaRecord gamma_exact(const Lang& lang, int n, LengthMode mode);
GammaRecord gamma_exact(const ExploredCertificate& graph, int n, LengthMode mode);
bool has_certificate(const Lang& lang);

struct GammaTable {
    std::string lang;
    LengthMode mode = LengthMode::UpTo;
    std::vector<GammaRecord> records; // n = 0..n_max
};

/// One record per n, preferring the certificate when present, brute force
/// otherwise; theoretical bounds attached where a theorem covers the
/// language.
GammaTable gamma_table(const Lang& lang, int n_max, LengthMode mode, const GammaOptions& opts);
GammaTable gamma_table(const Lang& lang, int n_max, LengthMode mode, const GammaOptions& opts,
                       Budget& budget);

enum class EntropyVerdict { Zero, PositiveFinite, UnboundedTrend, Inconclusive };

std::string to_string(EntropyVerdict v);

struct EntropyThresholds {
    double slope_zero = 0.05;        // slope below this reads as zero
    double slope_margin = 0.5;       // positive-finite up to log2 |alphabet| + margin
    double accel_margin = 0.05;      // second-difference excess for unbounded trend
    double accel_floor = 0.25;       // last increment must exceed this for unbounded trend
};

struct EntropyEstimate {
    std::vector<double> a_n;  // log2 gamma_n / n for n = 1..n_max
    double tail_max = 0.0;
    double slope = 0.0;
    EntropyVerdict verdict = EntropyVerdict::Inconclusive;
};

EntropyEstimate entropy_estimate(const GammaTable& table, std::size_t alphabet_size,
                                 const EntropyThresholds& thresholds = {});

struct TheoremBounds {
    std::optional<std::uint64_t> gamma_lower;
    std::optional<std::uint64_t> gamma_upper;
    std::optional<double> h_lower;
    std::optional<double> h_upper;
};

/// Per-n gamma bounds and entropy bounds where a theorem covers the
/// language; nullopt members otherwise.
TheoremBounds bounds_for(const Lang& lang, int n, LengthMode mode = LengthMode::UpTo);

struct RegularityReport {
    bool exact = false;              // true when the language is a DFA
    bool bounded = false;
    std::optional<int> stabilization_n;
    std::optional<SuffixSet> F0;          // Sigma^(n0) once stabilized
    std::optional<std::uint64_t> classes; // minimal class count for DFAs
    bool stabilized_in_window = false;    // heuristic verdict for non-DFAs
};

RegularityReport regularity_probe(const Lang& lang, int n_max, const GammaOptions& opts);

/// Number of reachable Myhill-Nerode classes of a DFA, by partition
/// refinement until fixpoint on the automaton itself.
std::uint64_t dfa_minimal_classes(const DfaDesc& dfa);

struct CensusResult {
    std::uint64_t distinct_rows = 0;
    std::vector<Word> representatives;
};

/// Distinct rows over suffixes of length <= n among the canonical
/// representatives a^k (2k <= n), a^k b^l (1 <= l <= k, 2k - l <= n),
/// a^k b^k c^l (row depends only on k - l <= n), and b.
CensusResult anbncn_census(int n, Budget& budget);

/// Prefixes a_1..a_i (1 <= i <= n) of u whose remainder is a palindrome.
std::vector<Word> palindrome_ell(const Lang& palin, const Word& u, int n);

} // namespace entroscope

#endif
