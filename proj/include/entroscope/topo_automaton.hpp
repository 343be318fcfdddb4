#ifndef ENTROSCOPE_TOPO_AUTOMATON_HPP
#define ENTROSCOPE_TOPO_AUTOMATON_HPP

#include <cstdint>
#include <vector>

#include "entroscope/nerode.hpp"

namespace entroscope {

/// Finite truncation of the minimal topological automaton: the distinct
/// horizon-m profiles (suffix-membership rows over all words of length <= m)
/// of all prefixes up to the prefix bound, one witness each, and the
/// transition map. Applying a symbol consumes one unit of horizon, so
/// transition targets are (m-1)-profiles, obtained by selecting the source
/// bits at suffixes starting with that symbol.
struct TruncatedAutomaton {
    int horizon = 0;
    int prefix_bound = 0;
    bool saturated = false;
    std::size_t alphabet_size = 0;
    std::vector<Row> profiles;                 // horizon-m rows, deduplicated
    std::vector<Word> witnesses;               // first (length-lex) prefix per profile
    std::vector<std::vector<Row>> transitions; // [profile][symbol] -> (m-1)-profile
    std::vector<bool> final_profile;           // epsilon bit
};

TruncatedAutomaton build_truncated(const Lang& lang, int m, int prefix_bound,
                                   const GammaOptions& opts);
TruncatedAutomaton build_truncated(const Lang& lang, int m, int prefix_bound,
                                   const GammaOptions& opts, Budget& budget);

/// Restriction of a horizon-m profile to the suffix set E (either all words
/// of length <= n or exactly n, n <= m).
Row restrict_profile(const Row& profile, std::size_t alphabet_size, int m, int n, LengthMode mode);

/// The (m-1)-profile reached from a horizon-m profile by one symbol.
Row restrict_profile_after_symbol(const Row& profile, std::size_t alphabet_size, int m, Symbol s);

/// Cells of the partition of reachable profiles by equal restriction to E.
struct LambdaPartition {
    int n = 0;
    LengthMode mode = LengthMode::UpTo;
    std::vector<std::vector<int>> cells; // profile indices, grouped
};

LambdaPartition lambda_partition(const TruncatedAutomaton& automaton, int n, LengthMode mode);

/// Number of distinct restrictions of reachable profiles to E: the size of
/// the minimal subcover of the join of per-suffix preimage covers, which
/// equals gamma(E) on saturated truncations.
std::uint64_t cover_complexity(const TruncatedAutomaton& automaton, int n, LengthMode mode);

struct CoverEntropySequence {
    std::vector<std::uint64_t> counts; // per n = 0..n_max
    std::vector<double> ratios;        // log2(counts[n]) / n for n >= 1
};

/// The per-n cover complexities of the truncation built at horizon n_max,
/// with their log ratios; identical to the gamma-derived a_n sequence on
/// the same prefix universe.
CoverEntropySequence entropy_via_covers(const Lang& lang, int n_max, int prefix_bound,
                                        const GammaOptions& opts);

} // namespace entroscope

#endif
