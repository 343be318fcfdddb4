#ifndef ENTROSCOPE_METRIC_DIM_HPP
#define ENTROSCOPE_METRIC_DIM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "entroscope/nerode.hpp"

namespace entroscope {

/// Distance 2^-n* where n* is the least horizon whose suffix rows separate
/// u and v. `resolved` is false when no difference was found up to n_max:
/// the true distance is then at most 2^-(n_max+1), reported as 0.
struct ThetaDistance {
    double value = 0.0;
    bool resolved = false;
    int level = -1;  // n* when resolved
};

ThetaDistance d_theta(const Lang& lang, const Word& u, const Word& v, int n_max, Budget& budget);
ThetaDistance d_theta(const Lang& lang, const Word& u, const Word& v, int n_max);

struct UltrametricReport {
    bool ok = true;
    std::uint64_t triples_checked = 0;
    std::string counterexample;
};

/// Verifies symmetry, d(u,u) = 0 and the strong triangle inequality on a
/// sample of word triples.
UltrametricReport ultrametric_check(const Lang& lang, const std::vector<Word>& words,
                                    std::size_t sample_triples, std::uint64_t seed, int n_max,
                                    Budget& budget);

struct DimensionEstimate {
    std::vector<std::uint64_t> covering;  // covering number at radius 2^-n, n = 0..n_max
    std::vector<double> values;           // log2(covering[n]) / n for n >= 1
    double dimension = 0.0;
    EntropyVerdict verdict = EntropyVerdict::Inconclusive;
    bool matches_entropy = false;
};

/// Reads covering numbers at radius 2^-n off the gamma table (the two are
/// equal classes-for-balls) and applies the same tail rule as the entropy
/// estimate; the per-n values must coincide bit-for-bit with a_n.
DimensionEstimate dimension_estimate(const Lang& lang, const GammaTable& table,
                                     const EntropyThresholds& thresholds = {});

/// Greedy cover of the given words by balls of radius 2^-n; returns the
/// number of centers needed (ball = open ball, so same-row words share one).
std::uint64_t greedy_cover_count(const Lang& lang, const std::vector<Word>& words, int n,
                                 Budget& budget);

} // namespace entroscope

#endif
