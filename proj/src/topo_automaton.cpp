#include "entroscope/topo_automaton.hpp"

#include <cmath>

namespace entroscope {

TruncatedAutomaton build_truncated(const Lang& lang, int m, int prefix_bound,
                                   const GammaOptions& opts) {
    Budget budget{opts.budget, 0};
    return build_truncated(lang, m, prefix_bound, opts, budget);
}

TruncatedAutomaton build_truncated(const Lang& lang, int m, int prefix_bound,
                                   const GammaOptions& opts, Budget& budget) {
    if (m < 1) throw InputError("truncation horizon must be >= 1");
    if (prefix_bound < m) throw InputError("prefix bound must be >= horizon");
    TruncatedAutomaton a;
    a.horizon = m;
    a.alphabet_size = lang.alphabet().size();

    SuffixSet F = SuffixSet::make(lang.alphabet(), m, LengthMode::UpTo);
    GammaOptions scan_opts = opts;
    scan_opts.prefix_bound = prefix_bound;
    RowScan scan = scan_rows(lang, F, scan_opts, budget);
    a.prefix_bound = scan.explored_bound;
    a.saturated = scan.saturated;
    a.profiles = std::move(scan.rows);
    a.witnesses = std::move(scan.witnesses);

    for (const Row& p : a.profiles) {
        a.final_profile.push_back(p.get(0));  // the epsilon bit
        std::vector<Row> per_symbol;
        for (std::size_t s = 0; s < a.alphabet_size; ++s)
            per_symbol.push_back(restrict_profile_after_symbol(p, a.alphabet_size, m,
                                                               static_cast<Symbol>(s)));
        a.transitions.push_back(std::move(per_symbol));
    }
    return a;
}

Row restrict_profile_after_symbol(const Row& profile, std::size_t k, int m, Symbol s) {
    // bits of the (m-1)-profile of u*s are the bits of u's m-profile at the
    // suffixes s*w, located by length-lex index arithmetic
    Row out;
    out.resize(word_count(k, m - 1, LengthMode::UpTo));
    std::uint64_t out_idx = 0;
    std::uint64_t in_offset = 0;  // start of the length-len block in the source
    std::uint64_t pow = 1;        // k^len
    for (int len = 0; len <= m - 1; ++len) {
        // suffix s*w with |w| = len sits in the source block of length len+1
        std::uint64_t src_block = in_offset + pow;
        for (std::uint64_t v = 0; v < pow; ++v) {
            std::uint64_t src = src_block + static_cast<std::uint64_t>(s) * pow + v;
            if (profile.get(src)) out.set(out_idx);
            ++out_idx;
        }
        in_offset += pow;
        pow *= k;
    }
    return out;
}

Row restrict_profile(const Row& profile, std::size_t k, int m, int n, LengthMode mode) {
    if (n > m) throw InputError("restriction horizon exceeds profile horizon");
    Row out;
    if (mode == LengthMode::UpTo) {
        std::uint64_t count = word_count(k, n, LengthMode::UpTo);
        out.resize(count);
        for (std::uint64_t i = 0; i < count; ++i)
            if (profile.get(i)) out.set(i);
        return out;
    }
    std::uint64_t start = n == 0 ? 0 : word_count(k, n - 1, LengthMode::UpTo);
    std::uint64_t count = word_count(k, n, LengthMode::Exact);
    out.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        if (profile.get(start + i)) out.set(i);
    return out;
}

LambdaPartition lambda_partition(const TruncatedAutomaton& a, int n, LengthMode mode) {
    LambdaPartition part;
    part.n = n;
    part.mode = mode;
    std::vector<Row> keys;
    for (std::size_t i = 0; i < a.profiles.size(); ++i) {
        Row key = restrict_profile(a.profiles[i], a.alphabet_size, a.horizon, n, mode);
        bool placed = false;
        for (std::size_t c = 0; c < keys.size(); ++c) {
            if (keys[c] == key) {
                part.cells[c].push_back(static_cast<int>(i));
                placed = true;
                break;
            }
        }
        if (!placed) {
            keys.push_back(std::move(key));
            part.cells.push_back({static_cast<int>(i)});
        }
    }
    return part;
}

std::uint64_t cover_complexity(const TruncatedAutomaton& a, int n, LengthMode mode) {
    return lambda_partition(a, n, mode).cells.size();
}

CoverEntropySequence entropy_via_covers(const Lang& lang, int n_max, int prefix_bound,
                                        const GammaOptions& opts) {
    TruncatedAutomaton a = build_truncated(lang, std::max(1, n_max), prefix_bound, opts);
    CoverEntropySequence seq;
    for (int n = 0; n <= n_max; ++n) {
        seq.counts.push_back(cover_complexity(a, n, LengthMode::UpTo));
        if (n >= 1)
            seq.ratios.push_back(std::log2(static_cast<double>(seq.counts.back())) / n);
    }
    return seq;
}

} // namespace entroscope
