#ifndef ENTROSCOPE_CERTIFICATE_HPP
#define ENTROSCOPE_CERTIFICATE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "entroscope/language.hpp"

namespace entroscope {

/// Finite-state certificate attached to a language: a total deterministic
/// machine whose acceptance agrees with the language on every word that a
/// suffix of length <= horizon() can reach from an audited prefix. Two
/// prefixes that reach the same state have identical suffix-membership rows
/// for every horizon n <= horizon().
class Certificate {
public:
    virtual ~Certificate() = default;
    virtual std::string initial() const = 0;
    virtual std::string step(const std::string& state, Symbol s) const = 0;
    virtual bool accepting(const std::string& state) const = 0;
    virtual int horizon() const = 0;
};

/// Builds the certificate shipped with a catalog language, with clamp caps
/// sized so the machine is sound for suffix horizons up to min_horizon and
/// for audited prefixes up to min_horizon letters. Returns nullptr for
/// languages without a certificate (palindromes, the lookup-table language,
/// group languages, unions/intersections).
std::unique_ptr<Certificate> make_certificate(const Lang& lang, int min_horizon);

/// Reachable state graph of a certificate, explored breadth-first. State ids
/// are BFS discovery order, so ids, witnesses and transitions are all
/// deterministic.
struct ExploredCertificate {
    std::size_t alphabet_size = 0;
    int horizon = 0;
    std::vector<std::vector<int>> next;  // [state][symbol] -> state
    std::vector<bool> accepting;
    std::vector<Word> witness;           // shortest (length-lex) access word
};

ExploredCertificate explore(const Certificate& cert, std::size_t alphabet_size,
                            std::size_t max_states = 4'000'000);

/// Number of distinct suffix-membership rows per horizon j = 0..n, computed
/// by partition refinement over the explored graph. UpTo counts rows over
/// all suffixes of length <= j, Exact over suffixes of length exactly j.
std::vector<std::uint64_t> refinement_counts(const ExploredCertificate& g, int n, LengthMode mode);

struct AuditReport {
    bool ok = true;
    std::string mismatch;   // first offending prefix, if any
    std::uint64_t checked = 0;
};

/// Brute-force audit: every prefix of length <= prefix_bound must have the
/// same row (over suffixes of length <= row_horizon) as the witness of the
/// state the machine assigns to it.
AuditReport audit_certificate(const Lang& lang, const ExploredCertificate& graph,
                              int prefix_bound, int row_horizon, Budget& budget);

} // namespace entroscope

#endif
