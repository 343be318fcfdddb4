#ifndef ENTROSCOPE_GROWTH_HPP
#define ENTROSCOPE_GROWTH_HPP

#include "entroscope/group.hpp"
#include "entroscope/language.hpp"

namespace entroscope {

/// The group a catalog language maps into: Free(k) for dyck:k, Z^k for
/// cdyck:k, Z for countdiff.
Group homomorphism_group(const Lang& lang);

/// Exact size of the image of all words of length <= n under the language's
/// defining homomorphism, by closure over the per-symbol images.
std::uint64_t phi_image_size(const Lang& lang, int n, Budget& budget);
std::uint64_t phi_image_size(const Lang& lang, int n);

/// The gamma upper bound |E| * |phi(Sigma^(n))| + 1.
std::uint64_t theorem_bound(const Lang& lang, int n, Budget& budget);
std::uint64_t theorem_bound(const Lang& lang, int n);

} // namespace entroscope

#endif
