#ifndef ENTROSCOPE_GROUP_HPP
#define ENTROSCOPE_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entroscope/errors.hpp"

namespace entroscope {

enum class GroupKind { Free, FreeAbelian };

/// Element representation:
///  - Free(k): reduced word; entry g+1 is generator g, entry -(g+1) its inverse.
///  - FreeAbelian(k): exponent vector of length k.
struct GroupElement {
    std::vector<std::int32_t> data;

    bool operator==(const GroupElement& other) const { return data == other.data; }
    bool operator!=(const GroupElement& other) const { return data != other.data; }
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto v : g.data) h = (h ^ static_cast<std::size_t>(v + 0x7fffffff)) * 0x100000001b3ull;
        return h;
    }
};

/// Finitely generated group with the symmetric generating set
/// S = generators + inverses + identity.
class Group {
public:
    Group(GroupKind kind, int rank);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }

    GroupElement identity() const;
    GroupElement generator(int i) const;
    GroupElement inverse_generator(int i) const;

    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    /// Canonical form of an arbitrary letter sequence (free) or vector (abelian).
    GroupElement reduce(const std::vector<std::int32_t>& raw) const;

    bool is_identity(const GroupElement& g) const;
    /// Abelianization exponent vector; the identity map for FreeAbelian.
    std::vector<std::int64_t> abelianization(const GroupElement& g) const;

    /// |S^n| by breadth-first closure. Cost is charged to the budget per
    /// expanded element.
    std::uint64_t ball_size(int n, Budget& budget) const;
    std::uint64_t ball_size(int n) const;

    /// |S^n| in closed form: free groups 1 + 2k((2k-1)^n - 1)/(2k-2) (2n+1 for
    /// k = 1), free-abelian groups the l1-ball lattice count.
    std::uint64_t ball_closed_form(int n) const;

    /// log2(2k-1) for Free(k >= 2); 0 for Free(1) and FreeAbelian.
    double growth_limit() const;

    std::string describe() const;

private:
    GroupKind kind_;
    int rank_;
};

struct BallTable {
    Group group;
    std::vector<std::uint64_t> sizes;   // sizes[n] = |S^n|, n = 0..completed_n
    std::vector<double> log2_ratios;    // log2 |S^n| / n, n >= 1 (index n-1)
    bool budget_exhausted = false;
};

BallTable ball_table(const Group& g, int n_max, Budget& budget);

struct GrowthEstimate {
    double estimate;                 // log2 |S^n_max| / n_max
    std::optional<double> limit;     // known closed-form limit
};

GrowthEstimate egr_estimate(const BallTable& table);

} // namespace entroscope

#endif
