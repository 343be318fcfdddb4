#include "entroscope/group.hpp"

#include <cmath>
#include <unordered_set>

namespace entroscope {

Group::Group(GroupKind kind, int rank) : kind_(kind), rank_(rank) {
    if (rank < 1) throw InputError("group rank must be >= 1");
}

GroupElement Group::identity() const {
    if (kind_ == GroupKind::Free) return GroupElement{{}};
    return GroupElement{std::vector<std::int32_t>(rank_, 0)};
}

GroupElement Group::generator(int i) const {
    if (i < 0 || i >= rank_) throw InputError("generator index out of range");
    if (kind_ == GroupKind::Free) return GroupElement{{static_cast<std::int32_t>(i + 1)}};
    GroupElement e = identity();
    e.data[i] = 1;
    return e;
}

GroupElement Group::inverse_generator(int i) const { return inverse(generator(i)); }

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
    if (kind_ == GroupKind::FreeAbelian) {
        if (a.data.size() != static_cast<std::size_t>(rank_) || b.data.size() != a.data.size())
            throw InputError("group element rank mismatch");
        GroupElement out = a;
        for (int i = 0; i < rank_; ++i) out.data[i] += b.data[i];
        return out;
    }
    GroupElement out = a;
    for (auto letter : b.data) {
        if (!out.data.empty() && out.data.back() == -letter)
            out.data.pop_back();
        else
            out.data.push_back(letter);
    }
    return out;
}

GroupElement Group::inverse(const GroupElement& a) const {
    GroupElement out;
    if (kind_ == GroupKind::FreeAbelian) {
        out.data.resize(rank_);
        for (int i = 0; i < rank_; ++i) out.data[i] = -a.data[i];
        return out;
    }
    out.data.reserve(a.data.size());
    for (auto it = a.data.rbegin(); it != a.data.rend(); ++it) out.data.push_back(-*it);
    return out;
}

GroupElement Group::reduce(const std::vector<std::int32_t>& raw) const {
    if (kind_ == GroupKind::FreeAbelian) {
        if (raw.size() != static_cast<std::size_t>(rank_)) throw InputError("group element rank mismatch");
        return GroupElement{raw};
    }
    GroupElement out;
    for (auto letter : raw) {
        if (letter == 0 || letter > rank_ || letter < -rank_)
            throw InputError("letter out of range for free group");
        if (!out.data.empty() && out.data.back() == -letter)
            out.data.pop_back();
        else
            out.data.push_back(letter);
    }
    return out;
}

bool Group::is_identity(const GroupElement& g) const {
    if (kind_ == GroupKind::Free) return g.data.empty();
    for (auto v : g.data)
        if (v != 0) return false;
    return true;
}

std::vector<std::int64_t> Group::abelianization(const GroupElement& g) const {
    std::vector<std::int64_t> out(rank_, 0);
    if (kind_ == GroupKind::FreeAbelian) {
        for (int i = 0; i < rank_; ++i) out[i] = g.data[i];
        return out;
    }
    for (auto letter : g.data) {
        if (letter > 0)
            ++out[letter - 1];
        else
            --out[-letter - 1];
    }
    return out;
}

std::uint64_t Group::ball_size(int n, Budget& budget) const {
    if (n < 0) throw InputError("ball radius must be >= 0");
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement> frontier{identity()};
    seen.insert(identity());
    std::vector<GroupElement> gens;
    for (int i = 0; i < rank_; ++i) {
        gens.push_back(generator(i));
        gens.push_back(inverse_generator(i));
    }
    for (int step = 0; step < n; ++step) {
        std::uint64_t cost = frontier.size() * gens.size();
        if (!budget.can_afford(cost))
            throw BudgetExceeded("ball closure budget exhausted at radius " + std::to_string(step));
        budget.charge(cost);
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (const auto& s : gens) {
                GroupElement h = multiply(g, s);
                if (seen.insert(h).second) next.push_back(h);
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

std::uint64_t Group::ball_size(int n) const {
    Budget unlimited{UINT64_MAX, 0};
    return ball_size(n, unlimited);
}

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::uint64_t Group::ball_closed_form(int n) const {
    if (n < 0) throw InputError("ball radius must be >= 0");
    if (kind_ == GroupKind::Free) {
        int k = rank_;
        if (k == 1) return 2 * static_cast<std::uint64_t>(n) + 1;
        // 1 + 2k((2k-1)^n - 1)/(2k-2)
        std::uint64_t pow = 1;
        for (int i = 0; i < n; ++i) pow *= (2 * k - 1);
        return 1 + 2ull * k * (pow - 1) / (2ull * k - 2);
    }
    // l1 ball in Z^k: sum_i 2^i C(k,i) C(n,i)
    std::uint64_t total = 0;
    std::uint64_t pow2 = 1;
    for (int i = 0; i <= rank_; ++i) {
        total += pow2 * binomial(rank_, i) * binomial(n, i);
        pow2 *= 2;
    }
    return total;
}

double Group::growth_limit() const {
    if (kind_ == GroupKind::Free && rank_ >= 2) return std::log2(2.0 * rank_ - 1.0);
    return 0.0;
}

std::string Group::describe() const {
    return (kind_ == GroupKind::Free ? "free:" : "abelian:") + std::to_string(rank_);
}

BallTable ball_table(const Group& g, int n_max, Budget& budget) {
    BallTable t{g, std::vector<std::uint64_t>(n_max + 1, 0), {}};
    // single closure pass, recording the closure size after each step
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement> frontier{g.identity()};
    seen.insert(g.identity());
    std::vector<GroupElement> gens;
    for (int i = 0; i < g.rank(); ++i) {
        gens.push_back(g.generator(i));
        gens.push_back(g.inverse_generator(i));
    }
    t.sizes[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        std::uint64_t cost = frontier.size() * gens.size();
        if (!budget.can_afford(cost)) {
            t.budget_exhausted = true;
            t.sizes.resize(n);
            break;
        }
        budget.charge(cost);
        std::vector<GroupElement> next;
        for (const auto& e : frontier)
            for (const auto& s : gens) {
                GroupElement h = g.multiply(e, s);
                if (seen.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
        t.sizes[n] = seen.size();
    }
    for (std::size_t n = 1; n < t.sizes.size(); ++n)
        t.log2_ratios.push_back(std::log2(static_cast<double>(t.sizes[n])) / n);
    return t;
}

GrowthEstimate egr_estimate(const BallTable& table) {
    if (table.sizes.size() < 5) throw InputError("egr estimate needs n_max >= 4");
    GrowthEstimate e{};
    e.estimate = table.log2_ratios.back();
    e.limit = table.group.growth_limit();
    return e;
}

} // namespace entroscope
