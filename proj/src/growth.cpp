#include "entroscope/growth.hpp"

#include <unordered_set>

namespace entroscope {

namespace {

struct PhiSetup {
    Group group;
    std::vector<GroupElement> images;
    std::size_t target_count = 1;
};

PhiSetup phi_setup(const Lang& lang) {
    switch (lang.kind()) {
        case LangKind::Dyck: {
            Group g(GroupKind::Free, lang.node().sorts);
            std::vector<GroupElement> images;
            for (int i = 0; i < lang.node().sorts; ++i) {
                images.push_back(g.generator(i));
                images.push_back(g.inverse_generator(i));
            }
            return {g, std::move(images), 1};
        }
        case LangKind::CommutativeDyck: {
            Group g(GroupKind::FreeAbelian, lang.node().sorts);
            std::vector<GroupElement> images;
            for (int i = 0; i < lang.node().sorts; ++i) {
                images.push_back(g.generator(i));
                images.push_back(g.inverse_generator(i));
            }
            return {g, std::move(images), 1};
        }
        case LangKind::CountDiff: {
            Group g(GroupKind::FreeAbelian, 1);
            return {g, {g.generator(0), g.inverse_generator(0)}, 1};
        }
        case LangKind::GroupLanguage: {
            const auto& d = *lang.node().group_lang;
            return {d.group, d.images, d.targets.size()};
        }
        default:
            throw InputError("language has no defining homomorphism into a group");
    }
}

} // namespace

Group homomorphism_group(const Lang& lang) { return phi_setup(lang).group; }

std::uint64_t phi_image_size(const Lang& lang, int n, Budget& budget) {
    if (n < 0) throw InputError("image horizon must be >= 0");
    PhiSetup setup = phi_setup(lang);
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement> frontier{setup.group.identity()};
    seen.insert(setup.group.identity());
    for (int step = 0; step < n; ++step) {
        std::uint64_t cost = frontier.size() * setup.images.size();
        if (!budget.can_afford(cost))
            throw BudgetExceeded("image closure budget exhausted at length " + std::to_string(step));
        budget.charge(cost);
        std::vector<GroupElement> next;
        for (const auto& g : frontier)
            for (const auto& img : setup.images) {
                GroupElement h = setup.group.multiply(g, img);
                if (seen.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::uint64_t phi_image_size(const Lang& lang, int n) {
    Budget unlimited{UINT64_MAX, 0};
    return phi_image_size(lang, n, unlimited);
}

std::uint64_t theorem_bound(const Lang& lang, int n, Budget& budget) {
    PhiSetup setup = phi_setup(lang);
    return setup.target_count * phi_image_size(lang, n, budget) + 1;
}

std::uint64_t theorem_bound(const Lang& lang, int n) {
    Budget unlimited{UINT64_MAX, 0};
    return theorem_bound(lang, n, unlimited);
}

} // namespace entroscope
