#ifndef ENTROSCOPE_LANGUAGE_HPP
#define ENTROSCOPE_LANGUAGE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "entroscope/alphabet.hpp"
#include "entroscope/errors.hpp"
#include "entroscope/group.hpp"

namespace entroscope {

enum class LangKind {
    Empty,
    Universal,
    Dfa,
    Dyck,
    CommutativeDyck,
    Palindromes,
    AnBnCn,
    CountDiff,
    GroupLanguage,
    InfiniteEntropy,
    Complement,
    Union,
    Intersection,
};

struct DfaDesc {
    Alphabet alphabet;
    int n_states = 0;
    int initial = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<int>> transitions; // [state][symbol rank]
};

struct GroupLanguageDesc {
    Alphabet alphabet;
    Group group;
    std::vector<GroupElement> images;                       // per symbol rank
    std::function<bool(const GroupElement&)> prefix_ok;     // the H predicate
    std::vector<GroupElement> targets;                      // the finite set E
};

class LangNode;

/// A closed language description with a total membership oracle. Cheap to
/// copy; all oracles are pure and stateless after construction.
class Lang {
public:
    static Lang empty(Alphabet a);
    static Lang universal(Alphabet a);
    static Lang dfa(DfaDesc d);
    /// k sorts of parentheses; rank 2i opens sort i, rank 2i+1 closes it.
    static Lang dyck(int sorts);
    static Lang dyck(int sorts, Alphabet a);
    static Lang commutative_dyck(int sorts);
    static Lang commutative_dyck(int sorts, Alphabet a);
    static Lang palindromes(Alphabet a);
    static Lang anbncn();
    static Lang count_diff(char32_t a, char32_t b, long long m);
    static Lang group_language(GroupLanguageDesc d);
    static Lang infinite_entropy();

    const Alphabet& alphabet() const;
    LangKind kind() const;
    const LangNode& node() const { return *node_; }
    std::string describe() const;

    bool member(const Word& w) const;

private:
    explicit Lang(std::shared_ptr<const LangNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const LangNode> node_;
    friend Lang complement(const Lang&);
    friend Lang unite(const Lang&, const Lang&);
    friend Lang intersect(const Lang&, const Lang&);
};

Lang complement(const Lang& l);
Lang unite(const Lang& a, const Lang& b);
Lang intersect(const Lang& a, const Lang& b);

struct LangNode {
    LangKind kind;
    Alphabet alphabet;
    std::string description;

    // Dyck / CommutativeDyck
    int sorts = 0;
    // CountDiff
    long long diff = 0;
    // payloads
    std::shared_ptr<const DfaDesc> dfa;
    std::shared_ptr<const GroupLanguageDesc> group_lang;
    std::vector<Lang> children;
};

/// Membership oracle with deterministic budget metering.
class Oracle {
public:
    explicit Oracle(const Lang& lang, Budget* budget = nullptr) : lang_(lang), budget_(budget) {}

    bool test(const Word& w) const {
        if (budget_) {
            if (!budget_->can_afford(1)) throw BudgetExceeded("membership query budget exhausted");
            budget_->charge(1);
        }
        return lang_.member(w);
    }

    const Lang& lang() const { return lang_; }
    Budget* budget() const { return budget_; }

private:
    Lang lang_;
    Budget* budget_;
};

/// Parses the DFA file format:
/// {"alphabet": ["a","b"], "states": N, "initial": i, "accepting": [...],
///  "transitions": [[target per symbol rank] per state]}
Lang load_dfa(const std::string& json_text);

/// Parses the CLI language grammar: dyck:2, cdyck:2, palin:ab, anbncn,
/// countdiff:a,b,3, dfa:path.json, infent, empty:ab, universal:ab, and the
/// combinators not(...), and(...,...), or(...,...).
Lang parse_lang(const std::string& spec);

} // namespace entroscope

#endif
