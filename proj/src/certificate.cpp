#include "entroscope/certificate.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace entroscope {

namespace {

const std::string kSink = "!";

// DFA states are exact; horizon unbounded.
class DfaCertificate : public Certificate {
public:
    explicit DfaCertificate(std::shared_ptr<const DfaDesc> d) : dfa_(std::move(d)) {}
    std::string initial() const override { return std::to_string(dfa_->initial); }
    std::string step(const std::string& state, Symbol s) const override {
        return std::to_string(dfa_->transitions[std::stoi(state)][s]);
    }
    bool accepting(const std::string& state) const override { return dfa_->accepting[std::stoi(state)]; }
    int horizon() const override { return 1 << 30; }

private:
    std::shared_ptr<const DfaDesc> dfa_;
};

class ConstantCertificate : public Certificate {
public:
    explicit ConstantCertificate(bool accept) : accept_(accept) {}
    std::string initial() const override { return "0"; }
    std::string step(const std::string&, Symbol) const override { return "0"; }
    bool accepting(const std::string& state) const override { return accept_ && state == "0"; }
    int horizon() const override { return 1 << 30; }

private:
    bool accept_;
};

// State: the free-group reduction of the prefix, capped at cap letters.
// Letters are stored as chars 'a'+sort (opening) / 'A'+sort (inverse). A
// prefix that violates per-sort count dominance, or whose reduced word
// outgrows the cap, falls into the absorbing sink; both have all-zero rows
// at every horizon <= cap, and escaping past the cap and back to the
// identity costs more than cap further letters, so rows up to the cap
// horizon are unaffected by the clamp.
class DyckCertificate : public Certificate {
public:
    explicit DyckCertificate(int cap) : cap_(cap) {}
    std::string initial() const override { return ""; }

    std::string step(const std::string& state, Symbol s) const override {
        if (state == kSink) return kSink;
        int sort = s / 2;
        bool open = (s & 1) == 0;
        std::string r = state;
        if (open) {
            if (!r.empty() && r.back() == static_cast<char>('A' + sort))
                r.pop_back();
            else
                r.push_back(static_cast<char>('a' + sort));
        } else {
            long long net = 0;
            for (char c : r) {
                if (c == static_cast<char>('a' + sort)) ++net;
                if (c == static_cast<char>('A' + sort)) --net;
            }
            if (net <= 0) return kSink;  // dominance violated
            if (!r.empty() && r.back() == static_cast<char>('a' + sort))
                r.pop_back();
            else
                r.push_back(static_cast<char>('A' + sort));
        }
        if (r.size() > static_cast<std::size_t>(cap_)) return kSink;
        return r;
    }

    bool accepting(const std::string& state) const override { return state.empty(); }
    int horizon() const override { return cap_; }

private:
    int cap_;
};

// Per-sort net counters, absorbing sink on dominance violation or overflow.
class CommutativeDyckCertificate : public Certificate {
public:
    CommutativeDyckCertificate(int sorts, int cap) : sorts_(sorts), cap_(cap) {}
    std::string initial() const override { return encode(std::vector<int>(sorts_, 0)); }

    std::string step(const std::string& state, Symbol s) const override {
        if (state == kSink) return kSink;
        std::vector<int> c = decode(state);
        int sort = s / 2;
        if ((s & 1) == 0) {
            if (++c[sort] > cap_) return kSink;
        } else if (--c[sort] < 0) {
            return kSink;
        }
        return encode(c);
    }

    bool accepting(const std::string& state) const override {
        if (state == kSink) return false;
        for (int v : decode(state))
            if (v != 0) return false;
        return true;
    }
    int horizon() const override { return cap_; }

private:
    std::string encode(const std::vector<int>& c) const {
        std::string out;
        for (int v : c) {
            out += std::to_string(v);
            out.push_back(',');
        }
        return out;
    }
    std::vector<int> decode(const std::string& s) const {
        std::vector<int> out;
        int v = 0;
        for (char ch : s) {
            if (ch == ',') {
                out.push_back(v);
                v = 0;
            } else {
                v = v * 10 + (ch - '0');
            }
        }
        return out;
    }

    int sorts_;
    int cap_;
};

// Counter |u|_a - |u|_b clamped to [target - cap, target + cap].
class CountDiffCertificate : public Certificate {
public:
    CountDiffCertificate(long long target, int cap) : target_(target), cap_(cap) {}
    std::string initial() const override { return "0"; }

    std::string step(const std::string& state, Symbol s) const override {
        if (state == kSink) return kSink;
        long long c = std::stoll(state) + (s == 0 ? 1 : -1);
        if (c < target_ - cap_ || c > target_ + cap_) return kSink;
        return std::to_string(c);
    }

    bool accepting(const std::string& state) const override {
        return state != kSink && std::stoll(state) == target_;
    }
    int horizon() const override { return cap_; }

private:
    long long target_;
    int cap_;
};

// Phase + counters for a^i, a^k b^j, a^k b^k c^j prefixes; anything else,
// and any count above the cap, is the absorbing sink.
class AnBnCnCertificate : public Certificate {
public:
    explicit AnBnCnCertificate(int cap) : cap_(cap) {}
    std::string initial() const override { return "A0"; }

    std::string step(const std::string& state, Symbol s) const override {
        if (state == kSink) return kSink;
        char phase = state[0];
        auto comma = state.find(',');
        int x = std::stoi(state.substr(1, comma == std::string::npos ? std::string::npos : comma - 1));
        int y = comma == std::string::npos ? 0 : std::stoi(state.substr(comma + 1));
        if (phase == 'A') {
            if (s == 0) return x + 1 > cap_ ? kSink : "A" + std::to_string(x + 1);
            if (s == 1) return x >= 1 ? make('B', x, 1) : kSink;
            return kSink;
        }
        if (phase == 'B') {
            if (s == 1) return y + 1 <= x ? make('B', x, y + 1) : kSink;
            if (s == 2) return y == x ? make('C', x, 1) : kSink;
            return kSink;
        }
        // phase C
        if (s == 2) return y + 1 <= x ? make('C', x, y + 1) : kSink;
        return kSink;
    }

    bool accepting(const std::string& state) const override {
        if (state == kSink) return false;
        if (state == "A0") return true;
        if (state[0] != 'C') return false;
        auto comma = state.find(',');
        return state.substr(1, comma - 1) == state.substr(comma + 1);
    }
    int horizon() const override { return cap_; }

private:
    static std::string make(char phase, int x, int y) {
        return phase + std::to_string(x) + "," + std::to_string(y);
    }
    int cap_;
};

class ComplementCertificate : public Certificate {
public:
    explicit ComplementCertificate(std::unique_ptr<Certificate> inner) : inner_(std::move(inner)) {}
    std::string initial() const override { return inner_->initial(); }
    std::string step(const std::string& state, Symbol s) const override { return inner_->step(state, s); }
    bool accepting(const std::string& state) const override { return !inner_->accepting(state); }
    int horizon() const override { return inner_->horizon(); }

private:
    std::unique_ptr<Certificate> inner_;
};

} // namespace

std::unique_ptr<Certificate> make_certificate(const Lang& lang, int min_horizon) {
    // The cap doubles as the sound horizon and the deepest audited prefix.
    int cap = std::max(min_horizon, 8);
    switch (lang.kind()) {
        case LangKind::Empty: return std::make_unique<ConstantCertificate>(false);
        case LangKind::Universal: return std::make_unique<ConstantCertificate>(true);
        case LangKind::Dfa: return std::make_unique<DfaCertificate>(lang.node().dfa);
        case LangKind::Dyck: return std::make_unique<DyckCertificate>(cap);
        case LangKind::CommutativeDyck:
            return std::make_unique<CommutativeDyckCertificate>(lang.node().sorts, cap);
        case LangKind::CountDiff:
            return std::make_unique<CountDiffCertificate>(lang.node().diff,
                                                          cap + static_cast<int>(lang.node().diff));
        case LangKind::AnBnCn: return std::make_unique<AnBnCnCertificate>(cap);
        case LangKind::Complement: {
            auto inner = make_certificate(lang.node().children[0], min_horizon);
            if (!inner) return nullptr;
            return std::make_unique<ComplementCertificate>(std::move(inner));
        }
        default: return nullptr;
    }
}

ExploredCertificate explore(const Certificate& cert, std::size_t alphabet_size,
                            std::size_t max_states) {
    ExploredCertificate g;
    g.alphabet_size = alphabet_size;
    g.horizon = cert.horizon();
    std::unordered_map<std::string, int> ids;
    std::deque<std::pair<std::string, int>> queue;
    auto intern = [&](const std::string& key, const Word& via) {
        auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
        if (inserted) {
            if (ids.size() > max_states) throw BudgetExceeded("certificate state space too large");
            g.next.emplace_back();
            g.accepting.push_back(cert.accepting(key));
            g.witness.push_back(via);
            queue.emplace_back(key, it->second);
        }
        return it->second;
    };
    intern(cert.initial(), Word{});
    while (!queue.empty()) {
        auto [key, id] = queue.front();
        queue.pop_front();
        g.next[id].resize(alphabet_size);
        for (std::size_t s = 0; s < alphabet_size; ++s) {
            Word via = g.witness[id];
            via.push_back(static_cast<Symbol>(s));
            g.next[id][s] = intern(cert.step(key, static_cast<Symbol>(s)), via);
        }
    }
    return g;
}

std::vector<std::uint64_t> refinement_counts(const ExploredCertificate& g, int n, LengthMode mode) {
    const std::size_t states = g.next.size();
    const std::size_t k = g.alphabet_size;
    std::vector<int> cls(states);
    for (std::size_t i = 0; i < states; ++i) cls[i] = g.accepting[i] ? 1 : 0;
    auto normalize = [&](std::vector<int>& c) {
        std::unordered_map<int, int> remap;
        for (auto& v : c) {
            auto [it, inserted] = remap.emplace(v, static_cast<int>(remap.size()));
            v = it->second;
        }
        return remap.size();
    };
    std::vector<std::uint64_t> counts;
    counts.push_back(normalize(cls));
    std::vector<int> next_cls(states);
    for (int level = 1; level <= n; ++level) {
        std::unordered_map<std::string, int> sig_ids;
        for (std::size_t i = 0; i < states; ++i) {
            std::string sig;
            sig.reserve((k + 1) * 4);
            if (mode == LengthMode::UpTo) {
                sig += std::to_string(g.accepting[i] ? 1 : 0);
                sig.push_back(';');
            }
            for (std::size_t s = 0; s < k; ++s) {
                sig += std::to_string(cls[g.next[i][s]]);
                sig.push_back(',');
            }
            auto [it, inserted] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
            next_cls[i] = it->second;
        }
        cls.swap(next_cls);
        counts.push_back(normalize(cls));
    }
    return counts;
}

namespace {

// row of u over all suffixes of length <= horizon, as a bit string
std::string brute_row(const Lang& lang, const Word& u, const std::vector<Word>& suffixes) {
    std::string row(suffixes.size(), '0');
    for (std::size_t i = 0; i < suffixes.size(); ++i)
        if (lang.member(concat(u, suffixes[i]))) row[i] = '1';
    return row;
}

} // namespace

AuditReport audit_certificate(const Lang& lang, const ExploredCertificate& graph,
                              int prefix_bound, int row_horizon, Budget& budget) {
    AuditReport report;
    auto suffixes = enumerate_words(lang.alphabet().size(), row_horizon, LengthMode::UpTo);
    std::vector<std::optional<std::string>> state_rows(graph.next.size());

    // walk every prefix in length-lex order, carrying the machine state
    struct Item {
        Word prefix;
        int state;
    };
    std::deque<Item> queue{{Word{}, 0}};
    // state ids in `graph` are BFS-consistent with stepping from initial
    const std::size_t k = lang.alphabet().size();
    std::uint64_t prefix_total = word_count(k, prefix_bound, LengthMode::UpTo);
    std::uint64_t cost = prefix_total * suffixes.size();
    if (!budget.can_afford(cost)) throw BudgetExceeded("certificate audit budget exhausted");
    budget.charge(cost);

    while (!queue.empty()) {
        auto [prefix, state] = queue.front();
        queue.pop_front();
        if (!state_rows[state]) state_rows[state] = brute_row(lang, graph.witness[state], suffixes);
        std::string row = brute_row(lang, prefix, suffixes);
        ++report.checked;
        if (row != *state_rows[state]) {
            report.ok = false;
            report.mismatch = lang.alphabet().render(prefix);
            return report;
        }
        if (prefix.size() < static_cast<std::size_t>(prefix_bound)) {
            for (std::size_t s = 0; s < k; ++s) {
                Word next = prefix;
                next.push_back(static_cast<Symbol>(s));
                queue.push_back({std::move(next), graph.next[state][s]});
            }
        }
    }
    return report;
}

} // namespace entroscope
