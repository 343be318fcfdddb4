#ifndef ENTROSCOPE_ERRORS_HPP
#define ENTROSCOPE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace entroscope {

/// Malformed user input: bad spec string, word over the wrong alphabet, ...
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally broken input file (DFA loader).
class FormatError : public InputError {
public:
    explicit FormatError(const std::string& what) : InputError(what) {}
};

/// Deterministic work meter. Costs are charged up front for each work block,
/// so identical invocations stop at identical points regardless of threading.
struct Budget {
    std::uint64_t limit = 1'000'000;
    std::uint64_t used = 0;

    bool can_afford(std::uint64_t cost) const { return used + cost <= limit; }
    void charge(std::uint64_t cost) { used += cost; }
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entroscope

#endif
