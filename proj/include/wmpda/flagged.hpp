#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "wmpda/core.hpp"

namespace wmpda {

/// A stack symbol carrying one bit of annotation. The marked-subtransition
/// machinery reads the bit as "marked", the colored-configuration machinery as
/// "colored"; both print it as a '~' prefix.
struct FlaggedSymbol {
    SymbolId symbol;
    bool flag = false;

    friend auto operator<=>(const FlaggedSymbol&, const FlaggedSymbol&) = default;
};

using FlaggedWord = std::vector<FlaggedSymbol>;

struct FlaggedConfiguration {
    StateId state;
    std::vector<FlaggedWord> stacks;

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::size_t flagged_count() const;
    [[nodiscard]] std::size_t unflagged_count() const { return size() - flagged_count(); }

    friend auto operator<=>(const FlaggedConfiguration&, const FlaggedConfiguration&) = default;
};

struct FlaggedConfigurationHash {
    std::size_t operator()(const FlaggedConfiguration& c) const;
};

FlaggedWord with_flag(const Word& w, bool flag);
FlaggedConfiguration with_flag(const Configuration& c, bool flag);
Word strip(const FlaggedWord& w);
Configuration strip(const FlaggedConfiguration& c);

} // namespace wmpda
