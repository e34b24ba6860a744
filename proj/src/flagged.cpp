#include "wmpda/flagged.hpp"

namespace wmpda {

std::size_t FlaggedConfiguration::size() const
{
    std::size_t total = 0;
    for (const auto& w : stacks)
        total += w.size();
    return total;
}

std::size_t FlaggedConfiguration::flagged_count() const
{
    std::size_t total = 0;
    for (const auto& w : stacks) {
        for (const auto& s : w)
            total += s.flag ? 1 : 0;
    }
    return total;
}

std::size_t FlaggedConfigurationHash::operator()(const FlaggedConfiguration& c) const
{
    std::size_t h = c.state.value * 0x9e3779b97f4a7c15ULL;
    for (const auto& w : c.stacks) {
        h ^= 0xabcdefULL + (h << 6) + (h >> 2);
        for (const auto& s : w)
            h ^= (s.symbol.value * 2 + (s.flag ? 1 : 0)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

FlaggedWord with_flag(const Word& w, bool flag)
{
    FlaggedWord out;
    out.reserve(w.size());
    for (auto x : w)
        out.push_back(FlaggedSymbol{x, flag});
    return out;
}

FlaggedConfiguration with_flag(const Configuration& c, bool flag)
{
    FlaggedConfiguration out{c.state, {}};
    for (const auto& w : c.stacks)
        out.stacks.push_back(with_flag(w, flag));
    return out;
}

Word strip(const FlaggedWord& w)
{
    Word out;
    out.reserve(w.size());
    for (const auto& s : w)
        out.push_back(s.symbol);
    return out;
}

Configuration strip(const FlaggedConfiguration& c)
{
    Configuration out{c.state, {}};
    for (const auto& w : c.stacks)
        out.stacks.push_back(strip(w));
    return out;
}

} // namespace wmpda
