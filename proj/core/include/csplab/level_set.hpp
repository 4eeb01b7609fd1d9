#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace csplab {

/// Set of search levels (1-based instantiation depths), stored as a bitset.
///
/// Used for conflict sets and for the explanations attached to pruned values.
/// Bit 0 is never set by the solver; level 0 is the root.
class LevelSet {
public:
    LevelSet() = default;
    explicit LevelSet(int max_level) : words_(word_count(max_level), 0) {}

    static std::size_t word_count(int max_level)
    {
        return static_cast<std::size_t>(max_level) / 64 + 1;
    }

    void insert(int level)
    {
        grow(level);
        words_[static_cast<std::size_t>(level) >> 6] |= bit(level);
    }

    void erase(int level)
    {
        const auto w = static_cast<std::size_t>(level) >> 6;
        if (w < words_.size()) {
            words_[w] &= ~bit(level);
        }
    }

    [[nodiscard]] bool contains(int level) const
    {
        const auto w = static_cast<std::size_t>(level) >> 6;
        return w < words_.size() && (words_[w] & bit(level)) != 0;
    }

    void merge(const LevelSet& other) { merge(other.words()); }

    void merge(std::span<const std::uint64_t> other)
    {
        if (other.size() > words_.size()) {
            words_.resize(other.size(), 0);
        }
        for (std::size_t i = 0; i < other.size(); ++i) {
            words_[i] |= other[i];
        }
    }

    /// Keeps only levels strictly below `level`.
    void truncate_below(int level)
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            const int base = static_cast<int>(w) * 64;
            if (base >= level) {
                words_[w] = 0;
            } else if (base + 64 > level) {
                words_[w] &= (std::uint64_t{1} << (level - base)) - 1;
            }
        }
    }

    /// Deepest level in the set, or 0 when empty.
    [[nodiscard]] int max() const
    {
        for (std::size_t w = words_.size(); w-- > 0;) {
            if (words_[w] != 0) {
                return static_cast<int>(w) * 64 + 63 - std::countl_zero(words_[w]);
            }
        }
        return 0;
    }

    [[nodiscard]] bool empty() const
    {
        for (auto w : words_) {
            if (w != 0) {
                return false;
            }
        }
        return true;
    }

    void clear()
    {
        for (auto& w : words_) {
            w = 0;
        }
    }

    [[nodiscard]] std::vector<int> to_vector() const
    {
        std::vector<int> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits != 0) {
                out.push_back(static_cast<int>(w) * 64 + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
        return out;
    }

    [[nodiscard]] std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const LevelSet& a, const LevelSet& b)
    {
        const auto n = std::max(a.words_.size(), b.words_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = i < a.words_.size() ? a.words_[i] : 0;
            const auto y = i < b.words_.size() ? b.words_[i] : 0;
            if (x != y) {
                return false;
            }
        }
        return true;
    }

private:
    static std::uint64_t bit(int level) { return std::uint64_t{1} << (level & 63); }

    void grow(int level)
    {
        const auto need = static_cast<std::size_t>(level) / 64 + 1;
        if (need > words_.size()) {
            words_.resize(need, 0);
        }
    }

    std::vector<std::uint64_t> words_;
};

} // namespace csplab
