#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ohc {

using VertexId = std::size_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

/// Read-only bit row; the graph hands these out for neighbourhoods.
using BitRow = std::span<const Word>;

inline bool row_test(BitRow row, VertexId v) { return (row[v / kWordBits] >> (v % kWordBits)) & 1U; }

inline std::size_t row_count(BitRow row) {
    std::size_t c = 0;
    for (Word w : row) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline std::size_t row_and_count(BitRow a, BitRow b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return c;
}

/// Calls f(v) for every set bit, ascending.
template <typename F>
void row_for_each(BitRow row, F&& f) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        Word w = row[i];
        while (w != 0) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(w));
            f(i * kWordBits + bit);
            w &= w - 1;
        }
    }
}

/// Fixed-universe set of vertices backed by 64-bit words.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_(words_for(universe), 0) {}
    VertexSet(std::size_t universe, std::initializer_list<VertexId> members) : VertexSet(universe) {
        for (VertexId v : members) insert(v);
    }
    static VertexSet from_row(std::size_t universe, BitRow row) {
        VertexSet s(universe);
        for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = row[i];
        return s;
    }
    template <typename Range>
    static VertexSet from_range(std::size_t universe, const Range& r) {
        VertexSet s(universe);
        for (VertexId v : r) s.insert(v);
        return s;
    }

    std::size_t universe() const { return universe_; }
    bool contains(VertexId v) const { return v < universe_ && row_test(words_, v); }
    void insert(VertexId v) { words_[v / kWordBits] |= Word{1} << (v % kWordBits); }
    void erase(VertexId v) { words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }
    std::size_t size() const { return row_count(words_); }
    bool empty() const {
        for (Word w : words_)
            if (w != 0) return false;
        return true;
    }

    BitRow row() const { return words_; }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& subtract(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & o.words_[i]) != 0) return true;
        return false;
    }

    std::vector<VertexId> to_vector() const {
        std::vector<VertexId> out;
        out.reserve(size());
        row_for_each(words_, [&](VertexId v) { out.push_back(v); });
        return out;
    }
    template <typename F>
    void for_each(F&& f) const {
        row_for_each(words_, std::forward<F>(f));
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<Word> words_;
};

inline VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
inline VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }

}  // namespace ohc
