#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace spintop {

// Dense bit vector over 64-bit words. Used for GF(2) matrix rows, chain
// supports, spin/sign assignments and membership masks.
class Bitvec {
  public:
    Bitvec() = default;
    explicit Bitvec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v = true)
    {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void clear()
    {
        for (auto& w : w_)
            w = 0;
    }

    bool any() const
    {
        for (auto w : w_)
            if (w)
                return true;
        return false;
    }

    bool none() const { return !any(); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : w_)
            c += std::size_t(__builtin_popcountll(w));
        return c;
    }

    Bitvec& operator^=(const Bitvec& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] ^= o.w_[i];
        return *this;
    }

    Bitvec& operator&=(const Bitvec& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] &= o.w_[i];
        return *this;
    }

    Bitvec& operator|=(const Bitvec& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] |= o.w_[i];
        return *this;
    }

    friend Bitvec operator^(Bitvec a, const Bitvec& b) { return a ^= b; }
    friend Bitvec operator&(Bitvec a, const Bitvec& b) { return a &= b; }
    friend Bitvec operator|(Bitvec a, const Bitvec& b) { return a |= b; }

    bool operator==(const Bitvec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitvec& o) const { return !(*this == o); }

    // Lexicographic order on the bit string, bit 0 most significant.
    bool lex_less(const Bitvec& o) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] == o.w_[i])
                continue;
            std::uint64_t diff = w_[i] ^ o.w_[i];
            std::uint64_t low = diff & ~(diff - 1);  // lowest differing bit
            return (o.w_[i] & low) != 0;             // other has 1 -> we are less
        }
        return false;
    }

    // Parity of the AND with another vector (the mod-2 bilinear form).
    bool dot(const Bitvec& o) const
    {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            acc ^= w_[i] & o.w_[i];
        return __builtin_popcountll(acc) & 1;
    }

    // Index of first set bit, or -1.
    long first_set() const
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i])
                return long(i * 64 + std::size_t(__builtin_ctzll(w_[i])));
        return -1;
    }

    template <typename F>
    void for_each_set(F&& f) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                std::uint64_t b = std::uint64_t(__builtin_ctzll(w));
                f(i * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<int> indices() const
    {
        std::vector<int> out;
        out.reserve(count());
        for_each_set([&](std::size_t i) { out.push_back(int(i)); });
        return out;
    }

    static Bitvec from_indices(std::size_t n, const std::vector<int>& idx)
    {
        Bitvec v(n);
        for (int i : idx)
            v.set(std::size_t(i));
        return v;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace spintop
