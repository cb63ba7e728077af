#ifndef MORSEDYN_SIMPLEX_SET_HPP
#define MORSEDYN_SIMPLEX_SET_HPP

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace mdyn {

using SimplexId = uint32_t;

// Fixed-universe bit set over the simplex ids of one complex.
class SimplexSet {
public:
    SimplexSet() = default;
    explicit SimplexSet(size_t universe) : n_(universe), w_((universe + 63) / 64, 0) {}

    static SimplexSet of(size_t universe, std::initializer_list<SimplexId> ids) {
        SimplexSet s(universe);
        for (auto i : ids) s.insert(i);
        return s;
    }

    size_t universe() const { return n_; }

    void insert(SimplexId i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void erase(SimplexId i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool contains(SimplexId i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    bool empty() const {
        for (auto w : w_) if (w) return false;
        return true;
    }

    size_t count() const {
        size_t c = 0;
        for (auto w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    SimplexSet& operator|=(const SimplexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    SimplexSet& operator&=(const SimplexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    SimplexSet& operator-=(const SimplexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend SimplexSet operator|(SimplexSet a, const SimplexSet& b) { return a |= b; }
    friend SimplexSet operator&(SimplexSet a, const SimplexSet& b) { return a &= b; }
    friend SimplexSet operator-(SimplexSet a, const SimplexSet& b) { return a -= b; }

    bool operator==(const SimplexSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const SimplexSet& o) const { return !(*this == o); }

    bool subset_of(const SimplexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const SimplexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                f(static_cast<SimplexId>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<SimplexId> to_vector() const {
        std::vector<SimplexId> v;
        v.reserve(count());
        for_each([&](SimplexId i) { v.push_back(i); });
        return v;
    }

    size_t hash() const {
        size_t h = n_;
        for (auto w : w_) h = h * 1099511628211ull + static_cast<size_t>(w);
        return h;
    }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

struct SimplexSetHash {
    size_t operator()(const SimplexSet& s) const { return s.hash(); }
};

}  // namespace mdyn

#endif
