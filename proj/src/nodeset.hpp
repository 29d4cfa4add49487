#ifndef MCQ_NODESET_HPP
#define MCQ_NODESET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace mcq {

// Fixed-universe bitset over node ids [0, n). Cut sides, super-node
// membership and the approximate-DS cut store all use this representation.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int universe() const { return n_; }

    void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool is_subset_of(const NodeSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool intersects(const NodeSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    NodeSet intersect(const NodeSet& other) const {
        NodeSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] = words_[i] & other.words_[i];
        return r;
    }

    NodeSet minus(const NodeSet& other) const {
        NodeSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] = words_[i] & ~other.words_[i];
        return r;
    }

    NodeSet complement() const {
        NodeSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] = ~words_[i];
        r.trim();
        return r;
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for (int i = 0; i < n_; ++i)
            if (test(i)) v.push_back(i);
        return v;
    }

    bool operator==(const NodeSet& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

    // Canonical form for an unordered bipartition: the side containing node 0.
    NodeSet canonical_bipartition_side() const {
        if (n_ > 0 && !test(0)) return complement();
        return *this;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ULL;
        }
        return h;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& mutable_words() { return words_; }

private:
    void trim() {
        int tail = n_ & 63;
        if (tail && !words_.empty())
            words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace mcq

#endif
