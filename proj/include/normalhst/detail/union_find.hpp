#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace normalhst::detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t size() const noexcept { return parent_.size(); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

    /// Dense class labels 0..k-1, numbered by first appearance.
    std::vector<std::size_t> labels(std::size_t* count = nullptr) {
        std::vector<std::size_t> root_label(parent_.size(), npos);
        std::vector<std::size_t> out(parent_.size());
        std::size_t next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t r = find(i);
            if (root_label[r] == npos) root_label[r] = next++;
            out[i] = root_label[r];
        }
        if (count) *count = next;
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

}  // namespace normalhst::detail
