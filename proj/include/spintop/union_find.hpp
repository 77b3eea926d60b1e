#pragma once

#include <numeric>
#include <vector>

namespace spintop {

// Union-find with path halving and union by size.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x)
    {
        while (parent_[std::size_t(x)] != x) {
            parent_[std::size_t(x)] = parent_[std::size_t(parent_[std::size_t(x)])];
            x = parent_[std::size_t(x)];
        }
        return x;
    }

    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (size_[std::size_t(a)] < size_[std::size_t(b)])
            std::swap(a, b);
        parent_[std::size_t(b)] = a;
        size_[std::size_t(a)] += size_[std::size_t(b)];
    }

    int component_size(int x) { return size_[std::size_t(find(x))]; }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace spintop
