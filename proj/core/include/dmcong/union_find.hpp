#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace dmcong {

  //! Disjoint-set forest.  The root of every set is its least member, so
  //! representatives do not depend on the order of unions.
  class UnionFind {
   public:
    UnionFind() = default;
    explicit UnionFind(std::size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), std::uint32_t{0});
    }

    void reset(std::size_t n) {
      _parent.resize(n);
      std::iota(_parent.begin(), _parent.end(), std::uint32_t{0});
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _parent.size();
    }

    std::uint32_t find(std::uint32_t x) {
      auto root = x;
      while (_parent[root] != root) {
        root = _parent[root];
      }
      while (_parent[x] != root) {
        auto next  = _parent[x];
        _parent[x] = root;
        x          = next;
      }
      return root;
    }

    //! Returns true if x and y were in different sets.
    bool unite(std::uint32_t x, std::uint32_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      if (x < y) {
        _parent[y] = x;
      } else {
        _parent[x] = y;
      }
      return true;
    }

    //! Class ids 0..c-1 in order of least member.
    std::vector<std::uint32_t> normalized(std::uint32_t* num_classes = nullptr) {
      std::vector<std::uint32_t> out(_parent.size());
      std::uint32_t              next = 0;
      for (std::uint32_t i = 0; i < _parent.size(); ++i) {
        auto r = find(i);
        out[i] = (r == i) ? next++ : out[r];
      }
      if (num_classes != nullptr) {
        *num_classes = next;
      }
      return out;
    }

   private:
    std::vector<std::uint32_t> _parent;
  };

}  // namespace dmcong
