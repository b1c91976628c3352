#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dmcong {

  //! leq[i][j] is true iff element i lies below element j.
  using OrderMatrix = std::vector<std::vector<bool>>;
  using Edge        = std::pair<std::size_t, std::size_t>;

  //! Cover relations (i, j) with i < j and nothing strictly between.
  std::vector<Edge> hasse_edges(OrderMatrix const& leq);

  bool is_partial_order(OrderMatrix const& leq);
  bool is_chain(OrderMatrix const& leq);

  //! Greatest lower bound / least upper bound from the order alone.
  std::optional<std::size_t> glb(OrderMatrix const& leq, std::size_t i, std::size_t j);
  std::optional<std::size_t> lub(OrderMatrix const& leq, std::size_t i, std::size_t j);

  //! Minimal elements above the least element, and the dual.
  std::vector<std::size_t> atoms(OrderMatrix const& leq);
  std::vector<std::size_t> coatoms(OrderMatrix const& leq);

  //! Backtracking search for an order isomorphism.
  bool order_isomorphic(OrderMatrix const& a, OrderMatrix const& b);

  struct DotNode {
    std::string label;
    //! Extra attributes, e.g. `shape=box`.
    std::string attributes;
    //! Nodes sharing a non-empty group are drawn in one cluster.
    std::string group;
  };

  //! A `digraph` with edges pointing from lower to upper covers.
  std::string to_dot(std::string const&          name,
                     std::vector<DotNode> const& nodes,
                     std::vector<Edge> const&    edges);

}  // namespace dmcong
