#include "dmcong/poset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace dmcong {

  std::vector<Edge> hasse_edges(OrderMatrix const& leq) {
    auto const        n = leq.size();
    std::vector<Edge> out;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !leq[i][j]) {
          continue;
        }
        bool cover = true;
        for (std::size_t k = 0; k < n && cover; ++k) {
          if (k != i && k != j && leq[i][k] && leq[k][j]) {
            cover = false;
          }
        }
        if (cover) {
          out.emplace_back(i, j);
        }
      }
    }
    return out;
  }

  bool is_partial_order(OrderMatrix const& leq) {
    auto const n = leq.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i][i]) {
        return false;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq[i][j] && leq[j][i]) {
          return false;
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (leq[i][j] && leq[j][k] && !leq[i][k]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool is_chain(OrderMatrix const& leq) {
    for (std::size_t i = 0; i < leq.size(); ++i) {
      for (std::size_t j = 0; j < leq.size(); ++j) {
        if (!leq[i][j] && !leq[j][i]) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<std::size_t> glb(OrderMatrix const& leq, std::size_t i, std::size_t j) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < leq.size(); ++k) {
      if (leq[k][i] && leq[k][j] && (!best || leq[*best][k])) {
        best = k;
      }
    }
    if (!best) {
      return std::nullopt;
    }
    for (std::size_t k = 0; k < leq.size(); ++k) {
      if (leq[k][i] && leq[k][j] && !leq[k][*best]) {
        return std::nullopt;
      }
    }
    return best;
  }

  std::optional<std::size_t> lub(OrderMatrix const& leq, std::size_t i, std::size_t j) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < leq.size(); ++k) {
      if (leq[i][k] && leq[j][k] && (!best || leq[k][*best])) {
        best = k;
      }
    }
    if (!best) {
      return std::nullopt;
    }
    for (std::size_t k = 0; k < leq.size(); ++k) {
      if (leq[i][k] && leq[j][k] && !leq[*best][k]) {
        return std::nullopt;
      }
    }
    return best;
  }

  namespace {
    std::optional<std::size_t> bottom(OrderMatrix const& leq) {
      for (std::size_t i = 0; i < leq.size(); ++i) {
        if (std::all_of(leq[i].begin(), leq[i].end(), [](bool b) { return b; })) {
          return i;
        }
      }
      return std::nullopt;
    }

    OrderMatrix dual(OrderMatrix const& leq) {
      OrderMatrix d(leq.size(), std::vector<bool>(leq.size()));
      for (std::size_t i = 0; i < leq.size(); ++i) {
        for (std::size_t j = 0; j < leq.size(); ++j) {
          d[i][j] = leq[j][i];
        }
      }
      return d;
    }
  }  // namespace

  std::vector<std::size_t> atoms(OrderMatrix const& leq) {
    std::vector<std::size_t> out;
    auto                     b = bottom(leq);
    if (!b) {
      return out;
    }
    for (auto [i, j] : hasse_edges(leq)) {
      if (i == *b) {
        out.push_back(j);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::size_t> coatoms(OrderMatrix const& leq) {
    return atoms(dual(leq));
  }

  bool order_isomorphic(OrderMatrix const& a, OrderMatrix const& b) {
    auto const n = a.size();
    if (n != b.size()) {
      return false;
    }
    // Invariant: (number below, number above) must be preserved.
    auto profile = [n](OrderMatrix const& m) {
      std::vector<std::pair<std::size_t, std::size_t>> p(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          p[i].first += m[j][i];
          p[i].second += m[i][j];
        }
      }
      return p;
    };
    auto const pa = profile(a);
    auto const pb = profile(b);
    {
      auto sa = pa;
      auto sb = pb;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) {
        return false;
      }
    }
    std::vector<std::size_t> image(n);
    std::vector<bool>        used(n, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        return true;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j] || pa[i] != pb[j]) {
          continue;
        }
        bool ok = true;
        for (std::size_t k = 0; k < i && ok; ++k) {
          ok = a[i][k] == b[j][image[k]] && a[k][i] == b[image[k]][j];
        }
        if (!ok) {
          continue;
        }
        used[j]  = true;
        image[i] = j;
        if (rec(i + 1)) {
          return true;
        }
        used[j] = false;
      }
      return false;
    };
    return rec(0);
  }

  namespace {
    std::string escape(std::string const& s) {
      std::string out;
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out;
    }
  }  // namespace

  std::string to_dot(std::string const&          name,
                     std::vector<DotNode> const& nodes,
                     std::vector<Edge> const&    edges) {
    std::ostringstream os;
    os << "digraph \"" << escape(name) << "\" {\n";
    os << "  rankdir=BT;\n  node [shape=ellipse, fontsize=10];\n";
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      groups[nodes[i].group].push_back(i);
    }
    std::size_t cluster = 0;
    for (auto const& [group, members] : groups) {
      std::string indent = "  ";
      if (!group.empty()) {
        os << "  subgraph cluster_" << cluster++ << " {\n";
        os << "    label=\"" << escape(group) << "\";\n";
        indent = "    ";
      }
      for (auto i : members) {
        os << indent << 'n' << i << " [label=\"" << escape(nodes[i].label) << '"';
        if (!nodes[i].attributes.empty()) {
          os << ", " << nodes[i].attributes;
        }
        os << "];\n";
      }
      if (!group.empty()) {
        os << "  }\n";
      }
    }
    for (auto [i, j] : edges) {
      os << "  n" << i << " -> n" << j << ";\n";
    }
    os << "}\n";
    return os.str();
  }

}  // namespace dmcong
