#include "dmcong/partition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>

#include "dmcong/error.hpp"
#include "dmcong/union_find.hpp"

namespace dmcong {

  namespace {
    // Relabels by first appearance; returns the number of labels.
    std::uint32_t canonicalize(std::vector<std::uint32_t>& labels) {
      if (labels.empty()) {
        return 0;
      }
      constexpr auto unset = static_cast<std::uint32_t>(-1);
      auto const     top   = *std::max_element(labels.begin(), labels.end());
      if (top >= 8 * labels.size()) {
        // Sparse labels: compress to ranks first.
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto& x : labels) {
          x = static_cast<std::uint32_t>(
              std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
        }
        return canonicalize(labels);
      }
      thread_local std::vector<std::uint32_t> remap;
      remap.assign(top + std::size_t{1}, unset);
      std::uint32_t next = 0;
      for (auto& x : labels) {
        if (remap[x] == unset) {
          remap[x] = next++;
        }
        x = remap[x];
      }
      return next;
    }

    std::vector<std::uint32_t> block_sizes(std::vector<std::uint32_t> const& rgs) {
      std::vector<std::uint32_t> sizes;
      for (auto x : rgs) {
        if (x >= sizes.size()) {
          sizes.resize(x + 1, 0);
        }
        ++sizes[x];
      }
      return sizes;
    }

    // Number of blocks of p that are not blocks of q, for restricted growth
    // strings over the same ground set.
    std::uint64_t one_sided_diff(std::vector<std::uint32_t> const& p,
                                 std::vector<std::uint32_t> const& q,
                                 std::vector<std::uint32_t> const& p_sizes,
                                 std::vector<std::uint32_t> const& q_sizes) {
      constexpr auto             none = static_cast<std::uint32_t>(-1);
      std::vector<std::uint32_t> image(p_sizes.size(), none);
      std::vector<bool>          clean(p_sizes.size(), true);
      for (std::size_t v = 0; v < p.size(); ++v) {
        auto b = p[v];
        if (image[b] == none) {
          image[b] = q[v];
        } else if (image[b] != q[v]) {
          clean[b] = false;
        }
      }
      std::uint64_t count = 0;
      for (std::size_t b = 0; b < p_sizes.size(); ++b) {
        if (!clean[b] || q_sizes[image[b]] != p_sizes[b]) {
          ++count;
        }
      }
      return count;
    }

    std::uint64_t rgs_sym_diff(std::vector<std::uint32_t> const& p,
                               std::vector<std::uint32_t> const& q) {
      auto const ps = block_sizes(p);
      auto const qs = block_sizes(q);
      return one_sided_diff(p, q, ps, qs) + one_sided_diff(q, p, qs, ps);
    }

    // True if every class of p lies inside a class of q.
    bool rgs_refines(std::vector<std::uint32_t> const& p,
                     std::vector<std::uint32_t> const& q) {
      constexpr auto             none = static_cast<std::uint32_t>(-1);
      std::vector<std::uint32_t> image(p.size(), none);
      for (std::size_t v = 0; v < p.size(); ++v) {
        if (image[p[v]] == none) {
          image[p[v]] = q[v];
        } else if (image[p[v]] != q[v]) {
          return false;
        }
      }
      return true;
    }

    void check_degree(Partition const& a, Partition const& b, char const* op) {
      if (a.degree() != b.degree()) {
        throw Mismatch(std::string(op) + ": degree mismatch ("
                       + std::to_string(a.degree()) + " vs "
                       + std::to_string(b.degree()) + ")");
      }
    }
  }  // namespace

  Partition Partition::from_labels(std::uint32_t n, std::vector<std::uint32_t> labels) {
    if (labels.size() != 2 * static_cast<std::size_t>(n)) {
      throw InvalidArgument("partition: expected " + std::to_string(2 * n)
                            + " labels");
    }
    Partition p;
    p._n          = n;
    p._num_blocks = canonicalize(labels);
    p._labels     = std::move(labels);
    return p;
  }

  std::vector<std::vector<Vertex>> Partition::blocks() const {
    std::vector<std::vector<Vertex>> out(_num_blocks);
    for (Vertex v = 0; v < _labels.size(); ++v) {
      out[_labels[v]].push_back(v);
    }
    return out;
  }

  std::strong_ordering Partition::operator<=>(Partition const& other) const noexcept {
    if (auto c = _n <=> other._n; c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(_labels.begin(),
                                                  _labels.end(),
                                                  other._labels.begin(),
                                                  other._labels.end());
  }

  std::size_t PartitionHash::operator()(Partition const& p) const noexcept {
    std::size_t h = p.degree() * 0x9e3779b97f4a7c15ULL;
    for (auto x : p.labels()) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  Partition make_partition(std::uint32_t n,
                           std::vector<std::vector<Vertex>> const& blocks) {
    constexpr auto             unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n), unset);
    std::uint32_t              next = 0;
    for (auto const& block : blocks) {
      if (block.empty()) {
        throw InvalidArgument("partition: empty block");
      }
      for (auto v : block) {
        if (v >= 2 * n) {
          throw InvalidArgument("partition: vertex " + std::to_string(v)
                                + " out of range for degree " + std::to_string(n));
        }
        if (labels[v] != unset) {
          throw InvalidArgument("partition: vertex " + std::to_string(v)
                                + " appears twice");
        }
        labels[v] = next;
      }
      ++next;
    }
    for (auto& x : labels) {
      if (x == unset) {
        x = next++;
      }
    }
    return Partition::from_labels(n, std::move(labels));
  }

  Partition identity(std::uint32_t n) {
    std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
    for (std::uint32_t i = 0; i < n; ++i) {
      labels[i] = labels[n + i] = i;
    }
    return Partition::from_labels(n, std::move(labels));
  }

  Partition all_singletons(std::uint32_t n) {
    std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), std::uint32_t{0});
    return Partition::from_labels(n, std::move(labels));
  }

  Partition partial_identity(std::uint32_t n, std::vector<Vertex> const& y) {
    std::vector<std::vector<Vertex>> blocks;
    for (auto i : y) {
      if (i >= n) {
        throw InvalidArgument("partial identity: point out of range");
      }
      blocks.push_back({i, n + i});
    }
    return make_partition(n, blocks);
  }

  Partition compose(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "compose");
    auto const n = alpha.degree();
    // Nodes 0..n-1: upper points of α; n..2n-1: lower points of β;
    // 2n..3n-1: the middle row (α's lower = β's upper).
    thread_local UnionFind                  uf;
    thread_local std::vector<std::uint32_t> first;
    uf.reset(3 * static_cast<std::size_t>(n));
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    auto glue = [&](Partition const& p, std::uint32_t upper_off, std::uint32_t lower_off) {
      first.assign(p.num_blocks(), unset);
      for (std::uint32_t v = 0; v < 2 * n; ++v) {
        auto node = v < n ? upper_off + v : lower_off + (v - n);
        auto b    = p.label(v);
        if (first[b] == unset) {
          first[b] = node;
        } else {
          uf.unite(first[b], node);
        }
      }
    };
    glue(alpha, 0, 2 * n);
    glue(beta, 2 * n, n);
    std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
    for (std::uint32_t v = 0; v < 2 * n; ++v) {
      labels[v] = uf.find(v);
    }
    return Partition::from_labels(n, std::move(labels));
  }

  Partition star(Partition const& alpha) {
    auto const                 n = alpha.degree();
    std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(n));
    for (std::uint32_t i = 0; i < n; ++i) {
      labels[i]     = alpha.label(n + i);
      labels[n + i] = alpha.label(i);
    }
    return Partition::from_labels(n, std::move(labels));
  }

  Partition hat(Partition const& alpha) {
    auto const n      = alpha.degree();
    auto       labels = alpha.labels();
    // Lower halves get fresh labels; upper halves keep theirs.
    for (std::uint32_t i = 0; i < n; ++i) {
      labels[n + i] += alpha.num_blocks();
    }
    return Partition::from_labels(n, std::move(labels));
  }

  PartitionStats stats(Partition const& alpha) {
    auto const     n = alpha.degree();
    PartitionStats s;
    std::vector<bool> has_upper(alpha.num_blocks(), false);
    std::vector<bool> has_lower(alpha.num_blocks(), false);
    for (std::uint32_t i = 0; i < n; ++i) {
      has_upper[alpha.label(i)]     = true;
      has_lower[alpha.label(n + i)] = true;
    }
    for (std::uint32_t b = 0; b < alpha.num_blocks(); ++b) {
      if (has_upper[b] && has_lower[b]) {
        ++s.rank;
      }
    }
    s.dom.resize(n);
    s.codom.resize(n);
    s.ker.resize(n);
    s.coker.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      auto bu    = alpha.label(i);
      auto bl    = alpha.label(n + i);
      s.dom[i]   = has_lower[bu];
      s.codom[i] = has_upper[bl];
      s.ker[i]   = bu;
      s.coker[i] = bl;
    }
    auto const nk = canonicalize(s.ker);
    auto const nc = canonicalize(s.coker);
    s.over.resize(nk);
    s.under.resize(nc);
    for (std::uint32_t i = 0; i < n; ++i) {
      s.over[s.ker[i]].push_back(i);
      s.under[s.coker[i]].push_back(i);
    }
    return s;
  }

  std::uint64_t trace_sym_diff(TracePartition const& p, TracePartition const& q) {
    if (p.size() != q.size()) {
      throw Mismatch("trace partitions of different sets");
    }
    return rgs_sym_diff(p, q);
  }

  SymDiff sym_diff_counts(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "sym_diff_counts");
    SymDiff d;
    d.d_total     = rgs_sym_diff(alpha.labels(), beta.labels());
    auto const sa = stats(alpha);
    auto const sb = stats(beta);
    d.d_over      = rgs_sym_diff(sa.ker, sb.ker);
    d.d_under     = rgs_sym_diff(sa.coker, sb.coker);
    return d;
  }

  GreenFlags green(PartitionStats const& a, PartitionStats const& b) {
    if (a.dom.size() != b.dom.size()) {
      throw Mismatch("green: degree mismatch");
    }
    auto subset = [](std::vector<bool> const& x, std::vector<bool> const& y) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] && !y[i]) {
          return false;
        }
      }
      return true;
    };
    // Non-transversal blocks of β survive every product βγ unchanged, so
    // points outside dom(β) must have the same kernel class in α and β.
    auto fixed_outside = [](TracePartition const& x, TracePartition const& y,
                            std::vector<bool> const& dom) {
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (dom[i]) {
          continue;
        }
        for (std::size_t j = 0; j < dom.size(); ++j) {
          if ((x[i] == x[j]) != (y[i] == y[j])) {
            return false;
          }
        }
      }
      return true;
    };
    GreenFlags g;
    g.leq_r = subset(a.dom, b.dom) && rgs_refines(b.ker, a.ker)
              && fixed_outside(a.ker, b.ker, b.dom);
    g.leq_l = subset(a.codom, b.codom) && rgs_refines(b.coker, a.coker)
              && fixed_outside(a.coker, b.coker, b.codom);
    g.leq_j = a.rank <= b.rank;
    g.r     = a.dom == b.dom && a.ker == b.ker;
    g.l     = a.codom == b.codom && a.coker == b.coker;
    g.j     = a.rank == b.rank;
    g.h     = g.r && g.l;
    return g;
  }

  GreenFlags green(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "green");
    return green(stats(alpha), stats(beta));
  }

  CycleType phi_cycle_type(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "phi_cycle_type");
    auto const sa = stats(alpha);
    auto const sb = stats(beta);
    if (!green(sa, sb).h) {
      throw InvalidArgument("phi_cycle_type: partitions are not H-related");
    }
    auto const     n     = alpha.degree();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    // Index transversals by the ker class of their upper part, and record
    // the coker class of the lower part in α and in β.
    auto lower_map = [&](Partition const& p, PartitionStats const& s) {
      std::vector<std::uint32_t> out(s.over.size(), unset);
      for (std::uint32_t i = 0; i < n; ++i) {
        if (!s.dom[i]) {
          continue;
        }
        for (std::uint32_t j = 0; j < n; ++j) {
          if (p.label(n + j) == p.label(i)) {
            out[s.ker[i]] = s.coker[j];
            break;
          }
        }
      }
      return out;
    };
    auto const la = lower_map(alpha, sa);
    auto const lb = lower_map(beta, sb);
    // φ sends transversal i of α to the α-transversal whose lower part is
    // the lower part of β's transversal through the same upper part.
    std::vector<std::uint32_t> upper_of_lower(sa.under.size(), unset);
    for (std::uint32_t u = 0; u < la.size(); ++u) {
      if (la[u] != unset) {
        upper_of_lower[la[u]] = u;
      }
    }
    CycleType         ct;
    std::vector<bool> seen(la.size(), false);
    for (std::uint32_t u = 0; u < la.size(); ++u) {
      if (la[u] == unset || seen[u]) {
        continue;
      }
      std::uint32_t len = 0;
      for (auto x = u; !seen[x]; x = upper_of_lower[lb[x]]) {
        seen[x] = true;
        ++len;
      }
      ct.push_back(len);
    }
    std::sort(ct.rbegin(), ct.rend());
    return ct;
  }

  bool refines(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "refines");
    return rgs_refines(alpha.labels(), beta.labels());
  }

  RefineResult refine_lattice(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "refine_lattice");
    auto const   n = alpha.degree();
    RefineResult r;
    r.refines = rgs_refines(alpha.labels(), beta.labels());
    std::vector<std::uint32_t> meet(2 * static_cast<std::size_t>(n));
    for (std::size_t v = 0; v < meet.size(); ++v) {
      meet[v] = alpha.label(v) * (beta.num_blocks() + 1) + beta.label(v);
    }
    r.meet = Partition::from_labels(n, std::move(meet));
    UnionFind uf(2 * static_cast<std::size_t>(n) + alpha.num_blocks()
                 + beta.num_blocks());
    for (std::uint32_t v = 0; v < 2 * n; ++v) {
      uf.unite(v, 2 * n + alpha.label(v));
      uf.unite(v, 2 * n + alpha.num_blocks() + beta.label(v));
    }
    std::vector<std::uint32_t> join(2 * static_cast<std::size_t>(n));
    for (std::uint32_t v = 0; v < 2 * n; ++v) {
      join[v] = uf.find(v);
    }
    r.join = Partition::from_labels(n, std::move(join));
    return r;
  }

  namespace {
    // xα for a transformation: the lower point in x's block.
    std::vector<std::uint32_t> as_function(Partition const& alpha) {
      auto const                 n = alpha.degree();
      constexpr auto             unset = static_cast<std::uint32_t>(-1);
      std::vector<std::uint32_t> lower(alpha.num_blocks(), unset);
      for (std::uint32_t j = 0; j < n; ++j) {
        auto b = alpha.label(n + j);
        if (lower[b] != unset) {
          return {};
        }
        lower[b] = j;
      }
      std::vector<std::uint32_t> f(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        f[i] = lower[alpha.label(i)];
        if (f[i] == unset) {
          return {};
        }
      }
      return f;
    }
  }  // namespace

  bool is_transformation(Partition const& alpha) {
    return alpha.degree() == 0 || !as_function(alpha).empty();
  }

  std::uint64_t drank(Partition const& alpha, Partition const& beta) {
    check_degree(alpha, beta, "drank");
    if (!is_transformation(alpha) || !is_transformation(beta)) {
      throw InvalidArgument("drank: arguments must be transformations");
    }
    auto const        f = as_function(alpha);
    auto const        g = as_function(beta);
    std::vector<bool> img_f(alpha.degree(), false);
    std::vector<bool> img_g(alpha.degree(), false);
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (f[x] != g[x]) {
        img_f[f[x]] = true;
        img_g[g[x]] = true;
      }
    }
    auto cf = std::count(img_f.begin(), img_f.end(), true);
    auto cg = std::count(img_g.begin(), img_g.end(), true);
    return static_cast<std::uint64_t>(std::max(cf, cg));
  }

  bool basic_relation_member(BasicRelation const& rel,
                             Partition const&     alpha,
                             Partition const&     beta) {
    check_degree(alpha, beta, "basic_relation_member");
    if (rel.kind != RelationKind::nu && rel.threshold == 0) {
      throw InvalidArgument("basic relation: threshold must be at least 1");
    }
    switch (rel.kind) {
      case RelationKind::rees: {
        if (alpha == beta) {
          return true;
        }
        return stats(alpha).rank < rel.threshold && stats(beta).rank < rel.threshold;
      }
      case RelationKind::mu:
        return sym_diff_counts(alpha, beta).d_total < rel.threshold;
      case RelationKind::lambda:
        return sym_diff_counts(alpha, beta).d_over < rel.threshold;
      case RelationKind::rho:
        return sym_diff_counts(alpha, beta).d_under < rel.threshold;
      case RelationKind::nu: {
        if (!rel.group) {
          throw InvalidArgument("basic relation: nu requires a normal subgroup");
        }
        auto const sa = stats(alpha);
        auto const sb = stats(beta);
        if (sa.rank != rel.group->q() || sb.rank != rel.group->q()) {
          return false;
        }
        if (!green(sa, sb).h) {
          return false;
        }
        return rel.group->contains(phi_cycle_type(alpha, beta));
      }
    }
    return false;
  }

  std::string to_string(Partition const& alpha) {
    auto const  n = alpha.degree();
    std::string s = std::to_string(n) + ";";
    bool        first_block = true;
    for (auto const& block : alpha.blocks()) {
      if (block.size() < 2) {
        continue;
      }
      s += first_block ? " {" : ",{";
      first_block = false;
      for (std::size_t k = 0; k < block.size(); ++k) {
        if (k > 0) {
          s += ',';
        }
        auto v = block[k];
        s += v < n ? std::to_string(v + 1) : std::to_string(v - n + 1) + "'";
      }
      s += '}';
    }
    return s;
  }

  std::ostream& operator<<(std::ostream& os, Partition const& alpha) {
    return os << to_string(alpha);
  }

  Partition parse_partition(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](std::string const& what) -> void {
      throw InvalidArgument("partition text, column " + std::to_string(pos + 1)
                            + ": " + what + " in '" + std::string(text) + "'");
    };
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    auto number = [&]() -> std::uint32_t {
      std::uint32_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc{}) {
        fail("expected a number");
      }
      pos = static_cast<std::size_t>(ptr - text.data());
      return value;
    };
    skip_ws();
    auto const n = number();
    skip_ws();
    if (pos >= text.size() || text[pos] != ';') {
      fail("expected ';'");
    }
    ++pos;
    std::vector<std::vector<Vertex>> blocks;
    skip_ws();
    while (pos < text.size()) {
      if (!blocks.empty()) {
        if (text[pos] != ',') {
          fail("expected ','");
        }
        ++pos;
        skip_ws();
      }
      if (pos >= text.size() || text[pos] != '{') {
        fail("expected '{'");
      }
      ++pos;
      std::vector<Vertex> block;
      while (true) {
        skip_ws();
        auto const point = number();
        if (point == 0 || point > n) {
          fail("point out of range");
        }
        Vertex v = point - 1;
        if (pos < text.size() && text[pos] == '\'') {
          v += n;
          ++pos;
        }
        block.push_back(v);
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          break;
        }
        fail("expected ',' or '}'");
      }
      blocks.push_back(std::move(block));
      skip_ws();
    }
    return make_partition(n, blocks);
  }

}  // namespace dmcong
