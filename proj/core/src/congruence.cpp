#include "dmcong/congruence.hpp"

#include <algorithm>
#include <ostream>
#include <thread>
#include <unordered_set>

#include "dmcong/error.hpp"
#include "dmcong/union_find.hpp"

namespace dmcong {

  EqRel EqRel::from_class_map(std::vector<std::uint32_t> class_of) {
    constexpr auto             unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> remap;
    EqRel                      r;
    for (auto& x : class_of) {
      if (x >= remap.size()) {
        remap.resize(x + std::size_t{1}, unset);
      }
      if (remap[x] == unset) {
        remap[x] = r._num_classes++;
      }
      x = remap[x];
    }
    r._class = std::move(class_of);
    return r;
  }

  EqRel EqRel::diagonal(std::size_t size) {
    std::vector<std::uint32_t> c(size);
    std::iota(c.begin(), c.end(), std::uint32_t{0});
    return from_class_map(std::move(c));
  }

  EqRel EqRel::universal(std::size_t size) {
    return from_class_map(std::vector<std::uint32_t>(size, 0));
  }

  bool EqRel::subset_of(EqRel const& other) const {
    if (size() != other.size()) {
      throw Mismatch("relations on different sets");
    }
    constexpr auto             unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> image(_num_classes, unset);
    for (std::size_t i = 0; i < _class.size(); ++i) {
      auto& slot = image[_class[i]];
      if (slot == unset) {
        slot = other._class[i];
      } else if (slot != other._class[i]) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::vector<std::uint32_t>> EqRel::classes() const {
    std::vector<std::vector<std::uint32_t>> out(_num_classes);
    for (std::uint32_t i = 0; i < _class.size(); ++i) {
      out[_class[i]].push_back(i);
    }
    return out;
  }

  std::strong_ordering EqRel::operator<=>(EqRel const& other) const noexcept {
    if (auto c = other._num_classes <=> _num_classes; c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(
        _class.begin(), _class.end(), other._class.begin(), other._class.end());
  }

  std::size_t EqRelHash::operator()(EqRel const& r) const noexcept {
    std::size_t h = r.size();
    for (auto x : r.class_map()) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  EqRel meet(EqRel const& a, EqRel const& b) {
    if (a.size() != b.size()) {
      throw Mismatch("meet: relations on different sets");
    }
    std::vector<std::uint32_t> c(a.size());
    // Pair labels, compressed through a first-seen table.
    std::vector<std::vector<std::uint32_t>> seen(a.num_classes());
    std::uint32_t                           next  = 0;
    constexpr auto                          unset = static_cast<std::uint32_t>(-1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto& row = seen[a.class_of(static_cast<std::uint32_t>(i))];
      if (row.empty()) {
        row.assign(b.num_classes(), unset);
      }
      auto& slot = row[b.class_of(static_cast<std::uint32_t>(i))];
      if (slot == unset) {
        slot = next++;
      }
      c[i] = slot;
    }
    return EqRel::from_class_map(std::move(c));
  }

  EqRel equivalence_join(EqRel const& a, EqRel const& b) {
    if (a.size() != b.size()) {
      throw Mismatch("join: relations on different sets");
    }
    auto const n = a.size();
    UnionFind  uf(n + a.num_classes() + b.num_classes());
    for (std::uint32_t i = 0; i < n; ++i) {
      uf.unite(i, static_cast<std::uint32_t>(n) + a.class_of(i));
      uf.unite(i, static_cast<std::uint32_t>(n) + a.num_classes() + b.class_of(i));
    }
    std::vector<std::uint32_t> c(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      c[i] = uf.find(i);
    }
    return EqRel::from_class_map(std::move(c));
  }

  namespace {
    void check_pairs(FiniteMonoid const& m, std::vector<IdPair> const& pairs) {
      for (auto [a, b] : pairs) {
        if (a >= m.size() || b >= m.size()) {
          throw InvalidArgument("closure: element id out of range");
        }
      }
    }
  }  // namespace

  EqRel closure(FiniteMonoid const&               m,
                std::vector<IdPair> const&        pairs,
                std::vector<std::uint32_t> const& gens) {
    check_pairs(m, pairs);
    UnionFind           uf(m.size());
    std::vector<IdPair> queue;
    for (auto [a, b] : pairs) {
      if (uf.unite(a, b)) {
        queue.emplace_back(a, b);
      }
    }
    for (std::size_t k = 0; k < queue.size(); ++k) {
      auto const [a, b] = queue[k];
      for (auto g : gens) {
        auto x = m.product(g, a);
        auto y = m.product(g, b);
        if (uf.unite(x, y)) {
          queue.emplace_back(x, y);
        }
        x = m.product(a, g);
        y = m.product(b, g);
        if (uf.unite(x, y)) {
          queue.emplace_back(x, y);
        }
      }
    }
    return EqRel::from_class_map(uf.normalized());
  }

  EqRel closure(FiniteMonoid const& m, std::vector<IdPair> const& pairs) {
    return closure(m, pairs, generators(m));
  }

  EqRel closure_naive(FiniteMonoid const& m, std::vector<IdPair> const& pairs) {
    check_pairs(m, pairs);
    auto const n = static_cast<std::uint32_t>(m.size());
    UnionFind  uf(n);
    for (auto [a, b] : pairs) {
      uf.unite(a, b);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint32_t a = 0; a < n; ++a) {
        auto const ra = uf.find(a);
        if (ra == a) {
          continue;
        }
        for (std::uint32_t s = 0; s < n; ++s) {
          changed |= uf.unite(m.product(s, a), m.product(s, ra));
          changed |= uf.unite(m.product(a, s), m.product(ra, s));
        }
      }
    }
    return EqRel::from_class_map(uf.normalized());
  }

  bool is_compatible(FiniteMonoid const&               m,
                     EqRel const&                      r,
                     std::vector<std::uint32_t> const& elements) {
    if (r.size() != m.size()) {
      throw Mismatch("relation size differs from monoid size");
    }
    // Each class must map into a single class under every translation.
    constexpr auto             unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> left(r.num_classes());
    std::vector<std::uint32_t> right(r.num_classes());
    for (auto s : elements) {
      std::fill(left.begin(), left.end(), unset);
      std::fill(right.begin(), right.end(), unset);
      for (std::uint32_t a = 0; a < m.size(); ++a) {
        auto const c  = r.class_of(a);
        auto const lc = r.class_of(m.product(s, a));
        auto const rc = r.class_of(m.product(a, s));
        if (left[c] == unset) {
          left[c]  = lc;
          right[c] = rc;
        } else if (left[c] != lc || right[c] != rc) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_congruence(FiniteMonoid const& m, EqRel const& r) {
    std::vector<std::uint32_t> all(m.size());
    std::iota(all.begin(), all.end(), std::uint32_t{0});
    return is_compatible(m, r, all);
  }

  EqRel star(FiniteMonoid const& m, EqRel const& r) {
    std::vector<std::uint32_t> c(m.size());
    for (std::uint32_t i = 0; i < m.size(); ++i) {
      c[i] = r.class_of(m.id_of(star(m.element(i))));
    }
    return EqRel::from_class_map(std::move(c));
  }

  std::vector<EqRel> principal_congruences(FiniteMonoid const& m,
                                           Caps const&         caps,
                                           unsigned            threads) {
    auto const size  = static_cast<std::uint32_t>(m.size());
    auto const pairs = static_cast<std::uint64_t>(size) * (size - 1) / 2;
    if (pairs > caps.max_search) {
      throw CapExceeded("principal congruences of " + to_string(m.family()) + " need "
                        + std::to_string(pairs) + " closures, cap is "
                        + std::to_string(caps.max_search));
    }
    auto const gens = generators(m);
    if (threads == 0) {
      threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::max(1u, std::min<unsigned>(threads, size));
    std::vector<std::unordered_set<EqRel, EqRelHash>> found(threads);
    std::vector<std::exception_ptr>                   errors(threads);
    auto work = [&](unsigned t) {
      try {
        for (std::uint32_t a = t; a < size; a += threads) {
          for (std::uint32_t b = a + 1; b < size; ++b) {
            found[t].insert(closure(m, {{a, b}}, gens));
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(work, t);
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
    std::unordered_set<EqRel, EqRelHash> all;
    for (auto& s : found) {
      all.insert(s.begin(), s.end());
    }
    std::vector<EqRel> out(all.begin(), all.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<std::size_t> CongruenceLattice::find(EqRel const& r) const {
    auto it = std::lower_bound(congruences.begin(), congruences.end(), r);
    if (it == congruences.end() || !(*it == r)) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - congruences.begin());
  }

  CongruenceLattice make_lattice(std::vector<EqRel>        congruences,
                                 std::vector<EqRel> const& principal) {
    CongruenceLattice l;
    std::sort(congruences.begin(), congruences.end());
    congruences.erase(std::unique(congruences.begin(), congruences.end()),
                      congruences.end());
    l.congruences = std::move(congruences);
    auto const n  = l.size();
    l.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        l.leq[i][j] = l.congruences[i].subset_of(l.congruences[j]);
      }
    }
    l.hasse = hasse_edges(l.leq);
    l.principal.assign(n, false);
    for (auto const& p : principal) {
      if (auto i = l.find(p)) {
        l.principal[*i] = true;
      }
    }
    l.meet_table.assign(n, std::vector<std::size_t>(n));
    l.join_table.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        auto mi = l.find(meet(l.congruences[i], l.congruences[j]));
        auto ji = l.find(equivalence_join(l.congruences[i], l.congruences[j]));
        if (!mi || !ji) {
          throw Error("congruence set is not closed under meet and join");
        }
        l.meet_table[i][j] = l.meet_table[j][i] = *mi;
        l.join_table[i][j] = l.join_table[j][i] = *ji;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (std::all_of(l.leq[i].begin(), l.leq[i].end(), [](bool b) { return b; })) {
        l.bottom = i;
      }
      bool top = true;
      for (std::size_t j = 0; j < n; ++j) {
        top = top && l.leq[j][i];
      }
      if (top) {
        l.top = i;
      }
    }
    return l;
  }

  CongruenceLattice all_congruences(FiniteMonoid const& m,
                                    Caps const&         caps,
                                    unsigned            threads) {
    auto const principal = principal_congruences(m, caps, threads);
    std::vector<EqRel> members{EqRel::diagonal(m.size())};
    members.insert(members.end(), principal.begin(), principal.end());
    std::unordered_set<EqRel, EqRelHash> seen(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        auto joined = equivalence_join(members[i], members[j]);
        if (seen.insert(joined).second) {
          members.push_back(std::move(joined));
          if (members.size() > caps.max_search) {
            throw CapExceeded("congruence lattice exceeds search cap");
          }
        }
      }
    }
    return make_lattice(std::move(members), principal);
  }

  LatticeOps lattice_ops(CongruenceLattice const& l, std::size_t i, std::size_t j) {
    auto mi = l.find(meet(l.congruences.at(i), l.congruences.at(j)));
    auto ji = l.find(equivalence_join(l.congruences.at(i), l.congruences.at(j)));
    if (!mi || !ji) {
      throw Error("lattice_ops: result missing from lattice");
    }
    return {*mi, *ji};
  }

  LatticeAnalysis analyze(CongruenceLattice const& l) {
    LatticeAnalysis a;
    auto const      n = l.size();
    a.is_distributive = true;
    for (std::size_t x = 0; x < n && a.is_distributive; ++x) {
      for (std::size_t y = 0; y < n && a.is_distributive; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          auto lhs = l.meet_table[x][l.join_table[y][z]];
          auto rhs = l.join_table[l.meet_table[x][y]][l.meet_table[x][z]];
          if (lhs != rhs) {
            a.is_distributive = false;
            break;
          }
        }
      }
    }
    a.is_chain = is_chain(l.leq);
    a.atoms    = atoms(l.leq);
    a.coatoms  = coatoms(l.leq);
    a.hasse    = l.hasse;
    return a;
  }

  std::uint64_t crank_bruteforce(CongruenceLattice const& l,
                                 std::size_t              sigma,
                                 Caps const&              caps) {
    if (sigma >= l.size()) {
      throw InvalidArgument("crank_bruteforce: index out of range");
    }
    if (sigma == l.bottom) {
      return 0;
    }
    std::vector<std::size_t> below;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l.principal[i] && l.leq[i][sigma]) {
        below.push_back(i);
      }
    }
    std::uint64_t steps = 0;
    for (std::size_t k = 1; k <= below.size(); ++k) {
      std::vector<std::size_t> pick(k);
      std::iota(pick.begin(), pick.end(), std::size_t{0});
      while (true) {
        if (++steps > caps.max_search) {
          throw CapExceeded("crank search exceeded cap");
        }
        auto acc = l.bottom;
        for (auto p : pick) {
          acc = l.join_table[acc][below[p]];
        }
        if (acc == sigma) {
          return k;
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == below.size() - k + i - 1) {
          --i;
        }
        if (i == 0) {
          break;
        }
        ++pick[i - 1];
        for (auto j = i; j < k; ++j) {
          pick[j] = pick[j - 1] + 1;
        }
      }
    }
    throw Error("crank_bruteforce: congruence is not a join of principal ones");
  }

  void write_lattice(std::ostream&            os,
                     CongruenceLattice const& l,
                     MonoidFamily const&      family,
                     OutputFormat             format) {
    switch (format) {
      case OutputFormat::text: {
        os << "lattice " << to_string(family) << ' ' << l.size() << '\n';
        for (std::size_t i = 0; i < l.size(); ++i) {
          auto const& r = l.congruences[i];
          os << "c " << i << ' ' << r.num_classes();
          for (auto x : r.class_map()) {
            os << ' ' << x;
          }
          os << '\n';
        }
        for (auto [i, j] : l.hasse) {
          os << "e " << i << ' ' << j << '\n';
        }
        break;
      }
      case OutputFormat::jsonl: {
        for (std::size_t i = 0; i < l.size(); ++i) {
          auto const& r = l.congruences[i];
          os << R"({"type":"congruence","monoid":")" << to_string(family)
             << R"(","id":)" << i << R"(,"classes":)" << r.num_classes()
             << R"(,"map":[)";
          for (std::size_t k = 0; k < r.size(); ++k) {
            os << (k ? "," : "") << r.class_of(static_cast<std::uint32_t>(k));
          }
          os << "]}\n";
        }
        for (auto [i, j] : l.hasse) {
          os << R"({"type":"cover","from":)" << i << R"(,"to":)" << j << "}\n";
        }
        break;
      }
      case OutputFormat::dot: {
        std::vector<DotNode> nodes;
        for (std::size_t i = 0; i < l.size(); ++i) {
          nodes.push_back({std::to_string(i) + ": "
                               + std::to_string(l.congruences[i].num_classes())
                               + " classes",
                           "",
                           ""});
        }
        os << to_dot("Cong(" + to_string(family) + ")", nodes, l.hasse);
        break;
      }
    }
  }

}  // namespace dmcong
