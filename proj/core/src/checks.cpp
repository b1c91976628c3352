#include "dmcong/checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dmcong/error.hpp"
#include "dmcong/poset.hpp"
#include "dmcong/random.hpp"

namespace dmcong {

  namespace {
    CheckResult named(std::string name) {
      CheckResult r;
      r.name = std::move(name);
      return r;
    }

    void fail(CheckResult& r, std::string const& example) {
      if (r.failures++ == 0) {
        r.counterexample = example;
      }
    }

    void expect(CheckResult& r, bool ok, std::function<std::string()> const& example) {
      ++r.cases;
      if (!ok) {
        fail(r, example());
      }
    }

    std::size_t index_in(std::vector<CongruenceDescriptor> const& ds, CongruenceDescriptor const& d) {
      auto it = std::lower_bound(ds.begin(), ds.end(), d);
      return it != ds.end() && *it == d ? static_cast<std::size_t>(it - ds.begin()) : ds.size();
    }

    // Row-major n×n tables of meet and join indices; ds.size() marks a
    // result outside the list.
    struct OpTables {
      std::size_t              n = 0;
      std::vector<std::size_t> meet;
      std::vector<std::size_t> join;
    };

    OpTables op_tables(std::vector<CongruenceDescriptor> const& ds) {
      OpTables t;
      t.n = ds.size();
      t.meet.resize(t.n * t.n);
      t.join.resize(t.n * t.n);
      for (std::size_t i = 0; i < t.n; ++i) {
        for (std::size_t j = 0; j < t.n; ++j) {
          t.meet[i * t.n + j] = index_in(ds, meet(ds[i], ds[j]));
          t.join[i * t.n + j] = index_in(ds, join(ds[i], ds[j]));
        }
      }
      return t;
    }

    std::vector<CycleType> cycle_types(std::uint32_t n) {
      std::vector<CycleType>                                   out;
      CycleType                                                cur;
      std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t left, std::uint32_t top) {
        if (left == 0) {
          out.push_back(cur);
          return;
        }
        for (auto part = std::min(left, top); part >= 1; --part) {
          cur.push_back(part);
          rec(left - part, part);
          cur.pop_back();
        }
      };
      rec(n, n);
      return out;
    }

    std::string show(std::vector<CongruenceDescriptor> const& ds, std::size_t i) {
      return i < ds.size() ? to_string(ds[i]) : "<outside the enumeration>";
    }
  }  // namespace

  bool all_ok(CheckReport const& r) {
    return std::all_of(r.begin(), r.end(), [](CheckResult const& c) { return c.ok(); });
  }

  // Inequalities

  CheckResult check_inequalities(Family family, std::uint32_t n, std::uint64_t samples, std::uint64_t seed) {
    CheckResult r;
    r.name = "inequalities on " + to_string(MonoidFamily{family, n});
    Rng rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      auto const a  = random_element(family, n, rng);
      auto const b  = random_element(family, n, rng);
      auto const th = random_element(family, n, rng);
      auto const d  = sym_diff_counts(a, b);
      auto const dr = sym_diff_counts(compose(a, th), compose(b, th));
      auto const dl = sym_diff_counts(compose(th, a), compose(th, b));
      auto const ra = stats(a).rank;
      auto const rb = stats(b).rank;
      std::uint64_t const ranks = std::uint64_t{ra} + rb;
      std::vector<std::pair<char const*, bool>> items{
          {"(i)", dr.d_over <= d.d_over + 2 * ranks},
          {"(ii)", dl.d_over <= d.d_over},
          {"(iii)", dr.d_under <= d.d_under},
          {"(iv)", dl.d_under <= d.d_under + 2 * ranks},
          {"(v)", dr.d_total <= d.d_total},
          {"(vi)", dl.d_total <= d.d_total},
          {"(vii)", d.d_over <= d.d_total},
          {"(viii)", d.d_under <= d.d_total},
          {"(ix)", d.d_total <= d.d_over + d.d_under + 3 * ranks},
      };
      if (family == Family::T) {
        auto const dk = drank(a, b);
        items.emplace_back("drank", dk <= d.d_total && d.d_total <= 4 * dk);
      }
      ++r.cases;
      for (auto const& [label, ok] : items) {
        if (!ok) {
          fail(r, std::string(label) + " fails for alpha = " + to_string(a) + ", beta = "
                      + to_string(b) + ", theta = " + to_string(th));
          break;
        }
      }
    }
    return r;
  }

  CheckReport check_inequalities(std::uint64_t samples, std::uint64_t seed) {
    return {check_inequalities(Family::P, 5, samples, seed),
            check_inequalities(Family::PB, 6, samples, seed + 1),
            check_inequalities(Family::T, 5, samples, seed + 2)};
  }

  // Green's relations

  CheckResult check_green(FiniteMonoid const& m) {
    CheckResult r;
    r.name = "Green's relations on " + to_string(m.family());
    if (!m.has_table()) {
      throw InvalidArgument("check_green needs a multiplication table");
    }
    auto const n = static_cast<std::uint32_t>(m.size());
    // right[b][a]: a ∈ bM; left[b][a]: a ∈ Mb; two[b][a]: a ∈ MbM.
    std::vector<std::vector<bool>> right(n, std::vector<bool>(n));
    std::vector<std::vector<bool>> left(n, std::vector<bool>(n));
    std::vector<std::vector<bool>> two(n, std::vector<bool>(n));
    for (std::uint32_t b = 0; b < n; ++b) {
      for (std::uint32_t x = 0; x < n; ++x) {
        right[b][m.product(b, x)] = true;
        left[b][m.product(x, b)]  = true;
      }
      for (std::uint32_t x = 0; x < n; ++x) {
        if (!left[b][x]) {
          continue;
        }
        for (std::uint32_t y = 0; y < n; ++y) {
          two[b][m.product(x, y)] = true;
        }
      }
    }
    std::vector<PartitionStats> st;
    st.reserve(n);
    for (auto const& e : m.elements()) {
      st.push_back(stats(e));
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        GreenFlags oracle;
        oracle.leq_r = right[b][a];
        oracle.leq_l = left[b][a];
        oracle.leq_j = two[b][a];
        oracle.r     = right[b][a] && right[a][b];
        oracle.l     = left[b][a] && left[a][b];
        oracle.j     = two[b][a] && two[a][b];
        oracle.h     = oracle.r && oracle.l;
        expect(r, green(st[a], st[b]) == oracle, [&] {
          return "alpha = " + to_string(m.element(a)) + ", beta = " + to_string(m.element(b));
        });
      }
    }
    return r;
  }

  // Descriptor lattice

  CheckReport check_order(CardinalContext const& ctx, OrderCheckOptions const& opts) {
    CheckReport out;
    auto const  tag = " at |X| = " + to_string(ctx.x()) + ", " + to_string(opts.flavor)
                     + " flavour, n_max = " + std::to_string(opts.n_max);
    auto const  ds  = enumerate_all(ctx, opts.flavor, {opts.n_max, true, true});
    auto const  n   = ds.size();

    auto valid = named("descriptors valid" + tag);
    for (auto const& d : ds) {
      expect(valid, validate(d).empty(), [&] { return to_string(d); });
    }
    out.push_back(valid);

    auto const  leq_m = order_matrix(ds);
    auto po = named("leq is a partial order" + tag);
    expect(po, is_partial_order(leq_m), [] { return std::string("not a partial order"); });
    out.push_back(po);

    auto idx = named("leq agrees with the index-sequence form" + tag);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        expect(idx, leq_m[i][j] == leq_index_form(ds[i], ds[j]),
               [&] { return to_string(ds[i]) + " vs " + to_string(ds[j]); });
      }
    }
    out.push_back(idx);

    auto const  ops = op_tables(ds);
    auto mj = named("meet/join equal glb/lub" + tag);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const g = glb(leq_m, i, j);
        auto const l = lub(leq_m, i, j);
        expect(mj, g && *g == ops.meet[i * n + j], [&] {
          return "meet of " + to_string(ds[i]) + " and " + to_string(ds[j]) + " gave "
                 + show(ds, ops.meet[i * n + j]);
        });
        expect(mj, l && *l == ops.join[i * n + j], [&] {
          return "join of " + to_string(ds[i]) + " and " + to_string(ds[j]) + " gave "
                 + show(ds, ops.join[i * n + j]);
        });
      }
    }
    out.push_back(mj);

    auto dist = named("distributive, exhaustive" + tag);
    if (mj.ok()) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            auto const lhs = ops.meet[a * n + ops.join[b * n + c]];
            auto const rhs = ops.join[ops.meet[a * n + b] * n + ops.meet[a * n + c]];
            expect(dist, lhs == rhs, [&] {
              return to_string(ds[a]) + ", " + to_string(ds[b]) + ", " + to_string(ds[c]);
            });
          }
        }
      }
    } else {
      fail(dist, "skipped: meet/join tables are not closed");
    }
    out.push_back(dist);

    auto rnd = named("distributive, " + std::to_string(opts.random_triples) + " random triples" + tag);
    Rng         rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < opts.random_triples; ++s) {
      auto const& a   = ds[pick(rng)];
      auto const& b   = ds[pick(rng)];
      auto const& c   = ds[pick(rng)];
      auto const  lhs = meet(a, join(b, c));
      auto const  rhs = join(meet(a, b), meet(a, c));
      expect(rnd, lhs == rhs && join(a, meet(b, c)) == meet(join(a, b), join(a, c)), [&] {
        return to_string(a) + ", " + to_string(b) + ", " + to_string(c);
      });
    }
    out.push_back(rnd);

    auto bounds = named("Delta is least and NABLA is greatest" + tag);
    auto const  bottom = index_in(ds, delta(ctx, opts.flavor));
    auto const  top    = index_in(ds, nabla(ctx, opts.flavor));
    for (std::size_t i = 0; i < n; ++i) {
      expect(bounds, bottom < n && top < n && leq_m[bottom][i] && leq_m[i][top],
             [&] { return to_string(ds[i]); });
    }
    out.push_back(bounds);

    if (opts.flavor == Flavor::partition_like) {
      auto const one = Cardinal::fin(1);
      auto const s1  = NormalSubgroup(1, NormalSubgroup::Tag::trivial);
      auto const id2 = NormalSubgroup(2, NormalSubgroup::Tag::trivial);
      std::vector<CongruenceDescriptor> want_atoms{
          {ctx, opts.flavor, CT1{s1, one, aleph0}},
          {ctx, opts.flavor, CT1{s1, aleph0, one}},
          {ctx, opts.flavor, CT1{id2, one, one}},
      };
      std::sort(want_atoms.begin(), want_atoms.end());
      CongruenceDescriptor const want_coatom{
          ctx, opts.flavor, CT2{ctx.x_plus(), ctx.x_plus(), Reversal{ctx.x(), {{ctx.x(), ctx.x_plus()}}}}};
      std::vector<CongruenceDescriptor> got_atoms;
      for (auto i : atoms(leq_m)) {
        got_atoms.push_back(ds[i]);
      }
      std::sort(got_atoms.begin(), got_atoms.end());
      std::vector<CongruenceDescriptor> got_coatoms;
      for (auto i : coatoms(leq_m)) {
        got_coatoms.push_back(ds[i]);
      }
      auto ac = named("atoms and coatom" + tag);
      expect(ac, got_atoms == want_atoms, [&] {
        std::string s = "atoms:";
        for (auto const& d : got_atoms) {
          s += " " + to_string(d);
        }
        return s;
      });
      expect(ac, got_coatoms.size() == 1 && got_coatoms.front() == want_coatom, [&] {
        std::string s = "coatoms:";
        for (auto const& d : got_coatoms) {
          s += " " + to_string(d);
        }
        return s;
      });
      out.push_back(ac);
    }
    return out;
  }

  CheckReport check_reversals(CardinalContext const& ctx) {
    CheckReport out;
    auto const  tag = " at |X| = " + to_string(ctx.x());
    auto const  rs  = enumerate_reversals(ctx);
    auto const  n   = rs.size();
    OrderMatrix m(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = reversal_leq(rs[i], rs[j], ctx);
      }
    }
    auto valid = named("reversals valid" + tag);
    for (auto const& r : rs) {
      expect(valid, reversal_violations(r, ctx).empty(), [&] { return to_string(r); });
    }
    out.push_back(valid);
    auto po = named("reversal order is a partial order" + tag);
    expect(po, is_partial_order(m), [] { return std::string("not a partial order"); });
    out.push_back(po);

    auto find = [&](Reversal const& r) {
      auto it = std::lower_bound(rs.begin(), rs.end(), r);
      return it != rs.end() && *it == r ? static_cast<std::size_t>(it - rs.begin()) : n;
    };
    std::vector<std::size_t> mt(n * n);
    std::vector<std::size_t> jt(n * n);
    auto              mj = named("reversal meet/join equal glb/lub" + tag);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mt[i * n + j] = find(reversal_meet(rs[i], rs[j], ctx));
        jt[i * n + j] = find(reversal_join(rs[i], rs[j], ctx));
        auto const g  = glb(m, i, j);
        auto const l  = lub(m, i, j);
        expect(mj, g && *g == mt[i * n + j] && l && *l == jt[i * n + j],
               [&] { return to_string(rs[i]) + " and " + to_string(rs[j]); });
      }
    }
    out.push_back(mj);
    auto dist = named("reversal lattice distributive" + tag);
    if (mj.ok()) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            expect(dist, mt[a * n + jt[b * n + c]] == jt[mt[a * n + b] * n + mt[a * n + c]], [&] {
              return to_string(rs[a]) + ", " + to_string(rs[b]) + ", " + to_string(rs[c]);
            });
          }
        }
      }
    } else {
      fail(dist, "skipped: meet/join not closed");
    }
    out.push_back(dist);
    return out;
  }

  // Profiles and principal congruences

  std::vector<PairProfile> profile_sweep(CardinalContext const& ctx, std::uint32_t n_max, std::uint32_t d_max) {
    auto const alephs = interval(aleph0, ctx.x());
    std::vector<Cardinal> ranks;
    for (std::uint32_t r = 0; r <= n_max; ++r) {
      ranks.push_back(Cardinal::fin(r));
    }
    ranks.insert(ranks.end(), alephs.begin(), alephs.end());
    std::vector<Cardinal> diffs{Cardinal::fin(0)};
    for (std::uint32_t d = 2; d <= d_max; ++d) {
      diffs.push_back(Cardinal::fin(d));
    }
    diffs.insert(diffs.end(), alephs.begin(), alephs.end());

    std::vector<PairProfile> out;
    auto keep = [&](PairProfile const& p) {
      if (!profile_violation(p)) {
        out.push_back(p);
      }
    };
    for (std::size_t ia = 0; ia < ranks.size(); ++ia) {
      for (std::size_t ib = 0; ib <= ia; ++ib) {
        PairProfile base;
        base.context = ctx;
        base.rank_a  = ranks[ia];
        base.rank_b  = ranks[ib];
        if (ia == ib) {
          auto eq      = base;
          eq.equal     = true;
          eq.h_related = true;
          if (eq.rank_a.is_finite()) {
            eq.phi_type = CycleType(eq.rank_a.value(), 1);
          }
          keep(eq);
        }
        for (bool h : {false, true}) {
          std::vector<std::optional<CycleType>> phis{std::nullopt};
          if (h && ia == ib && ranks[ia].is_finite()) {
            phis.clear();
            for (auto& ct : cycle_types(static_cast<std::uint32_t>(ranks[ia].value()))) {
              if (!is_identity(ct)) {
                phis.emplace_back(std::move(ct));
              }
            }
          }
          for (auto const& phi : phis) {
            for (auto const& dt : diffs) {
              for (auto const& dov : diffs) {
                for (auto const& dun : diffs) {
                  auto p      = base;
                  p.h_related = h;
                  p.phi_type  = phi;
                  p.d_total   = dt;
                  p.d_over    = dov;
                  p.d_under   = dun;
                  keep(p);
                }
              }
            }
          }
        }
      }
    }
    return out;
  }

  std::vector<CongruenceDescriptor> principal_image(std::vector<PairProfile> const& sweep) {
    std::vector<CongruenceDescriptor> out;
    for (auto const& p : sweep) {
      if (!p.equal) {
        out.push_back(principal_descriptor(p));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::optional<std::uint32_t>> crank_by_joins(std::vector<CongruenceDescriptor> const& ds,
                                                           std::vector<CongruenceDescriptor> const& principals,
                                                           std::uint32_t                            k_max) {
    std::vector<std::optional<std::uint32_t>> out(ds.size());
    if (ds.empty()) {
      return out;
    }
    auto const bottom = index_in(ds, delta(ds.front().context(), ds.front().flavor()));
    if (bottom == ds.size()) {
      throw InvalidArgument("crank_by_joins: the list lacks its least element");
    }
    std::vector<std::size_t> gens;
    for (auto const& p : principals) {
      auto const i = index_in(ds, p);
      if (i == ds.size()) {
        throw InvalidArgument("crank_by_joins: principal " + to_string(p) + " not in the list");
      }
      gens.push_back(i);
    }
    // Breadth-first over joins: level k holds what k generators reach.
    out[bottom] = 0;
    std::vector<std::size_t> frontier{bottom};
    for (std::uint32_t k = 1; k <= k_max && !frontier.empty(); ++k) {
      std::vector<std::size_t> next;
      for (auto x : frontier) {
        for (auto g : gens) {
          auto const y = index_in(ds, join(ds[x], ds[g]));
          if (y < ds.size() && !out[y]) {
            out[y] = k;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  CheckReport check_bridge(CardinalContext const& ctx, std::uint32_t n_max) {
    CheckReport out;
    auto const  tag   = " at |X| = " + to_string(ctx.x());
    auto const  sweep = profile_sweep(ctx, n_max);
    auto const  ds    = enumerate_all(ctx, Flavor::partition_like, {n_max, true, true});
    auto const  n     = ds.size();
    auto const  leq_m = order_matrix(ds);

    auto contains = named("principal descriptor contains its pair" + tag);
    auto least = named("principal descriptor is the least one containing its pair" + tag);
    auto rank1 = named("principal descriptors have crank 1" + tag);
    std::vector<CongruenceDescriptor> image;
    // members[i]: bitset over the sweep of the profiles lying in ds[i].
    std::size_t const                       words = (sweep.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> members(n, std::vector<std::uint64_t>(words, 0));
    for (std::size_t s = 0; s < sweep.size(); ++s) {
      auto const& p = sweep[s];
      for (std::size_t i = 0; i < n; ++i) {
        if (membership(ds[i], p)) {
          members[i][s / 64] |= std::uint64_t{1} << (s % 64);
        }
      }
      auto const d = principal_descriptor(p);
      expect(contains, validate(d).empty() && membership(d, p) && membership(d, swapped(p)),
             [&] { return to_string(p) + " -> " + to_string(d); });
      if (p.equal) {
        expect(rank1, d == delta(ctx), [&] { return to_string(p) + " -> " + to_string(d); });
        continue;
      }
      expect(rank1, crank(d) == Cardinal::fin(1), [&] { return to_string(p) + " -> " + to_string(d); });
      auto const di = index_in(ds, d);
      if (di == n) {
        // A CT1 descriptor with q beyond the enumeration.
        continue;
      }
      image.push_back(d);
      for (std::size_t i = 0; i < n; ++i) {
        if (membership(ds[i], p)) {
          expect(least, leq_m[di][i],
                 [&] { return to_string(p) + " -> " + to_string(d) + ", yet in " + to_string(ds[i]); });
        }
      }
    }
    out.push_back(contains);
    out.push_back(rank1);
    out.push_back(least);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());

    auto coherent = named("crank 1 exactly on the principal image" + tag);
    for (auto const& d : ds) {
      bool const principal = std::binary_search(image.begin(), image.end(), d);
      expect(coherent, principal == (crank(d) == Cardinal::fin(1)), [&] {
        return to_string(d) + (principal ? " is principal but has crank " : " is not principal, crank ")
               + to_string(crank(d));
      });
    }
    out.push_back(coherent);

    auto joins = named("crank equals the least number of principal joinands" + tag);
    auto const  brute = crank_by_joins(ds, image, 4);
    for (std::size_t i = 0; i < n; ++i) {
      auto const c  = crank(ds[i]);
      bool const ok = c.is_finite() ? (brute[i] && *brute[i] == c.value()) : !brute[i];
      expect(joins, ok, [&] {
        return to_string(ds[i]) + ": crank " + to_string(c) + ", joins "
               + (brute[i] ? std::to_string(*brute[i]) : std::string("none up to 4"));
      });
    }
    out.push_back(joins);

    auto mono = named("membership is monotone along leq" + tag);
    auto exact = named("membership separates every non-comparable pair" + tag);
    auto subset = [&](std::size_t i, std::size_t j) {
      for (std::size_t w = 0; w < words; ++w) {
        if ((members[i][w] & ~members[j][w]) != 0) {
          return false;
        }
      }
      return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bool const sem = subset(i, j);
        if (leq_m[i][j]) {
          expect(mono, sem, [&] { return to_string(ds[i]) + " <= " + to_string(ds[j]); });
        } else {
          expect(exact, !sem, [&] { return to_string(ds[i]) + " not <= " + to_string(ds[j]); });
        }
      }
    }
    out.push_back(mono);
    out.push_back(exact);
    return out;
  }

  std::string format_report(std::string const& suite, CheckReport const& r) {
    std::ostringstream os;
    for (auto const& c : r) {
      os << (c.ok() ? "[PASS] " : "[FAIL] ") << suite << ": " << c.name << " (" << c.cases
         << " cases";
      if (!c.ok()) {
        os << ", " << c.failures << " failures; first: " << c.counterexample;
      }
      os << ")\n";
    }
    return os.str();
  }

}  // namespace dmcong
