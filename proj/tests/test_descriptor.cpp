#include <doctest.h>

#include <algorithm>
#include <functional>

#include "dmcong/checks.hpp"
#include "dmcong/descriptor.hpp"
#include "dmcong/error.hpp"
#include "dmcong/finitary.hpp"

using namespace dmcong;

namespace {
  using Tag = NormalSubgroup::Tag;

  Cardinal const one = Cardinal::fin(1);
  Cardinal const a0  = Cardinal::aleph(0);
  Cardinal const a1  = Cardinal::aleph(1);
  Cardinal const a2  = Cardinal::aleph(2);

  CardinalContext const c0(a0);
  CardinalContext const c1(a1);

  CongruenceDescriptor ct1(CardinalContext const& c, NormalSubgroup g, Cardinal z1, Cardinal z2) {
    return {c, Flavor::partition_like, CT1{g, z1, z2}};
  }

  CongruenceDescriptor ct2(CardinalContext const& c, Cardinal z1, Cardinal z2, Reversal r) {
    return {c, Flavor::partition_like, CT2{z1, z2, std::move(r)}};
  }

  NormalSubgroup const s1{1, Tag::trivial};
  NormalSubgroup const id2{2, Tag::trivial};
  NormalSubgroup const s2{2, Tag::symmetric};
  NormalSubgroup const id3{3, Tag::trivial};
  NormalSubgroup const a3{3, Tag::alternating};
  NormalSubgroup const s3{3, Tag::symmetric};

  // Counts by direct range enumeration over aleph indices 0..m: a reversal
  // is a non-increasing map from the indices [e, m] to values in
  // {1} ∪ [ℵ0, ℵ_e], encoded as -1 for 1 and i for ℵ_i.
  std::uint64_t maps(int e, int m) {
    std::uint64_t                   count = 0;
    std::function<void(int, int)>   rec   = [&](int pos, int cap) {
      if (pos > m) {
        ++count;
        return;
      }
      for (int v = -1; v <= cap; ++v) {
        rec(pos + 1, v);
      }
    };
    rec(e, e);
    return count;
  }

  std::uint64_t reversal_count(int m) {
    std::uint64_t s = 1;
    for (int e = 0; e <= m; ++e) {
      s += maps(e, m);
    }
    return s;
  }

  // ζ ranges over [η, |X|⁺], that is m + 2 - e values.
  std::uint64_t ct2_count(int m) {
    std::uint64_t s = 1;
    for (int e = 0; e <= m; ++e) {
      auto const z = static_cast<std::uint64_t>(m + 2 - e);
      s += maps(e, m) * z * z;
    }
    return s;
  }

  // ζ ∈ {1} ∪ [ℵ0, |X|⁺] for q <= 2 and [ℵ0, |X|⁺] for q >= 3.
  std::uint64_t ct1_count(int m, std::uint32_t n_max) {
    std::uint64_t s = 0;
    for (std::uint32_t q = 1; q <= n_max; ++q) {
      std::uint64_t const groups = q == 1 ? 1 : q == 2 ? 2 : q == 3 ? 3 : 4;
      std::uint64_t const z      = static_cast<std::uint64_t>(m + 2) + (q <= 2 ? 1 : 0);
      s += groups * z * z;
    }
    return s;
  }
}  // namespace

TEST_SUITE("descriptor") {
  TEST_CASE("count oracles") {
    CHECK(reversal_count(0) == 3);
    CHECK(reversal_count(1) == 7);
    CHECK(reversal_count(2) == 15);
    CHECK(ct2_count(0) == 9);
    CHECK(ct2_count(1) == 40);
    CHECK(ct2_count(2) == 135);
  }

  TEST_CASE("enumeration counts") {
    for (std::uint32_t m = 0; m <= 3; ++m) {
      CardinalContext const ctx(Cardinal::aleph(m));
      CAPTURE(m);
      CHECK(enumerate_reversals(ctx).size() == reversal_count(static_cast<int>(m)));
      CHECK(enumerate_all(ctx, Flavor::partition_like, {4, false, true}).size()
            == ct2_count(static_cast<int>(m)));
      for (std::uint32_t n_max = 1; n_max <= 4; ++n_max) {
        CHECK(enumerate_all(ctx, Flavor::partition_like, {n_max, true, false}).size()
              == ct1_count(static_cast<int>(m), n_max));
      }
    }
  }

  TEST_CASE("validate") {
    CHECK_FALSE(validate(ct1(c1, a3, one, a0)).empty());
    CHECK(validate(ct1(c1, s1, one, one)).empty());
    CHECK(ct1(c1, s1, one, one) == delta(c1));
    CHECK(validate(ct2(c1, a1, a1, Reversal{a0, {{a0, a2}}})).empty());
    CHECK_FALSE(validate(ct2(c1, a1, a1, Reversal{a0, {{a1, a2}}})).empty());
    CHECK_FALSE(validate(ct2(c1, a1, a1, Reversal{a0, {{one, a1}, {a0, a2}}})).empty());
  }

  TEST_CASE("leq examples") {
    CHECK(leq(ct1(c1, s1, one, a0), ct1(c1, id2, a0, a0)));
    auto const sigma = ct2(c1, a1, a1, Reversal{a0, {{a0, a1}, {one, a2}}});
    auto const tau   = ct2(c1, a2, a2, Reversal{a0, {{one, a2}}});
    CHECK_FALSE(leq(sigma, tau));
    CHECK_FALSE(leq(tau, sigma));
    CHECK_FALSE(leq_index_form(sigma, tau));
    CHECK_FALSE(leq_index_form(tau, sigma));
    // The same Ψ with larger ζ's contains σ.
    CHECK(leq(sigma, ct2(c1, a2, a2, Reversal{a0, {{a0, a1}, {one, a2}}})));
    // CT1 sits below CT2 exactly when the ζ's are.
    CHECK(leq(ct1(c1, s3, a0, a1), ct2(c1, a0, a1, Reversal{a0, {{one, a2}}})));
    CHECK_FALSE(leq(ct1(c1, s3, a1, a1), ct2(c1, a0, a1, Reversal{a0, {{one, a2}}})));
    CHECK_FALSE(leq(ct2(c1, a0, a0, Reversal{a0, {{one, a2}}}), ct1(c1, s3, a2, a2)));
  }

  TEST_CASE("bounds") {
    for (auto const* ctx : {&c0, &c1}) {
      for (auto const& d : enumerate_all(*ctx, Flavor::partition_like)) {
        CHECK(leq(delta(*ctx), d));
        CHECK(leq(d, nabla(*ctx)));
        CHECK(join(d, delta(*ctx)) == d);
        CHECK(meet(d, nabla(*ctx)) == d);
      }
    }
  }

  TEST_CASE("meet and join examples") {
    CHECK(meet(ct1(c1, s2, a0, a0), ct1(c1, id3, a1, a0)) == ct1(c1, s2, a0, a0));
    CHECK(join(ct1(c1, s2, a0, a0), ct1(c1, id3, a1, a0)) == ct1(c1, id3, a1, a0));
    Reversal const p1{a0, {{a0, a2}}};
    Reversal const p2{a1, {{a1, a2}}};
    CHECK(reversal_meet(p1, p2, c1) == p1);
    CHECK(reversal_join(p1, p2, c1) == p2);
    CHECK(reversal_leq(p1, p2, c1));
    // A CT1 meets a CT2 in a CT1 and joins it in a CT2.
    auto const x = ct1(c1, s3, a1, a0);
    auto const y = ct2(c1, a0, a2, Reversal{a1, {{one, a2}}});
    CHECK(meet(x, y) == ct1(c1, s3, a0, a0));
    CHECK(join(x, y) == ct2(c1, a1, a2, Reversal{a1, {{one, a2}}}));
  }

  TEST_CASE("index form agrees with the reversal form") {
    auto const ds = enumerate_all(c1, Flavor::partition_like);
    for (auto const& s : ds) {
      for (auto const& t : ds) {
        REQUIRE(leq(s, t) == leq_index_form(s, t));
      }
    }
  }

  TEST_CASE("star") {
    CHECK(is_star(delta(c0)));
    CHECK_FALSE(is_star(ct1(c0, s1, one, a0)));
    CHECK(is_star(nabla(c0)));
    for (auto const& d : enumerate_all(c1, Flavor::partition_like)) {
      CHECK(is_star(d) == (d.zeta1() == d.zeta2()));
    }
  }

  TEST_CASE("principal descriptors") {
    PairProfile eq;
    eq.equal     = true;
    eq.h_related = true;
    eq.rank_a = eq.rank_b = a0;
    CHECK(principal_descriptor(synth_profile(eq)) == delta(c0));

    PairProfile h;
    h.context   = c1;
    h.rank_a    = h.rank_b = Cardinal::fin(2);
    h.h_related = true;
    h.phi_type  = CycleType{2};
    h.d_total   = Cardinal::fin(4);
    CHECK(principal_descriptor(synth_profile(h)) == ct1(c1, s2, one, one));

    PairProfile m;
    m.context = c1;
    m.rank_a = m.rank_b = a0;
    m.d_total           = Cardinal::fin(3);
    CHECK(principal_descriptor(synth_profile(m))
          == ct2(c1, a0, a0, Reversal{a0, {{a0, a1}, {one, a2}}}));
  }

  TEST_CASE("crank") {
    CHECK(crank(delta(c0)) == Cardinal::fin(0));
    CHECK(crank(ct1(c0, s1, one, a0)) == one);
    CHECK(crank(ct1(c0, s2, one, one)) == one);
    CHECK(crank(ct1(c0, s2, a0, a0)) == Cardinal::fin(2));
    CHECK(crank(ct1(c0, id3, a0, a1)) == one);
    CHECK(crank(ct1(c0, a3, a0, a0)) == one);
    CHECK(crank(ct1(c0, s3, a0, a1)) == Cardinal::fin(2));
    CHECK(crank(ct2(c0, a0, a0, Reversal{a0, {{a0, a1}}})) == one);
    CHECK(crank(ct2(c0, a1, a1, Reversal{a0, {{one, a1}}})) == a0);
    CardinalContext const cw(Cardinal::aleph(1, 0));
    CHECK(crank(ct1(cw, s1, Cardinal::aleph(1, 0), one)) == a0);
    CardinalContext const cw1(Cardinal::aleph(1, 1));
    CHECK(crank(ct1(cw1, s3, a0, Cardinal::aleph(1, 0))) == a0);
  }

  TEST_CASE("membership") {
    for (auto const* ctx : {&c0, &c1}) {
      for (auto const& p : profile_sweep(*ctx, 3, 4)) {
        REQUIRE(membership(nabla(*ctx), p));
        REQUIRE(membership(delta(*ctx), p) == p.equal);
      }
    }
    auto const mu = ct2(c0, a0, a0, Reversal{a0, {{a0, a1}}});
    auto const p  = pair_profile(fin_identity(c0), fin_cofinite_identity(c0, 2));
    CHECK(p.d_total == Cardinal::fin(6));
    CHECK(membership(mu, p));
    auto const q = pair_profile(fin_identity(c0), fin_all_singletons(c0));
    CHECK(q.d_total == a0);
    CHECK_FALSE(membership(mu, q));
  }

  TEST_CASE("text round trip") {
    for (auto const* ctx : {&c0, &c1}) {
      for (auto flavor : {Flavor::partition_like, Flavor::full_transformation}) {
        for (auto const& d : enumerate_all(*ctx, flavor)) {
          REQUIRE(parse_descriptor(to_string(d), *ctx, flavor) == d);
        }
      }
    }
    CHECK(to_string(ct1(c0, s3, a0, a1)) == "CT1[N=S_3; z1=aleph_0; z2=aleph_1]");
    CHECK(to_string(ct2(c1, a0, a0, Reversal{a0, {{a0, a1}, {one, a2}}}))
          == "CT2[z1=aleph_0; z2=aleph_0; psi=(aleph_0@aleph_0, 1@aleph_1)]");
    CHECK(parse_descriptor("DELTA", c0) == delta(c0));
    CHECK(parse_descriptor(" NABLA ", c0) == nabla(c0));
    CHECK(parse_descriptor("CT2[z1=aleph_1;z2=aleph_1;psi=(1@aleph_0)]", c0)
          == ct2(c0, a1, a1, Reversal{a0, {{one, a1}}}));
  }

  TEST_CASE("parse errors carry a column") {
    auto message = [](std::string const& text, Flavor f = Flavor::partition_like) {
      try {
        parse_descriptor(text, c0, f);
      } catch (InvalidArgument const& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("CT3[]").find("column 1") != std::string::npos);
    CHECK(message("CT1[N=S_3; z1=aleph_0; z9=1]").find("column 24") != std::string::npos);
    CHECK(message("CT1[N=S_3; z1=aleph_0]").find("z2") != std::string::npos);
    CHECK_FALSE(message("CT1[N=S_3; z1=1; z2=aleph_0]").empty());
    CHECK_FALSE(message("CT1[N=S_3; z1=aleph_0; z2=aleph_0]", Flavor::full_transformation).empty());
    CHECK_FALSE(message("CT2[z1=aleph_0; z2=aleph_0; psi=(aleph_0@aleph_0").empty());
  }

  TEST_CASE("transformation flavour") {
    auto const ds = enumerate_all(c1, Flavor::full_transformation);
    for (auto const& d : ds) {
      CHECK(d.zeta1() == c1.x_plus());
      CHECK(d.zeta2() == c1.x_plus());
    }
    auto const t = parse_descriptor("CT1[N=A_3]", c1, Flavor::full_transformation);
    CHECK(to_string(t) == "CT1[N=A_3]");
    CHECK_THROWS_AS(meet(t, delta(c1)), Mismatch);
    CHECK_THROWS_AS(leq(delta(c0), delta(c1)), Mismatch);
  }

  TEST_CASE("dot export") {
    auto const ds  = enumerate_all(c0, Flavor::partition_like, {4, false, true});
    auto const dot = descriptors_dot(ds, "ct2");
    std::size_t nodes = 0;
    for (std::size_t pos = 0; (pos = dot.find("[label=", pos)) != std::string::npos; ++pos) {
      ++nodes;
    }
    CHECK(nodes == 9);
  }
}
