#include "dmcong/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "dmcong/error.hpp"

namespace dmcong {

  namespace {
    Cardinal const one  = Cardinal::fin(1);
    Cardinal const zero = Cardinal::fin(0);

    Reversal nabla_reversal(CardinalContext const& ctx) {
      return {ctx.x_plus(), {{one, ctx.x_plus()}}};
    }

    bool in_one_or_infinite(Cardinal const& c, Cardinal const& hi) {
      return c == one || (c.is_infinite() && c <= hi);
    }

    // Points where either extension may change value, clipped to [0, |X|].
    std::vector<Cardinal> breakpoints(Reversal const& a, Reversal const& b, CardinalContext const& ctx) {
      std::vector<Cardinal> pts{zero, a.eta, b.eta};
      for (auto const* r : {&a, &b}) {
        for (auto const& s : r->steps) {
          pts.push_back(s.bound);
        }
      }
      std::erase_if(pts, [&](Cardinal const& c) { return ctx.x() < c; });
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      return pts;
    }

    // The reversal whose extension takes value vals[i] on [pts[i], pts[i+1]).
    Reversal from_extension(std::vector<Cardinal> const& pts,
                            std::vector<Cardinal> const& vals,
                            CardinalContext const&       ctx) {
      std::size_t i = 0;
      while (i < pts.size() && vals[i] == ctx.x_plus()) {
        ++i;
      }
      if (i == pts.size()) {
        return nabla_reversal(ctx);
      }
      Reversal r{pts[i], {}};
      for (; i < pts.size(); ++i) {
        if (!r.steps.empty() && r.steps.back().xi == vals[i]) {
          continue;
        }
        if (!r.steps.empty()) {
          r.steps.back().bound = pts[i];
        }
        r.steps.push_back({vals[i], ctx.x_plus()});
      }
      return r;
    }

    template <typename F>
    Reversal combine(Reversal const& a, Reversal const& b, CardinalContext const& ctx, F pick) {
      auto const            pts = breakpoints(a, b, ctx);
      std::vector<Cardinal> vals;
      vals.reserve(pts.size());
      for (auto const& p : pts) {
        vals.push_back(pick(a.extended(p, ctx), b.extended(p, ctx)));
      }
      return from_extension(pts, vals, ctx);
    }

    void check_same(CongruenceDescriptor const& s, CongruenceDescriptor const& t) {
      if (!(s.context() == t.context())) {
        throw Mismatch("descriptors over different sets (" + to_string(s.context().x()) + " vs "
                       + to_string(t.context().x()) + ")");
      }
      if (s.flavor() != t.flavor()) {
        throw Mismatch("descriptors of different flavours (" + to_string(s.flavor()) + " vs "
                       + to_string(t.flavor()) + ")");
      }
    }

    void require_partition_like(CongruenceDescriptor const& d, char const* what) {
      if (d.flavor() != Flavor::partition_like) {
        throw Mismatch(std::string(what) + " is defined for the partition-like flavour only");
      }
    }

    void require_valid(CongruenceDescriptor const& d) {
      auto v = validate(d);
      if (!v.empty()) {
        std::string msg = "invalid descriptor " + to_string(d) + ":";
        for (auto const& s : v) {
          msg += " " + s + ";";
        }
        msg.pop_back();
        throw InvalidArgument(msg);
      }
    }

    // Index m of |X| = ℵ_m, for the finite enumerations.
    std::uint32_t finite_index(CardinalContext const& ctx) {
      auto const idx = ctx.x().index();
      if (idx.a != 0) {
        throw InvalidArgument("enumeration needs |X| = aleph_m with m finite, got "
                              + to_string(ctx.x()));
      }
      return idx.b;
    }
  }  // namespace

  // Reversals

  Cardinal Reversal::value_at(Cardinal const& kappa) const {
    for (auto const& s : steps) {
      if (kappa < s.bound) {
        return s.xi;
      }
    }
    return steps.empty() ? one : steps.back().xi;
  }

  Cardinal Reversal::extended(Cardinal const& kappa, CardinalContext const& ctx) const {
    if (kappa < eta) {
      return ctx.x_plus();
    }
    return value_at(kappa);
  }

  std::strong_ordering Reversal::operator<=>(Reversal const& other) const {
    if (auto c = eta <=> other.eta; c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(steps.begin(), steps.end(),
                                                  other.steps.begin(), other.steps.end());
  }

  Reversal empty_reversal(CardinalContext const& ctx) {
    return nabla_reversal(ctx);
  }

  std::vector<std::string> reversal_violations(Reversal const& r, CardinalContext const& ctx) {
    std::vector<std::string> out;
    auto const& xp = ctx.x_plus();
    if (r.eta < aleph0 || xp < r.eta) {
      out.push_back("eta must lie in [aleph_0, |X|^+]");
      return out;
    }
    if (r.eta == xp) {
      if (!(r.steps == nabla_reversal(ctx).steps)) {
        out.push_back("the empty reversal is stored as the single step (1, |X|^+)");
      }
      return out;
    }
    if (r.steps.empty()) {
      out.push_back("k must be at least 1");
      return out;
    }
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      auto const& s = r.steps[i];
      if (!in_one_or_infinite(s.xi, r.eta)) {
        out.push_back("xi_" + std::to_string(i + 1) + " = " + to_string(s.xi)
                      + " must lie in {1} u [aleph_0, eta]");
      }
      auto const& prev = i == 0 ? r.eta : r.steps[i - 1].bound;
      if (!(prev < s.bound)) {
        out.push_back("eta_" + std::to_string(i + 1) + " = " + to_string(s.bound)
                      + " must exceed " + to_string(prev));
      }
      if (i > 0 && !(s.xi < r.steps[i - 1].xi)) {
        out.push_back("xi values must be strictly decreasing");
      }
    }
    if (!(r.steps.back().bound == xp)) {
      out.push_back("the last step must end at |X|^+");
    }
    return out;
  }

  bool reversal_leq(Reversal const& a, Reversal const& b, CardinalContext const& ctx) {
    for (auto const& p : breakpoints(a, b, ctx)) {
      if (b.extended(p, ctx) < a.extended(p, ctx)) {
        return false;
      }
    }
    return true;
  }

  Reversal reversal_meet(Reversal const& a, Reversal const& b, CardinalContext const& ctx) {
    return combine(a, b, ctx, [](Cardinal const& x, Cardinal const& y) { return std::min(x, y); });
  }

  Reversal reversal_join(Reversal const& a, Reversal const& b, CardinalContext const& ctx) {
    return combine(a, b, ctx, [](Cardinal const& x, Cardinal const& y) { return std::max(x, y); });
  }

  std::vector<Reversal> enumerate_reversals(CardinalContext const& ctx) {
    auto const            m = finite_index(ctx);
    std::vector<Reversal> out;
    for (std::uint32_t e = 0; e <= m; ++e) {
      // Non-increasing maps from ℵ_e, ..., ℵ_m into 1 < ℵ_0 < ... < ℵ_e.
      std::vector<Cardinal> codomain{one};
      for (std::uint32_t j = 0; j <= e; ++j) {
        codomain.push_back(Cardinal::aleph(j));
      }
      std::vector<Cardinal> pts;
      for (auto j = e; j <= m; ++j) {
        pts.push_back(Cardinal::aleph(j));
      }
      std::vector<Cardinal>                       vals(pts.size());
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t top) {
        if (pos == pts.size()) {
          out.push_back(from_extension(pts, vals, ctx));
          return;
        }
        for (std::size_t c = 0; c <= top; ++c) {
          vals[pos] = codomain[c];
          rec(pos + 1, c);
        }
      };
      rec(0, codomain.size() - 1);
    }
    out.push_back(nabla_reversal(ctx));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string(Reversal const& r) {
    std::string s = "(";
    auto        start = r.eta;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      s += (i ? ", " : "") + to_string(r.steps[i].xi) + "@" + to_string(start);
      start = r.steps[i].bound;
    }
    return s + ")";
  }

  // Flavours

  std::string to_string(Flavor f) {
    switch (f) {
      case Flavor::partition_like:
        return "P";
      case Flavor::full_transformation:
        return "T";
      case Flavor::symmetric_inverse:
        return "I";
    }
    return "?";
  }

  Flavor parse_flavor(std::string_view text) {
    if (text == "P" || text == "PB") {
      return Flavor::partition_like;
    }
    if (text == "T") {
      return Flavor::full_transformation;
    }
    if (text == "I") {
      return Flavor::symmetric_inverse;
    }
    throw InvalidArgument("unknown flavour '" + std::string(text) + "' (expected P, PB, T or I)");
  }

  // Descriptors

  CongruenceDescriptor::CongruenceDescriptor(CardinalContext const& ctx, Flavor flavor, CT1 data)
      : _ctx(ctx), _flavor(flavor), _data(std::move(data)) {
    if (_flavor != Flavor::partition_like) {
      auto& d = std::get<CT1>(_data);
      d.zeta1 = d.zeta2 = _ctx.x_plus();
    }
  }

  CongruenceDescriptor::CongruenceDescriptor(CardinalContext const& ctx, Flavor flavor, CT2 data)
      : _ctx(ctx), _flavor(flavor), _data(std::move(data)) {
    auto& d = std::get<CT2>(_data);
    if (_flavor != Flavor::partition_like) {
      d.zeta1 = d.zeta2 = _ctx.x_plus();
    }
    if (d.psi.eta == _ctx.x_plus()) {
      d.psi = nabla_reversal(_ctx);
    }
  }

  Cardinal const& CongruenceDescriptor::zeta1() const {
    return is_ct1() ? ct1().zeta1 : ct2().zeta1;
  }

  Cardinal const& CongruenceDescriptor::zeta2() const {
    return is_ct1() ? ct1().zeta2 : ct2().zeta2;
  }

  Cardinal CongruenceDescriptor::eta() const {
    return is_ct1() ? Cardinal::fin(ct1().group.q()) : ct2().psi.eta;
  }

  bool CongruenceDescriptor::is_nabla() const {
    return is_ct2() && ct2().psi.eta == _ctx.x_plus() && ct2().zeta1 == _ctx.x_plus()
           && ct2().zeta2 == _ctx.x_plus();
  }

  std::strong_ordering CongruenceDescriptor::operator<=>(CongruenceDescriptor const& other) const {
    if (auto c = _ctx.x() <=> other._ctx.x(); c != 0) {
      return c;
    }
    if (auto c = _flavor <=> other._flavor; c != 0) {
      return c;
    }
    if (is_ct1() != other.is_ct1()) {
      return is_ct1() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (is_ct1()) {
      if (auto c = ct1().group <=> other.ct1().group; c != 0) {
        return c;
      }
    } else if (auto c = ct2().psi <=> other.ct2().psi; c != 0) {
      return c;
    }
    if (auto c = zeta1() <=> other.zeta1(); c != 0) {
      return c;
    }
    return zeta2() <=> other.zeta2();
  }

  CongruenceDescriptor delta(CardinalContext const& ctx, Flavor flavor) {
    return {ctx, flavor, CT1{NormalSubgroup(1, NormalSubgroup::Tag::trivial), one, one}};
  }

  CongruenceDescriptor nabla(CardinalContext const& ctx, Flavor flavor) {
    return {ctx, flavor, CT2{ctx.x_plus(), ctx.x_plus(), nabla_reversal(ctx)}};
  }

  std::vector<std::string> validate(CongruenceDescriptor const& d) {
    std::vector<std::string> out;
    auto const&              ctx = d.context();
    auto const&              xp  = ctx.x_plus();
    if (d.is_ct1()) {
      auto const& c = d.ct1();
      for (auto const* z : {&c.zeta1, &c.zeta2}) {
        auto const name = z == &c.zeta1 ? "zeta1" : "zeta2";
        if (!in_one_or_infinite(*z, xp)) {
          out.push_back(std::string(name) + " = " + to_string(*z)
                        + " must lie in {1} u [aleph_0, |X|^+]");
        } else if (c.group.q() >= 3 && *z == one) {
          out.push_back(std::string(name) + " must be at least aleph_0 when n >= 3");
        }
      }
      return out;
    }
    auto const& c = d.ct2();
    out           = reversal_violations(c.psi, ctx);
    for (auto const* z : {&c.zeta1, &c.zeta2}) {
      auto const name = z == &c.zeta1 ? "zeta1" : "zeta2";
      if (*z < c.psi.eta || xp < *z) {
        out.push_back(std::string(name) + " = " + to_string(*z) + " must lie in [eta, |X|^+] = ["
                      + to_string(c.psi.eta) + ", " + to_string(xp) + "]");
      }
    }
    return out;
  }

  bool leq(CongruenceDescriptor const& s, CongruenceDescriptor const& t) {
    check_same(s, t);
    bool const zetas = s.zeta1() <= t.zeta1() && s.zeta2() <= t.zeta2();
    if (!zetas) {
      return false;
    }
    if (s.is_ct1()) {
      return t.is_ct2() || s.ct1().group <= t.ct1().group;
    }
    return t.is_ct2() && reversal_leq(s.ct2().psi, t.ct2().psi, s.context());
  }

  bool leq_index_form(CongruenceDescriptor const& s, CongruenceDescriptor const& t) {
    check_same(s, t);
    if (!(s.zeta1() <= t.zeta1() && s.zeta2() <= t.zeta2())) {
      return false;
    }
    if (s.is_ct1()) {
      if (t.is_ct2()) {
        return true;
      }
      auto const& a = s.ct1().group;
      auto const& b = t.ct1().group;
      return a.q() < b.q() || (a.q() == b.q() && a <= b);
    }
    if (t.is_ct1()) {
      return false;
    }
    auto const& ps = s.ct2().psi;
    auto const& pt = t.ct2().psi;
    if (pt.eta < ps.eta) {
      return false;
    }
    // Position 0 of τ is (η(τ), η(τ)).
    std::vector<Cardinal> xi_t{pt.eta};
    std::vector<Cardinal> eta_t{pt.eta};
    for (auto const& st : pt.steps) {
      xi_t.push_back(st.xi);
      eta_t.push_back(st.bound);
    }
    std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t i, std::size_t lo) {
      if (i == ps.steps.size()) {
        return true;
      }
      for (auto j = lo; j < xi_t.size(); ++j) {
        if (ps.steps[i].xi <= xi_t[j] && ps.steps[i].bound <= eta_t[j] && search(i + 1, j)) {
          return true;
        }
      }
      return false;
    };
    return search(0, 0);
  }

  CongruenceDescriptor meet(CongruenceDescriptor const& s, CongruenceDescriptor const& t) {
    check_same(s, t);
    auto const& ctx = s.context();
    auto const  z1  = std::min(s.zeta1(), t.zeta1());
    auto const  z2  = std::min(s.zeta2(), t.zeta2());
    if (s.is_ct1() && t.is_ct1()) {
      return {ctx, s.flavor(), CT1{std::min(s.ct1().group, t.ct1().group), z1, z2}};
    }
    if (s.is_ct1() || t.is_ct1()) {
      auto const& g = s.is_ct1() ? s.ct1().group : t.ct1().group;
      return {ctx, s.flavor(), CT1{g, z1, z2}};
    }
    return {ctx, s.flavor(), CT2{z1, z2, reversal_meet(s.ct2().psi, t.ct2().psi, ctx)}};
  }

  CongruenceDescriptor join(CongruenceDescriptor const& s, CongruenceDescriptor const& t) {
    check_same(s, t);
    auto const& ctx = s.context();
    auto const  z1  = std::max(s.zeta1(), t.zeta1());
    auto const  z2  = std::max(s.zeta2(), t.zeta2());
    if (s.is_ct1() && t.is_ct1()) {
      return {ctx, s.flavor(), CT1{std::max(s.ct1().group, t.ct1().group), z1, z2}};
    }
    if (s.is_ct1() || t.is_ct1()) {
      auto const& psi = s.is_ct2() ? s.ct2().psi : t.ct2().psi;
      return {ctx, s.flavor(), CT2{z1, z2, psi}};
    }
    return {ctx, s.flavor(), CT2{z1, z2, reversal_join(s.ct2().psi, t.ct2().psi, ctx)}};
  }

  bool is_star(CongruenceDescriptor const& d) {
    require_partition_like(d, "is_star");
    return d.zeta1() == d.zeta2();
  }

  std::vector<CongruenceDescriptor> enumerate_all(CardinalContext const&  ctx,
                                                  Flavor                  flavor,
                                                  EnumerateOptions const& opts) {
    finite_index(ctx);
    auto const&                       xp = ctx.x_plus();
    bool const                        pl = flavor == Flavor::partition_like;
    std::vector<CongruenceDescriptor> out;
    if (opts.ct1) {
      auto const small = interval(one, xp, IntervalFilter::one_or_infinite);
      auto const large = interval(aleph0, xp);
      for (std::uint32_t q = 1; q <= opts.n_max; ++q) {
        auto const& zetas = pl ? (q <= 2 ? small : large) : std::vector<Cardinal>{xp};
        for (auto const& g : normal_subgroups(q)) {
          for (auto const& z1 : zetas) {
            for (auto const& z2 : zetas) {
              out.emplace_back(ctx, flavor, CT1{g, z1, z2});
            }
          }
        }
      }
    }
    if (opts.ct2) {
      for (auto const& psi : enumerate_reversals(ctx)) {
        auto const zetas = pl ? interval(psi.eta, xp) : std::vector<Cardinal>{xp};
        for (auto const& z1 : zetas) {
          for (auto const& z2 : zetas) {
            out.emplace_back(ctx, flavor, CT2{z1, z2, psi});
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  CongruenceDescriptor principal_descriptor(PairProfile const& raw) {
    if (auto why = profile_violation(raw)) {
      throw InvalidArgument("inconsistent pair profile: " + *why);
    }
    auto const  p   = raw.rank_a < raw.rank_b ? swapped(raw) : raw;
    auto const& ctx = p.context;
    auto const  pl  = Flavor::partition_like;
    if (p.equal) {
      return delta(ctx);
    }
    auto const fin_zeta = [](Cardinal const& d) { return std::max(aleph0, successor(d)); };
    if (p.rank_a.is_finite()) {
      auto const n = static_cast<std::uint32_t>(p.rank_a.value());
      if (p.h_related) {
        auto const z = n == 2 ? one : aleph0;
        return {ctx, pl, CT1{normal_closure(*p.phi_type), z, z}};
      }
      NormalSubgroup const g(n + 1, NormalSubgroup::Tag::trivial);
      if (n <= 1) {
        return {ctx, pl,
                CT1{g, p.d_over == zero ? one : fin_zeta(p.d_over),
                    p.d_under == zero ? one : fin_zeta(p.d_under)}};
      }
      return {ctx, pl, CT1{g, fin_zeta(p.d_over), fin_zeta(p.d_under)}};
    }
    auto const& kappa  = p.rank_a;
    auto const  kplus  = successor(kappa);
    if (kappa <= p.d_total) {
      return {ctx, pl,
              CT2{std::max(kplus, successor(p.d_over)), std::max(kplus, successor(p.d_under)),
                  Reversal{kplus, {{one, ctx.x_plus()}}}}};
    }
    auto const eta = fin_zeta(p.d_total);
    Reversal   psi{eta, {}};
    if (kplus == ctx.x_plus()) {
      psi.steps = {{eta, ctx.x_plus()}};
    } else {
      psi.steps = {{eta, kplus}, {one, ctx.x_plus()}};
    }
    return {ctx, pl, CT2{eta, eta, psi}};
  }

  Cardinal crank(CongruenceDescriptor const& d) {
    require_partition_like(d, "crank");
    require_valid(d);
    auto const ucl = [](Cardinal const& c) { return c.is_uncountable_limit(); };
    if (d.is_ct1()) {
      auto const& c = d.ct1();
      if (ucl(c.zeta1) || ucl(c.zeta2)) {
        return std::max(cofinality(c.zeta1), cofinality(c.zeta2));
      }
      auto const q       = c.group.q();
      bool const trivial = c.group.tag() == NormalSubgroup::Tag::trivial;
      bool const ones    = c.zeta1 == one && c.zeta2 == one;
      bool const alephs  = c.zeta1 == aleph0 && c.zeta2 == aleph0;
      if (q == 1) {
        return Cardinal::fin(ones ? 0 : 1);
      }
      if (trivial) {
        return Cardinal::fin(1);
      }
      if (q == 2) {
        return Cardinal::fin(ones ? 1 : 2);
      }
      return Cardinal::fin(alephs ? 1 : 2);
    }
    auto const&           c   = d.ct2();
    auto const&           psi = c.psi;
    std::vector<Cardinal> params{psi.eta, c.zeta1, c.zeta2};
    for (auto const& s : psi.steps) {
      params.push_back(s.xi);
      params.push_back(s.bound);
    }
    auto const k   = psi.steps.size();
    auto const xi1 = psi.steps.front().xi;
    auto const xik = psi.steps.back().xi;
    if (std::any_of(params.begin(), params.end(), ucl)
        || (k == 1 && psi.eta == aleph0 && xi1 == one)) {
      Cardinal best = one;
      for (auto const& x : params) {
        best = std::max(best, cofinality(x));
      }
      return best;
    }
    if (psi.eta == aleph0 && xi1 == aleph0) {
      return Cardinal::fin(c.zeta1 == aleph0 && c.zeta2 == aleph0 ? 1 : 2);
    }
    // η is now a successor cardinal.
    bool const tight = xi1 == psi.eta && c.zeta1 == psi.eta && c.zeta2 == psi.eta;
    if (xik == one) {
      if (k == 1) {
        return Cardinal::fin(1);
      }
      return Cardinal::fin(tight ? k - 1 : k);
    }
    return Cardinal::fin(tight ? k : k + 1);
  }

  bool membership(CongruenceDescriptor const& d, PairProfile const& p) {
    if (!(d.context() == p.context)) {
      throw Mismatch("profile and descriptor over different sets");
    }
    if (p.equal) {
      return true;
    }
    auto const both_below = [&](Cardinal const& bound) {
      return p.rank_a < bound && p.rank_b < bound;
    };
    if (d.is_ct1()) {
      auto const& c = d.ct1();
      auto const  q = Cardinal::fin(c.group.q());
      if (both_below(q) && p.d_over < c.zeta1 && p.d_under < c.zeta2) {
        return true;
      }
      return p.rank_a == q && p.rank_b == q && p.h_related && p.phi_type
             && c.group.contains(*p.phi_type);
    }
    auto const& c = d.ct2();
    if (both_below(c.psi.eta) && p.d_over < c.zeta1 && p.d_under < c.zeta2) {
      return true;
    }
    return std::any_of(c.psi.steps.begin(), c.psi.steps.end(), [&](Step const& s) {
      return both_below(s.bound) && p.d_total < s.xi;
    });
  }

  // Text

  std::string to_string(CongruenceDescriptor const& d) {
    if (d.is_nabla()) {
      return "NABLA";
    }
    bool const  pl = d.flavor() == Flavor::partition_like;
    std::string z  = pl ? "; z1=" + to_string(d.zeta1()) + "; z2=" + to_string(d.zeta2()) : "";
    if (d.is_ct1()) {
      return "CT1[N=" + d.ct1().group.to_string() + z + "]";
    }
    if (pl) {
      z = z.substr(2) + "; ";
    }
    return "CT2[" + z + "psi=" + to_string(d.ct2().psi) + "]";
  }

  namespace {
    struct Field {
      std::string_view key;
      std::string_view value;
      std::size_t      column;
    };

    class DescriptorParser {
     public:
      DescriptorParser(std::string_view text, CardinalContext const& ctx, Flavor flavor)
          : _text(text), _ctx(ctx), _flavor(flavor) {}

      CongruenceDescriptor run() {
        auto body = _text;
        std::size_t off = 0;
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) {
          body.remove_prefix(1);
          ++off;
        }
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) {
          body.remove_suffix(1);
        }
        if (body == "NABLA") {
          return nabla(_ctx, _flavor);
        }
        if (body == "DELTA") {
          return delta(_ctx, _flavor);
        }
        bool const is1 = body.starts_with("CT1[");
        bool const is2 = body.starts_with("CT2[");
        if (!is1 && !is2) {
          fail(off, "expected CT1[...], CT2[...], DELTA or NABLA");
        }
        if (!body.ends_with("]")) {
          fail(off + body.size(), "missing closing ']'");
        }
        auto fields = split_fields(body.substr(4, body.size() - 5), off + 4);
        bool const pl = _flavor == Flavor::partition_like;
        auto       z1 = _ctx.x_plus();
        auto       z2 = _ctx.x_plus();
        std::optional<NormalSubgroup> group;
        std::optional<Reversal>       psi;
        std::set<std::string_view>    seen;
        for (auto const& f : fields) {
          if (!seen.insert(f.key).second) {
            fail(f.column, "duplicate field '" + std::string(f.key) + "'");
          }
          if (f.key == "z1" || f.key == "z2") {
            if (!pl) {
              fail(f.column, "zeta parameters are not used by the " + to_string(_flavor)
                                 + " flavour");
            }
            (f.key == "z1" ? z1 : z2) = cardinal_at(f.value, f.column + 3);
          } else if (f.key == "N" && is1) {
            try {
              group = parse_normal_subgroup(f.value);
            } catch (Error const& e) {
              fail(f.column + 2, e.what());
            }
          } else if (f.key == "psi" && is2) {
            psi = reversal_at(f.value, f.column + 4);
          } else {
            fail(f.column, "unexpected field '" + std::string(f.key) + "'");
          }
        }
        if (pl && (!seen.contains("z1") || !seen.contains("z2"))) {
          fail(off, "missing z1 or z2");
        }
        std::optional<CongruenceDescriptor> d;
        if (is1) {
          if (!group) {
            fail(off, "missing field N");
          }
          d.emplace(_ctx, _flavor, CT1{*group, z1, z2});
        } else {
          if (!psi) {
            fail(off, "missing field psi");
          }
          d.emplace(_ctx, _flavor, CT2{z1, z2, *psi});
        }
        auto v = validate(*d);
        if (!v.empty()) {
          std::string msg;
          for (auto const& s : v) {
            msg += (msg.empty() ? "" : "; ") + s;
          }
          fail(off, msg);
        }
        return *d;
      }

     private:
      [[noreturn]] void fail(std::size_t column, std::string const& why) const {
        throw InvalidArgument("descriptor '" + std::string(_text) + "', column "
                              + std::to_string(column + 1) + ": " + why);
      }

      static std::string_view trim(std::string_view s, std::size_t& off) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
          s.remove_prefix(1);
          ++off;
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
          s.remove_suffix(1);
        }
        return s;
      }

      std::vector<Field> split_fields(std::string_view inner, std::size_t base) const {
        std::vector<Field> out;
        std::size_t        pos = 0;
        while (pos <= inner.size()) {
          auto end = inner.find(';', pos);
          if (end == std::string_view::npos) {
            end = inner.size();
          }
          std::size_t col  = base + pos;
          auto        item = trim(inner.substr(pos, end - pos), col);
          auto const  eq   = item.find('=');
          if (eq == std::string_view::npos) {
            fail(col, "expected key=value");
          }
          out.push_back({item.substr(0, eq), item.substr(eq + 1), col});
          pos = end + 1;
        }
        return out;
      }

      Cardinal cardinal_at(std::string_view text, std::size_t column) const {
        std::size_t col = column;
        auto        t   = trim(text, col);
        try {
          return parse_cardinal(t);
        } catch (Error const& e) {
          fail(col, e.what());
        }
      }

      Reversal reversal_at(std::string_view text, std::size_t column) const {
        std::size_t col = column;
        auto        t   = trim(text, col);
        if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
          fail(col, "expected psi=(value@threshold, ...)");
        }
        auto const inner = t.substr(1, t.size() - 2);
        std::vector<std::pair<Cardinal, Cardinal>> items;
        std::size_t                                pos = 0;
        while (pos <= inner.size()) {
          auto end = inner.find(',', pos);
          if (end == std::string_view::npos) {
            end = inner.size();
          }
          std::size_t c    = col + 1 + pos;
          auto        item = trim(inner.substr(pos, end - pos), c);
          auto const  at   = item.find('@');
          if (at == std::string_view::npos) {
            fail(c, "expected value@threshold");
          }
          items.emplace_back(cardinal_at(item.substr(0, at), c),
                             cardinal_at(item.substr(at + 1), c + at + 1));
          pos = end + 1;
        }
        Reversal r{items.front().second, {}};
        for (std::size_t i = 0; i < items.size(); ++i) {
          auto const bound = i + 1 < items.size() ? items[i + 1].second : _ctx.x_plus();
          r.steps.push_back({items[i].first, bound});
        }
        return r;
      }

      std::string_view       _text;
      CardinalContext const& _ctx;
      Flavor                 _flavor;
    };
  }  // namespace

  CongruenceDescriptor parse_descriptor(std::string_view text, CardinalContext const& ctx, Flavor flavor) {
    return DescriptorParser(text, ctx, flavor).run();
  }

  OrderMatrix order_matrix(std::vector<CongruenceDescriptor> const& ds) {
    OrderMatrix m(ds.size(), std::vector<bool>(ds.size(), false));
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = 0; j < ds.size(); ++j) {
        m[i][j] = leq(ds[i], ds[j]);
      }
    }
    return m;
  }

  std::string descriptors_dot(std::vector<CongruenceDescriptor> const& ds, std::string const& name) {
    std::vector<DotNode> nodes;
    nodes.reserve(ds.size());
    for (auto const& d : ds) {
      DotNode node;
      node.label = to_string(d);
      if (d.is_ct1()) {
        node.group      = "N=" + d.ct1().group.to_string();
        node.attributes = "shape=box";
      } else {
        node.group      = "psi=" + to_string(d.ct2().psi);
        node.attributes = d.is_nabla() ? "shape=doublecircle" : "shape=ellipse";
      }
      nodes.push_back(std::move(node));
    }
    return to_dot(name, nodes, hasse_edges(order_matrix(ds)));
  }

}  // namespace dmcong
