#include "dmcong/finitary.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>

#include "dmcong/error.hpp"

namespace dmcong {

  namespace {
    bool column_matches_tail(Partition const& p, std::uint32_t c, Tail tail) {
      auto const w  = p.degree();
      auto const up = p.label(c);
      auto const lo = p.label(w + c);
      std::uint32_t size_up = 0;
      std::uint32_t size_lo = 0;
      for (auto x : p.labels()) {
        size_up += x == up;
        size_lo += x == lo;
      }
      if (tail == Tail::identity) {
        return up == lo && size_up == 2;
      }
      return up != lo && size_up == 1 && size_lo == 1;
    }

    Partition drop_last_column(Partition const& p) {
      auto const                 w = p.degree();
      std::vector<std::uint32_t> labels;
      labels.reserve(2 * static_cast<std::size_t>(w - 1));
      for (std::uint32_t i = 0; i + 1 < w; ++i) {
        labels.push_back(p.label(i));
      }
      for (std::uint32_t i = 0; i + 1 < w; ++i) {
        labels.push_back(p.label(w + i));
      }
      return Partition::from_labels(w - 1, std::move(labels));
    }

    void check_context(FinitaryPartition const& a, FinitaryPartition const& b) {
      if (!(a.context() == b.context())) {
        throw Mismatch("finitary partitions over different sets ("
                       + to_string(a.context().x()) + " vs "
                       + to_string(b.context().x()) + ")");
      }
    }

    Cardinal add(Cardinal const& x, Cardinal const& y) {
      if (x.is_finite() && y.is_finite()) {
        return Cardinal::fin(x.value() + y.value());
      }
      return std::max(x, y);
    }

    Cardinal times(std::uint64_t k, Cardinal const& x) {
      if (k == 0) {
        return Cardinal::fin(0);
      }
      if (x.is_finite()) {
        return Cardinal::fin(k * x.value());
      }
      return x;
    }
  }  // namespace

  FinitaryPartition::FinitaryPartition(CardinalContext const& ctx, Partition core, Tail tail)
      : _ctx(ctx), _core(std::move(core)), _tail(tail) {
    while (_core.degree() > 0 && column_matches_tail(_core, _core.degree() - 1, _tail)) {
      _core = drop_last_column(_core);
    }
  }

  Partition FinitaryPartition::widened(std::uint32_t w) const {
    auto const old = window();
    if (w < old) {
      throw InvalidArgument("widened: target window smaller than the core");
    }
    std::vector<std::uint32_t> labels(2 * static_cast<std::size_t>(w));
    auto                       fresh = _core.num_blocks();
    for (std::uint32_t i = 0; i < old; ++i) {
      labels[i]     = _core.label(i);
      labels[w + i] = _core.label(old + i);
    }
    for (auto j = old; j < w; ++j) {
      labels[j]     = fresh++;
      labels[w + j] = _tail == Tail::identity ? labels[j] : fresh++;
    }
    return Partition::from_labels(w, std::move(labels));
  }

  FinitaryPartition fin_identity(CardinalContext const& ctx) {
    return {ctx, Partition(), Tail::identity};
  }

  FinitaryPartition fin_all_singletons(CardinalContext const& ctx) {
    return {ctx, Partition(), Tail::singleton};
  }

  FinitaryPartition fin_cofinite_identity(CardinalContext const& ctx, std::uint32_t f) {
    return {ctx, all_singletons(f), Tail::identity};
  }

  FinitaryPartition fin_finite_identity(CardinalContext const& ctx, std::uint32_t y) {
    return {ctx, identity(y), Tail::singleton};
  }

  FinitaryPartition compose_fin(FinitaryPartition const& a, FinitaryPartition const& b) {
    check_context(a, b);
    auto const w    = std::max(a.window(), b.window());
    auto const tail = (a.tail() == Tail::identity && b.tail() == Tail::identity)
                          ? Tail::identity
                          : Tail::singleton;
    // Beyond the window the product of the tails is the tail of the
    // product, so composing the widened cores is exact.
    return {a.context(), compose(a.widened(w), b.widened(w)), tail};
  }

  FinStats fin_stats(FinitaryPartition const& a) {
    FinStats s;
    s.window = stats(a.core());
    s.rank   = a.tail() == Tail::identity ? a.context().x() : Cardinal::fin(s.window.rank);
    return s;
  }

  PairProfile pair_profile(FinitaryPartition const& a, FinitaryPartition const& b) {
    check_context(a, b);
    auto const  w  = std::max(a.window(), b.window());
    auto const  wa = a.widened(w);
    auto const  wb = b.widened(w);
    auto const  sd = sym_diff_counts(wa, wb);
    PairProfile p;
    p.context   = a.context();
    p.equal     = a == b;
    p.rank_a    = fin_stats(a).rank;
    p.rank_b    = fin_stats(b).rank;
    auto const same_tail = a.tail() == b.tail();
    // Both tails have singleton traces, so only the window contributes to
    // the trace differences; differing tails differ in every tail block.
    p.d_total   = same_tail ? Cardinal::fin(sd.d_total) : a.context().x();
    p.d_over    = Cardinal::fin(sd.d_over);
    p.d_under   = Cardinal::fin(sd.d_under);
    p.h_related = same_tail && green(wa, wb).h;
    if (p.h_related && a.tail() == Tail::singleton) {
      p.phi_type = phi_cycle_type(wa, wb);
    }
    return p;
  }

  std::optional<std::string> profile_violation(PairProfile const& p) {
    auto const& x = p.context.x();
    auto const  zero = Cardinal::fin(0);
    auto const  two  = Cardinal::fin(2);
    for (auto const* c : {&p.rank_a, &p.rank_b, &p.d_total, &p.d_over, &p.d_under}) {
      if (x < *c) {
        return "value " + to_string(*c) + " exceeds |X| = " + to_string(x);
      }
    }
    if (p.equal != (p.d_total == zero)) {
      return "equal pairs are exactly those with d_total = 0";
    }
    if (p.equal) {
      if (p.d_over != zero || p.d_under != zero) {
        return "equal pair with nonzero trace difference";
      }
      if (p.rank_a != p.rank_b) {
        return "equal pair with different ranks";
      }
      if (!p.h_related) {
        return "equal pair must be H-related";
      }
    } else if (p.d_total < two) {
      return "distinct partitions differ in at least two blocks";
    }
    for (auto const* d : {&p.d_over, &p.d_under}) {
      if (*d != zero && *d < two) {
        return "distinct trace partitions differ in at least two blocks";
      }
      if (p.d_total < *d) {
        return "trace difference exceeds d_total";
      }
    }
    auto const bound = add(add(p.d_over, p.d_under), times(3, add(p.rank_a, p.rank_b)));
    if (bound < p.d_total) {
      return "d_total exceeds d_over + d_under + 3 rank_a + 3 rank_b";
    }
    if (p.rank_a != p.rank_b) {
      auto const hi = std::max(p.rank_a, p.rank_b);
      auto const lo = std::min(p.rank_a, p.rank_b);
      auto const gap = hi.is_infinite() ? hi : Cardinal::fin(hi.value() - lo.value());
      if (p.d_total < gap) {
        return "rank difference exceeds d_total";
      }
    }
    if (p.h_related) {
      if (p.d_over != zero || p.d_under != zero) {
        return "H-related pair with nonzero trace difference";
      }
      if (p.rank_a != p.rank_b) {
        return "H-related pair with different ranks";
      }
      if (times(2, p.rank_a) < p.d_total) {
        return "H-related pair differing in more than 2 rank blocks";
      }
    }
    bool const want_phi = p.h_related && p.rank_a.is_finite();
    if (want_phi != p.phi_type.has_value()) {
      return "phi_type is present exactly for H-related pairs of finite rank";
    }
    if (p.phi_type) {
      auto const sum = std::accumulate(p.phi_type->begin(), p.phi_type->end(), std::uint64_t{0});
      if (sum != p.rank_a.value()) {
        return "phi_type does not have degree rank_a";
      }
      if (!std::is_sorted(p.phi_type->rbegin(), p.phi_type->rend())
          || std::find(p.phi_type->begin(), p.phi_type->end(), 0u) != p.phi_type->end()) {
        return "phi_type must be a non-increasing list of positive lengths";
      }
      if (is_identity(*p.phi_type) != p.equal) {
        return "H-related pairs of finite rank are equal exactly when phi is trivial";
      }
    }
    return std::nullopt;
  }

  PairProfile synth_profile(PairProfile const& p) {
    if (auto why = profile_violation(p)) {
      throw InvalidArgument("invalid pair profile: " + *why);
    }
    return p;
  }

  PairProfile swapped(PairProfile const& p) {
    // φ(β, α) = φ(α, β)⁻¹ has the same cycle type.
    auto q = p;
    std::swap(q.rank_a, q.rank_b);
    return q;
  }

  std::string to_string(PairProfile const& p) {
    std::string s = "profile(X=" + to_string(p.context.x());
    s += p.equal ? ", equal" : "";
    s += ", rank_a=" + to_string(p.rank_a) + ", rank_b=" + to_string(p.rank_b);
    s += p.h_related ? ", H" : "";
    if (p.phi_type) {
      s += ", phi=[";
      for (std::size_t i = 0; i < p.phi_type->size(); ++i) {
        s += (i ? "," : "") + std::to_string((*p.phi_type)[i]);
      }
      s += "]";
    }
    s += ", d=" + to_string(p.d_total) + ", d_over=" + to_string(p.d_over)
         + ", d_under=" + to_string(p.d_under) + ")";
    return s;
  }

  std::string to_string(FinitaryPartition const& a) {
    return to_string(a.core()) + " | tail="
           + (a.tail() == Tail::identity ? "identity" : "singleton")
           + " | X=" + to_string(a.context().x());
  }

  std::ostream& operator<<(std::ostream& os, FinitaryPartition const& a) {
    return os << to_string(a);
  }

  namespace {
    std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }
  }  // namespace

  FinitaryPartition parse_finitary(std::string_view text) {
    auto bad = [&](std::string const& why) -> void {
      throw InvalidArgument("finitary partition '" + std::string(text) + "': " + why);
    };
    auto const p1 = text.find('|');
    auto const p2 = p1 == std::string_view::npos ? p1 : text.find('|', p1 + 1);
    if (p2 == std::string_view::npos || text.find('|', p2 + 1) != std::string_view::npos) {
      bad("expected '<core> | tail=... | X=...'");
    }
    auto const core_text = trim(text.substr(0, p1));
    auto const tail_text = trim(text.substr(p1 + 1, p2 - p1 - 1));
    auto const x_text    = trim(text.substr(p2 + 1));
    Tail       tail      = Tail::identity;
    if (tail_text == "tail=identity") {
      tail = Tail::identity;
    } else if (tail_text == "tail=singleton") {
      tail = Tail::singleton;
    } else {
      bad("expected tail=identity or tail=singleton");
    }
    if (!x_text.starts_with("X=")) {
      bad("expected X=<cardinal>");
    }
    CardinalContext ctx(parse_cardinal(x_text.substr(2)));
    return {ctx, parse_partition(core_text), tail};
  }

}  // namespace dmcong
