#include "dmcong/cardinal.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include "dmcong/error.hpp"

namespace dmcong {

  std::strong_ordering compare(Cardinal const& c1, Cardinal const& c2) noexcept {
    return c1 <=> c2;
  }

  Cardinal successor(Cardinal const& c) {
    if (c.is_finite()) {
      if (c.value() == std::numeric_limits<std::uint64_t>::max()) {
        throw InvalidArgument("successor: finite cardinal overflow");
      }
      return Cardinal::fin(c.value() + 1);
    }
    auto idx = c.index();
    if (idx.b == std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidArgument("successor: ordinal index overflow");
    }
    ++idx.b;
    return Cardinal::aleph(idx);
  }

  Cardinal cofinality(Cardinal const& c) {
    if (c == Cardinal::fin(0)) {
      throw InvalidArgument("cofinality: undefined for 0");
    }
    if (c.is_limit()) {
      return aleph0;
    }
    return Cardinal::fin(1);
  }

  std::vector<Cardinal> interval(Cardinal const& lo,
                                 Cardinal const& hi,
                                 IntervalFilter  filter) {
    std::vector<Cardinal> out;
    if (hi < lo) {
      return out;
    }
    auto push_alephs = [&out](Cardinal from, Cardinal const& to) {
      if (from.index().a != to.index().a) {
        throw InvalidArgument("interval: infinitely many cardinals between "
                              + to_string(from) + " and " + to_string(to));
      }
      for (auto b = from.index().b;; ++b) {
        out.push_back(Cardinal::aleph(from.index().a, b));
        if (b == to.index().b) {
          break;
        }
      }
    };
    if (filter == IntervalFilter::all) {
      if (hi.is_finite()) {
        for (auto k = lo.value();; ++k) {
          out.push_back(Cardinal::fin(k));
          if (k == hi.value()) {
            break;
          }
        }
        return out;
      }
      if (lo.is_finite()) {
        throw InvalidArgument("interval: [" + to_string(lo) + ", " + to_string(hi)
                              + "] contains infinitely many naturals");
      }
      push_alephs(lo, hi);
      return out;
    }
    auto const one = Cardinal::fin(1);
    if (lo <= one && one <= hi) {
      out.push_back(one);
    }
    if (hi.is_infinite()) {
      push_alephs(lo.is_finite() ? aleph0 : lo, hi);
    }
    return out;
  }

  std::string to_string(OrdIndex const& idx) {
    if (idx.a == 0) {
      return std::to_string(idx.b);
    }
    std::string s = "w";
    if (idx.a > 1) {
      s += "*" + std::to_string(idx.a);
    }
    if (idx.b > 0) {
      s += "+" + std::to_string(idx.b);
    }
    return s;
  }

  std::string to_string(Cardinal const& c) {
    if (c.is_finite()) {
      return std::to_string(c.value());
    }
    return "aleph_" + to_string(c.index());
  }

  std::ostream& operator<<(std::ostream& os, Cardinal const& c) {
    return os << to_string(c);
  }

  namespace {
    // Canonical digit string: no sign, no leading zeros (except "0").
    template <typename T>
    bool take_number(std::string_view& s, T& out) {
      std::size_t len = 0;
      while (len < s.size() && s[len] >= '0' && s[len] <= '9') {
        ++len;
      }
      if (len == 0 || (len > 1 && s[0] == '0')) {
        return false;
      }
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + len, out);
      if (ec != std::errc{} || ptr != s.data() + len) {
        return false;
      }
      s.remove_prefix(len);
      return true;
    }

    [[noreturn]] void bad(std::string_view text) {
      throw InvalidArgument("cannot parse cardinal '" + std::string(text) + "'");
    }
  }  // namespace

  Cardinal parse_cardinal(std::string_view text) {
    auto s = text;
    if (s.empty()) {
      bad(text);
    }
    if (s.front() >= '0' && s.front() <= '9') {
      std::uint64_t k = 0;
      if (!take_number(s, k) || !s.empty()) {
        bad(text);
      }
      return Cardinal::fin(k);
    }
    constexpr std::string_view prefix = "aleph_";
    if (!s.starts_with(prefix)) {
      bad(text);
    }
    s.remove_prefix(prefix.size());
    OrdIndex idx;
    if (!s.empty() && s.front() == 'w') {
      s.remove_prefix(1);
      idx.a = 1;
      if (!s.empty() && s.front() == '*') {
        s.remove_prefix(1);
        if (!take_number(s, idx.a) || idx.a < 2) {
          bad(text);
        }
      }
      if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
        if (!take_number(s, idx.b) || idx.b == 0) {
          bad(text);
        }
      }
    } else if (!take_number(s, idx.b)) {
      bad(text);
    }
    if (!s.empty()) {
      bad(text);
    }
    return Cardinal::aleph(idx);
  }

  CardinalContext::CardinalContext(Cardinal x_card)
      : _x(x_card), _x_plus(x_card) {
    if (!x_card.is_infinite()) {
      throw InvalidArgument("context: |X| must be an aleph, got "
                            + to_string(x_card));
    }
    _x_plus = successor(x_card);
  }

}  // namespace dmcong
