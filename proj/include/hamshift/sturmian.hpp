#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "binary_word.hpp"
#include "connectivity.hpp"

namespace hamshift {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(BigInt numerator, BigInt denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  [[nodiscard]] const BigInt& numerator() const noexcept { return num_; }
  [[nodiscard]] const BigInt& denominator() const noexcept { return den_; }
  [[nodiscard]] std::string str() const { return num_.str() + "/" + den_.str(); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

/// Slope [0; a_1, a_2, ...] given by a finite prefix of its coefficients.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(std::vector<std::uint64_t> coefficients) : a_(std::move(coefficients)) {
    if (a_.empty()) throw std::invalid_argument("continued fraction needs at least one coefficient");
    for (auto c : a_) {
      if (c == 0) throw std::invalid_argument("continued fraction coefficients must be positive");
    }
  }

  /// `pattern` repeated cyclically up to `length` coefficients.
  static ContinuedFraction periodic(const std::vector<std::uint64_t>& pattern, std::size_t length) {
    if (pattern.empty()) throw std::invalid_argument("continued fraction needs at least one coefficient");
    std::vector<std::uint64_t> a(length);
    for (std::size_t t = 0; t < length; ++t) a[t] = pattern[t % pattern.size()];
    return ContinuedFraction(std::move(a));
  }

  /// `prefix` followed by copies of its last coefficient up to `length`.
  static ContinuedFraction repeat_last(std::vector<std::uint64_t> prefix, std::size_t length) {
    if (prefix.empty()) throw std::invalid_argument("continued fraction needs at least one coefficient");
    while (prefix.size() < length) prefix.push_back(prefix.back());
    return ContinuedFraction(std::move(prefix));
  }

  /// [0; 1, 1, 1, ...] with 64 coefficients.
  static ContinuedFraction golden() { return repeat_last({1}, 64); }

  [[nodiscard]] const std::vector<std::uint64_t>& coefficients() const noexcept { return a_; }
  [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }

 private:
  std::vector<std::uint64_t> a_;
};

/// p_t/q_t for t = 1 ... count.
inline std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count) {
  if (count > cf.size()) throw std::invalid_argument("convergents: not enough coefficients");
  std::vector<Rational> out;
  BigInt p_prev = 1, p = 0, q_prev = 0, q = 1;
  for (std::size_t t = 0; t < count; ++t) {
    const BigInt a = cf.coefficients()[t];
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.emplace_back(p, q);
  }
  return out;
}

/// Continued fraction of the frequency of 1 in the standard words of `cf`:
/// [0; a_1 + 1, a_2, ...].
inline ContinuedFraction standard_slope(const ContinuedFraction& cf) {
  std::vector<std::uint64_t> a = cf.coefficients();
  a.front() += 1;
  return ContinuedFraction(std::move(a));
}

/// First standard word of length >= min_length, from s_{-1} = 1, s_0 = 0,
/// s_{t+1} = s_t^{a_{t+1}} s_{t-1}.
inline BinaryWord standard_word(const ContinuedFraction& cf, std::size_t min_length) {
  BinaryWord older = BinaryWord::parse("1");
  BinaryWord cur = BinaryWord::parse("0");
  for (std::size_t t = 0; cur.size() < min_length; ++t) {
    if (t >= cf.size()) throw std::domain_error("insufficient precision");
    BinaryWord next;
    for (std::uint64_t r = 0; r < cf.coefficients()[t]; ++r) next.append(cur);
    next.append(older);
    older = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace detail {
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

/// Lower mechanical word: symbol t is floor((t+1)α + ρ) - floor(tα + ρ).
inline BinaryWord mechanical_word(const Rational& slope, const Rational& intercept, std::size_t length) {
  if (slope.numerator() < 0 || !(slope < Rational(1, 1))) throw std::invalid_argument("slope must lie in [0, 1)");
  // tα + ρ = (t·p·s + r·q) / (q·s); track the remainder modulo q·s.
  const BigInt denom = slope.denominator() * intercept.denominator();
  const BigInt step = slope.numerator() * intercept.denominator();
  BigInt value = intercept.numerator() * slope.denominator();
  BigInt rem = value - detail::floor_div(value, denom) * denom;
  BinaryWord out;
  for (std::size_t t = 0; t < length; ++t) {
    rem += step;
    const bool carry = rem >= denom;
    if (carry) rem -= denom;
    out.push_back(carry);
  }
  return out;
}

/// L_n of the Sturmian subshift with directive coefficients cf, from
/// standard-word windows; the prefix doubles until the set stops growing.
inline FactorSet sturmian_factors(const ContinuedFraction& cf, std::size_t n) {
  if (n == 0) throw std::invalid_argument("factor length must be positive");
  try {
    BinaryWord w = standard_word(cf, std::max<std::size_t>(3 * n, 2));
    FactorSet f = factors(w, n);
    for (;;) {
      BinaryWord longer = standard_word(cf, 2 * w.size());
      FactorSet g = factors(longer, n);
      if (g == f) break;
      w = std::move(longer);
      f = std::move(g);
    }
    if (f.size() != n + 1) throw std::domain_error("not Sturmian at this precision");
    return f;
  } catch (const std::domain_error&) {
    throw std::domain_error("not Sturmian at this precision");
  }
}

/// Length-n factors of the periodic mechanical word of slope p/q, intercept 0.
inline FactorSet periodic_mechanical_factors(const Rational& slope, std::size_t n) {
  const std::size_t q = static_cast<std::size_t>(slope.denominator());
  const BinaryWord w = mechanical_word(slope, Rational(0, 1), q + n - 1);
  FactorSet f(n);
  insert_windows(f, w, 0, q - 1);
  return f;
}

struct MechanicalFactors {
  FactorSet factors;
  std::size_t convergent_index = 0;  // 1-based
  Rational slope;
};

/// Factors from the convergents of `slope` (a slope, not a directive
/// sequence): the first convergent whose factor set equals the next one's.
inline MechanicalFactors mechanical_factors(const ContinuedFraction& slope, std::size_t n) {
  if (n == 0) throw std::invalid_argument("factor length must be positive");
  const auto conv = convergents(slope, slope.size());
  for (std::size_t t = 0; t + 1 < conv.size(); ++t) {
    if (conv[t + 1].denominator() > BigInt(1) << 40) break;
    if (!(conv[t] < Rational(1, 1))) continue;
    FactorSet a = periodic_mechanical_factors(conv[t], n);
    if (a == periodic_mechanical_factors(conv[t + 1], n)) return {std::move(a), t + 1, conv[t]};
  }
  throw std::domain_error("not Sturmian at this precision");
}

enum class EdgeClass { interior_swap, first_symbol, last_one, last_two, other };

inline constexpr std::array<EdgeClass, 5> all_edge_classes{EdgeClass::interior_swap, EdgeClass::first_symbol,
                                                           EdgeClass::last_one, EdgeClass::last_two,
                                                           EdgeClass::other};

inline std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::interior_swap: return "interior_swap";
    case EdgeClass::first_symbol: return "first_symbol";
    case EdgeClass::last_one: return "last_one";
    case EdgeClass::last_two: return "last_two";
    case EdgeClass::other: return "other";
  }
  return "other";
}

/// Which kind of move turns u into v, for a 2-change edge.
inline EdgeClass classify_edge(const BinaryWord& u, const BinaryWord& v) {
  if (u.size() != v.size()) throw std::invalid_argument("unequal lengths");
  const std::size_t n = u.size();
  std::vector<std::size_t> diff;
  for_each_difference(u, v, [&](std::size_t p) { diff.push_back(p); });
  if (diff.empty() || diff.back() - diff.front() + 1 > 2) throw std::invalid_argument("not a 2-change pair");
  if (diff.size() == 1) {
    if (diff[0] == 0) return EdgeClass::first_symbol;
    if (diff[0] == n - 1) return EdgeClass::last_one;
    return EdgeClass::other;
  }
  // two adjacent positions
  const std::size_t p = diff[0];
  if (p + 2 == n) return EdgeClass::last_two;
  if (p >= 1 && u[p] != u[p + 1]) return EdgeClass::interior_swap;
  return EdgeClass::other;
}

struct SturmianConnectivity {
  bool connected = false;
  std::size_t components = 0;
};

/// Whether the 2-change graph of the Sturmian L_n is connected.
inline SturmianConnectivity verify_two_change_connectivity(const ContinuedFraction& cf, std::size_t n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const ChangeGraph g = build_change_graph(sturmian_factors(cf, n), 2);
  const std::size_t c = connected_components(g).size();
  return {c == 1, c};
}

struct EdgeClassStats {
  std::array<std::size_t, 5> histogram{};  // indexed like all_edge_classes
  /// Components of the graph keeping only the four proof move kinds.
  std::size_t restricted_components = 0;
};

inline EdgeClassStats classify_edges(const ChangeGraph& g) {
  EdgeClassStats s;
  DisjointSet ds(g.nodes.size());
  std::size_t comps = g.nodes.size();
  for (auto [a, b] : g.edges) {
    const EdgeClass c = classify_edge(g.nodes[a], g.nodes[b]);
    ++s.histogram[static_cast<std::size_t>(c)];
    if (c != EdgeClass::other && ds.unite(a, b)) --comps;
  }
  s.restricted_components = comps;
  return s;
}

/// Whether the numbers of ones of any two members differ by at most one.
inline bool is_balanced(const FactorSet& f) {
  if (f.empty()) return true;
  std::size_t lo = f.length(), hi = 0;
  for (const auto& w : f) {
    lo = std::min(lo, w.count_ones());
    hi = std::max(hi, w.count_ones());
  }
  return hi - lo <= 1;
}

}  // namespace hamshift
