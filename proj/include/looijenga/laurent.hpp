#pragma once

// Exact Laurent polynomials in q^{1/2} over arbitrary-precision rationals.
// Exponents are stored in half-units: entry e stands for q^{e/2}, so the
// whole ring is Z[q^{1/2}, q^{-1/2}] with mpq_class coefficients. All
// q-combinatorics below use the symmetric convention [n]_q = q^{n/2} - q^{-n/2}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace looijenga {

using Rat = mpq_class;
using Int = mpz_class;

class LaurentQ {
public:
  // terms sorted by ascending half-exponent, no zero coefficients
  using Term = std::pair<long, Rat>;

  LaurentQ() = default;
  LaurentQ(long n) { if (n != 0) terms_.push_back({0, Rat(n)}); }
  LaurentQ(const Rat& c) { if (c != 0) terms_.push_back({0, c}); }

  static LaurentQ monomial(const Rat& c, long half_exp) {
    LaurentQ r;
    if (c != 0) r.terms_.push_back({half_exp, c});
    return r;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long min_exp() const { return terms_.front().first; }   // valid if nonzero
  long max_exp() const { return terms_.back().first; }

  Rat coeff(long half_exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), half_exp,
                               [](const Term& t, long e) { return t.first < e; });
    if (it != terms_.end() && it->first == half_exp) return it->second;
    return Rat(0);
  }

  bool operator==(const LaurentQ& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentQ& o) const { return !(*this == o); }

  LaurentQ operator-() const {
    LaurentQ r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend LaurentQ operator+(const LaurentQ& a, const LaurentQ& b) {
    LaurentQ r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        r.terms_.push_back(*ib++);
      } else {
        Rat c = ia->second + ib->second;
        if (c != 0) r.terms_.push_back({ia->first, c});
        ++ia; ++ib;
      }
    }
    return r;
  }
  friend LaurentQ operator-(const LaurentQ& a, const LaurentQ& b) { return a + (-b); }

  friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
    if (a.is_zero() || b.is_zero()) return LaurentQ();
    // dense accumulation over the exponent window
    long lo = a.min_exp() + b.min_exp();
    long hi = a.max_exp() + b.max_exp();
    std::vector<Rat> acc(static_cast<size_t>(hi - lo + 1), Rat(0));
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        acc[static_cast<size_t>(ta.first + tb.first - lo)] += ta.second * tb.second;
    LaurentQ r;
    for (size_t i = 0; i < acc.size(); ++i)
      if (acc[i] != 0) r.terms_.push_back({lo + static_cast<long>(i), acc[i]});
    return r;
  }

  LaurentQ& operator+=(const LaurentQ& o) { *this = *this + o; return *this; }
  LaurentQ& operator-=(const LaurentQ& o) { *this = *this - o; return *this; }
  LaurentQ& operator*=(const LaurentQ& o) { *this = *this * o; return *this; }

  friend LaurentQ operator*(const Rat& c, const LaurentQ& a) {
    if (c == 0) return LaurentQ();
    LaurentQ r = a;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  LaurentQ shifted(long half_exp) const {  // multiply by q^{half_exp/2}
    LaurentQ r = *this;
    for (auto& t : r.terms_) t.first += half_exp;
    return r;
  }

  LaurentQ pow(unsigned long n) const {
    LaurentQ r(1), b = *this;
    while (n) {
      if (n & 1) r *= b;
      b = (n >>= 1) ? b * b : b;
    }
    return r;
  }

  // q -> q^k on exponents (substitute_qk); k >= 1
  LaurentQ substitute_qk(long k) const {
    if (k < 1) throw std::invalid_argument("substitute_qk: k must be >= 1");
    LaurentQ r = *this;
    for (auto& t : r.terms_) t.first *= k;
    return r;
  }

  // q -> 1/q
  LaurentQ invert_q() const {
    LaurentQ r;
    r.terms_.assign(terms_.rbegin(), terms_.rend());
    for (auto& t : r.terms_) t.first = -t.first;
    return r;
  }

  bool symmetric() const { return *this == invert_q(); }

  Rat eval_q1() const {  // value at q = 1 (sum of coefficients)
    Rat s(0);
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  // value at q^{1/2} = -1
  Rat eval_umin1() const {
    Rat s(0);
    for (const auto& t : terms_)
      s += ((t.first % 2) != 0) ? -t.second : t.second;
    return s;
  }

  bool integer_coeffs() const {
    for (const auto& t : terms_)
      if (t.second.get_den() != 1) return false;
    return true;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Rat& c = it->second;
      if (!first) os << (c >= 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      Rat a = abs(c);
      long e = it->first;
      if (a != 1 || e == 0) os << a.get_str();
      if (e != 0) {
        if (a != 1) os << "*";
        os << "q";
        if (e != 2) {
          os << "^";
          if (e % 2 == 0) os << (e / 2);
          else os << "(" << e << "/2)";
        }
      }
      first = false;
    }
    return os.str();
  }

  // canonical JSON object {"half_exponent": "rational"} ordered by exponent
  std::string json() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& t : terms_) {
      if (!first) os << ",";
      os << "\"" << t.first << "\":\"" << t.second.get_str() << "\"";
      first = false;
    }
    os << "}";
    return os.str();
  }

private:
  std::vector<Term> terms_;
};

struct NonExactDivision : std::runtime_error {
  LaurentQ remainder;
  explicit NonExactDivision(LaurentQ rem)
      : std::runtime_error("non-exact Laurent division"), remainder(std::move(rem)) {}
};

// exact division a / b; throws NonExactDivision (with remainder) if not exact
inline LaurentQ exact_div(const LaurentQ& a, const LaurentQ& b) {
  if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero");
  if (a.is_zero()) return LaurentQ();
  // long division from the top; if a = b*c then every quotient exponent lies in
  // [a.min - b.min, a.max - b.max], which bounds the loop
  std::map<long, Rat> rem;
  for (const auto& t : a.terms()) rem[t.first] = t.second;
  const auto& bt = b.terms();
  const long blead = b.max_exp();
  const Rat& bc = bt.back().second;
  const long emin = a.min_exp() - b.min_exp();
  LaurentQ q;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    long e = top->first - blead;
    if (e < emin) break;  // cannot be cleared by an exact quotient
    Rat c = top->second / bc;
    q += LaurentQ::monomial(c, e);
    for (const auto& t : bt) {
      long ee = t.first + e;
      auto it = rem.find(ee);
      Rat nc = (it == rem.end() ? Rat(0) : it->second) - c * t.second;
      if (nc == 0) { if (it != rem.end()) rem.erase(it); }
      else rem[ee] = nc;
    }
  }
  if (!rem.empty()) {
    LaurentQ r;
    for (const auto& t : rem) r += LaurentQ::monomial(t.second, t.first);
    throw NonExactDivision(r);
  }
  return q;
}

inline std::optional<LaurentQ> try_exact_div(const LaurentQ& a, const LaurentQ& b) {
  try { return exact_div(a, b); } catch (const NonExactDivision&) { return std::nullopt; }
}

// ---- q-combinatorics -------------------------------------------------------

// [n]_q = q^{n/2} - q^{-n/2}; [-n]_q = -[n]_q, [0]_q = 0
inline LaurentQ q_int(long n) {
  if (n == 0) return LaurentQ();
  return LaurentQ::monomial(1, n) - LaurentQ::monomial(1, -n);
}

inline LaurentQ q_factorial(long n) {
  if (n < 0) throw std::invalid_argument("q_factorial: n < 0");
  LaurentQ r(1);
  for (long j = 1; j <= n; ++j) r *= q_int(j);
  return r;
}

// Gaussian binomial [n choose k]_q in the symmetric convention; 0 outside range
inline LaurentQ q_binomial(long n, long k) {
  if (k < 0 || k > n) return LaurentQ();
  k = std::min(k, n - k);
  LaurentQ num(1), den(1);
  for (long j = 1; j <= k; ++j) {
    num *= q_int(n - k + j);
    den *= q_int(j);
  }
  return exact_div(num, den);
}

// (x; q)_n = prod_{j=0}^{n-1} (1 - x q^j)
inline LaurentQ q_pochhammer(const LaurentQ& x, long n) {
  if (n < 0) throw std::invalid_argument("q_pochhammer: n < 0");
  LaurentQ r(1);
  for (long j = 0; j < n; ++j)
    r *= (LaurentQ(1) - x.shifted(2 * j));
  return r;
}

// classical Pochhammer (a)_n = a(a+1)...(a+n-1)
inline Rat pochhammer(const Rat& a, long n) {
  Rat r(1);
  for (long j = 0; j < n; ++j) r *= (a + j);
  return r;
}

// ---- number theory ---------------------------------------------------------

inline int mobius(long k) {
  if (k < 1) throw std::invalid_argument("mobius: k < 1");
  int m = 1;
  for (long p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      k /= p;
      if (k % p == 0) return 0;
      m = -m;
    }
  }
  if (k > 1) m = -m;
  return m;
}

inline std::vector<std::pair<long, int>> divisors_with_mobius(long n) {
  if (n < 1) throw std::invalid_argument("divisors_with_mobius: n < 1");
  std::vector<std::pair<long, int>> out;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back({k, mobius(k)});
  return out;
}

// ---- dense integer polynomials in u = q^{1/2} (gcd, cyclotomics) -----------

namespace detail {

using ZPoly = std::vector<Int>;  // coefficients, lowest degree first

inline void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  zp_trim(r);
  return r;
}

// exact division in Z[u]; caller guarantees divisibility
inline ZPoly zp_div_exact(ZPoly a, const ZPoly& b) {
  zp_trim(a);
  if (a.empty()) return {};
  const long db = static_cast<long>(b.size()) - 1;
  ZPoly q(a.size() - b.size() + 1, Int(0));
  for (long i = static_cast<long>(a.size()) - 1; i >= db; --i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    Int c = a[static_cast<size_t>(i)] / b.back();
    q[static_cast<size_t>(i - db)] = c;
    for (long j = 0; j <= db; ++j)
      a[static_cast<size_t>(i - db + j)] -= c * b[static_cast<size_t>(j)];
  }
  return q;
}

inline Int zp_content(const ZPoly& p) {
  Int g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// primitive polynomial remainder sequence gcd in Z[u]
inline ZPoly zp_gcd(ZPoly a, ZPoly b) {
  zp_trim(a); zp_trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  auto prim = [](ZPoly& p) {
    Int c = zp_content(p);
    if (c > 1) for (auto& x : p) x /= c;
    if (!p.empty() && p.back() < 0) for (auto& x : p) x = -x;
  };
  prim(a); prim(b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
    if (da < db) { std::swap(a, b); std::swap(da, db); }
    Int lb = b.back();
    ZPoly r = a;
    for (long i = da; i >= db; --i) {
      if (r[i] == 0) continue;
      Int c = r[i];
      for (auto& x : r) x *= lb;
      for (long j = 0; j <= db; ++j)
        r[i - db + j] -= c * b[j];
      zp_trim(r);
      if (static_cast<long>(r.size()) - 1 < i) i = static_cast<long>(r.size());
    }
    zp_trim(r);
    a = b;
    b = r;
    prim(b);
  }
  return a;
}

// Phi_n(u), the n-th cyclotomic polynomial
inline ZPoly cyclotomic(long n) {
  ZPoly num{Int(1)};
  // Phi_n = prod_{d|n} (u^d - 1)^{mu(n/d)}
  std::vector<ZPoly> dens;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int m = mobius(n / d);
    if (m == 0) continue;
    ZPoly f(static_cast<size_t>(d) + 1, Int(0));
    f[0] = -1; f[static_cast<size_t>(d)] = 1;
    if (m == 1) num = zp_mul(num, f);
    else dens.push_back(f);
  }
  for (const auto& d : dens) num = zp_div_exact(num, d);
  return num;
}

// remainder of a modulo b in Q[u]; b monic-ish (we divide by leading coeff of b)
inline void zp_mod_inplace_q(std::vector<Rat>& a, const ZPoly& b) {
  long db = static_cast<long>(b.size()) - 1;
  while (static_cast<long>(a.size()) - 1 >= db) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (static_cast<long>(a.size()) - 1 < db) break;
    Rat c = a.back() / Rat(b.back());
    long sh = static_cast<long>(a.size()) - 1 - db;
    for (long j = 0; j <= db; ++j)
      a[sh + j] -= c * Rat(b[j]);
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace detail

// reduce f (as polynomial in u after clearing the minimal exponent) modulo Phi_m(u);
// returns true iff the reduction is zero. A Laurent monomial prefactor u^k is a
// unit modulo Phi_m (m >= 1), so it cannot affect vanishing.
inline bool vanishes_mod_cyclotomic(const LaurentQ& f, long m) {
  if (f.is_zero()) return true;
  long lo = f.min_exp();
  std::vector<Rat> a(static_cast<size_t>(f.max_exp() - lo + 1), Rat(0));
  for (const auto& t : f.terms()) a[static_cast<size_t>(t.first - lo)] = t.second;
  auto phi = detail::cyclotomic(m);
  detail::zp_mod_inplace_q(a, phi);
  return a.empty();
}

// d/dq acting on Laurent polynomials of q^{1/2}: (2u)^{-1} d/du
inline LaurentQ dq(const LaurentQ& f) {
  LaurentQ r;
  for (const auto& t : f.terms()) {
    if (t.first == 0) continue;
    r += LaurentQ::monomial(t.second * Rat(t.first) / 2, t.first - 2);
  }
  return r;
}

// numeric verification of the q-Lucas theorem at a primitive d-th root of unity,
// by exact reduction modulo Phi_{2d}(u) with u = q^{1/2}
inline bool q_lucas_check(long n, long m, long d) {
  if (!(n >= m && m >= 0 && d >= 1)) throw std::invalid_argument("q_lucas_check: need n >= m >= 0, d >= 1");
  // lhs: [n m]_q ; rhs: q^{m(m-n)/2} C(floor(n/d),floor(m/d)) [n mod d, m mod d]_q
  LaurentQ lhs = q_binomial(n, m);
  Rat cls(1);
  {
    // classical binomial C(n/d, m/d)
    long N = n / d, K = m / d;
    if (K < 0 || K > N) cls = 0;
    else {
      Int num(1), den(1);
      for (long j = 1; j <= K; ++j) { num *= Int(N - K + j); den *= Int(j); }
      cls = Rat(num) / Rat(den);
    }
  }
  LaurentQ rhs = (cls * q_binomial(n % d, m % d)).shifted(m * (m - n));
  return vanishes_mod_cyclotomic(lhs - rhs, 2 * d);
}

// \partial_q [n m]_q reduced at a primitive d-th root of unity (must vanish when d|m|n);
// returns true iff it vanishes
inline bool q_binomial_derivative_vanishes_at_root(long n, long m, long d) {
  if (!(d >= 1 && m % d == 0 && n % m == 0 && n >= m && m > 0))
    throw std::invalid_argument("q_binomial_derivative: need d | m | n");
  return vanishes_mod_cyclotomic(dq(q_binomial(n, m)), 2 * d);
}

}  // namespace looijenga
