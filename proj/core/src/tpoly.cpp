#include "qchar/tpoly.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <sstream>

namespace qchar {

TPoly::TPoly(long long constant) {
  if (constant != 0) terms_.emplace_back(0, Integer(constant));
}

TPoly TPoly::monomial(int exponent, Integer coeff) {
  TPoly p;
  if (coeff != 0) p.terms_.emplace_back(exponent, std::move(coeff));
  return p;
}

TPoly TPoly::from_terms(std::vector<Term> terms) {
  TPoly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void TPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
    if (out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

bool TPoly::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

int TPoly::min_exponent() const {
  if (terms_.empty()) throw InvalidArgument("min_exponent of zero polynomial");
  return terms_.front().first;
}

int TPoly::max_exponent() const {
  if (terms_.empty()) throw InvalidArgument("max_exponent of zero polynomial");
  return terms_.back().first;
}

Integer TPoly::coefficient(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return 0;
}

Integer TPoly::eval_at_one() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

namespace {

template <bool Subtract>
void merge_into(std::vector<TPoly::Term>& lhs, const std::vector<TPoly::Term>& rhs) {
  if (rhs.empty()) return;
  // Fast path: single term landing on an existing exponent.
  if (rhs.size() == 1) {
    const auto& [e, c] = rhs[0];
    auto it = std::lower_bound(lhs.begin(), lhs.end(), e,
                               [](const TPoly::Term& t, int x) { return t.first < x; });
    if (it != lhs.end() && it->first == e) {
      if constexpr (Subtract) it->second -= c; else it->second += c;
      if (it->second == 0) lhs.erase(it);
    } else {
      if constexpr (Subtract) lhs.insert(it, {e, -c}); else lhs.insert(it, {e, c});
    }
    return;
  }
  std::vector<TPoly::Term> out;
  out.reserve(lhs.size() + rhs.size());
  auto a = lhs.begin();
  auto b = rhs.begin();
  while (a != lhs.end() || b != rhs.end()) {
    if (b == rhs.end() || (a != lhs.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == lhs.end() || b->first < a->first) {
      if constexpr (Subtract) out.emplace_back(b->first, -b->second); else out.push_back(*b);
      ++b;
    } else {
      Integer c = std::move(a->second);
      if constexpr (Subtract) c -= b->second; else c += b->second;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  lhs = std::move(out);
}

}  // namespace

TPoly& TPoly::operator+=(const TPoly& other) {
  merge_into<false>(terms_, other.terms_);
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& other) {
  merge_into<true>(terms_, other.terms_);
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_one()) return a;
  if (a.is_one()) return b;
  std::vector<TPoly::Term> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) raw.emplace_back(ea + eb, ca * cb);
  return TPoly::from_terms(std::move(raw));
}

TPoly& TPoly::operator*=(const TPoly& other) {
  *this = *this * other;
  return *this;
}

TPoly& TPoly::operator*=(const Integer& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= scalar;
  return *this;
}

TPoly TPoly::operator-() const {
  TPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

TPoly TPoly::shifted(int k) const {
  TPoly p = *this;
  for (auto& t : p.terms_) t.first += k;
  return p;
}

TPoly TPoly::bar() const {
  TPoly p;
  p.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) p.terms_.emplace_back(-it->first, it->second);
  return p;
}

TPoly TPoly::negative_part() const {
  TPoly p;
  for (const auto& t : terms_)
    if (t.first < 0) p.terms_.push_back(t);
  return p;
}

bool TPoly::only_even_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.first >= 0 && t.first % 2 == 0; });
}

bool TPoly::nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second > 0; });
}

std::string TPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << 't';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TPoly& p) { return os << p.to_string(); }

TPoly TPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto read_int = [&](bool allow_sign) -> std::string {
    std::size_t start = pos;
    if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!terms.empty()) {
      throw ParseError("expected sign in polynomial '" + std::string(text) + "'");
    }
    Integer coeff = 1;
    std::string digits = read_int(false);
    bool has_digits = !digits.empty();
    if (has_digits) coeff = Integer(digits);
    int exponent = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_digits) throw ParseError("dangling '*' in polynomial");
      ++pos;
    }
    if (pos < s.size() && s[pos] == 't') {
      ++pos;
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::string e = read_int(true);
        if (e.empty() || e == "-" || e == "+") throw ParseError("bad exponent in polynomial");
        exponent = std::stoi(e);
      }
    } else if (!has_digits) {
      throw ParseError("bad polynomial term in '" + std::string(text) + "'");
    }
    terms.emplace_back(exponent, sign * coeff);
  }
  return from_terms(std::move(terms));
}

TPoly t_binomial(int n, int r) {
  if (n < 0) throw InvalidArgument("t_binomial: negative n");
  if (r < 0 || r > n) return {};
  return expansion_weight(n, r).shifted(-r * (n - r));
}

namespace {

// Gaussian binomials in q = t^2 via G(n,r) = G(n-1,r-1) + q^r G(n-1,r).
std::vector<std::vector<TPoly>> build_weights(int max_n) {
  std::vector<std::vector<TPoly>> g(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    g[n].resize(n + 1);
    g[n][0] = TPoly(1);
    g[n][n] = TPoly(1);
    for (int r = 1; r < n; ++r) g[n][r] = g[n - 1][r - 1] + g[n - 1][r].shifted(2 * r);
  }
  return g;
}

constexpr int kCachedWeights = 64;

}  // namespace

const TPoly& expansion_weight(int n, int r) {
  static const std::vector<std::vector<TPoly>> table = build_weights(kCachedWeights);
  static const TPoly zero;
  if (r < 0 || r > n || n < 0) return zero;
  if (n <= kCachedWeights) return table[n][r];
  thread_local std::map<std::pair<int, int>, TPoly> extra;
  auto key = std::make_pair(n, r);
  auto it = extra.find(key);
  if (it != extra.end()) return it->second;
  auto big = build_weights(n);
  return extra.emplace(key, big[n][r]).first->second;
}

}  // namespace qchar
