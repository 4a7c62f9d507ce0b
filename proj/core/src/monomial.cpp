#include "qchar/monomial.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

namespace qchar {

namespace {

std::int16_t checked16(long v) {
  if (v < std::numeric_limits<std::int16_t>::min() || v > std::numeric_limits<std::int16_t>::max())
    throw std::overflow_error("monomial exponent out of 16-bit range");
  return static_cast<std::int16_t>(v);
}

std::vector<Factor> canonicalize(std::vector<Factor> fs) {
  std::sort(fs.begin(), fs.end(), factor_key_less);
  std::vector<Factor> out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    if (!out.empty() && out.back().node == f.node && out.back().index == f.index) {
      out.back().exp = checked16(long{out.back().exp} + f.exp);
    } else {
      out.push_back(f);
    }
    if (out.back().exp == 0) out.pop_back();
  }
  return out;
}

// Adds delta to the entry (node, index) of a canonical sparse vector.
void bump(std::vector<Factor>& fs, int node, int index, int delta) {
  if (delta == 0) return;
  Factor key{index, static_cast<std::int16_t>(node), 0};
  auto it = std::lower_bound(fs.begin(), fs.end(), key, factor_key_less);
  if (it != fs.end() && it->node == node && it->index == index) {
    long e = long{it->exp} + delta;
    if (e == 0) fs.erase(it);
    else it->exp = checked16(e);
  } else {
    key.exp = checked16(delta);
    fs.insert(it, key);
  }
}

int lookup(const std::vector<Factor>& fs, int node, int index) {
  Factor key{index, static_cast<std::int16_t>(node), 0};
  auto it = std::lower_bound(fs.begin(), fs.end(), key, factor_key_less);
  if (it != fs.end() && it->node == node && it->index == index) return it->exp;
  return 0;
}

std::size_t hash_factors(const std::vector<Factor>& fs) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : fs) {
    std::uint64_t x = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.index)) << 32) |
                      (static_cast<std::uint64_t>(static_cast<std::uint16_t>(f.node)) << 16) |
                      static_cast<std::uint16_t>(f.exp);
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

bool factors_less(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Factor& x, const Factor& y) {
    if (x.node != y.node) return x.node < y.node;
    if (x.index != y.index) return x.index < y.index;
    return x.exp < y.exp;
  });
}

// Parses "<Letter>[i,k]^e" tokens separated by whitespace.
std::vector<Factor> parse_factors(std::string_view text, char letter) {
  std::vector<Factor> out;
  std::string s(text);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto read_int = [&]() -> long {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw ParseError("expected integer in '" + s + "'");
    return std::stol(s.substr(start, pos - start));
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) throw ParseError(std::string("expected '") + c + "' in '" + s + "'");
    ++pos;
  };
  skip_ws();
  if (s.substr(pos) == "1") return out;
  while (true) {
    skip_ws();
    if (pos >= s.size()) break;
    if (s[pos] != letter) throw ParseError(std::string("expected '") + letter + "[' in '" + s + "'");
    ++pos;
    expect('[');
    long node = read_int();
    expect(',');
    long index = read_int();
    expect(']');
    long e = 1;
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      e = read_int();
    }
    if (node < 1 || node > std::numeric_limits<std::int16_t>::max()) throw ParseError("node out of range");
    out.push_back(Factor{static_cast<std::int32_t>(index), static_cast<std::int16_t>(node), checked16(e)});
  }
  return out;
}

std::string render(const std::vector<Factor>& fs, char letter) {
  if (fs.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& f : fs) {
    if (!first) os << ' ';
    first = false;
    os << letter << '[' << f.node << ',' << f.index << ']';
    if (f.exp != 1) os << '^' << f.exp;
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::y(int node, int index, int exp) {
  Monomial m;
  m.multiply_y(node, index, exp);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  Monomial m;
  m.factors_ = canonicalize(std::move(factors));
  return m;
}

Monomial Monomial::parse(std::string_view text) { return from_factors(parse_factors(text, 'Y')); }

int Monomial::exponent(int node, int index) const { return lookup(factors_, node, index); }

bool Monomial::is_i_dominant(int node) const {
  return std::none_of(factors_.begin(), factors_.end(),
                      [node](const Factor& f) { return f.node == node && f.exp < 0; });
}

bool Monomial::is_l_dominant() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.exp > 0; });
}

Monomial& Monomial::operator*=(const Monomial& other) {
  if (other.factors_.empty()) return *this;
  std::vector<Factor> merged;
  merged.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && factor_key_less(*a, *b))) {
      merged.push_back(*a++);
    } else if (a == factors_.end() || factor_key_less(*b, *a)) {
      merged.push_back(*b++);
    } else {
      long e = long{a->exp} + b->exp;
      if (e != 0) merged.push_back(Factor{a->index, a->node, checked16(e)});
      ++a;
      ++b;
    }
  }
  factors_ = std::move(merged);
  return *this;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.exp = checked16(-long{f.exp});
  return m;
}

void Monomial::multiply_y(int node, int index, int delta) { bump(factors_, node, index, delta); }

Monomial Monomial::shifted(int s) const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.index += s;
  return m;
}

std::string Monomial::to_string() const { return render(factors_, 'Y'); }

std::size_t Monomial::hash() const noexcept { return hash_factors(factors_); }

bool operator<(const Monomial& a, const Monomial& b) { return factors_less(a.factors_, b.factors_); }

std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }

Monomial a_monomial(const DynkinData& data, int node, int index) {
  Monomial m;
  apply_a_inverse(data, m, node, index, -1);
  return m;
}

void apply_a_inverse(const DynkinData& data, Monomial& m, int node, int index, int r) {
  m.multiply_y(node, index + 1, -r);
  m.multiply_y(node, index - 1, -r);
  for (int j : data.neighbors(node)) m.multiply_y(j, index, r);
}

Weight weight_of(const DynkinData& data, const Monomial& m) {
  Weight w = Weight::zero(data.rank());
  for (const auto& f : m.factors()) {
    if (f.node < 1 || f.node > data.rank()) throw InvalidArgument("monomial node out of range");
    w.coeffs[f.node - 1] += f.exp;
  }
  return w;
}

// ---------------------------------------------------------------- VVector

VVector VVector::from_entries(std::vector<Factor> entries) {
  VVector v;
  v.entries_ = canonicalize(std::move(entries));
  for (const auto& e : v.entries_)
    if (e.exp < 0) throw InvalidArgument("v-vector entries must be nonnegative");
  return v;
}

VVector VVector::parse(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  if (t.empty()) return {};
  return from_entries(parse_factors(text, 'A'));
}

int VVector::count(int node, int index) const { return lookup(entries_, node, index); }

void VVector::add(int node, int index, int r) {
  if (r < 0) throw InvalidArgument("v-vector increments must be nonnegative");
  bump(entries_, node, index, r);
}

long VVector::depth() const noexcept {
  long d = 0;
  for (const auto& e : entries_) d += e.exp;
  return d;
}

VVector& VVector::operator+=(const VVector& o) {
  for (const auto& e : o.entries_) bump(entries_, e.node, e.index, e.exp);
  return *this;
}

std::optional<VVector> VVector::minus(const VVector& o) const {
  VVector r = *this;
  for (const auto& e : o.entries_) {
    int have = r.count(e.node, e.index);
    if (have < e.exp) return std::nullopt;
    bump(r.entries_, e.node, e.index, -e.exp);
  }
  return r;
}

std::string VVector::to_string() const { return render(entries_, 'A'); }

std::size_t VVector::hash() const noexcept { return hash_factors(entries_); }

bool operator<(const VVector& a, const VVector& b) { return factors_less(a.entries_, b.entries_); }

Monomial reconstruct(const DynkinData& data, const Monomial& anchor, const VVector& v) {
  Monomial m = anchor;
  for (const auto& e : v.entries()) apply_a_inverse(data, m, e.node, e.index, e.exp);
  return m;
}

std::optional<VVector> vvector_between(const DynkinData& data, const Monomial& m, const Monomial& upper) {
  Monomial q = m * upper.inverse();
  long budget = 10'000'000;
  if (data.is_finite_type()) {
    // The total mass is the height of wt(upper) - wt(m) in simple-root coordinates.
    long long h = data.height_numerator(weight_of(data, upper) - weight_of(data, m));
    if (h < 0 || h % data.determinant() != 0) return std::nullopt;
    budget = static_cast<long>(h / data.determinant());
  }
  VVector v;
  long mass = 0;
  while (!q.is_one()) {
    // The lowest spectral index can only come from Y_{i,k-1}^{-1} in A_{i,k}^{-1}.
    const auto& fs = q.factors();
    auto lowest = std::min_element(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) {
      return a.index != b.index ? a.index < b.index : a.node < b.node;
    });
    if (lowest->exp > 0) return std::nullopt;
    int node = lowest->node;
    int k = lowest->index + 1;
    int r = -lowest->exp;
    mass += r;
    if (mass > budget) return std::nullopt;
    v.add(node, k, r);
    apply_a_inverse(data, q, node, k, -r);
  }
  return v;
}

// ---------------------------------------------------------------- AnchoredMonomial

AnchoredMonomial::AnchoredMonomial(std::shared_ptr<const Monomial> anchor)
    : anchor_(std::move(anchor)), value_(*anchor_) {}

AnchoredMonomial::AnchoredMonomial(std::shared_ptr<const Monomial> anchor, VVector v, Monomial value)
    : anchor_(std::move(anchor)), v_(std::move(v)), value_(std::move(value)) {}

AnchoredMonomial AnchoredMonomial::at_anchor(const Monomial& anchor) {
  return AnchoredMonomial(std::make_shared<const Monomial>(anchor));
}

AnchoredMonomial AnchoredMonomial::multiply_a_inverse(const DynkinData& data, int node, int index, int r) const {
  if (r < 1) throw InvalidArgument("multiply_a_inverse needs r >= 1");
  AnchoredMonomial out = *this;
  out.v_.add(node, index, r);
  apply_a_inverse(data, out.value_, node, index, r);
  return out;
}

// ---------------------------------------------------------------- DrinfeldData

DrinfeldData DrinfeldData::parse(std::string_view text, int rank) {
  DrinfeldData d(rank);
  std::string s(text);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    if (tok.empty()) continue;
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw ParseError("Drinfeld token '" + tok + "' is not of the form i:k");
    int node = 0, index = 0;
    try {
      std::size_t used = 0;
      node = std::stoi(tok.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("node");
      std::string rest = tok.substr(colon + 1);
      index = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("index");
    } catch (const std::exception&) {
      throw ParseError("Drinfeld token '" + tok + "' is not of the form i:k");
    }
    if (node < 1 || node > rank) throw ParseError("Drinfeld node out of range in '" + tok + "'");
    d.add_root(node, index);
  }
  return d;
}

DrinfeldData DrinfeldData::from_monomial(const Monomial& m, int rank) {
  DrinfeldData d(rank);
  for (const auto& f : m.factors()) {
    if (f.exp < 0) throw InvalidArgument("monomial " + m.to_string() + " is not l-dominant");
    if (f.node < 1 || f.node > rank) throw InvalidArgument("monomial node out of range");
    for (int c = 0; c < f.exp; ++c) d.add_root(f.node, f.index);
  }
  return d;
}

void DrinfeldData::add_root(int node, int index) {
  auto& r = roots_.at(node - 1);
  r.insert(std::upper_bound(r.begin(), r.end(), index), index);
}

bool DrinfeldData::empty() const {
  return std::all_of(roots_.begin(), roots_.end(), [](const auto& r) { return r.empty(); });
}

std::size_t DrinfeldData::degree() const {
  std::size_t n = 0;
  for (const auto& r : roots_) n += r.size();
  return n;
}

std::vector<std::pair<int, int>> DrinfeldData::all_roots() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < roots_.size(); ++i)
    for (int k : roots_[i]) out.emplace_back(static_cast<int>(i) + 1, k);
  return out;
}

Monomial DrinfeldData::to_monomial() const {
  Monomial m;
  for (auto [node, k] : all_roots()) m.multiply_y(node, k, 1);
  return m;
}

std::string DrinfeldData::to_string() const {
  std::string s;
  for (auto [node, k] : all_roots()) {
    if (!s.empty()) s += ',';
    s += std::to_string(node) + ':' + std::to_string(k);
  }
  return s;
}

// ---------------------------------------------------------------- packing

PackingWindow PackingWindow::covering(int rank, std::span<const Factor> entries) {
  PackingWindow w;
  w.parity.assign(rank, 0);
  if (entries.empty()) return w;
  std::vector<int> seen(rank, -1);
  bool consistent = true;
  int lo = std::numeric_limits<int>::max();
  for (const auto& e : entries) {
    lo = std::min(lo, e.index);
    int p = ((e.index % 2) + 2) % 2;
    int& s = seen.at(e.node - 1);
    if (s < 0) s = p;
    else if (s != p) consistent = false;
  }
  w.base = lo;
  w.halve = consistent;
  for (int i = 0; i < rank; ++i) w.parity[i] = static_cast<std::uint8_t>(seen[i] < 0 ? 0 : seen[i]);
  return w;
}

PackingWindow PackingWindow::covering(int rank, std::span<const VVector> vectors) {
  std::vector<Factor> all;
  for (const auto& v : vectors) all.insert(all.end(), v.entries().begin(), v.entries().end());
  return covering(rank, all);
}

std::vector<std::uint16_t> pack_vvector(const VVector& v, const PackingWindow& w) {
  std::vector<std::uint16_t> out;
  out.reserve(v.entries().size());
  for (const auto& e : v.entries()) {
    long off = long{e.index} - w.base;
    bool fits = off >= 0;
    if (fits && w.halve) {
      std::size_t ni = static_cast<std::size_t>(e.node - 1);
      long p = ni < w.parity.size() ? w.parity[ni] : 0;
      long shifted = off - ((p - (w.base % 2 + 2) % 2 + 2) % 2);
      if (shifted < 0 || shifted % 2 != 0) fits = false;
      else off = shifted / 2;
    }
    if (fits && e.node >= 1 && e.node <= 15 && off <= 255 && e.exp >= 1 && e.exp <= 15) {
      out.push_back(static_cast<std::uint16_t>((e.node << 12) | (off << 4) | e.exp));
      continue;
    }
    // Wide entry carries the raw index offset without halving.
    std::uint32_t raw = static_cast<std::uint32_t>(static_cast<std::int64_t>(e.index) - w.base);
    out.push_back(kWideEscape);
    out.push_back(static_cast<std::uint16_t>(e.node));
    out.push_back(static_cast<std::uint16_t>(raw & 0xffffu));
    out.push_back(static_cast<std::uint16_t>(raw >> 16));
    out.push_back(static_cast<std::uint16_t>(e.exp));
  }
  return out;
}

VVector unpack_vvector(std::span<const std::uint16_t> units, const PackingWindow& w) {
  std::vector<Factor> entries;
  for (std::size_t i = 0; i < units.size();) {
    std::uint16_t u = units[i++];
    Factor f;
    if (u == kWideEscape) {
      if (i + 4 > units.size()) throw ParseError("truncated wide v-vector entry");
      f.node = static_cast<std::int16_t>(units[i]);
      std::uint32_t raw = units[i + 1] | (static_cast<std::uint32_t>(units[i + 2]) << 16);
      f.index = static_cast<std::int32_t>(static_cast<std::int64_t>(static_cast<std::int32_t>(raw)) + w.base);
      f.exp = static_cast<std::int16_t>(units[i + 3]);
      i += 4;
    } else {
      f.node = static_cast<std::int16_t>(u >> 12);
      long off = (u >> 4) & 0xff;
      f.exp = static_cast<std::int16_t>(u & 0xf);
      if (f.node == 0 || f.exp == 0) throw ParseError("corrupted packed v-vector unit");
      if (w.halve) {
        std::size_t ni = static_cast<std::size_t>(f.node - 1);
        if (ni >= w.parity.size()) throw ParseError("packed node outside the window's rank");
        long p = w.parity[ni];
        off = off * 2 + ((p - (w.base % 2 + 2) % 2 + 2) % 2);
      }
      f.index = static_cast<std::int32_t>(w.base + off);
    }
    if (f.node <= 0 || f.exp <= 0) throw ParseError("corrupted packed v-vector entry");
    entries.push_back(f);
  }
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (!factor_key_less(entries[i - 1], entries[i])) throw ParseError("packed v-vector entries out of order");
  return VVector::from_entries(std::move(entries));
}

std::size_t packed_triple_count(std::span<const std::uint16_t> units) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < units.size(); ++n) i += units[i] == kWideEscape ? 5 : 1;
  return n;
}

}  // namespace qchar
