#include "qchar/root_data.hpp"

#include "qchar/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace qchar {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------- Weight

Weight Weight::fundamental(int rank, int node) {
  if (node < 1 || node > rank) throw InvalidArgument("fundamental weight: node out of range");
  Weight w = zero(rank);
  w.coeffs[node - 1] = 1;
  return w;
}

bool Weight::is_dominant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
}

bool Weight::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.coeffs.size() != coeffs.size()) throw InvalidArgument("weight rank mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.coeffs.size() != coeffs.size()) throw InvalidArgument("weight rank mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

Weight operator*(int k, Weight a) {
  for (auto& c : a.coeffs) c *= k;
  return a;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    int c = coeffs[i];
    if (c == 0) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    if (std::abs(c) != 1) os << std::abs(c);
    os << 'w' << (i + 1);
    first = false;
  }
  return first ? "0" : os.str();
}

Weight Weight::parse(std::string_view text, int rank) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  Weight w = zero(rank);
  if (s == "0") return w;
  if (s.empty()) throw ParseError("empty weight");
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    int mult = pos > start ? std::stoi(s.substr(start, pos - start)) : 1;
    if (pos >= s.size() || (s[pos] != 'w' && s[pos] != 'W'))
      throw ParseError("bad weight '" + std::string(text) + "'");
    ++pos;
    start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("missing node in weight '" + std::string(text) + "'");
    int node = std::stoi(s.substr(start, pos - start));
    if (node < 1 || node > rank) throw ParseError("weight node out of range in '" + std::string(text) + "'");
    w.coeffs[node - 1] += sign * mult;
  }
  return w;
}

// ---------------------------------------------------------------- DynkinData

namespace {

std::vector<std::pair<int, int>> standard_edges(DynkinKind kind, int rank) {
  std::vector<std::pair<int, int>> e;
  switch (kind) {
    case DynkinKind::A:
      if (rank < 1) throw InvalidArgument("type A needs rank >= 1");
      for (int i = 1; i < rank; ++i) e.emplace_back(i, i + 1);
      break;
    case DynkinKind::D:
      if (rank < 4) throw InvalidArgument("type D needs rank >= 4");
      for (int i = 1; i < rank - 2; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(rank - 2, rank - 1);
      e.emplace_back(rank - 2, rank);
      break;
    case DynkinKind::E6:
    case DynkinKind::E7:
    case DynkinKind::E8: {
      int n = kind == DynkinKind::E6 ? 6 : kind == DynkinKind::E7 ? 7 : 8;
      if (rank != n) throw InvalidArgument("type E" + std::to_string(n) + " has rank " + std::to_string(n));
      for (int i = 1; i < n - 1; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(n - 3, n);
      break;
    }
    case DynkinKind::custom:
      throw InvalidArgument("custom diagrams need explicit edges");
  }
  return e;
}

// Determinant by Bareiss elimination; also reports whether every leading
// principal minor is positive.
std::pair<Integer, bool> bareiss(std::vector<Integer> m, int n) {
  Integer prev = 1;
  bool positive = true;
  for (int k = 0; k < n; ++k) {
    if (m[k * n + k] == 0) {
      // Leading minor vanished; matrix is not positive definite.
      positive = false;
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r * n + k] != 0) { swap = r; break; }
      if (swap < 0) return {0, false};
      for (int c = 0; c < n; ++c) std::swap(m[k * n + c], m[swap * n + c]);
      prev = -prev;
    }
    if (m[k * n + k] <= 0) positive = false;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
    prev = m[k * n + k];
  }
  return {prev, positive};
}

}  // namespace

std::size_t DynkinData::idx(int node) const {
  if (node < 1 || node > rank_) throw InvalidArgument("node " + std::to_string(node) + " out of range");
  return static_cast<std::size_t>(node - 1);
}

void DynkinData::require_finite(const char* what) const {
  if (!finite_) throw InvalidArgument(std::string(what) + " requires a finite-type diagram");
}

DynkinData DynkinData::make(DynkinKind kind, int rank, const std::vector<std::pair<int, int>>& edges,
                            bool require_finite) {
  if (rank < 1) throw InvalidArgument("rank must be positive");
  DynkinData d;
  d.kind_ = kind;
  d.rank_ = rank;
  d.cartan_.assign(static_cast<std::size_t>(rank * rank), 0);
  d.adjacency_.assign(rank, {});
  for (int i = 0; i < rank; ++i) d.cartan_[i * rank + i] = 2;
  for (auto [a, b] : edges) {
    if (a < 1 || a > rank || b < 1 || b > rank || a == b)
      throw InvalidArgument("bad edge " + std::to_string(a) + " " + std::to_string(b));
    if (d.cartan_[(a - 1) * rank + (b - 1)] != 0) throw InvalidArgument("duplicate edge");
    d.cartan_[(a - 1) * rank + (b - 1)] = -1;
    d.cartan_[(b - 1) * rank + (a - 1)] = -1;
    d.adjacency_[a - 1].push_back(b);
    d.adjacency_[b - 1].push_back(a);
    d.edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  for (auto& adj : d.adjacency_) std::sort(adj.begin(), adj.end());
  std::sort(d.edges_.begin(), d.edges_.end());

  // Tree: rank-1 edges and connected.
  if (static_cast<int>(edges.size()) != rank - 1) throw InvalidArgument("diagram is not a tree");
  std::vector<bool> seen(rank, false);
  std::vector<int> stack{1};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : d.adjacency_[v - 1])
      if (!seen[w - 1]) {
        seen[w - 1] = true;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != rank) throw InvalidArgument("diagram is not connected");

  std::vector<Integer> m(d.cartan_.begin(), d.cartan_.end());
  auto [det, positive] = bareiss(m, rank);
  d.finite_ = positive && det > 0;
  if (require_finite && !d.finite_) throw InvalidArgument("Cartan matrix is not positive definite");
  if (!d.finite_) return d;
  d.det_ = static_cast<long long>(det);

  // Inverse over the rationals, then scaled by the determinant.
  std::vector<Rational> a(static_cast<std::size_t>(rank * 2 * rank), Rational(0));
  const int w = 2 * rank;
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) a[i * w + j] = d.cartan_[i * rank + j];
    a[i * w + rank + i] = 1;
  }
  for (int c = 0; c < rank; ++c) {
    int piv = c;
    while (a[piv * w + c] == 0) ++piv;
    if (piv != c)
      for (int j = 0; j < w; ++j) std::swap(a[c * w + j], a[piv * w + j]);
    Rational p = a[c * w + c];
    for (int j = 0; j < w; ++j) a[c * w + j] /= p;
    for (int r = 0; r < rank; ++r) {
      if (r == c || a[r * w + c] == 0) continue;
      Rational f = a[r * w + c];
      for (int j = 0; j < w; ++j) a[r * w + j] -= f * a[c * w + j];
    }
  }
  d.inverse_scaled_.resize(static_cast<std::size_t>(rank * rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rational v = a[i * w + rank + j] * d.det_;
      if (denominator(v) != 1) throw Error("inverse Cartan is not integral after scaling");
      d.inverse_scaled_[i * rank + j] = static_cast<long long>(numerator(v));
    }

  // Positive roots, grown height by height: beta + alpha_i is a root iff (beta|alpha_i) = -1.
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> layer;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> r(rank, 0);
    r[i] = 1;
    layer.push_back(r);
    all.insert(r);
  }
  while (!layer.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& beta : layer)
      for (int i = 0; i < rank; ++i) {
        int pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += beta[j] * d.cartan_[j * rank + i];
        if (pairing == -1) {
          auto g = beta;
          ++g[i];
          if (!all.count(g)) next.insert(g);
        }
      }
    layer.assign(next.begin(), next.end());
    all.insert(next.begin(), next.end());
  }
  d.positive_roots_.assign(all.begin(), all.end());
  std::stable_sort(d.positive_roots_.begin(), d.positive_roots_.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.begin(), x.end(), 0) < std::accumulate(y.begin(), y.end(), 0);
  });
  return d;
}

DynkinData DynkinData::build(DynkinKind kind, int rank) {
  return make(kind, rank, standard_edges(kind, rank), true);
}

DynkinData DynkinData::parse(std::string_view name) {
  std::string s(name);
  if (s.size() < 2) throw InvalidArgument("bad Cartan type '" + s + "'");
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int rank = 0;
  try {
    std::size_t used = 0;
    rank = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidArgument("bad Cartan type '" + s + "'");
  }
  switch (letter) {
    case 'A': return build(DynkinKind::A, rank);
    case 'D': return build(DynkinKind::D, rank);
    case 'E':
      if (rank == 6) return build(DynkinKind::E6, 6);
      if (rank == 7) return build(DynkinKind::E7, 7);
      if (rank == 8) return build(DynkinKind::E8, 8);
      break;
    default: break;
  }
  throw InvalidArgument("unsupported Cartan type '" + s + "'");
}

DynkinData DynkinData::from_edges(int rank, const std::vector<std::pair<int, int>>& edges) {
  return make(DynkinKind::custom, rank, edges, true);
}

DynkinData DynkinData::indefinite_from_edges(int rank, const std::vector<std::pair<int, int>>& edges) {
  return make(DynkinKind::custom, rank, edges, false);
}

DynkinData DynkinData::from_edge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open adjacency file " + path.string());
  std::vector<std::pair<int, int>> edges;
  int rank = 1;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    int a = 0, b = 0;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw ParseError("adjacency line needs two nodes: '" + line + "'");
    edges.emplace_back(a, b);
    rank = std::max({rank, a, b});
  }
  return from_edges(rank, edges);
}

std::string DynkinData::name() const {
  switch (kind_) {
    case DynkinKind::A: return "A" + std::to_string(rank_);
    case DynkinKind::D: return "D" + std::to_string(rank_);
    case DynkinKind::E6: return "E6";
    case DynkinKind::E7: return "E7";
    case DynkinKind::E8: return "E8";
    case DynkinKind::custom: return "custom";
  }
  return "custom";
}

const std::vector<std::vector<int>>& DynkinData::positive_roots() const {
  require_finite("positive_roots");
  return positive_roots_;
}

Weight DynkinData::simple_root(int node) const {
  Weight w = Weight::zero(rank_);
  std::size_t j = idx(node);
  for (int i = 0; i < rank_; ++i) w.coeffs[i] = cartan_[i * rank_ + j];
  return w;
}

Weight DynkinData::root_to_weight(const std::vector<int>& a) const {
  Weight w = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) w.coeffs[i] += cartan_[i * rank_ + j] * a[j];
  return w;
}

long long DynkinData::height_numerator(const Weight& w) const {
  require_finite("height");
  long long h = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) h += inverse_scaled_[i * rank_ + j] * w.coeffs[j];
  return h;
}

long long DynkinData::scaled_inner(const Weight& x, const Weight& y) const {
  require_finite("inner product");
  long long s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long long>(x.coeffs[i]) * inverse_scaled_[i * rank_ + j] * y.coeffs[j];
  return s;
}

Weight DynkinData::reflect(const Weight& w, int node) const {
  int c = w[node];
  if (c == 0) return w;
  Weight r = w;
  std::size_t j = idx(node);
  for (int i = 0; i < rank_; ++i) r.coeffs[i] -= c * cartan_[i * rank_ + j];
  return r;
}

// ---------------------------------------------------------------- ClassicalChar

void ClassicalChar::add(const Weight& w, const TPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TPoly ClassicalChar::coefficient(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? TPoly{} : it->second;
}

Integer ClassicalChar::total_at_one() const {
  Integer s = 0;
  for (const auto& [w, p] : terms_) s += p.eval_at_one();
  return s;
}

ClassicalChar ClassicalChar::at_t_zero() const {
  ClassicalChar out;
  for (const auto& [w, p] : terms_) {
    if (!p.is_zero() && p.min_exponent() < 0)
      throw InvalidArgument("t -> 0 specialization of a coefficient with negative exponents");
    out.add(w, TPoly::monomial(0, p.constant_term()));
  }
  return out;
}

ClassicalChar ClassicalChar::dominant_part() const {
  ClassicalChar out;
  for (const auto& [w, p] : terms_)
    if (w.is_dominant()) out.terms_.emplace(w, p);
  return out;
}

// ---------------------------------------------------------------- Weyl group

namespace {

int root_height(const std::vector<int>& a) { return std::accumulate(a.begin(), a.end(), 0); }

// |W_J| = prod over positive roots supported in J of (ht+1)/ht.
Rational parabolic_order(const DynkinData& data, const std::vector<bool>& in_j) {
  Rational order = 1;
  for (const auto& a : data.positive_roots()) {
    bool inside = true;
    for (int i = 0; i < data.rank() && inside; ++i)
      if (a[i] != 0 && !in_j[i]) inside = false;
    if (!inside) continue;
    int h = root_height(a);
    order *= Rational(h + 1, h);
  }
  return order;
}

}  // namespace

Integer weyl_dim(const DynkinData& data, const Weight& lambda) {
  if (!lambda.is_dominant()) throw InvalidArgument("weyl_dim: weight " + lambda.to_string() + " is not dominant");
  if (lambda.rank() != data.rank()) throw InvalidArgument("weyl_dim: rank mismatch");
  Integer num = 1, den = 1;
  for (const auto& a : data.positive_roots()) {
    long long s = 0;
    for (int i = 0; i < data.rank(); ++i) s += static_cast<long long>(a[i]) * (lambda.coeffs[i] + 1);
    num *= s;
    den *= root_height(a);
  }
  return num / den;
}

Weight dominant_representative(const DynkinData& data, Weight mu) {
  if (mu.rank() != data.rank()) throw InvalidArgument("dominant_representative: rank mismatch");
  for (;;) {
    int neg = -1;
    for (int i = 0; i < data.rank(); ++i)
      if (mu.coeffs[i] < 0) { neg = i + 1; break; }
    if (neg < 0) return mu;
    mu = data.reflect(mu, neg);
  }
}

Integer orbit_size(const DynkinData& data, const Weight& dominant) {
  if (!dominant.is_dominant()) throw InvalidArgument("orbit_size expects a dominant weight");
  std::vector<bool> all(data.rank(), true), stab(data.rank());
  for (int i = 0; i < data.rank(); ++i) stab[i] = dominant.coeffs[i] == 0;
  Rational q = parabolic_order(data, all) / parabolic_order(data, stab);
  if (denominator(q) != 1) throw Error("non-integral orbit size");
  return numerator(q);
}

std::vector<Weight> weyl_orbit(const DynkinData& data, const Weight& mu) {
  std::set<Weight> seen{mu};
  std::vector<Weight> frontier{mu};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& w : frontier)
      for (int i = 1; i <= data.rank(); ++i) {
        Weight r = data.reflect(w, i);
        if (seen.insert(r).second) next.push_back(std::move(r));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::pair<Weight, Integer>> freudenthal_dominant(const DynkinData& data, const Weight& lambda) {
  if (!lambda.is_dominant()) throw InvalidArgument("freudenthal: weight " + lambda.to_string() + " is not dominant");
  if (lambda.rank() != data.rank()) throw InvalidArgument("freudenthal: rank mismatch");
  const auto& roots = data.positive_roots();
  std::vector<Weight> root_weights;
  root_weights.reserve(roots.size());
  for (const auto& a : roots) root_weights.push_back(data.root_to_weight(a));

  // Dominant weights below lambda: every such weight is reachable from lambda
  // through a chain of dominant weights differing by positive roots.
  std::set<Weight> dominant{lambda};
  std::vector<Weight> frontier{lambda};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& w : frontier)
      for (const auto& rw : root_weights) {
        Weight v = w - rw;
        if (v.is_dominant() && dominant.insert(v).second) next.push_back(std::move(v));
      }
    frontier = std::move(next);
  }
  std::vector<Weight> order(dominant.begin(), dominant.end());
  std::stable_sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) {
    return data.height_numerator(a) > data.height_numerator(b);
  });

  Weight rho(std::vector<int>(data.rank(), 1));
  const Weight top = lambda + rho;
  const long long top_norm = data.scaled_inner(top, top);
  std::map<Weight, Integer> mult;
  mult[lambda] = 1;
  for (const auto& mu : order) {
    if (mu == lambda) continue;
    Integer sum = 0;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      Weight shifted = mu;
      for (int k = 1;; ++k) {
        shifted += root_weights[r];
        auto it = mult.find(dominant_representative(data, shifted));
        if (it == mult.end()) break;
        long long pairing = 0;
        for (int i = 0; i < data.rank(); ++i) pairing += static_cast<long long>(shifted.coeffs[i]) * roots[r][i];
        sum += it->second * pairing;
      }
    }
    const Weight mr = mu + rho;
    long long denom = top_norm - data.scaled_inner(mr, mr);
    Integer numer = 2 * sum * data.determinant();
    if (denom <= 0 || numer % denom != 0) throw Error("Freudenthal recursion produced a non-integer multiplicity");
    Integer m = numer / denom;
    if (m != 0) mult[mu] = m;
  }
  std::vector<std::pair<Weight, Integer>> out;
  for (const auto& mu : order)
    if (auto it = mult.find(mu); it != mult.end()) out.emplace_back(mu, it->second);
  return out;
}

ClassicalChar freudenthal_char(const DynkinData& data, const Weight& lambda) {
  ClassicalChar ch;
  for (const auto& [mu, m] : freudenthal_dominant(data, lambda)) {
    TPoly c = TPoly::monomial(0, m);
    for (const auto& w : weyl_orbit(data, mu)) ch.add(w, c);
  }
  return ch;
}

}  // namespace qchar
