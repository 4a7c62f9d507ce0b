#include "qchar/restriction.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace qchar {

ClassicalChar restrict_qchar(const QChar& q) {
  if (q.normalization() != Normalization::qch) return restrict_qchar(q.to_qch());
  std::map<Weight, TPoly> acc;
  for (const auto& t : q.terms()) acc[weight_of(q.data(), t.monomial)] += t.coeff;
  ClassicalChar ch;
  for (auto& [w, p] : acc) ch.add(w, p);
  return ch;
}

bool is_weyl_invariant(const DynkinData& data, const ClassicalChar& ch) {
  for (const auto& [mu, p] : ch.terms())
    for (int i = 1; i <= data.rank(); ++i) {
      if (mu[i] == 0) continue;
      if (!(ch.coefficient(data.reflect(mu, i)) == p)) return false;
    }
  return true;
}

TPoly DecompositionTable::multiplicity(const Weight& lambda) const {
  for (const auto& [w, p] : rows)
    if (w == lambda) return p;
  return {};
}

DecompositionTable decompose(const DynkinData& data, const ClassicalChar& ch) {
  if (!is_weyl_invariant(data, ch)) throw NonInvariant("character is not Weyl invariant");
  std::map<Weight, TPoly> rest;
  for (const auto& [w, p] : ch.terms())
    if (w.is_dominant()) rest.emplace(w, p);
  DecompositionTable table;
  while (!rest.empty()) {
    auto top = rest.begin();
    long long best = data.height_numerator(top->first);
    for (auto it = std::next(rest.begin()); it != rest.end(); ++it) {
      long long h = data.height_numerator(it->first);
      if (h > best || (h == best && top->first < it->first)) {
        best = h;
        top = it;
      }
    }
    Weight lambda = top->first;
    TPoly c = top->second;
    table.rows.emplace_back(lambda, c);
    for (const auto& [mu, mult] : freudenthal_dominant(data, lambda)) {
      auto it = rest.find(mu);
      TPoly sub = c * mult;
      if (it == rest.end()) {
        rest.emplace(mu, -sub);
        continue;
      }
      it->second -= sub;
      if (it->second.is_zero()) rest.erase(it);
    }
    if (rest.count(lambda)) throw NonInvariant("peeling left weight " + lambda.to_string() + " behind");
  }
  return table;
}

Orientation Orientation::canonical(const DynkinData& data) { return flipped(data, 0); }

Orientation Orientation::flipped(const DynkinData& data, std::uint64_t mask) {
  Orientation o;
  const auto& edges = data.edges();
  for (std::size_t n = 0; n < edges.size(); ++n) {
    auto [a, b] = edges[n];
    if (a > b) std::swap(a, b);
    if (n < 64 && (mask >> n) & 1) std::swap(a, b);
    o.arrows.emplace_back(a, b);
  }
  return o;
}

std::vector<int> height_function(const DynkinData& data, const Orientation& o) {
  int n = data.rank();
  std::vector<std::vector<std::pair<int, int>>> adj(n + 1);
  for (auto [a, b] : o.arrows) {
    if (data.cartan(a, b) != -1) throw InvalidArgument("orientation arrow is not an edge");
    adj[a].emplace_back(b, -1);
    adj[b].emplace_back(a, +1);
  }
  std::vector<int> m(n + 1, 0);
  std::vector<bool> seen(n + 1, false);
  std::deque<int> queue{1};
  seen[1] = true;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (auto [j, delta] : adj[i])
      if (!seen[j]) {
        seen[j] = true;
        m[j] = m[i] + delta;
        queue.push_back(j);
      }
  }
  return std::vector<int>(m.begin() + 1, m.end());
}

DrinfeldData q_for_weight(const DynkinData& data, const Weight& lambda) {
  return q_for_weight(data, lambda, Orientation::canonical(data));
}

DrinfeldData q_for_weight(const DynkinData& data, const Weight& lambda, const Orientation& o) {
  if (!lambda.is_dominant()) throw InvalidArgument("q_for_weight needs a dominant weight");
  if (lambda.rank() != data.rank()) throw InvalidArgument("weight rank mismatch");
  auto m = height_function(data, o);
  DrinfeldData q(data.rank());
  for (int i = 1; i <= data.rank(); ++i)
    for (int c = 0; c < lambda[i]; ++c) q.add_root(i, m[i - 1]);
  return q;
}

ClassicalChar graded_char(std::shared_ptr<const DynkinData> data, const Weight& lambda, const EngineOptions& options,
                          std::vector<std::string>* warnings) {
  EngineOptions opt = options;
  opt.mode = EngineMode::tolerant;
  opt.warnings = warnings;
  Monomial anchor = q_for_weight(*data, lambda).to_monomial();
  return restrict_qchar(compute_from_anchor(data, anchor, opt));
}

ClassicalChar classical_char_t0(std::shared_ptr<const DynkinData> data, const Weight& lambda,
                                const EngineOptions& options) {
  return graded_char(std::move(data), lambda, options).at_t_zero();
}

ICResult ic_from_chars(const DynkinData& data, const std::vector<Weight>& weights,
                       const std::vector<ClassicalChar>& chars) {
  std::size_t n = weights.size();
  if (chars.size() != n) throw InvalidArgument("one graded character per weight is required");
  ICResult r;
  r.weights = weights;
  r.P.assign(n, std::vector<TPoly>(n));
  r.freudenthal_ok.assign(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& [mu, p] : chars[a].terms()) {
      if (!mu.is_dominant()) continue;
      auto it = std::find(weights.begin(), weights.end(), mu);
      if (it == weights.end())
        throw InvalidArgument("dominant weight " + mu.to_string() + " of row " + weights[a].to_string() +
                              " is missing from the weight list");
      r.P[a][static_cast<std::size_t>(it - weights.begin())] = p;
    }
    bool ok = true;
    for (const auto& [mu, mult] : freudenthal_dominant(data, weights[a])) {
      auto it = std::find(weights.begin(), weights.end(), mu);
      Integer have = 0;
      if (it != weights.end()) {
        const TPoly& p = r.P[a][static_cast<std::size_t>(it - weights.begin())];
        if (!p.is_zero() && p.min_exponent() < 0) ok = false;
        have = p.constant_term();
      }
      ok = ok && have == mult;
    }
    r.freudenthal_ok[a] = ok;
  }
  // P(0) must be unitriangular in the given order.
  std::vector<std::vector<Integer>> p0(n, std::vector<Integer>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const TPoly& p = r.P[a][b];
      if (!p.is_zero() && p.min_exponent() < 0) throw InvalidArgument("P(t) has negative powers of t");
      p0[a][b] = p.constant_term();
      if ((a == b && p0[a][b] != 1) || (b < a && p0[a][b] != 0))
        throw InvalidArgument("P(0) is not unitriangular in the given weight order");
    }
  // Inverse of the upper unitriangular P(0).
  std::vector<std::vector<Integer>> inv(n, std::vector<Integer>(n));
  for (std::size_t a = n; a-- > 0;) {
    inv[a][a] = 1;
    for (std::size_t b = a + 1; b < n; ++b) {
      Integer s = 0;
      for (std::size_t k = a + 1; k <= b; ++k) s += p0[a][k] * inv[k][b];
      inv[a][b] = -s;
    }
  }
  r.IC.assign(n, std::vector<TPoly>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      TPoly s;
      for (std::size_t k = 0; k < n; ++k)
        if (!r.P[a][k].is_zero() && inv[k][b] != 0) s += r.P[a][k] * inv[k][b];
      r.IC[a][b] = std::move(s);
    }
  return r;
}

ICResult ic_matrix(std::shared_ptr<const DynkinData> data, const std::vector<Weight>& weights,
                   const EngineOptions& options) {
  std::vector<ClassicalChar> chars;
  std::vector<std::string> warnings;
  for (const auto& w : weights) chars.push_back(graded_char(data, w, options, &warnings));
  ICResult r = ic_from_chars(*data, weights, chars);
  r.warnings = std::move(warnings);
  return r;
}

}  // namespace qchar
