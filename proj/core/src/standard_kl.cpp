#include "qchar/standard_kl.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace qchar {

namespace {

// Earlier root a, later root b with a - b >= 2.
std::optional<std::pair<int, int>> violation(const DrinfeldData& earlier, const DrinfeldData& later) {
  for (auto [ni, a] : earlier.all_roots())
    for (auto [nj, b] : later.all_roots())
      if (a - b >= 2) return std::make_pair(a, b);
  return std::nullopt;
}

}  // namespace

void check_order(const std::vector<DrinfeldData>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (auto v = violation(factors[i], factors[j])) throw OrderViolation(v->first, v->second);
}

std::vector<std::size_t> suggest_order(const std::vector<DrinfeldData>& factors) {
  std::size_t n = factors.size();
  // after[y] lists the x that must come after y.
  std::vector<std::vector<std::size_t>> after(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      auto xy = violation(factors[x], factors[y]);
      if (!xy) continue;
      if (violation(factors[y], factors[x])) throw OrderViolation(xy->first, xy->second);
      // x cannot precede y.
      after[y].push_back(x);
      ++indegree[x];
    }
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  while (order.size() < n) {
    std::size_t pick = n;
    for (std::size_t k = 0; k < n; ++k)
      if (!used[k] && indegree[k] == 0) {
        pick = k;
        break;
      }
    if (pick == n) {
      auto v = violation(factors[0], factors[n > 1 ? 1 : 0]);
      throw OrderViolation(v ? v->first : 0, v ? v->second : 0);
    }
    used[pick] = true;
    order.push_back(pick);
    for (std::size_t x : after[pick]) --indegree[x];
  }
  return order;
}

QChar twisted_product(const QChar& first, const QChar& second) {
  if (!(first.data() == second.data())) throw InvalidArgument("twisted_product: root data differ");
  const QChar a = first.to_qch();
  const QChar b = second.to_qch();
  int rank = a.data().rank();
  check_order({DrinfeldData::from_monomial(a.anchor(), rank), DrinfeldData::from_monomial(b.anchor(), rank)});
  std::unordered_map<VVector, std::size_t> slot;
  std::vector<QCharTerm> acc;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      long d = d_pairing(x.v, a.anchor(), y.v, y.monomial);
      TPoly c = (x.coeff * y.coeff).shifted(static_cast<int>(2 * d));
      VVector v = x.v + y.v;
      auto [it, fresh] = slot.try_emplace(v, acc.size());
      if (fresh) acc.push_back(QCharTerm{std::move(v), x.monomial * y.monomial, std::move(c)});
      else acc[it->second].coeff += c;
    }
  QChar out(a.data_ptr(), a.anchor() * b.anchor(), Normalization::qch);
  for (auto& t : acc) out.append(std::move(t));
  out.canonicalize();
  return out;
}

QChar twisted_product(const std::vector<QChar>& factors) {
  if (factors.empty()) throw InvalidArgument("twisted_product needs at least one factor");
  int rank = factors.front().data().rank();
  std::vector<DrinfeldData> roots;
  for (const auto& f : factors) roots.push_back(DrinfeldData::from_monomial(f.anchor(), rank));
  check_order(roots);
  QChar acc = factors.front().to_qch();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = twisted_product(acc, factors[k]);
  return acc;
}

FundamentalCache::FundamentalCache(std::shared_ptr<const DynkinData> data, EngineOptions options)
    : data_(std::move(data)), options_(std::move(options)) {}

QChar FundamentalCache::fundamental(int node, int index) {
  auto it = cache_.find(node);
  if (it == cache_.end()) it = cache_.emplace(node, compute_l_fundamental(data_, node, options_)).first;
  return index == 0 ? it->second : it->second.shifted(index);
}

QChar standard_qch(FundamentalCache& cache, const DrinfeldData& q) {
  if (q.empty()) {
    QChar one(cache.data(), Monomial::one());
    one.append(QCharTerm{VVector(), Monomial::one(), TPoly(1)});
    return one;
  }
  std::vector<DrinfeldData> singles;
  for (auto [node, k] : q.all_roots()) {
    DrinfeldData d(q.rank());
    d.add_root(node, k);
    singles.push_back(std::move(d));
  }
  std::vector<QChar> factors;
  for (std::size_t idx : suggest_order(singles)) {
    auto [node, k] = singles[idx].all_roots().front();
    factors.push_back(cache.fundamental(node, k));
  }
  return twisted_product(factors);
}

TPoly KLResult::coefficient(const Monomial& q) const {
  for (const auto& [m, p] : coefficients)
    if (m == q) return p;
  return {};
}

KLResult kl_simple(const DrinfeldData& p, const std::map<Monomial, QChar>& standards) {
  const Monomial top = p.to_monomial();
  auto chi_of = [&](const Monomial& m) -> QChar {
    auto it = standards.find(m);
    if (it == standards.end()) throw MissingStandard(m.to_string());
    return it->second.to_chi();
  };

  // Close the set of dominant monomials under "appears in a standard".
  std::vector<Monomial> dom{top};
  std::map<Monomial, QChar> chi;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    QChar c = chi_of(dom[k]);
    for (const auto& t : c.terms())
      if (t.monomial.is_l_dominant() && std::find(dom.begin(), dom.end(), t.monomial) == dom.end())
        dom.push_back(t.monomial);
    chi.emplace(dom[k], std::move(c));
  }
  const DynkinData& data = chi.at(top).data();

  std::vector<std::pair<VVector, Monomial>> order;
  for (const auto& m : dom) {
    auto v = vvector_between(data, m, top);
    if (!v) throw NoSolution("dominant monomial " + m.to_string() + " is not below the anchor");
    order.emplace_back(std::move(*v), m);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first.depth() != b.first.depth()) return a.first.depth() < b.first.depth();
    return a.second < b.second;
  });
  std::size_t n = order.size();

  std::vector<std::vector<TPoly>> B(n, std::vector<TPoly>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const QChar& c = chi.at(order[a].second);
    auto idx = c.index();
    for (std::size_t b = 0; b < n; ++b) {
      auto it = idx.find(order[b].second);
      if (it != idx.end()) B[a][b] = c.terms()[it->second].coeff;
    }
    if (!B[a][a].is_one()) throw NoSolution("standard module of " + order[a].second.to_string() + " is not unitriangular");
    for (std::size_t b = 0; b < a; ++b)
      if (!B[a][b].is_zero()) throw NoSolution("dominant-monomial matrix is not triangular");
  }

  // bar(M(R)) = sum_S r[R][S] M(S), from r B = bar(B).
  std::vector<std::vector<TPoly>> r(n, std::vector<TPoly>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      TPoly s = B[a][b].bar();
      for (std::size_t k = a; k < b; ++k)
        if (!r[a][k].is_zero() && !B[k][b].is_zero()) s -= r[a][k] * B[k][b];
      r[a][b] = std::move(s);
    }

  std::vector<TPoly> coeff(n);
  coeff[0] = TPoly(1);
  for (std::size_t s = 1; s < n; ++s) {
    TPoly g;
    for (std::size_t k = 0; k < s; ++k)
      if (!coeff[k].is_zero() && !r[k][s].is_zero()) g += coeff[k].bar() * r[k][s];
    TPoly a = g.negative_part();
    if (!(a - a.bar() == g))
      throw NoSolution("bar-invariance fails at " + order[s].second.to_string() + ": " + g.to_string());
    coeff[s] = std::move(a);
  }

  KLResult res{{}, QChar(chi.at(top).data_ptr(), top, Normalization::chi)};
  std::unordered_map<VVector, std::size_t> slot;
  std::vector<QCharTerm> acc;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) res.coefficients.emplace_back(order[k].second, coeff[k]);
    if (coeff[k].is_zero()) continue;
    for (const auto& t : chi.at(order[k].second).terms()) {
      VVector v = t.v + order[k].first;
      TPoly c = t.coeff * coeff[k];
      auto [it, fresh] = slot.try_emplace(v, acc.size());
      if (fresh) acc.push_back(QCharTerm{std::move(v), t.monomial, std::move(c)});
      else acc[it->second].coeff += c;
    }
  }
  for (auto& t : acc) res.simple.append(std::move(t));
  res.simple.canonicalize();
  return res;
}

KLResult kl_simple(FundamentalCache& cache, const DrinfeldData& p) {
  std::map<Monomial, QChar> standards;
  std::vector<Monomial> todo{p.to_monomial()};
  int rank = cache.data()->rank();
  while (!todo.empty()) {
    Monomial m = todo.back();
    todo.pop_back();
    if (standards.count(m)) continue;
    QChar s = standard_qch(cache, DrinfeldData::from_monomial(m, rank));
    for (const auto& t : s.terms())
      if (t.monomial.is_l_dominant() && !standards.count(t.monomial)) todo.push_back(t.monomial);
    standards.emplace(m, std::move(s));
  }
  return kl_simple(p, standards);
}

}  // namespace qchar
