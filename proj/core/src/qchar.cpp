#include "qchar/qchar.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qchar {

bool canonical_term_less(const VVector& a, const VVector& b) {
  long da = a.depth(), db = b.depth();
  if (da != db) return da < db;
  return a < b;
}

QChar::QChar(std::shared_ptr<const DynkinData> data, Monomial anchor, Normalization norm)
    : data_(std::move(data)), anchor_(std::move(anchor)), norm_(norm) {
  if (!data_) throw InvalidArgument("QChar needs root data");
  if (!anchor_.is_l_dominant()) throw InvalidArgument("anchor " + anchor_.to_string() + " is not l-dominant");
}

void QChar::append(QCharTerm term) {
  if (term.coeff.is_zero()) return;
  if (!colorings_.empty()) throw InvalidArgument("QChar with colorings needs a coloring per term");
  terms_.push_back(std::move(term));
}

void QChar::append(QCharTerm term, std::vector<TPoly> coloring) {
  if (term.coeff.is_zero()) return;
  if (!terms_.empty() && colorings_.size() != terms_.size())
    throw InvalidArgument("QChar colorings must cover every term");
  terms_.push_back(std::move(term));
  colorings_.push_back(std::move(coloring));
}

void QChar::canonicalize() {
  std::vector<std::size_t> order(terms_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return canonical_term_less(terms_[a].v, terms_[b].v);
  });
  std::vector<QCharTerm> out;
  std::vector<std::vector<TPoly>> cols;
  out.reserve(terms_.size());
  bool with_cols = !colorings_.empty();
  for (std::size_t idx : order) {
    if (!out.empty() && out.back().v == terms_[idx].v) {
      out.back().coeff += terms_[idx].coeff;
      if (with_cols)
        for (std::size_t i = 0; i < cols.back().size(); ++i) cols.back()[i] += colorings_[idx][i];
      continue;
    }
    if (!out.empty() && out.back().coeff.is_zero()) {
      out.pop_back();
      if (with_cols) cols.pop_back();
    }
    out.push_back(std::move(terms_[idx]));
    if (with_cols) cols.push_back(std::move(colorings_[idx]));
  }
  if (!out.empty() && out.back().coeff.is_zero()) {
    out.pop_back();
    if (with_cols) cols.pop_back();
  }
  terms_ = std::move(out);
  colorings_ = std::move(cols);
}

TPoly QChar::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.monomial == m) return t.coeff;
  return {};
}

std::unordered_map<Monomial, std::size_t> QChar::index() const {
  std::unordered_map<Monomial, std::size_t> idx;
  idx.reserve(terms_.size());
  for (std::size_t n = 0; n < terms_.size(); ++n) idx.emplace(terms_[n].monomial, n);
  return idx;
}

Integer QChar::total_at_one() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.coeff.eval_at_one();
  return s;
}

long QChar::max_depth() const {
  long d = 0;
  for (const auto& t : terms_) d = std::max(d, t.v.depth());
  return d;
}

std::size_t QChar::l_dominant_count() const {
  return static_cast<std::size_t>(
      std::count_if(terms_.begin(), terms_.end(), [](const QCharTerm& t) { return t.monomial.is_l_dominant(); }));
}

QChar QChar::to_qch() const {
  if (norm_ == Normalization::qch) return *this;
  QChar out = *this;
  out.norm_ = Normalization::qch;
  for (auto& t : out.terms_) t.coeff = t.coeff.shifted(static_cast<int>(self_pairing(*this, t)));
  return out;
}

QChar QChar::to_chi() const {
  if (norm_ == Normalization::chi) return *this;
  QChar out = *this;
  out.norm_ = Normalization::chi;
  for (auto& t : out.terms_) t.coeff = t.coeff.shifted(-static_cast<int>(self_pairing(*this, t)));
  return out;
}

QChar QChar::shifted(int s) const {
  QChar out(data_, anchor_.shifted(s), norm_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Factor> e = t.v.entries();
    for (auto& f : e) f.index += s;
    out.terms_.push_back(QCharTerm{VVector::from_entries(std::move(e)), t.monomial.shifted(s), t.coeff});
  }
  out.colorings_ = colorings_;
  return out;
}

QChar QChar::bar() const {
  QChar out = *this;
  for (auto& t : out.terms_) t.coeff = t.coeff.bar();
  return out;
}

bool operator==(const QChar& a, const QChar& b) {
  if (a.norm_ != b.norm_ || !(a.anchor_ == b.anchor_) || !(*a.data_ == *b.data_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t n = 0; n < a.terms_.size(); ++n) {
    const auto& x = a.terms_[n];
    const auto& y = b.terms_[n];
    if (!(x.v == y.v) || !(x.monomial == y.monomial) || !(x.coeff == y.coeff)) return false;
  }
  return true;
}

long d_pairing(const VVector& v1, const Monomial& anchor1, const VVector& v2, const Monomial& m2) {
  long d = 0;
  for (const auto& e : v1.entries()) d += long{e.exp} * m2.exponent(e.node, e.index - 1);
  for (const auto& e : v2.entries()) d += long{e.exp} * anchor1.exponent(e.node, e.index + 1);
  return d;
}

long self_pairing(const QChar& q, const QCharTerm& term) {
  return d_pairing(term.v, q.anchor(), term.v, term.monomial);
}

}  // namespace qchar
