#include "qchar/compact_store.hpp"

#include "qchar/codec.hpp"

namespace qchar {

CompactStore::CompactStore(std::shared_ptr<const DynkinData> data, Monomial anchor)
    : data_(std::move(data)), anchor_(std::move(anchor)) {}

void CompactStore::accept_layer(long depth, std::vector<QCharTerm>&& terms, std::vector<std::vector<TPoly>>*) {
  if (terms.empty()) return;
  std::vector<Factor> all;
  for (const auto& t : terms) all.insert(all.end(), t.v.entries().begin(), t.v.entries().end());
  Block b;
  b.depth = depth;
  b.count = terms.size();
  b.window = PackingWindow::covering(data_->rank(), all);
  std::vector<std::uint16_t> prev;
  for (const auto& t : terms) {
    auto units = pack_vvector(t.v, b.window);
    codec::put_front_coded(b.bytes, prev, units);
    codec::put_coeff(b.bytes, t.coeff);
    if (t.coeff.is_one()) ++trivial_;
    prev = std::move(units);
  }
  b.bytes.shrink_to_fit();
  count_ += b.count;
  blocks_.push_back(std::move(b));
  terms.clear();
}

std::size_t CompactStore::memory_bytes() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.bytes.capacity() + b.window.parity.capacity() + sizeof(Block);
  return n;
}

void CompactStore::for_each(const std::function<void(const QCharTerm&)>& fn) const {
  for (const auto& b : blocks_) {
    codec::Reader in(b.bytes);
    std::vector<std::uint16_t> prev;
    for (std::size_t n = 0; n < b.count; ++n) {
      auto units = codec::get_front_coded(in, prev);
      QCharTerm t;
      t.v = unpack_vvector(units, b.window);
      t.coeff = codec::get_coeff(in);
      t.monomial = reconstruct(*data_, anchor_, t.v);
      fn(t);
      prev = std::move(units);
    }
  }
}

QChar CompactStore::to_qchar() const {
  QChar q(data_, anchor_);
  for_each([&](const QCharTerm& t) { q.append(t); });
  return q;
}

}  // namespace qchar
