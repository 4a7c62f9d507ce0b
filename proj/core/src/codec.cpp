#include "qchar/codec.hpp"

#include "qchar/errors.hpp"

#include <algorithm>
#include <iterator>

namespace qchar::codec {

std::uint8_t Reader::byte() {
  if (pos_ >= bytes_.size()) throw ParseError("truncated data");
  return bytes_[pos_++];
}

std::uint16_t Reader::u16() {
  std::uint16_t lo = byte();
  std::uint16_t hi = byte();
  return static_cast<std::uint16_t>(lo | (hi << 8));
}

std::uint64_t Reader::u64() {
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= std::uint64_t{byte()} << (8 * i);
  return x;
}

std::uint64_t Reader::varint() {
  std::uint64_t x = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    std::uint8_t b = byte();
    x |= std::uint64_t{b & 0x7fu} << shift;
    if (!(b & 0x80)) return x;
  }
  throw ParseError("overlong varint");
}

std::int64_t Reader::svarint() {
  std::uint64_t z = varint();
  return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
}

std::span<const std::uint8_t> Reader::take(std::size_t n) {
  if (n > bytes_.size() - pos_) throw ParseError("truncated data");
  auto s = bytes_.subspan(pos_, n);
  pos_ += n;
  return s;
}

void put_u16(Bytes& out, std::uint16_t x) {
  out.push_back(static_cast<std::uint8_t>(x & 0xff));
  out.push_back(static_cast<std::uint8_t>(x >> 8));
}

void put_u64(Bytes& out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

void put_varint(Bytes& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(x | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(x));
}

void put_svarint(Bytes& out, std::int64_t x) {
  put_varint(out, (static_cast<std::uint64_t>(x) << 1) ^ static_cast<std::uint64_t>(x >> 63));
}

void put_integer(Bytes& out, const Integer& x) {
  Integer mag = x < 0 ? Integer(-x) : x;
  std::vector<std::uint8_t> digits;
  boost::multiprecision::export_bits(mag, std::back_inserter(digits), 8, false);
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
  put_varint(out, (digits.size() << 1) | (x < 0 ? 1u : 0u));
  out.insert(out.end(), digits.begin(), digits.end());
}

Integer get_integer(Reader& in) {
  std::uint64_t head = in.varint();
  auto digits = in.take(head >> 1);
  Integer mag = 0;
  if (!digits.empty()) boost::multiprecision::import_bits(mag, digits.begin(), digits.end(), 8, false);
  return (head & 1) ? Integer(-mag) : mag;
}

void put_coeff(Bytes& out, const TPoly& p) {
  if (p.is_zero()) throw InvalidArgument("zero coefficients are never stored");
  if (p.is_one()) {
    put_varint(out, 0);
    return;
  }
  put_varint(out, p.size());
  for (const auto& [e, c] : p.terms()) {
    put_svarint(out, e);
    put_integer(out, c);
  }
}

TPoly get_coeff(Reader& in) {
  std::uint64_t n = in.varint();
  if (n == 0) return TPoly(1);
  std::vector<TPoly::Term> terms;
  terms.reserve(std::min<std::uint64_t>(n, 1024));
  for (std::uint64_t k = 0; k < n; ++k) {
    int e = static_cast<int>(in.svarint());
    terms.emplace_back(e, get_integer(in));
  }
  TPoly p = TPoly::from_terms(std::move(terms));
  if (p.is_zero()) throw ParseError("stored coefficient is zero");
  return p;
}

void put_units(Bytes& out, std::span<const std::uint16_t> units) {
  for (auto u : units) put_u16(out, u);
}

std::vector<std::uint16_t> get_units(Reader& in, std::size_t n) {
  std::vector<std::uint16_t> u(n);
  for (auto& x : u) x = in.u16();
  return u;
}

void put_front_coded(Bytes& out, std::span<const std::uint16_t> prev, std::span<const std::uint16_t> units) {
  std::size_t shared = 0;
  while (shared < prev.size() && shared < units.size() && prev[shared] == units[shared]) ++shared;
  put_varint(out, shared);
  put_varint(out, units.size() - shared);
  put_units(out, units.subspan(shared));
}

std::vector<std::uint16_t> get_front_coded(Reader& in, const std::vector<std::uint16_t>& prev) {
  std::uint64_t shared = in.varint();
  std::uint64_t rest = in.varint();
  if (shared > prev.size()) throw ParseError("front-coded prefix longer than the previous record");
  std::vector<std::uint16_t> u(prev.begin(), prev.begin() + static_cast<std::ptrdiff_t>(shared));
  auto tail = get_units(in, rest);
  u.insert(u.end(), tail.begin(), tail.end());
  return u;
}

void put_window(Bytes& out, const PackingWindow& w, int rank) {
  put_svarint(out, w.base);
  out.push_back(w.halve ? 1 : 0);
  for (int i = 0; i < rank; ++i)
    out.push_back(static_cast<std::size_t>(i) < w.parity.size() ? w.parity[i] : 0);
}

PackingWindow get_window(Reader& in, int rank) {
  PackingWindow w;
  w.base = static_cast<std::int32_t>(in.svarint());
  w.halve = in.byte() != 0;
  w.parity.resize(rank);
  for (auto& p : w.parity) {
    p = in.byte();
    if (p > 1) throw ParseError("bad parity byte");
  }
  return w;
}

}  // namespace qchar::codec
