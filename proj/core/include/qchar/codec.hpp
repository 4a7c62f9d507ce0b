#pragma once

#include "qchar/monomial.hpp"
#include "qchar/tpoly.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qchar::codec {

using Bytes = std::vector<std::uint8_t>;

/// Read cursor over a byte buffer; every getter throws ParseError on truncation.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint8_t byte();
  std::uint16_t u16();
  std::uint64_t u64();
  std::uint64_t varint();
  std::int64_t svarint();
  std::span<const std::uint8_t> take(std::size_t n);
  std::size_t position() const noexcept { return pos_; }
  bool done() const noexcept { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_u16(Bytes& out, std::uint16_t x);
void put_u64(Bytes& out, std::uint64_t x);
void put_varint(Bytes& out, std::uint64_t x);
void put_svarint(Bytes& out, std::int64_t x);

void put_integer(Bytes& out, const Integer& x);
Integer get_integer(Reader& in);

/// Tag 0 is the coefficient 1; otherwise the term count follows.
void put_coeff(Bytes& out, const TPoly& p);
TPoly get_coeff(Reader& in);

void put_units(Bytes& out, std::span<const std::uint16_t> units);
std::vector<std::uint16_t> get_units(Reader& in, std::size_t n);

/// Front coding: shared prefix length with the previous record, then the suffix.
void put_front_coded(Bytes& out, std::span<const std::uint16_t> prev, std::span<const std::uint16_t> units);
std::vector<std::uint16_t> get_front_coded(Reader& in, const std::vector<std::uint16_t>& prev);

void put_window(Bytes& out, const PackingWindow& w, int rank);
PackingWindow get_window(Reader& in, int rank);

}  // namespace qchar::codec
