#pragma once

#include "qchar/engine.hpp"
#include "qchar/qchar.hpp"
#include "qchar/restriction.hpp"
#include "qchar/root_data.hpp"
#include "qchar/standard_kl.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qchar {

constexpr std::uint16_t kBinaryVersion = 1;

// ---------------------------------------------------------------- q-characters

/// "# qchar text v1" header lines, then one "MONOMIAL : POLY" line per term.
void write_text(std::ostream& os, const QChar& q);
QChar read_text(std::istream& is);

/// Binary QCharFile. tree selects front-coded v-vectors (default) over flat records.
std::vector<std::uint8_t> serialize(const QChar& q, bool tree = true);
QChar deserialize(std::span<const std::uint8_t> bytes);

enum class FileFormat { text, binary };

void save_qchar(const std::filesystem::path& path, const QChar& q, FileFormat format, bool tree = true);
/// Detects the format from the leading magic.
QChar load_qchar(const std::filesystem::path& path);

/// QCharFile holding the layers emitted so far plus the pending section.
std::vector<std::uint8_t> serialize_checkpoint(const QChar& partial, const EngineState& state);
std::pair<QChar, EngineState> deserialize_checkpoint(std::span<const std::uint8_t> bytes);
void save_checkpoint(const std::filesystem::path& path, const QChar& partial, const EngineState& state);
std::pair<QChar, EngineState> load_checkpoint(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

// ---------------------------------------------------------------- classical data

/// "WEIGHT : POLY" records, highest weights first.
void write_classical(std::ostream& os, const DynkinData& data, const ClassicalChar& ch);
ClassicalChar read_classical(std::istream& is, int rank);

void write_decomposition(std::ostream& os, const DecompositionTable& table);
DecompositionTable read_decomposition(std::istream& is, int rank);

/// "# columns: w8 | 2w1 | ..." then "ROW : p1 | p2 | ..." per row.
void write_matrix_records(std::ostream& os, const std::vector<Weight>& weights,
                          const std::vector<std::vector<TPoly>>& m);
std::pair<std::vector<Weight>, std::vector<std::vector<TPoly>>> read_matrix_records(std::istream& is, int rank);

/// Column-aligned rendering with weight labels.
void write_aligned_matrix(std::ostream& os, const std::vector<Weight>& weights,
                          const std::vector<std::vector<TPoly>>& m);

/// Drinfeld roots of each Q with a_{PQ}, then the simple character in text form.
void write_kl_result(std::ostream& os, const KLResult& r);

}  // namespace qchar
