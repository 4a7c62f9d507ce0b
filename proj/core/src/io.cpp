#include "qchar/io.hpp"

#include "qchar/codec.hpp"
#include "qchar/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

namespace qchar {

namespace {

constexpr std::uint16_t kFlagTree = 1;
constexpr std::uint16_t kFlagCheckpoint = 2;
constexpr char kMagic[4] = {'Q', 'C', 'H', 'T'};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::shared_ptr<const DynkinData> make_data(const std::string& name, int rank,
                                            const std::vector<std::pair<int, int>>& edges, bool finite) {
  if (name != "custom") {
    auto d = std::make_shared<const DynkinData>(DynkinData::parse(name));
    if (d->rank() != rank) throw ParseError("rank does not match type " + name);
    return d;
  }
  return std::make_shared<const DynkinData>(finite ? DynkinData::from_edges(rank, edges)
                                                   : DynkinData::indefinite_from_edges(rank, edges));
}

// ---- binary header

void put_header(codec::Bytes& out, const QChar& q, std::uint16_t flags, const PackingWindow& w, std::uint64_t count) {
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  codec::put_u16(out, kBinaryVersion);
  codec::put_u16(out, flags);
  const DynkinData& d = q.data();
  std::string name = d.name();
  codec::put_varint(out, name.size());
  out.insert(out.end(), name.begin(), name.end());
  codec::put_varint(out, static_cast<std::uint64_t>(d.rank()));
  if (name == "custom") {
    out.push_back(d.is_finite_type() ? 1 : 0);
    codec::put_varint(out, d.edges().size());
    for (auto [a, b] : d.edges()) {
      codec::put_varint(out, static_cast<std::uint64_t>(a));
      codec::put_varint(out, static_cast<std::uint64_t>(b));
    }
  }
  out.push_back(q.normalization() == Normalization::qch ? 0 : 1);
  auto roots = DrinfeldData::from_monomial(q.anchor(), d.rank()).all_roots();
  codec::put_varint(out, roots.size());
  for (auto [node, k] : roots) {
    codec::put_varint(out, static_cast<std::uint64_t>(node));
    codec::put_svarint(out, k);
  }
  codec::put_window(out, w, d.rank());
  codec::put_u64(out, count);
}

struct Header {
  std::uint16_t flags = 0;
  std::shared_ptr<const DynkinData> data;
  Normalization norm = Normalization::qch;
  Monomial anchor;
  PackingWindow window;
  std::uint64_t count = 0;
};

Header get_header(codec::Reader& in) {
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) throw ParseError("bad magic, not a QCharFile");
  std::uint16_t version = in.u16();
  if (version != kBinaryVersion) throw ParseError("unsupported QCharFile version " + std::to_string(version));
  Header h;
  h.flags = in.u16();
  if (h.flags & ~(kFlagTree | kFlagCheckpoint)) throw ParseError("unknown QCharFile flags");
  auto name_bytes = in.take(in.varint());
  std::string name(name_bytes.begin(), name_bytes.end());
  int rank = static_cast<int>(in.varint());
  if (rank < 1 || rank > 64) throw ParseError("bad rank in QCharFile");
  std::vector<std::pair<int, int>> edges;
  bool finite = true;
  if (name == "custom") {
    finite = in.byte() != 0;
    std::uint64_t n = in.varint();
    for (std::uint64_t k = 0; k < n; ++k) {
      int a = static_cast<int>(in.varint());
      int b = static_cast<int>(in.varint());
      edges.emplace_back(a, b);
    }
  }
  try {
    h.data = make_data(name, rank, edges, finite);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad Cartan data in QCharFile: ") + e.what());
  }
  std::uint8_t norm = in.byte();
  if (norm > 1) throw ParseError("bad normalization tag");
  h.norm = norm == 0 ? Normalization::qch : Normalization::chi;
  DrinfeldData roots(rank);
  std::uint64_t nroots = in.varint();
  for (std::uint64_t k = 0; k < nroots; ++k) {
    int node = static_cast<int>(in.varint());
    int index = static_cast<int>(in.svarint());
    if (node < 1 || node > rank) throw ParseError("anchor node out of range");
    roots.add_root(node, index);
  }
  h.anchor = roots.to_monomial();
  h.window = codec::get_window(in, rank);
  h.count = in.u64();
  return h;
}

PackingWindow window_for(const QChar& q, const EngineState* state) {
  std::vector<Factor> all;
  for (const auto& t : q.terms()) all.insert(all.end(), t.v.entries().begin(), t.v.entries().end());
  if (state)
    for (const auto& r : state->pending) all.insert(all.end(), r.v.entries().begin(), r.v.entries().end());
  return PackingWindow::covering(q.data().rank(), all);
}

codec::Bytes encode(const QChar& q, bool tree, const EngineState* state) {
  PackingWindow w = window_for(q, state);
  codec::Bytes out;
  std::uint16_t flags = (tree ? kFlagTree : 0) | (state ? kFlagCheckpoint : 0);
  put_header(out, q, flags, w, q.size());
  std::vector<std::uint16_t> prev;
  for (const auto& t : q.terms()) {
    auto units = pack_vvector(t.v, w);
    if (tree) {
      codec::put_front_coded(out, prev, units);
    } else {
      codec::put_varint(out, units.size());
      codec::put_units(out, units);
    }
    codec::put_coeff(out, t.coeff);
    prev = std::move(units);
  }
  if (state) {
    codec::put_svarint(out, state->next_depth);
    codec::put_varint(out, state->pending.size());
    for (const auto& r : state->pending) {
      auto units = pack_vvector(r.v, w);
      codec::put_varint(out, units.size());
      codec::put_units(out, units);
      codec::put_varint(out, r.ones);
      codec::put_varint(out, r.sparse.size());
      for (const auto& [node, c] : r.sparse) {
        codec::put_varint(out, static_cast<std::uint64_t>(node));
        codec::put_coeff(out, c);
      }
    }
  }
  return out;
}

QChar decode_body(codec::Reader& in, const Header& h) {
  QChar q(h.data, h.anchor, h.norm);
  std::vector<std::uint16_t> prev;
  bool tree = h.flags & kFlagTree;
  for (std::uint64_t n = 0; n < h.count; ++n) {
    std::vector<std::uint16_t> units = tree ? codec::get_front_coded(in, prev) : codec::get_units(in, in.varint());
    QCharTerm t;
    t.v = unpack_vvector(units, h.window);
    t.coeff = codec::get_coeff(in);
    t.monomial = reconstruct(*h.data, h.anchor, t.v);
    q.append(std::move(t));
    prev = std::move(units);
  }
  for (std::size_t n = 1; n < q.size(); ++n)
    if (!canonical_term_less(q.terms()[n - 1].v, q.terms()[n].v)) throw ParseError("QCharFile records out of order");
  return q;
}

}  // namespace

// ---------------------------------------------------------------- text

void write_text(std::ostream& os, const QChar& q) {
  const DynkinData& d = q.data();
  os << "# qchar text v1\n";
  os << "# type " << d.name() << '\n';
  if (d.name() == "custom") {
    os << "# rank " << d.rank() << '\n';
    os << "# edges";
    for (auto [a, b] : d.edges()) os << ' ' << a << '-' << b;
    os << '\n';
    if (!d.is_finite_type()) os << "# indefinite\n";
  }
  os << "# anchor " << q.anchor() << '\n';
  os << "# normalization " << (q.normalization() == Normalization::qch ? "qch" : "chi") << '\n';
  os << "# count " << q.size() << '\n';
  for (const auto& t : q.terms()) os << t.monomial << " : " << t.coeff << '\n';
}

QChar read_text(std::istream& is) {
  std::string line, type;
  int rank = 0;
  bool finite = true, seen_magic = false;
  std::vector<std::pair<int, int>> edges;
  Monomial anchor;
  bool have_anchor = false;
  Normalization norm = Normalization::qch;
  std::optional<std::size_t> count;
  std::vector<std::pair<Monomial, TPoly>> rows;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      std::istringstream hs(s.substr(1));
      std::string key;
      hs >> key;
      std::string rest;
      std::getline(hs, rest);
      rest = trim(rest);
      if (key == "qchar") {
        if (rest != "text v1") throw ParseError("unsupported text version '" + rest + "'");
        seen_magic = true;
      } else if (key == "type") {
        type = rest;
      } else if (key == "rank") {
        rank = std::stoi(rest);
      } else if (key == "edges") {
        std::istringstream es(rest);
        std::string e;
        while (es >> e) {
          auto dash = e.find('-');
          if (dash == std::string::npos) throw ParseError("bad edge '" + e + "'");
          edges.emplace_back(std::stoi(e.substr(0, dash)), std::stoi(e.substr(dash + 1)));
        }
      } else if (key == "indefinite") {
        finite = false;
      } else if (key == "anchor") {
        anchor = Monomial::parse(rest);
        have_anchor = true;
      } else if (key == "normalization") {
        if (rest == "qch") norm = Normalization::qch;
        else if (rest == "chi") norm = Normalization::chi;
        else throw ParseError("unknown normalization '" + rest + "'");
      } else if (key == "count") {
        count = static_cast<std::size_t>(std::stoull(rest));
      }
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'MONOMIAL : POLY'");
    rows.emplace_back(Monomial::parse(trim(s.substr(0, colon))), TPoly::parse(trim(s.substr(colon + 1))));
  }
  if (!seen_magic) throw ParseError("missing '# qchar text v1' header");
  if (type.empty()) throw ParseError("missing '# type' header");
  std::shared_ptr<const DynkinData> data;
  if (type == "custom") {
    data = make_data(type, rank, edges, finite);
  } else {
    data = std::make_shared<const DynkinData>(DynkinData::parse(type));
  }
  if (!have_anchor) {
    if (rows.empty()) throw ParseError("missing '# anchor' header");
    anchor = rows.front().first;
  }
  if (count && *count != rows.size()) throw ParseError("record count does not match '# count'");
  QChar q(data, anchor, norm);
  for (auto& [m, p] : rows) {
    auto v = vvector_between(*data, m, anchor);
    if (!v) throw ParseError("monomial " + m.to_string() + " is not below the anchor");
    q.append(QCharTerm{std::move(*v), std::move(m), std::move(p)});
  }
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- binary

std::vector<std::uint8_t> serialize(const QChar& q, bool tree) { return encode(q, tree, nullptr); }

QChar deserialize(std::span<const std::uint8_t> bytes) {
  codec::Reader in(bytes);
  Header h = get_header(in);
  if (h.flags & kFlagCheckpoint) throw ParseError("file is a checkpoint; load it with the checkpoint reader");
  QChar q = decode_body(in, h);
  if (!in.done()) throw ParseError("trailing bytes after QCharFile body");
  return q;
}

std::vector<std::uint8_t> serialize_checkpoint(const QChar& partial, const EngineState& state) {
  return encode(partial, true, &state);
}

std::pair<QChar, EngineState> deserialize_checkpoint(std::span<const std::uint8_t> bytes) {
  codec::Reader in(bytes);
  Header h = get_header(in);
  if (!(h.flags & kFlagCheckpoint)) throw ParseError("file has no pending section");
  QChar q = decode_body(in, h);
  EngineState st;
  st.next_depth = in.svarint();
  std::uint64_t n = in.varint();
  for (std::uint64_t k = 0; k < n; ++k) {
    PendingRecord r;
    r.v = unpack_vvector(codec::get_units(in, in.varint()), h.window);
    r.ones = in.varint();
    std::uint64_t ns = in.varint();
    for (std::uint64_t j = 0; j < ns; ++j) {
      int node = static_cast<int>(in.varint());
      if (node < 1 || node > h.data->rank()) throw ParseError("pending coloring node out of range");
      r.sparse.emplace_back(node, codec::get_coeff(in));
    }
    st.pending.push_back(std::move(r));
  }
  if (!in.done()) throw ParseError("trailing bytes after checkpoint");
  return {std::move(q), std::move(st)};
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

namespace {

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace

void save_qchar(const std::filesystem::path& path, const QChar& q, FileFormat format, bool tree) {
  if (format == FileFormat::binary) {
    write_bytes(path, serialize(q, tree));
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  write_text(out, q);
}

QChar load_qchar(const std::filesystem::path& path) {
  auto bytes = read_file_bytes(path);
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, std::begin(kMagic))) return deserialize(bytes);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  return read_text(in);
}

void save_checkpoint(const std::filesystem::path& path, const QChar& partial, const EngineState& state) {
  // Write then rename so an interrupted save never clobbers the previous snapshot.
  auto tmp = path;
  tmp += ".tmp";
  write_bytes(tmp, serialize_checkpoint(partial, state));
  std::filesystem::rename(tmp, path);
}

std::pair<QChar, EngineState> load_checkpoint(const std::filesystem::path& path) {
  return deserialize_checkpoint(read_file_bytes(path));
}

// ---------------------------------------------------------------- classical data

namespace {

std::vector<std::pair<Weight, TPoly>> by_height(const DynkinData& data, const ClassicalChar& ch) {
  std::vector<std::pair<Weight, TPoly>> rows(ch.terms().begin(), ch.terms().end());
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    long long ha = data.height_numerator(a.first), hb = data.height_numerator(b.first);
    if (ha != hb) return ha > hb;
    return b.first < a.first;
  });
  return rows;
}

std::pair<std::string, std::string> split_record(const std::string& line) {
  auto colon = line.find(':');
  if (colon == std::string::npos) throw ParseError("expected 'KEY : VALUE' in '" + line + "'");
  return {trim(std::string_view(line).substr(0, colon)), trim(std::string_view(line).substr(colon + 1))};
}

}  // namespace

void write_classical(std::ostream& os, const DynkinData& data, const ClassicalChar& ch) {
  for (const auto& [w, p] : by_height(data, ch)) os << w.to_string() << " : " << p << '\n';
}

ClassicalChar read_classical(std::istream& is, int rank) {
  ClassicalChar ch;
  std::string line;
  while (std::getline(is, line)) {
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto [w, p] = split_record(s);
    ch.add(Weight::parse(w, rank), TPoly::parse(p));
  }
  return ch;
}

void write_decomposition(std::ostream& os, const DecompositionTable& table) {
  for (const auto& [w, p] : table.rows) os << w.to_string() << " : " << p << '\n';
}

DecompositionTable read_decomposition(std::istream& is, int rank) {
  DecompositionTable t;
  std::string line;
  while (std::getline(is, line)) {
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto [w, p] = split_record(s);
    t.rows.emplace_back(Weight::parse(w, rank), TPoly::parse(p));
  }
  return t;
}

void write_matrix_records(std::ostream& os, const std::vector<Weight>& weights,
                          const std::vector<std::vector<TPoly>>& m) {
  os << "# columns:";
  for (std::size_t b = 0; b < weights.size(); ++b) os << (b ? " | " : " ") << weights[b].to_string();
  os << '\n';
  for (std::size_t a = 0; a < m.size(); ++a) {
    os << weights[a].to_string() << " :";
    for (std::size_t b = 0; b < m[a].size(); ++b) os << (b ? " | " : " ") << m[a][b];
    os << '\n';
  }
}

std::pair<std::vector<Weight>, std::vector<std::vector<TPoly>>> read_matrix_records(std::istream& is, int rank) {
  std::vector<Weight> cols;
  std::vector<std::vector<TPoly>> rows;
  std::string line;
  auto split_bar = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto bar = s.find('|', start);
      parts.push_back(trim(std::string_view(s).substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    return parts;
  };
  while (std::getline(is, line)) {
    std::string s = trim(line);
    if (s.empty()) continue;
    if (s.rfind("# columns:", 0) == 0) {
      for (const auto& c : split_bar(s.substr(10))) cols.push_back(Weight::parse(c, rank));
      continue;
    }
    if (s[0] == '#') continue;
    auto [w, rest] = split_record(s);
    std::vector<TPoly> row;
    for (const auto& c : split_bar(rest)) row.push_back(TPoly::parse(c));
    if (!cols.empty() && row.size() != cols.size()) throw ParseError("matrix row width mismatch");
    if (rows.size() >= cols.size() || !(Weight::parse(w, rank) == cols[rows.size()]))
      throw ParseError("matrix row label '" + w + "' does not match the column order");
    rows.push_back(std::move(row));
  }
  return {std::move(cols), std::move(rows)};
}

void write_aligned_matrix(std::ostream& os, const std::vector<Weight>& weights,
                          const std::vector<std::vector<TPoly>>& m) {
  std::size_t n = weights.size();
  std::vector<std::string> labels;
  for (const auto& w : weights) labels.push_back(w.to_string());
  std::vector<std::size_t> width(n + 1, 0);
  for (const auto& l : labels) width[0] = std::max(width[0], l.size());
  for (std::size_t b = 0; b < n; ++b) {
    width[b + 1] = labels[b].size();
    for (std::size_t a = 0; a < m.size(); ++a) width[b + 1] = std::max(width[b + 1], m[a][b].to_string().size());
  }
  os << std::left << std::setw(static_cast<int>(width[0])) << "" << " |";
  for (std::size_t b = 0; b < n; ++b) os << ' ' << std::setw(static_cast<int>(width[b + 1])) << labels[b];
  os << '\n';
  for (std::size_t a = 0; a < m.size(); ++a) {
    os << std::setw(static_cast<int>(width[0])) << labels[a] << " |";
    for (std::size_t b = 0; b < n; ++b) os << ' ' << std::setw(static_cast<int>(width[b + 1])) << m[a][b].to_string();
    os << '\n';
  }
  os << std::right;
}

void write_kl_result(std::ostream& os, const KLResult& r) {
  int rank = r.simple.data().rank();
  os << "# coefficients a_PQ\n";
  for (const auto& [m, p] : r.coefficients) {
    std::string roots = DrinfeldData::from_monomial(m, rank).to_string();
    os << (roots.empty() ? "1" : roots) << " : " << p << '\n';
  }
  write_text(os, r.simple);
}

}  // namespace qchar
