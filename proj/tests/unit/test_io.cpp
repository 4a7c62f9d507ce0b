#include "qchar/engine.hpp"
#include "qchar/errors.hpp"
#include "qchar/io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace qchar;

namespace {

std::shared_ptr<const DynkinData> D(const char* t) { return std::make_shared<const DynkinData>(DynkinData::parse(t)); }

QChar text_roundtrip(const QChar& q) {
  std::stringstream ss;
  write_text(ss, q);
  return read_text(ss);
}

}  // namespace

TEST(Text, A2Fundamental) {
  auto q = compute_l_fundamental(D("A2"), 1);
  std::stringstream ss;
  write_text(ss, q);
  EXPECT_EQ(ss.str(),
            "# qchar text v1\n# type A2\n# anchor Y[1,0]\n# normalization qch\n# count 3\n"
            "Y[1,0] : 1\nY[1,2]^-1 Y[2,1] : 1\nY[2,3]^-1 : 1\n");
  EXPECT_EQ(text_roundtrip(q), q);
}

TEST(Text, Errors) {
  std::istringstream no_header("Y[1,0] : 1\n");
  EXPECT_THROW(read_text(no_header), ParseError);
  std::istringstream bad_count("# qchar text v1\n# type A1\n# anchor Y[1,0]\n# count 2\nY[1,0] : 1\n");
  EXPECT_THROW(read_text(bad_count), ParseError);
  std::istringstream not_below("# qchar text v1\n# type A1\n# anchor Y[1,0]\nY[1,0]^2 : 1\n");
  EXPECT_THROW(read_text(not_below), ParseError);
}

TEST(Binary, Roundtrips) {
  for (const char* t : {"A1", "A2", "D4", "E6"}) {
    auto d = D(t);
    for (int i = 1; i <= d->rank(); ++i) {
      auto q = compute_l_fundamental(d, i);
      auto tree = serialize(q);
      auto flat = serialize(q, false);
      EXPECT_EQ(deserialize(tree), q);
      EXPECT_EQ(deserialize(flat), q);
      if (q.size() > 50) EXPECT_LT(tree.size(), flat.size());
      EXPECT_EQ(serialize(deserialize(tree)), tree);
      EXPECT_EQ(text_roundtrip(q), deserialize(tree));
      auto chi = q.shifted(3).to_chi();
      EXPECT_EQ(deserialize(serialize(chi)), chi);
    }
  }
}

TEST(Binary, AnchorOnly) {
  auto d = D("A3");
  QChar q(d, Monomial::y(2, 4));
  q.append(QCharTerm{VVector(), Monomial::y(2, 4), TPoly(1)});
  auto bytes = serialize(q, false);
  auto back = deserialize(bytes);
  EXPECT_EQ(back, q);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_TRUE(back.terms()[0].v.empty());
  // flat record: zero-length unit list, then the coefficient-1 tag
  EXPECT_EQ(bytes[bytes.size() - 2], 0);
  EXPECT_EQ(bytes.back(), 0);
}

TEST(Binary, CoefficientTags) {
  auto a2 = compute_l_fundamental(D("A2"), 1);
  auto bytes = serialize(a2, false);
  // the final record is a depth-2 v-vector of two units, then a 1-tag
  EXPECT_EQ(bytes.back(), 0);
  auto e8 = compute_l_fundamental(D("E8"), 1);
  EXPECT_EQ(deserialize(serialize(e8)).total_at_one(), 249);
}

TEST(Binary, CustomAndIndefiniteTypes) {
  auto custom = std::make_shared<const DynkinData>(DynkinData::from_edges(4, {{1, 2}, {2, 3}, {2, 4}}));
  auto q = compute_l_fundamental(custom, 1);
  EXPECT_EQ(deserialize(serialize(q)), q);
  EXPECT_EQ(text_roundtrip(q), q);
  auto affine = std::make_shared<const DynkinData>(
      DynkinData::indefinite_from_edges(5, {{1, 3}, {2, 3}, {4, 3}, {5, 3}}));
  QChar top(affine, Monomial::y(1, 0));
  top.append(QCharTerm{VVector(), Monomial::y(1, 0), TPoly(1)});
  auto back = deserialize(serialize(top));
  EXPECT_FALSE(back.data().is_finite_type());
  EXPECT_EQ(back, top);
}

TEST(Binary, CorruptInput) {
  auto q = compute_l_fundamental(D("D4"), 2);
  auto bytes = serialize(q);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(deserialize(bad), ParseError);
  bad = bytes;
  bad[4] = 9;  // version
  EXPECT_THROW(deserialize(bad), ParseError);
  for (std::size_t cut : {std::size_t{3}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    std::vector<std::uint8_t> t(bytes.begin(), bytes.begin() + static_cast<long>(cut));
    EXPECT_THROW(deserialize(t), ParseError) << cut;
  }
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(deserialize(bad), ParseError);
}

TEST(Binary, CheckpointFiles) {
  auto d = D("D4");
  EngineState st;
  st.next_depth = 3;
  PendingRecord r;
  r.v = VVector::parse("A[2,1] A[1,2] A[3,2]");
  r.add(4, TPoly(1));
  r.add(1, TPoly::parse("t^2"));
  st.pending.push_back(r);
  QChar partial(d, Monomial::y(2, 0));
  partial.append(QCharTerm{VVector(), Monomial::y(2, 0), TPoly(1)});
  auto bytes = serialize_checkpoint(partial, st);
  EXPECT_THROW(deserialize(bytes), ParseError);
  EXPECT_THROW(deserialize_checkpoint(serialize(partial)), ParseError);
  auto [q, s] = deserialize_checkpoint(bytes);
  EXPECT_EQ(q, partial);
  EXPECT_EQ(s.next_depth, 3);
  ASSERT_EQ(s.pending.size(), 1u);
  EXPECT_EQ(s.pending[0].v, r.v);
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(s.pending[0].coloring(i), r.coloring(i));

  auto path = std::filesystem::temp_directory_path() / "qchar_ckpt_test.bin";
  save_checkpoint(path, partial, st);
  EXPECT_EQ(load_checkpoint(path).first, partial);
  std::filesystem::remove(path);
}

TEST(Files, DetectFormat) {
  auto q = compute_l_fundamental(D("E6"), 1);
  auto dir = std::filesystem::temp_directory_path();
  save_qchar(dir / "qchar_io_test.txt", q, FileFormat::text);
  save_qchar(dir / "qchar_io_test.bin", q, FileFormat::binary);
  EXPECT_EQ(load_qchar(dir / "qchar_io_test.txt"), q);
  EXPECT_EQ(load_qchar(dir / "qchar_io_test.bin"), q);
  std::filesystem::remove(dir / "qchar_io_test.txt");
  std::filesystem::remove(dir / "qchar_io_test.bin");
  EXPECT_THROW(load_qchar(dir / "qchar_missing_file"), Error);
}

TEST(Records, Classical) {
  auto d = DynkinData::parse("A2");
  auto ch = freudenthal_char(d, Weight::parse("w1+w2", 2));
  std::stringstream ss;
  write_classical(ss, d, ch);
  EXPECT_EQ(ss.str().substr(0, 10), "w1+w2 : 1\n");
  EXPECT_EQ(read_classical(ss, 2), ch);
  DecompositionTable t;
  t.rows.emplace_back(Weight::parse("w1", 8), TPoly(1));
  t.rows.emplace_back(Weight::parse("0", 8), TPoly::parse("t^2"));
  std::stringstream ts;
  write_decomposition(ts, t);
  EXPECT_EQ(ts.str(), "w1 : 1\n0 : t^2\n");
  EXPECT_EQ(read_decomposition(ts, 8), t);
}

TEST(Records, MatrixFixture) {
  std::ifstream in(std::string(QCHAR_FIXTURE_DIR) + "/e8_ic_matrix.txt");
  auto [ws, m] = read_matrix_records(in, 8);
  ASSERT_EQ(ws.size(), 6u);
  EXPECT_EQ(ws[1], Weight::parse("2w1", 8));
  EXPECT_EQ(m[1][4], TPoly::parse("t^2+t^4+t^6"));
  EXPECT_EQ(m[0][5], TPoly::parse("t^8"));
  std::stringstream ss;
  write_matrix_records(ss, ws, m);
  auto again = read_matrix_records(ss, 8);
  EXPECT_EQ(again.first, ws);
  EXPECT_EQ(again.second, m);
}
