#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "support.hpp"

using namespace framelab;

namespace {

const std::filesystem::path kSamples = std::filesystem::path(FRAMELAB_SOURCE_DIR) / "samples";

SparseVec sv(std::initializer_list<std::pair<std::size_t, Scalar>> entries) {
  SparseVec out;
  for (const auto& [i, v] : entries) out.add(i, v);
  return out;
}

SparseVec e(std::size_t i, Scalar c = Scalar(1)) { return sv({{i, c}}); }

const FrameSystem& builtin(const std::string& name) { return builtin_examples().system(name); }

}  // namespace

TEST(Term, DocumentedValues) {
  EXPECT_EQ(builtin("ex-3.3-G").term(3), e(1, Scalar::ratio(1, 4)));
  EXPECT_EQ(builtin("ex-3.6-F").term(6), e(1, Scalar(-1)));
  EXPECT_EQ(builtin("intro-G").term(2), e(2));
}

TEST(Term, IndicesStartAtOne) {
  try {
    (void)builtin("orthonormal").term(0);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::index_out_of_range);
  }
  EXPECT_THROW((void)builtin("mercedes-3").term(4), Error);
}

TEST(Builtins, FirstSixEntries) {
  const Scalar h = Scalar::ratio(1, 2), qt = Scalar::ratio(1, 4), e8 = Scalar::ratio(1, 8);
  const std::map<std::string, std::vector<SparseVec>> want = {
      {"intro-G", {e(1, h), e(2), e(1, qt), e(3), e(1, e8), e(4)}},
      {"intro-F", {e(1), e(2), e(1), e(3), e(1), e(4)}},
      {"ex-3.3-G", {e(1, h), e(2), e(1, qt), e(3), e(1, e8), e(4)}},
      {"ex-3.3-F", {e(1), e(2), e(1), e(3), e(1), e(4)}},
      {"ex-3.6-G", {e(1), e(1), e(1), e(2), e(2), e(2)}},
      {"ex-3.6-F", {e(1), e(1), e(1, Scalar(-1)), e(2), e(1), e(1, Scalar(-1))}},
      {"repeated-e1", {e(1), e(1), e(2), e(3), e(4), e(5)}},
      {"orthonormal", {e(1), e(2), e(3), e(4), e(5), e(6)}},
      {"no-dual-frame",
       {sv({{1, 1}, {2, 1}}), sv({{2, 1}, {3, 1}}), sv({{3, 1}, {4, 1}}), sv({{4, 1}, {5, 1}}), sv({{5, 1}, {6, 1}}),
        sv({{6, 1}, {7, 1}})}},
      {"reciprocal", {e(1), e(2, h), e(3, Scalar::ratio(1, 3)), e(4, qt), e(5, Scalar::ratio(1, 5)), e(6, Scalar::ratio(1, 6))}},
      {"linear", {e(1), e(2, Scalar(2)), e(3, Scalar(3)), e(4, Scalar(4)), e(5, Scalar(5)), e(6, Scalar(6))}},
  };
  for (const auto& [name, terms] : want) {
    for (std::size_t i = 0; i < terms.size(); ++i) EXPECT_EQ(builtin(name).term(i + 1), terms[i]) << name << " term " << i + 1;
  }
}

TEST(Builtins, RegistryLookups) {
  const ExampleRegistry& reg = builtin_examples();
  EXPECT_EQ(reg.system("ex-3.6-G").period(), 3u);
  EXPECT_TRUE(reg.has_pair("ex-3.6"));
  EXPECT_EQ(reg.pair("intro-pair").analysis, "intro-G");
  EXPECT_EQ(reg.pair("intro-pair").synthesis, "intro-F");
  try {
    (void)reg.system("nope");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::unknown_example);
  }
  for (const std::string& name : reg.pair_names()) {
    EXPECT_TRUE(reg.has_system(reg.pair(name).analysis));
    EXPECT_TRUE(reg.has_system(reg.pair(name).synthesis));
  }
}

TEST(Materialize, DocumentedValues) {
  const LinearMapMatrix g36 = materialize(builtin("ex-3.6-G"), 6, 2);
  EXPECT_EQ(g36, LinearMapMatrix::from_rows({{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}}));
  EXPECT_EQ(materialize(builtin("orthonormal"), 1, 1), LinearMapMatrix::identity(1));
  const LinearMapMatrix intro = materialize(builtin("intro-G"), 4, 3);
  EXPECT_EQ(intro, LinearMapMatrix::from_rows({{Scalar::ratio(1, 2), 0, 0}, {0, 1, 0}, {Scalar::ratio(1, 4), 0, 0}, {0, 0, 1}}));
}

TEST(Materialize, DenseOnlyAtItsOwnSize) {
  const FrameSystem& m = builtin("mercedes-3");
  EXPECT_EQ(materialize(m, 3, 2), m.dense());
  try {
    (void)materialize(m, 2, 2);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::truncation_of_dense);
  }
}

TEST(Materialize, SmallerLevelIsTheCorner) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> d(1, 25);
  for (const std::string& name : builtin_examples().system_names()) {
    const FrameSystem& fs = builtin(name);
    if (fs.is_dense()) continue;
    for (int t = 0; t < 10; ++t) {
      const std::size_t n1 = d(rng), m1 = d(rng), n2 = n1 + d(rng), m2 = m1 + d(rng);
      EXPECT_EQ(materialize(fs, n2, m2).block(n1, m1), materialize(fs, n1, m1)) << name;
    }
  }
}

TEST(Materialize, RowsMatchTerms) {
  const FrameSystem& fs = builtin("no-dual-frame");
  const LinearMapMatrix u = materialize(fs, 9, 12);
  for (std::size_t i = 1; i <= 9; ++i) EXPECT_EQ(u.row(i - 1), fs.term(i).to_dense(12));
}

TEST(Ladder, AlignedLevelsFollowBlocks) {
  EXPECT_EQ(aligned_level(builtin("ex-3.6-G"), 4), (TruncationLevel{12, 4}));
  EXPECT_EQ(aligned_level(builtin("intro-G"), 5), (TruncationLevel{10, 6}));
  EXPECT_EQ(aligned_level(builtin("repeated-e1"), 3), (TruncationLevel{4, 3}));
  EXPECT_EQ(aligned_level(builtin("no-dual-frame"), 3), (TruncationLevel{3, 4}));
  EXPECT_EQ(aligned_level(builtin("identity-4"), 9), (TruncationLevel{4, 4}));
  const Ladder l = aligned_ladder(builtin("ex-3.6-G"), {1, 2, 4});
  EXPECT_TRUE(is_valid_ladder(l));
  EXPECT_EQ(l.size(), 3u);
  EXPECT_EQ(aligned_ladder(builtin("mercedes-3"), {1, 2, 3}).size(), 1u);
  EXPECT_FALSE(is_valid_ladder({{4, 3}, {4, 5}}));
  EXPECT_FALSE(is_valid_ladder({}));
  EXPECT_EQ(lcm_period(builtin("ex-3.6-G"), builtin("intro-G")), 6u);
}

TEST(Generator, ValidationErrors) {
  auto kind_of = [](auto&& make) {
    try {
      make();
    } catch (const Error& err) {
      return err.kind();
    }
    return ErrorKind::invalid_argument;
  };
  const TermGroup unit{TermSpec{BasisIndex::rel(0), Coefficient::constant(Rational(1))}};
  EXPECT_EQ(kind_of([] { SequenceGenerator({}, {}, 1); }), ErrorKind::invalid_spec);
  EXPECT_EQ(kind_of([&] { SequenceGenerator({unit}, {unit}, 1); }), ErrorKind::invalid_spec);
  EXPECT_EQ(kind_of([] {
              SequenceGenerator({}, {TermGroup{TermSpec{BasisIndex::rel(-2), Coefficient::constant(Rational(1))}}}, 1);
            }),
            ErrorKind::invalid_spec);
  EXPECT_EQ(kind_of([] {
              SequenceGenerator({}, {TermGroup{TermSpec{BasisIndex::fixed(1), Coefficient::geometric(Rational(1), Rational(2))}}}, 1);
            }),
            ErrorKind::invalid_spec);
  EXPECT_NO_THROW(SequenceGenerator(
      {}, {TermGroup{TermSpec{BasisIndex::fixed(1), Coefficient::geometric(Rational(1), Rational(2), true)}}}, 1));
}

TEST(FrameIo, RoundTripsEveryBuiltin) {
  for (const std::string& name : builtin_examples().system_names()) {
    const FrameSystem& fs = builtin(name);
    const std::string text = frame_to_json(fs).dump(2);
    EXPECT_EQ(frame_from_json(parse_json_text(text)), fs) << name;
  }
}

TEST(FrameIo, SyntaxErrorsCarryLineAndColumn) {
  try {
    (void)parse_json_text("{\n  \"dense\": [[1, 2],\n  [3 4]]\n}");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(err.what()).find("line 3"), std::string::npos) << err.what();
  }
}

TEST(FrameIo, SchemaErrorsNameTheLocation) {
  try {
    (void)frame_from_json(parse_json_text(R"({"generator": {"block": [{"index": 1, "coef": {"kind": "cubic"}}]}})"));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(err.what()).find("/generator/block/0/coef/kind"), std::string::npos) << err.what();
  }
  EXPECT_THROW((void)frame_from_json(parse_json_text(R"({"dense": [[1, 2], [3]]})")), Error);
  EXPECT_THROW((void)frame_from_json(parse_json_text(R"({"dense": [["1/0"]]})")), Error);
}

TEST(FrameIo, MissingFile) {
  try {
    (void)load_frame(kSamples / "does-not-exist.json");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::file_not_found);
  }
}

TEST(FrameIo, SamplesMatchBuiltins) {
  EXPECT_EQ(materialize(load_frame(kSamples / "period3.json"), 30, 12), materialize(builtin("ex-3.6-G"), 30, 12));
  EXPECT_EQ(materialize(load_frame(kSamples / "period3_partner.json"), 30, 12), materialize(builtin("ex-3.6-F"), 30, 12));
  EXPECT_EQ(materialize(load_frame(kSamples / "half_powers.json"), 30, 16), materialize(builtin("intro-G"), 30, 16));
  EXPECT_EQ(materialize(load_frame(kSamples / "neighbours.json"), 20, 21), materialize(builtin("no-dual-frame"), 20, 21));
  EXPECT_EQ(load_frame(kSamples / "mercedes.json"), builtin("mercedes-3"));
  const LinearMapMatrix avg = load_matrix(kSamples / "average.json");
  EXPECT_EQ(avg(0, 1), Scalar::ratio(1, 2));
  EXPECT_EQ(load_matrix(kSamples / "drop_third.json").cols(), 3u);
}
