#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace framelab;
using framelab::testing::random_gaussian;
using framelab::testing::random_rational_matrix;
using framelab::testing::random_rational_vec;

namespace {

Rational q(long long a, long long b = 1) { return make_rational(a, b); }

}  // namespace

TEST(Scalar, RationalsStayInLowestTerms) {
  const Scalar s = Scalar::ratio(6, -8);
  EXPECT_EQ(s.to_string(), "-3/4");
  EXPECT_EQ((Scalar::ratio(1, 3) + Scalar::ratio(1, 6)).to_string(), "1/2");
  EXPECT_EQ(Scalar(4).to_string(), "4/1");
  EXPECT_EQ(Scalar(4).pretty(), "4");
}

TEST(Scalar, MixedArithmeticPromotesToFloat) {
  const Scalar exact = Scalar::ratio(1, 2);
  const Scalar f(0.25);
  EXPECT_TRUE((exact * exact).is_exact());
  EXPECT_FALSE((exact + f).is_exact());
  EXPECT_FALSE((f * exact).is_exact());
  EXPECT_DOUBLE_EQ((exact - f).to_double(), 0.25);
}

TEST(Scalar, ExactDivisionByZeroThrows) {
  try {
    (void)(Scalar(1) / Scalar(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::division_by_zero);
  }
}

TEST(Scalar, ParsesRationalsAndDecimals) {
  EXPECT_EQ(parse_rational("3/6")->str(), "1/2");
  EXPECT_EQ(parse_rational("-7")->str(), "-7");
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("x"));
  const auto d = parse_scalar("0.5");
  ASSERT_TRUE(d);
  EXPECT_FALSE(d->is_exact());
  EXPECT_TRUE(parse_scalar("-2/3")->is_exact());
}

TEST(Scalar, IntegerRootsAgreeWithPowers) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> dist(0, 1'000'000);
  for (int t = 0; t < 200; ++t) {
    const BigInt n = dist(rng);
    for (unsigned k = 1; k <= 5; ++k) {
      const BigInt r = integer_root(n, k);
      EXPECT_LE(boost::multiprecision::pow(r, k), n);
      EXPECT_GT(boost::multiprecision::pow(BigInt(r + 1), k), n);
    }
  }
  EXPECT_EQ(*exact_root(q(27, 8), 3), q(3, 2));
  EXPECT_FALSE(exact_root(q(2), 2));
}

TEST(Pnorm, DocumentedValues) {
  EXPECT_EQ(pnorm(Vec{Scalar(3), Scalar(4)}, SequenceSpaceSpec(2.0)), Scalar(5));
  EXPECT_TRUE(pnorm(Vec{Scalar(3), Scalar(4)}, SequenceSpaceSpec(2.0)).is_exact());
  for (int k : {1, 5, 12}) {
    Vec ones(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < ones.dim(); ++i) ones[i] = Scalar(1);
    for (double p : {1.5, 2.0, 3.0, 4.5}) {
      const double qq = p / (p - 1.0);
      EXPECT_NEAR(pnorm_value(ones, SequenceSpaceSpec(qq)), std::pow(double(k), 1.0 / qq), 1e-13);
    }
  }
  const Vec alternating{Scalar(1), Scalar(0), Scalar(1), Scalar(0), Scalar(1), Scalar(0)};
  EXPECT_NEAR(pnorm_value(alternating, SequenceSpaceSpec(2.0)), std::sqrt(3.0), 1e-15);
}

TEST(Pnorm, SingleCoordinateIsExactForAnyExponent) {
  const Vec v{Scalar(0), Scalar::ratio(-1, 8), Scalar(0)};
  for (double p : {1.5, 2.5, 3.0, 7.0}) {
    const Scalar n = pnorm(v, SequenceSpaceSpec(p));
    EXPECT_TRUE(n.is_exact());
    EXPECT_EQ(n, Scalar::ratio(1, 8));
  }
}

TEST(Pnorm, WeightsMatchDirectSum) {
  const SequenceSpaceSpec spec(3.0, std::vector<double>{2.0, 0.5, 1.0});
  const Vec v{Scalar(1), Scalar(-2), Scalar(3)};
  const double direct = std::cbrt(2.0 * 1 + 0.5 * 8 + 1.0 * 27);
  EXPECT_NEAR(pnorm_value(v, spec), direct, 1e-13);
}

TEST(Pnorm, InvalidSpecsAreRejected) {
  EXPECT_THROW(SequenceSpaceSpec(1.0), Error);
  EXPECT_THROW(SequenceSpaceSpec(2.0, std::vector<double>{1.0, 0.0}), Error);
  const SequenceSpaceSpec bad(2.0, SequenceSpaceSpec::WeightFn([](std::size_t i) { return i == 1 ? -1.0 : 1.0; }));
  try {
    (void)pnorm(Vec{Scalar(1), Scalar(1)}, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_spec);
  }
}

TEST(Pnorm, AbsoluteHomogeneityIsExact) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Vec v = random_rational_vec(rng, 5);
    const Scalar alpha = framelab::testing::random_rational(rng);
    Vec scaled(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) scaled[i] = alpha * v[i];
    for (double p : {2.0, 3.0, 4.0}) {
      const SequenceSpaceSpec spec(p);
      const auto lhs = pnorm_power_exact(scaled, spec);
      const auto rhs = pnorm_power_exact(v, spec);
      ASSERT_TRUE(lhs && rhs);
      EXPECT_EQ(*lhs, pow(abs(alpha), static_cast<int>(p)).exact() * *rhs);
      EXPECT_NEAR(pnorm_value(scaled, spec), std::abs(alpha.to_double()) * pnorm_value(v, spec), 1e-12);
    }
  }
}

TEST(Pnorm, TriangleInequality) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 3.0);
  for (double p : {1.1, 1.5, 2.0, 3.0, 7.0}) {
    const SequenceSpaceSpec spec(p);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> a(6), b(6), s(6);
      for (int i = 0; i < 6; ++i) {
        a[i] = g(rng);
        b[i] = g(rng);
        s[i] = a[i] + b[i];
      }
      EXPECT_LE(pnorm_value(Vec::from_doubles(s), spec),
                pnorm_value(Vec::from_doubles(a), spec) + pnorm_value(Vec::from_doubles(b), spec) + 1e-12);
    }
  }
}

TEST(Pnorm, DualWeightsGiveHolderPairing) {
  const SequenceSpaceSpec spec(3.0, std::vector<double>{1.0, 4.0, 0.25});
  const SequenceSpaceSpec dual = spec.dual();
  EXPECT_NEAR(dual.p(), 1.5, 1e-15);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(3), b(3);
    double pairing = 0.0;
    for (int i = 0; i < 3; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
      pairing += a[i] * b[i];
    }
    EXPECT_LE(std::abs(pairing), pnorm_value(Vec::from_doubles(a), spec) * pnorm_value(Vec::from_doubles(b), dual) + 1e-12);
  }
}

TEST(Matrix, RejectsEmptyAndMismatchedShapes) {
  EXPECT_THROW(LinearMapMatrix(0, 3), Error);
  const LinearMapMatrix a(2, 3);
  const LinearMapMatrix b(2, 2);
  EXPECT_THROW((void)(a * a), Error);
  EXPECT_THROW((void)(a + b), Error);
  EXPECT_THROW((void)a.apply(Vec(2)), Error);
}

TEST(Matrix, ExactRankAndInverse) {
  const LinearMapMatrix m = LinearMapMatrix::from_rows({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}});
  EXPECT_EQ(exact_rank(m), 1u);
  EXPECT_THROW(exact_inverse(m), Error);
  const LinearMapMatrix s = LinearMapMatrix::from_rows({{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(2)}});
  const LinearMapMatrix inv = exact_inverse(s);
  EXPECT_EQ(inv, LinearMapMatrix::from_rows({{Scalar::ratio(2, 3), Scalar::ratio(-1, 3)},
                                             {Scalar::ratio(-1, 3), Scalar::ratio(2, 3)}}));
}

TEST(SvdTriplet, DocumentedValues) {
  const SvdTriplet id = svd_triplet(LinearMapMatrix::identity(3));
  EXPECT_DOUBLE_EQ(id.sigma_min, 1.0);
  EXPECT_DOUBLE_EQ(id.sigma_max, 1.0);
  EXPECT_EQ(id.rank, 3u);

  const SvdTriplet d = svd_triplet(LinearMapMatrix::diagonal({Scalar(2), Scalar(1), Scalar(0)}));
  EXPECT_DOUBLE_EQ(d.sigma_min, 1.0);
  EXPECT_DOUBLE_EQ(d.sigma_max, 2.0);
  EXPECT_EQ(d.rank, 2u);
  EXPECT_DOUBLE_EQ(d.smallest(), 0.0);

  const LinearMapMatrix u = materialize(builtin_examples().system("mercedes-3"), 3, 2);
  const SvdTriplet t = svd_triplet(u);
  EXPECT_NEAR(t.sigma_min, 1.0, 1e-14);
  EXPECT_NEAR(t.sigma_max, std::sqrt(3.0), 1e-14);
  EXPECT_EQ(t.rank, 2u);
}

TEST(Pseudoinverse, DocumentedValues) {
  EXPECT_EQ(pseudoinverse(LinearMapMatrix::identity(3)), LinearMapMatrix::identity(3));
  EXPECT_EQ(pseudoinverse(LinearMapMatrix::diagonal({Scalar(2), Scalar(4)})),
            LinearMapMatrix::diagonal({Scalar::ratio(1, 2), Scalar::ratio(1, 4)}));
  const LinearMapMatrix u = materialize(builtin_examples().system("mercedes-3"), 3, 2);
  // S^{-1} U^T with S = [[2,1],[1,2]] worked out by hand.
  const LinearMapMatrix want = LinearMapMatrix::from_rows(
      {{Scalar::ratio(2, 3), Scalar::ratio(-1, 3), Scalar::ratio(1, 3)},
       {Scalar::ratio(-1, 3), Scalar::ratio(2, 3), Scalar::ratio(1, 3)}});
  EXPECT_EQ(pseudoinverse(u), want);
  EXPECT_LT(max_abs_difference(pseudoinverse_svd(u), want), 1e-14);
}

TEST(Pseudoinverse, PenroseIdentitiesExactOnRandomRationals) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<std::size_t> coin(0, 2);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    LinearMapMatrix m = random_rational_matrix(rng, r, c);
    if (coin(rng) == 0 && r > 1) {
      for (std::size_t k = 0; k < c; ++k) m(r - 1, k) = m(0, k) * Scalar(2);  // force a dependency
    }
    const LinearMapMatrix p = pseudoinverse(m);
    EXPECT_EQ(m * p * m, m);
    EXPECT_EQ(p * m * p, p);
    EXPECT_EQ((m * p).transpose(), m * p);
    EXPECT_EQ((p * m).transpose(), p * m);
  }
}

TEST(Pseudoinverse, SvdRouteSatisfiesPenroseIdentities) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, std::min(r, c))(rng);
    const LinearMapMatrix m = LinearMapMatrix::from_eigen(framelab::testing::random_of_rank(rng, r, c, k));
    const LinearMapMatrix p = pseudoinverse(m);
    const double scale = std::max(1.0, m.max_abs_entry()) * std::max(1.0, p.max_abs_entry());
    EXPECT_LT(max_abs_difference(m * p * m, m), 1e-10 * scale * std::max(1.0, m.max_abs_entry()));
    EXPECT_LT(max_abs_difference(p * m * p, p), 1e-10 * scale * std::max(1.0, p.max_abs_entry()));
    EXPECT_EQ(rank_of(m), k);
  }
}

TEST(OpNorm, DocumentedValues) {
  const SequenceSpaceSpec l2(2.0);
  const Bracket id = pq_opnorm(LinearMapMatrix::identity(3), l2, l2, NormMode::oracle);
  EXPECT_DOUBLE_EQ(id.lower, 1.0);
  EXPECT_DOUBLE_EQ(id.upper, 1.0);
  const Bracket d = pq_opnorm(LinearMapMatrix::diagonal({Scalar(3), Scalar(1)}), l2, l2, NormMode::oracle);
  EXPECT_NEAR(d.lower, 3.0, 1e-14);
  EXPECT_NEAR(d.upper, 3.0, 1e-14);
  const LinearMapMatrix shear = LinearMapMatrix::from_rows({{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}});
  const Bracket phi = pq_opnorm(shear, l2, l2, NormMode::oracle);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  EXPECT_NEAR(phi.lower, golden, 1e-6);
  EXPECT_NEAR(phi.upper, golden, 1e-6);
}

TEST(OpNorm, HilbertCaseAgreesWithSigmaMax) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  const SequenceSpaceSpec l2(2.0);
  for (int t = 0; t < 50; ++t) {
    const LinearMapMatrix m = LinearMapMatrix::from_eigen(random_gaussian(rng, dim(rng), dim(rng)));
    const Bracket b = pq_opnorm(m, l2, l2, NormMode::heuristic);
    EXPECT_NEAR(b.lower, svd_triplet(m).sigma_max, 1e-9);
    EXPECT_NEAR(b.upper, svd_triplet(m).sigma_max, 1e-9);
  }
}

// ||u v^T||_{p -> r} = ||u||_r ||v||_{p'} for a rank-one map.
TEST(OpNorm, OracleBracketsRankOneClosedForm) {
  std::mt19937_64 rng(32);
  for (double p : {1.5, 3.0}) {
    for (double r : {1.5, 2.0, 4.0}) {
      for (int t = 0; t < 4; ++t) {
        const Eigen::MatrixXd u = random_gaussian(rng, 3, 1);
        const Eigen::MatrixXd v = random_gaussian(rng, 3, 1);
        const LinearMapMatrix m = LinearMapMatrix::from_eigen(u * v.transpose());
        const double truth = detail::plain_pnorm(u.col(0), r) * detail::plain_pnorm(v.col(0), p / (p - 1.0));
        const Bracket b = pq_opnorm(m, SequenceSpaceSpec(p), SequenceSpaceSpec(r), NormMode::oracle);
        EXPECT_LE(b.lower, truth * (1 + 1e-12));
        EXPECT_GE(b.upper, truth * (1 - 1e-12));
        EXPECT_LT(b.width(), 0.05 * truth);
        const Bracket h = pq_opnorm(m, SequenceSpaceSpec(p), SequenceSpaceSpec(r), NormMode::heuristic);
        EXPECT_LE(h.lower, truth * (1 + 1e-12));
        EXPECT_GE(h.upper, truth * (1 - 1e-12));
      }
    }
  }
}

// On a diagonal map the extreme stretches l^p -> l^p are max |d_i| and min |d_i|.
TEST(OpNorm, DiagonalExtremesAreBracketed) {
  const LinearMapMatrix d = LinearMapMatrix::diagonal({Scalar(3), Scalar::ratio(1, 2), Scalar(2)});
  for (double p : {1.5, 3.0}) {
    const SequenceSpaceSpec spec(p);
    const SphereExtremes e = sphere_extremes(d, spec, spec, NormMode::oracle);
    EXPECT_TRUE(e.certified);
    EXPECT_LE(e.max.lower, 3.0 + 1e-12);
    EXPECT_GE(e.max.upper, 3.0 - 1e-12);
    EXPECT_LE(e.min.lower, 0.5 + 1e-12);
    EXPECT_GE(e.min.upper, 0.5 - 1e-12);
    EXPECT_NEAR(e.max.lower, 3.0, 1e-6);
    EXPECT_NEAR(e.min.upper, 0.5, 1e-6);
  }
}

TEST(OpNorm, OracleRefusesWideMatrices) {
  try {
    (void)pq_opnorm(LinearMapMatrix::identity(5), SequenceSpaceSpec(3.0), SequenceSpaceSpec(3.0), NormMode::oracle);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::oracle_dimension_exceeded);
  }
  EXPECT_NO_THROW(
      (void)pq_opnorm(LinearMapMatrix::identity(5), SequenceSpaceSpec(3.0), SequenceSpaceSpec(3.0), NormMode::heuristic));
}

TEST(OpNorm, HeuristicBracketContainsOracleValue) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    const LinearMapMatrix m = LinearMapMatrix::from_eigen(random_gaussian(rng, 3, 3));
    const SequenceSpaceSpec from(3.0), to(1.5);
    const Bracket o = pq_opnorm(m, from, to, NormMode::oracle);
    const Bracket h = pq_opnorm(m, from, to, NormMode::heuristic);
    EXPECT_LE(h.lower, o.upper + 1e-9);
    EXPECT_GE(h.upper, o.lower - 1e-9);
    EXPECT_LE(h.lower, h.upper);
  }
}
