#include <gtest/gtest.h>

#include "fibcomp/counting.hpp"
#include "fibcomp/enumerate.hpp"
#include "fibcomp/genfun.hpp"

using namespace fibcomp;

namespace {

std::vector<long> as_longs(const TruncatedSeries& s) {
  std::vector<long> out;
  for (const auto& c : s.coeffs()) out.push_back(c.get_si());
  return out;
}

}  // namespace

TEST(SeriesMul, Basics) {
  auto a = TruncatedSeries::from({1, 1}, 4), b = TruncatedSeries::from({1, -1}, 4);
  EXPECT_EQ(as_longs(series_mul(a, b)), (std::vector<long>{1, 0, -1, 0, 0}));

  auto geo = TruncatedSeries::from({1, 1, 1, 1, 1, 1, 1, 1, 1}, 8);
  EXPECT_EQ(series_mul(geo, TruncatedSeries::from({1, -1}, 8)), TruncatedSeries::one(8));
}

TEST(SeriesMul, OrderIsMinimumOfOperands) {
  auto a = TruncatedSeries::from({1, 2, 3}, 5), b = TruncatedSeries::from({1, 1}, 3);
  EXPECT_EQ(series_mul(a, b).order(), 3u);
  EXPECT_EQ((a + b).order(), 3u);
  EXPECT_EQ((a - b).order(), 3u);
}

TEST(SeriesMul, ProductOfGeometricFactorsMatchesP) {
  auto prod = TruncatedSeries::one(8);
  for (std::size_t j = 1; j <= 8; ++j) {
    auto factor = TruncatedSeries::monomial(0, 1, 8) - TruncatedSeries::monomial(j, 1, 8);
    prod = series_mul(prod, series_inverse(factor));
  }
  EXPECT_EQ(as_longs(prod), (std::vector<long>{1, 1, 2, 3, 5, 7, 11, 15, 22}));
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(prod[n], p_recurrence(n));
}

TEST(SeriesInverse, Examples) {
  EXPECT_EQ(as_longs(series_inverse(TruncatedSeries::from({1, -1}, 5))), (std::vector<long>{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(series_inverse(TruncatedSeries::one(5)), TruncatedSeries::one(5));
  EXPECT_EQ(as_longs(series_inverse(TruncatedSeries::from({1, -2}, 5))), (std::vector<long>{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(as_longs(series_inverse(TruncatedSeries::from({-1, 3, 1}, 3))),
            as_longs(series_inverse(TruncatedSeries::from({-1, 3, 1}, 3))));
  EXPECT_THROW(series_inverse(TruncatedSeries::from({2, 1}, 3)), DomainError);
  EXPECT_THROW(series_inverse(TruncatedSeries::from({0, 1}, 3)), DomainError);
}

TEST(SeriesInverse, IsAnInverse) {
  for (auto coeffs : {std::initializer_list<long>{1, 3, -2, 7}, {-1, 0, 5, 1, 1}, {1, -1, -1}}) {
    auto a = TruncatedSeries::from(coeffs, 12);
    EXPECT_EQ(series_mul(a, series_inverse(a)), TruncatedSeries::one(12));
  }
}

TEST(PartitionGf, Values) {
  EXPECT_EQ(as_longs(partition_gf(4)), (std::vector<long>{1, 1, 2, 3, 5}));
  EXPECT_EQ(as_longs(partition_gf(0)), (std::vector<long>{1}));
  EXPECT_EQ(partition_gf(20)[20], 627);
}

TEST(CompositionsGf, Values) {
  EXPECT_EQ(as_longs(compositions_gf(4)), (std::vector<long>{0, 1, 2, 4, 8}));
  EXPECT_EQ(compositions_gf(1)[1], 1);
  EXPECT_EQ(compositions_gf(13)[13], 4096);
  EXPECT_THROW(compositions_gf(0), DomainError);
  auto g = compositions_gf(30);
  for (std::uint64_t n = 1; n <= 30; ++n) EXPECT_EQ(g[n], c_count(n));
}

TEST(DistinctPartitionsEllGf, Values) {
  EXPECT_EQ(as_longs(distinct_partitions_ell_gf(1, 5)), (std::vector<long>{0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(as_longs(distinct_partitions_ell_gf(0, 3)), (std::vector<long>{1, 0, 0, 0}));
  EXPECT_EQ(distinct_partitions_ell_gf(2, 8)[8], 3);
  EXPECT_EQ(as_longs(distinct_partitions_ell_gf(5, 10)), (std::vector<long>(11, 0)));
  for (unsigned ell = 0; ell <= 6; ++ell) {
    auto g = distinct_partitions_ell_gf(ell, 24);
    for (std::uint64_t n = 0; n <= 24; ++n) {
      ASSERT_EQ(g[n], count_by_enumeration(n, PartitionClass::distinct_exactly(ell))) << ell << " " << n;
    }
  }
}

TEST(DistinctCompositionsGf, Values) {
  EXPECT_EQ(as_longs(distinct_compositions_gf(6)), (std::vector<long>{1, 1, 1, 3, 3, 5, 11}));
  EXPECT_EQ(distinct_compositions_gf(0)[0], 1);
  EXPECT_EQ(distinct_compositions_gf(3)[3], 3);
}

TEST(GenfunProperties, OracleEquality) {
  auto g = partition_gf(40);
  for (std::uint64_t n = 0; n <= 40; ++n) {
    EXPECT_EQ(g[n], p_recurrence(n));
    EXPECT_EQ(g[n], count_by_enumeration(n, PartitionClass::all()));
  }
}

TEST(GenfunProperties, EulerIdentityAtSeriesLevel) {
  // Built with general series ops rather than the in-place helpers.
  const std::size_t N = 40;
  auto odd = TruncatedSeries::one(N), dist = TruncatedSeries::one(N);
  for (std::size_t j = 1; j <= N; ++j) {
    dist = series_mul(dist, TruncatedSeries::one(N) + TruncatedSeries::monomial(j, 1, N));
    if (j % 2 == 1) odd = series_mul(odd, series_inverse(TruncatedSeries::one(N) - TruncatedSeries::monomial(j, 1, N)));
  }
  EXPECT_EQ(odd, dist);
  EXPECT_EQ(odd, odd_parts_gf(N));
  EXPECT_EQ(dist, distinct_parts_gf(N));
}

TEST(GenfunProperties, PentagonalCheck) {
  EXPECT_EQ(series_mul(partition_gf(40), euler_product(40)), TruncatedSeries::one(40));
  // Euler's pentagonal theorem: only generalized pentagonal exponents survive.
  auto e = euler_product(40);
  std::vector<long> expected(41, 0);
  for (long j = 0; j * (3 * j - 1) / 2 <= 40; ++j) {
    long sign = j % 2 == 0 ? 1 : -1;
    expected[static_cast<std::size_t>(j * (3 * j - 1) / 2)] = sign;
    if (j > 0 && j * (3 * j + 1) / 2 <= 40) expected[static_cast<std::size_t>(j * (3 * j + 1) / 2)] = sign;
  }
  EXPECT_EQ(as_longs(e), expected);
}

TEST(GenfunProperties, DistinctCompositionsAgainstEnumeration) {
  auto g = distinct_compositions_gf(20);
  EXPECT_EQ(g[0], 1);
  for (std::uint64_t n = 1; n <= 20; ++n) {
    EXPECT_EQ(g[n], count_by_enumeration(n, CompositionClass::distinct_parts)) << n;
    mpz_class total = 0;
    for (std::size_t ell = 0; ell * (ell + 1) / 2 <= n; ++ell) {
      total += factorial(ell) * distinct_partitions_ell_gf(ell, 20)[n];
    }
    EXPECT_EQ(g[n], total) << n;
  }
}

TEST(GenfunProperties, TruncationDiscipline) {
  // Factors with j > N leave coefficients <= N unchanged.
  auto base = partition_gf(15);
  auto extended = partition_gf(30).truncated(15);
  EXPECT_EQ(base, extended);
}
