#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "scitype/distribution.hpp"
#include "scitype/error.hpp"

namespace scitype {
namespace {

TEST(Normal, DefaultsToStandard) {
  const Normal n;
  EXPECT_EQ(n.get_params(), (ParamMap{{"mu", 0.0}, {"sigma", 1.0}}));
}

TEST(Normal, ParameterizedByMeanAndStandardDeviation) {
  const Normal n(1.0, 4.0);
  EXPECT_EQ(n.get_params(), (ParamMap{{"mu", 1.0}, {"sigma", 4.0}}));
}

// 1 / (4 sqrt(2 pi)) = 0.099735570100358...
TEST(Normal, PdfAtMeanOracle) { EXPECT_NEAR(Normal(1.0, 4.0).pdf(1.0), 0.0997356, 1e-7); }

// Standard normal quantile table: Phi(1.96) = 0.9750021048517795.
TEST(Normal, CdfTableOracle) {
  EXPECT_NEAR(Normal().cdf(1.96), 0.9750021, 1e-6);
  EXPECT_NEAR(Normal().cdf(-1.96), 1.0 - 0.9750021, 1e-6);
}

TEST(Normal, CdfAtMeanIsHalf) { EXPECT_NEAR(Normal(3.0, 2.0).cdf(3.0), 0.5, 1e-12); }

TEST(Normal, FarTailsSaturate) {
  EXPECT_EQ(Normal().cdf(-40.0), 0.0);
  EXPECT_EQ(Normal().cdf(40.0), 1.0);
  EXPECT_GE(Normal().pdf(40.0), 0.0);
}

TEST(Normal, RejectsNonPositiveSigma) {
  EXPECT_THROW(Normal(0.0, 0.0), Error);
  EXPECT_THROW(Normal(0.0, -1.0), Error);
}

TEST(Normal, WithParamsIsAFreshValue) {
  const Normal n;
  const auto m = n.with_params({{"sigma", 2.0}});
  EXPECT_EQ(n.get_params().at("sigma"), ParamValue(1.0));
  EXPECT_EQ(m->get_params().at("sigma"), ParamValue(2.0));
  EXPECT_NEAR(m->pdf(0.0), 0.5 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
}

TEST(Normal, UnknownParameterRejected) {
  try {
    (void)Normal().with_params({{"nu", 1.0}});
    FAIL() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownParameter);
  }
}

TEST(Normal, TagsDescribeTheValueObject) {
  const TagMap t = Normal().get_tags();
  EXPECT_EQ(t["scitype"], ParamValue("distribution"));
  EXPECT_EQ(t["symmetric"], ParamValue(true));
  EXPECT_EQ(t["support"], ParamValue("reals"));
  EXPECT_FALSE(Normal().is_entity());
}

}  // namespace
}  // namespace scitype
