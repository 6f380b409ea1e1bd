#include <gtest/gtest.h>

#include "scitype/error.hpp"
#include "scitype/param.hpp"

namespace scitype {
namespace {

TEST(ParamValue, ReportsItsType) {
  EXPECT_EQ(ParamValue(3).type(), ParamType::Integer);
  EXPECT_EQ(ParamValue(0.5).type(), ParamType::Real);
  EXPECT_EQ(ParamValue("mean").type(), ParamType::Text);
  EXPECT_EQ(ParamValue(true).type(), ParamType::Boolean);
  EXPECT_EQ(ParamValue(std::vector<double>{1.0}).type(), ParamType::RealList);
  EXPECT_EQ(ParamValue(std::vector<std::string>{"a"}).type(), ParamType::TextList);
}

TEST(ParamValue, WrongAccessRaisesDomainViolation) {
  try {
    (void)ParamValue(3).as<std::string>();
    FAIL() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
}

TEST(ParamValue, IntegersWidenToReals) { EXPECT_EQ(ParamValue(4).as_real(), 4.0); }

TEST(ParamValue, RendersCompactly) {
  EXPECT_EQ(ParamValue(3).render(), "3");
  EXPECT_EQ(ParamValue(0.5).render(), "0.5");
  EXPECT_EQ(ParamValue(true).render(), "true");
  EXPECT_EQ(ParamValue("a").render(), "\"a\"");
  EXPECT_EQ(ParamValue(std::vector<double>{1.0, 2.5}).render(), "[1, 2.5]");
}

TEST(ParamValue, EqualityIsTypeSensitive) {
  EXPECT_EQ(ParamValue(1.0), ParamValue(1.0));
  EXPECT_NE(ParamValue(1), ParamValue(1.0));
  EXPECT_NE(ParamValue("1"), ParamValue(1));
}

TEST(ParamNames, FollowIdentifierRules) {
  EXPECT_TRUE(is_valid_param_name("alpha"));
  EXPECT_TRUE(is_valid_param_name("scaler__with_mean"));
  EXPECT_TRUE(is_valid_param_name("h2"));
  EXPECT_FALSE(is_valid_param_name(""));
  EXPECT_FALSE(is_valid_param_name("Alpha"));
  EXPECT_FALSE(is_valid_param_name("2x"));
  EXPECT_FALSE(is_valid_param_name("a-b"));
  EXPECT_FALSE(is_valid_param_name("a__"));
}

TEST(ParamNames, SplitAtFirstSeparator) {
  const auto [head, tail] = split_nested("inner__scaler__with_mean");
  EXPECT_EQ(head, "inner");
  EXPECT_EQ(tail, "scaler__with_mean");
  EXPECT_TRUE(split_nested("k").second.empty());
}

TEST(ParamMap, KeepsInsertionOrderAndOverwrites) {
  ParamMap m{{"b", 1}, {"a", 2}};
  m.set("b", 3);
  EXPECT_EQ(m.keys(), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(m.at("b"), ParamValue(3));
}

TEST(ParamMap, RejectsInvalidNames) {
  ParamMap m;
  EXPECT_THROW(m.set("Bad", 1), Error);
}

TEST(ParamMap, NestedAndPrefixedAreInverse) {
  const ParamMap inner{{"with_mean", true}, {"with_scale", false}};
  const ParamMap outer = inner.prefixed("scaler");
  EXPECT_EQ(outer.keys(), (std::vector<std::string>{"scaler__with_mean", "scaler__with_scale"}));
  EXPECT_EQ(outer.nested("scaler"), inner);
  EXPECT_TRUE(outer.nested("learner").empty());
}

TEST(ParamMap, MissingKeyThrows) {
  const ParamMap m;
  EXPECT_THROW((void)m.at("nope"), Error);
  EXPECT_EQ(m.find("nope"), nullptr);
}

TEST(TagMap, WithOverridesAndAdds) {
  const TagMap t{{"deterministic", true}};
  const TagMap u = t.with({{"deterministic", false}, {"is_composite", true}});
  EXPECT_EQ(u["deterministic"], ParamValue(false));
  EXPECT_EQ(u["is_composite"], ParamValue(true));
  EXPECT_EQ(t["deterministic"], ParamValue(true));
}

TEST(Domain, BuiltinsDecideMembership) {
  EXPECT_TRUE(Domain::positive_reals().contains(0.1));
  EXPECT_FALSE(Domain::positive_reals().contains(0.0));
  EXPECT_TRUE(Domain::non_negative_reals().contains(0.0));
  EXPECT_TRUE(Domain::unit_interval_left_open().contains(1.0));
  EXPECT_FALSE(Domain::unit_interval_left_open().contains(0.0));
  EXPECT_FALSE(Domain::open_unit_interval().contains(1.0));
  EXPECT_TRUE(Domain::integers_at_least(1).contains(1));
  EXPECT_FALSE(Domain::integers_at_least(1).contains(0));
  EXPECT_TRUE(Domain::text_one_of({"mean", "majority_vote"}).contains("mean"));
  EXPECT_FALSE(Domain::text_one_of({"mean", "majority_vote"}).contains("median"));
}

TEST(Coerce, IntegerToRealOnly) {
  const auto r = coerce(ParamValue(2), ParamType::Real);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, ParamValue(2.0));
  EXPECT_FALSE(coerce(ParamValue("2"), ParamType::Real).has_value());
}

TEST(Error, CarriesComponentContext) {
  const Error e(ErrorCode::DomainViolation, "bad alpha");
  const Error wrapped = e.within("inner").within("outer");
  EXPECT_EQ(wrapped.code(), ErrorCode::DomainViolation);
  EXPECT_EQ(wrapped.context(), (std::vector<std::string>{"outer", "inner"}));
  EXPECT_NE(std::string(wrapped.what()).find("DomainViolation"), std::string::npos);
}

}  // namespace
}  // namespace scitype
