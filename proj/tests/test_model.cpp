#include "catastroagri/analytics/indemnity.hpp"
#include "catastroagri/error.hpp"
#include "catastroagri/model/loss_notice.hpp"
#include "catastroagri/model/record.hpp"
#include "catastroagri/model/risk.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace catastroagri;
using namespace catastroagri::model;
using namespace std::chrono;

namespace {

InsuranceRecord chucuito() {
    InsuranceRecord r;
    r.campaign_year = "2010-2011";
    r.province = "CHUCUITO";
    r.district = "ALL";
    r.statistical_sector = "ALL";
    r.crop_name = "ALL";
    r.sown_area_has = Decimal::from_integer(1817);
    r.insured_area_has = Decimal::from_integer(1817);
    r.indemnity_amount_soles = Decimal::from_integer(726800);
    return r;
}

LossNotice notice(NoticeStatus status = status::Reported{}) {
    return LossNotice("SECTOR 12", Decimal::from_integer(10), Decimal::from_integer(4),
                      RiskPhenomenon(RiskKind::FrostLowTemperature), "flowering",
                      year{2011} / February / 14, std::move(status));
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::BadRequest;
}

}  // namespace

TEST(ValidateRecord, CleanTableRow) {
    const auto report = validate_record(chucuito());
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(report.warnings.empty());
}

TEST(ValidateRecord, NegativeInsuredArea) {
    auto r = chucuito();
    r.insured_area_has = Decimal::from_integer(-1);
    const auto report = validate_record(r);
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0].message(), "insured_area_has must be ≥ 0");
}

TEST(ValidateRecord, InsuredAboveSownIsOnlyAWarning) {
    auto r = chucuito();
    r.insured_area_has = Decimal::from_integer(10);
    r.sown_area_has = Decimal::from_integer(5);
    const auto report = validate_record(r);
    EXPECT_TRUE(report.ok());
    ASSERT_EQ(report.warnings.size(), 1u);
    EXPECT_EQ(report.warnings[0].rule, "insured exceeds sown");
}

TEST(ValidateRecord, BlankStringsAndNegativeCounts) {
    auto r = chucuito();
    r.province = "   ";
    r.crop_name = "";
    r.producers_benefited = -3;
    const auto report = validate_record(r);
    std::set<std::string> fields;
    for (const auto& v : report.violations) fields.insert(v.field);
    EXPECT_EQ(fields, (std::set<std::string>{"province", "crop_name", "producers_benefited"}));
}

TEST(ValidateRecord, IsPure) {
    testgen::Gen g(3);
    for (int i = 0; i < 200; ++i) {
        auto r = g.record();
        if (g.coin(0.3)) r.sown_area_has = -r.sown_area_has - Decimal::from_integer(1);
        const auto a = validate_record(r);
        const auto b = validate_record(r);
        EXPECT_EQ(a.violations, b.violations);
        EXPECT_EQ(a.warnings, b.warnings);
    }
}

TEST(Campaign, OrderingByLeadingYear) {
    EXPECT_EQ(campaign_start_year("2010-2011"), 2010);
    EXPECT_FALSE(campaign_start_year("campaign").has_value());
    EXPECT_TRUE(campaign_less("2009-2010", "2010-2011"));
    EXPECT_FALSE(campaign_less("999", "2010"));
    EXPECT_TRUE(campaign_less("abc", "abd"));
    EXPECT_TRUE(campaign_less("2010-2011", "unknown"));
    EXPECT_FALSE(campaign_less("2010-2011", "2010-2011"));
}

TEST(Risk, EveryKindHasExactlyOneCategory) {
    std::set<RiskKind> seen;
    std::map<RiskCategory, int> per_category;
    for (auto kind : kAllRiskKinds) {
        EXPECT_TRUE(seen.insert(kind).second);
        ++per_category[category_of(kind)];
        EXPECT_NO_THROW(RiskPhenomenon::make(category_of(kind), kind));
        for (auto other : {RiskCategory::Climatic, RiskCategory::Biological, RiskCategory::Other}) {
            if (other == category_of(kind)) continue;
            EXPECT_EQ(code_of([&] { RiskPhenomenon::make(other, kind); }), ErrorCode::DomainError);
        }
        EXPECT_EQ(parse_risk_kind(to_string(kind)), kind);
    }
    EXPECT_EQ(per_category[RiskCategory::Climatic], 10);
    EXPECT_EQ(per_category[RiskCategory::Biological], 2);
    EXPECT_EQ(per_category[RiskCategory::Other], 3);
    EXPECT_EQ(category_of(RiskKind::Drought), RiskCategory::Climatic);
    EXPECT_EQ(category_of(RiskKind::Disease), RiskCategory::Biological);
    EXPECT_EQ(category_of(RiskKind::Earthquake), RiskCategory::Other);
}

TEST(LossNotice, ConstructionRules) {
    EXPECT_EQ(code_of([] {
                  LossNotice(" ", Decimal::from_integer(1), Decimal{}, RiskPhenomenon(RiskKind::Drought), "",
                             year{2011} / 1 / 1);
              }),
              ErrorCode::InvalidNotice);
    EXPECT_EQ(code_of([] {
                  LossNotice("S", Decimal::from_integer(1), Decimal::from_integer(2),
                             RiskPhenomenon(RiskKind::Drought), "", year{2011} / 1 / 1);
              }),
              ErrorCode::InvalidNotice);
    EXPECT_EQ(code_of([] {
                  LossNotice("S", Decimal::from_integer(1), Decimal{}, RiskPhenomenon(RiskKind::Drought), "",
                             year{2011} / 2 / 30);
              }),
              ErrorCode::InvalidNotice);
}

TEST(LossNotice, EvaluateFromReported) {
    const auto next = advance_notice(notice(), event::Evaluate{});
    EXPECT_TRUE(std::holds_alternative<status::FieldEvaluated>(next.status()));
    EXPECT_EQ(next.statistical_sector(), "SECTOR 12");
}

TEST(LossNotice, IndemnifyAfterCatastrophicAdjustment) {
    const auto adjusted = notice(status::Adjusted{true});
    const auto paid = advance_notice(
        adjusted, event::Indemnify{Decimal::from_integer(800), *Decimal::parse("2.0")});
    ASSERT_TRUE(std::holds_alternative<status::Indemnified>(paid.status()));
    EXPECT_EQ(std::get<status::Indemnified>(paid.status()).amount_soles, Decimal::from_integer(1600));
}

TEST(LossNotice, NoIndemnityWithoutCatastrophicLoss) {
    EXPECT_EQ(code_of([] {
                  advance_notice(notice(status::Adjusted{false}),
                                 event::Indemnify{Decimal::from_integer(800), Decimal::from_integer(2)});
              }),
              ErrorCode::InvalidTransition);
}

TEST(LossNotice, StatusSequenceNeverSkipsOrRegresses) {
    testgen::Gen g(11);
    for (int trial = 0; trial < 500; ++trial) {
        LossNotice current = notice();
        int last_stage = stage_of(current.status());
        for (int step = 0; step < 8; ++step) {
            NoticeEvent ev;
            switch (g.integer(0, 2)) {
                case 0: ev = event::Evaluate{}; break;
                case 1: ev = event::Adjust{g.coin()}; break;
                default: ev = event::Indemnify{Decimal::from_integer(g.integer(1, 900)), g.decimal(50)}; break;
            }
            try {
                current = advance_notice(current, ev);
            } catch (const Error& e) {
                EXPECT_EQ(e.code(), ErrorCode::InvalidTransition);
                continue;
            }
            const int stage = stage_of(current.status());
            EXPECT_EQ(stage, last_stage + 1);
            last_stage = stage;
        }
    }
}

TEST(Indemnity, Examples) {
    using analytics::indemnity_due;
    EXPECT_EQ(indemnity_due(*Decimal::parse("2.0"), Decimal::from_integer(800)), Decimal::from_integer(1600));
    EXPECT_EQ(indemnity_due(Decimal{}, Decimal::from_integer(800)), Decimal{});
    EXPECT_EQ(indemnity_due(Decimal::from_integer(4948), Decimal::from_integer(400)),
              Decimal::from_integer(1979200));
    EXPECT_EQ(code_of([] { indemnity_due(Decimal::from_integer(1), Decimal{}); }), ErrorCode::InvalidRate);
    EXPECT_EQ(code_of([] { indemnity_due(Decimal::from_integer(-1), Decimal::from_integer(1)); }),
              ErrorCode::DomainError);
}

TEST(Indemnity, LinearInArea) {
    testgen::Gen g(5);
    for (int i = 0; i < 1000; ++i) {
        const auto a = Decimal::from_units(g.integer(0, 10'000) * 1000);
        const auto b = Decimal::from_units(g.integer(0, 10'000) * 1000);
        const auto r = Decimal::from_units(g.integer(1, 1'000'000) * 1000);
        EXPECT_EQ(analytics::indemnity_due(a + b, r),
                  analytics::indemnity_due(a, r) + analytics::indemnity_due(b, r));
    }
}

TEST(RateSchedule, CampaignOverridesDefault) {
    const auto schedule = analytics::RateSchedule::from_json(testgen::read_file(testgen::fixture("rates.json")));
    EXPECT_EQ(schedule.rate_for("2010-2011"), Decimal::from_integer(400));
    EXPECT_EQ(schedule.rate_for(" 2010-2011 "), Decimal::from_integer(400));
    EXPECT_EQ(schedule.rate_for("2012-2013"), analytics::kDefaultRateSolesPerHa);
    EXPECT_EQ(analytics::kDefaultRateSolesPerHa, Decimal::from_integer(800));
}
