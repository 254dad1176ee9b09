#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "equical/calibration.hpp"
#include "oracles.hpp"

using namespace equical;

namespace {

CdpOddsReport make_report(double r10_fa, double r01_nn) {
    CdpOddsReport rep;
    rep.r10_pp = {{2.0 * r10_fa, Hypothesis::h1, Outcome::pos_pos},
                  {r10_fa, Hypothesis::h1, Outcome::pos_pos}};
    rep.r01_pn = {1.0, Hypothesis::h0, Outcome::pos_neg};
    rep.r10_np = {{1.0, Hypothesis::h1, Outcome::neg_pos},
                  {1.0, Hypothesis::h1, Outcome::neg_pos}};
    rep.r01_nn = {r01_nn, Hypothesis::h0, Outcome::neg_neg};
    return rep;
}

}  // namespace

TEST_CASE("required_power: the three reference models at the 95th percentile") {
    CalibrationTarget bp11_t{bp11(), 0.95};
    PowerRequirement r = required_power(0.05, bp11_t);
    REQUIRE(r.feasible());
    CHECK_CLOSE(*r.power, 0.95, 1e-6);

    CalibrationTarget bp12_t{bp12(), 0.95};
    r = required_power(0.05, bp12_t);
    REQUIRE(r.feasible());
    CHECK_CLOSE(*r.power, 0.1736, 1e-4);

    CalibrationTarget bp0505_t{bp0505(), 0.95};
    r = required_power(0.05, bp0505_t);
    CHECK_FALSE(r.feasible());
    CHECK_CLOSE(r.limiting_alpha, 1.0 / 161.45, 2e-4);

    CHECK_THROWS_AS(required_power(0.0, bp11_t), std::domain_error);
}

TEST_CASE("max_alpha anchors") {
    CHECK_CLOSE(max_alpha({bp0505(), 0.95}, 1.0), 0.006196, 2e-4);
    CHECK_CLOSE(max_alpha({bp11(), 0.95}, 1.0), 1.0 / 19.0, 1e-9);
    CHECK_CLOSE(max_alpha({bp12(), 0.95}, 1.0), 0.2880, 1e-3);
    CHECK_THROWS_AS(max_alpha({bp11(), 0.95}, 0.0), std::domain_error);
}

TEST_CASE("max_alpha times the quantile returns the power cap") {
    for (double cap : {0.4, 0.8, 1.0}) {
        for (double pct : {0.8, 0.9, 0.95}) {
            CalibrationTarget t{bp11(), pct};
            CHECK_CLOSE(max_alpha(t, cap) * odds_quantile(bp11(), pct), cap, 1e-12);
        }
    }
}

TEST_CASE("required_negative_power anchors") {
    PowerRequirement r = required_negative_power(0.05, {bp11(), 0.95});
    REQUIRE(r.feasible());
    CHECK_CLOSE(*r.power, 0.95, 1e-6);

    r = required_negative_power(0.05, {bp11(), 0.90});
    REQUIRE(r.feasible());
    CHECK_CLOSE(*r.power, 1.0 - 0.95 / 9.0, 1e-6);
    CHECK_CLOSE(*r.power, 0.894, 1e-3);

    r = required_negative_power(0.10, {bp11(), 0.90});
    REQUIRE(r.feasible());
    CHECK_CLOSE(*r.power, 0.90, 1e-6);

    // Threshold below 1 - alpha: any power suffices.
    r = required_negative_power(0.05, {bp11(), 0.30});
    REQUIRE(r.feasible());
    CHECK(*r.power == 0.0);
}

TEST_CASE("calibration round trip over an (alpha, percentile) grid") {
    for (double alpha = 0.01; alpha <= 0.2 + 1e-12; alpha += 0.01) {
        for (double pct = 0.80; pct <= 0.99 + 1e-12; pct += 0.01) {
            CalibrationTarget t{bp11(), pct};
            PowerRequirement r = required_power(alpha, t);
            if (!r.feasible()) continue;
            double odds = post_odds_positive({alpha, *r.power}).value;
            CHECK_CLOSE(odds_cdf(bp11(), odds), pct, 1e-6);
        }
    }
}

TEST_CASE("cdp_search picks the smallest qualifying plan") {
    std::vector<CdpCandidate> set = {
        {"minimal", 626, make_report(139.6, 21.4)},
        {"upfront", 718, make_report(314.0, 45.1)},
        {"base", 780, make_report(165.6, 42.8)},
        {"robust95", 926, make_report(183.1, 85.5)},
        {"robust99", 1584, make_report(893.8, 445.5)},
    };
    auto hit = cdp_search(set, 66.1);
    REQUIRE(hit.has_value());
    CHECK(hit->name == "robust95");
    CHECK(hit->total_n == 926);

    // Without the robust options nothing qualifies: base fails on r01_nn.
    std::vector<CdpCandidate> weak(set.begin(), set.begin() + 3);
    CHECK_FALSE(cdp_search(weak, 66.1).has_value());

    // Threshold zero: everything qualifies, smallest N wins.
    auto all = cdp_search(set, 0.0);
    REQUIRE(all.has_value());
    CHECK(all->total_n == 626);

    CHECK_FALSE(cdp_search({}, 1.0).has_value());
}

TEST_CASE("cdp_search is permutation invariant with documented tie-breaks") {
    std::vector<CdpCandidate> set = {
        {"a", 900, make_report(100.0, 70.0)},
        {"b", 900, make_report(100.0, 90.0)},
        {"c", 1000, make_report(500.0, 500.0)},
    };
    auto forward = cdp_search(set, 66.1);
    std::reverse(set.begin(), set.end());
    auto backward = cdp_search(set, 66.1);
    REQUIRE(forward.has_value());
    REQUIRE(backward.has_value());
    // Tie on N resolved toward larger r01_nn regardless of order.
    CHECK(forward->name == "b");
    CHECK(backward->name == "b");

    // Full tie: input order decides.
    std::vector<CdpCandidate> tied = {
        {"first", 500, make_report(100.0, 80.0)},
        {"second", 500, make_report(100.0, 80.0)},
    };
    auto front = cdp_search(tied, 66.1);
    REQUIRE(front.has_value());
    CHECK(front->name == "first");
}
