#include <doctest.h>

#include <algorithm>
#include <random>

#include "siteeval/ahp.hpp"
#include "siteeval/error.hpp"
#include "support.hpp"

using namespace siteeval;
using namespace siteeval::ahp;
using testsupport::Matrix;

namespace {

void check_against_oracle(const Matrix& m, double tol) {
    const auto items = testsupport::ids("x", m.size());
    const auto r = derive_weights(testsupport::judgment("N", items, m));
    const auto w = testsupport::oracle_eigenvector(m);
    const auto c = testsupport::oracle_consistency(m, w);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(r.weights.values()[i] == doctest::Approx(w[i]).epsilon(tol));
    CHECK(r.consistency.lambda_max == doctest::Approx(c.lambda_max).epsilon(tol));
    CHECK(r.consistency.cr == doctest::Approx(c.cr).epsilon(tol));
}

}  // namespace

TEST_CASE("parse judgments") {
    CHECK(parse_judgment("3") == 3.0);
    CHECK(parse_judgment("1/3") == 1.0 / 3.0);
    CHECK(parse_judgment(" 2 / 7 ") == 2.0 / 7.0);
    CHECK(parse_judgment("0.5") == 0.5);
    CHECK_THROWS_AS(parse_judgment("three"), ValidationError);
    CHECK_THROWS_AS(parse_judgment("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_judgment(""), ValidationError);
}

TEST_CASE("goal matrix against the oracle and published values") {
    const auto r = derive_weights(testsupport::judgment("A", {"B1", "B2", "B3", "B4"}, testsupport::kGoalMatrix));
    check_against_oracle(testsupport::kGoalMatrix, 1e-9);
    const std::vector<double> printed{0.487, 0.276, 0.118, 0.118};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r.weights.values()[i] - printed[i]) <= 0.005);
    CHECK(std::abs(r.consistency.cr - 0.0592) <= 0.003);
    CHECK(r.consistency.ri == 0.90);
    CHECK(r.consistency.consistent);
    CHECK(r.weights.ids() == std::vector<std::string>{"B1", "B2", "B3", "B4"});
}

TEST_CASE("criterion matrices against the oracle") {
    check_against_oracle(testsupport::kB1Matrix, 1e-9);
    check_against_oracle(testsupport::kB2Matrix, 1e-9);
    check_against_oracle(testsupport::kB3Matrix, 1e-9);
    check_against_oracle(testsupport::kB4Matrix, 1e-9);

    const auto b1 = derive_weights(testsupport::judgment("B1", {"C1", "C2", "C3"}, testsupport::kB1Matrix));
    const std::vector<double> printed{0.594, 0.157, 0.249};
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(b1.weights.values()[i] - printed[i]) <= 0.005);
}

TEST_CASE("two by two closed form") {
    const auto r = derive_weights(testsupport::judgment("N", {"a", "b"}, {{1, 3}, {1.0 / 3, 1}}));
    CHECK(r.weights.at("a") == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.weights.at("b") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.consistency.lambda_max == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.consistency.ci == 0.0);
    CHECK(r.consistency.cr == 0.0);
}

TEST_CASE("consistent matrix recovers its generating weights") {
    const std::vector<double> w{0.5, 0.3, 0.2};
    const auto r = derive_weights(testsupport::judgment("N", {"a", "b", "c"}, testsupport::consistent_matrix(w)));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.weights.values()[i] - w[i]) <= 1e-9);
    CHECK(std::abs(r.consistency.cr) <= 1e-9);
}

TEST_CASE("random index lookup") {
    CHECK(ri_lookup(4) == 0.90);
    CHECK(ri_lookup(3) == 0.58);
    CHECK(ri_lookup(1) == 0.0);
    CHECK_THROWS_WITH_AS(ri_lookup(10), doctest::Contains("RI undefined for order > 9"), ValidationError);
}

TEST_CASE("matrix validation names the node and cell") {
    Matrix bad = testsupport::kB1Matrix;
    bad[1][0] = 0.5;
    CHECK_THROWS_WITH_AS(testsupport::judgment("B1", {"C1", "C2", "C3"}, bad), doctest::Contains("'B1'"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(testsupport::judgment("B1", {"C1", "C2", "C3"}, bad), doctest::Contains("C2"),
                         ValidationError);

    Matrix diag = testsupport::kB3Matrix;
    diag[0][0] = 2;
    CHECK_THROWS_AS(testsupport::judgment("B3", {"C10", "C11"}, diag), ValidationError);

    CHECK_THROWS_AS(testsupport::judgment("N", {"a", "b"}, {{1, 11}, {1.0 / 11, 1}}), ValidationError);
    CHECK_THROWS_AS(testsupport::judgment("N", {"a", "a"}, {{1, 3}, {1.0 / 3, 1}}), ValidationError);
    CHECK_THROWS_AS(testsupport::judgment("N", {"a", "b"}, {{1, 3}}), ValidationError);
}

TEST_CASE("from_text keeps fractions exact") {
    const auto m = JudgmentMatrix::from_text("B3", {"C10", "C11"}, {{"1", "1/3"}, {"3", "1"}});
    CHECK(m.at(0, 1) == 1.0 / 3.0);
    CHECK(m.text(0, 1) == std::optional<std::string>("1/3"));
}

TEST_CASE("global synthesis") {
    const auto h = testsupport::campus_hierarchy();
    const auto crit =
        derive_weights(testsupport::judgment("A", {"B1", "B2", "B3", "B4"}, testsupport::kGoalMatrix)).weights;
    const std::map<std::string, testsupport::Matrix> mats{{"B1", testsupport::kB1Matrix},
                                                          {"B2", testsupport::kB2Matrix},
                                                          {"B3", testsupport::kB3Matrix},
                                                          {"B4", testsupport::kB4Matrix}};
    std::map<std::string, WeightVector> rel;
    for (const auto& [cid, children] : testsupport::kCriteria) {
        rel.emplace(cid, derive_weights(testsupport::judgment(cid, children, mats.at(cid))).weights);
    }
    const auto g = synthesize_global(h, crit, rel);
    CHECK(g.ids() == testsupport::kIndicators);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& id = g.ids()[i];
        const auto* c = h.criterion_of(id);
        CHECK(g.values()[i] == doctest::Approx(crit.at(c->id) * rel.at(c->id).at(id)).epsilon(1e-15));
    }
    CHECK(std::abs(g.at("C1") - 0.289) <= 0.001);
    CHECK(std::abs(g.at("C14") - 0.0623) <= 0.0005);
    CHECK(g.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Partition preserved.
    for (const auto& [cid, children] : testsupport::kCriteria) {
        double s = 0.0;
        for (const auto& c : children) s += g.at(c);
        CHECK(std::abs(s - crit.at(cid)) <= 1e-9);
    }

    IndicatorHierarchy single;
    single.criteria.push_back({"B", "only", {"x", "y"}});
    single.indicators = {{"x", "x", IndicatorKind::Qualitative}, {"y", "y", IndicatorKind::Qualitative}};
    const WeightVector relxy{{"x", 0.3}, {"y", 0.7}};
    CHECK(synthesize_global(single, WeightVector{{"B", 1.0}}, {{"B", relxy}}) == relxy);
    CHECK_THROWS_AS(synthesize_global(single, WeightVector{{"B", 0.9}}, {{"B", relxy}}), ValidationError);
    CHECK_THROWS_AS(synthesize_global(single, WeightVector{{"B", 1.0}}, {{"B", WeightVector{{"x", 1.0}}}}),
                    ValidationError);
}

TEST_CASE("random reciprocal matrices: lambda_max >= n (property)") {
    std::mt19937_64 rng(testsupport::kSeed);
    std::uniform_int_distribution<int> order(3, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(order(rng));
        const auto m = testsupport::random_reciprocal(rng, n);
        const auto r = derive_weights(testsupport::judgment("N", testsupport::ids("x", n), m));
        CHECK(r.consistency.lambda_max >= static_cast<double>(n) - 1e-9);
        CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
        for (double w : r.weights.values()) CHECK(w > 0.0);
        const auto ow = testsupport::oracle_eigenvector(m);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r.weights.values()[i] - ow[i]) <= 1e-7);
    }
}

TEST_CASE("consistent matrices recover random weights (property)") {
    std::mt19937_64 rng(testsupport::kSeed + 7);
    std::uniform_int_distribution<int> order(3, 7);
    std::uniform_real_distribution<double> u(1.0, 3.0);
    std::uniform_real_distribution<double> scale(0.1, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(order(rng));
        std::vector<double> w(n);
        for (double& x : w) x = u(rng);
        double s = 0.0;
        for (double x : w) s += x;
        std::vector<double> unit = w;
        for (double& x : unit) x /= s;

        const auto items = testsupport::ids("x", n);
        const auto r = derive_weights(testsupport::judgment("N", items, testsupport::consistent_matrix(w)));
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r.weights.values()[i] - unit[i]) <= 1e-6);
        CHECK(std::abs(r.consistency.cr) <= 1e-6);

        // Scaling the generating weights leaves the derived weights unchanged.
        std::vector<double> scaled = w;
        const double c = scale(rng);
        for (double& x : scaled) x *= c;
        const auto rs = derive_weights(testsupport::judgment("N", items, testsupport::consistent_matrix(scaled)));
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(rs.weights.values()[i] - r.weights.values()[i]) <= 1e-9);

        // The transpose reverses the ranking.
        Matrix t = testsupport::consistent_matrix(w);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) t[i][j] = w[j] / w[i];
        const auto rt = derive_weights(testsupport::judgment("N", items, t));
        const auto& a = r.weights.values();
        const auto& b = rt.weights.values();
        CHECK(std::max_element(a.begin(), a.end()) - a.begin() == std::min_element(b.begin(), b.end()) - b.begin());
    }
}

TEST_CASE("non-convergence is reported") {
    PowerIterationOptions opts;
    opts.max_iterations = 1;
    CHECK_THROWS_AS(derive_weights(testsupport::judgment("B2", testsupport::ids("C", 6), testsupport::kB2Matrix), {}, opts),
                    ValidationError);
}
