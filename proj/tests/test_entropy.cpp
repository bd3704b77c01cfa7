#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "siteeval/entropy.hpp"
#include "siteeval/error.hpp"
#include "support.hpp"

using namespace siteeval;
using namespace siteeval::entropy;
using testsupport::Matrix;

namespace {

DecisionMatrix make(const Matrix& rows) {
    return DecisionMatrix(testsupport::ids("s", rows.size()), testsupport::ids("x", rows.front().size()), rows);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_real_distribution<double> u(0.1, 20.0);
    Matrix x(n, std::vector<double>(m));
    for (auto& row : x)
        for (double& v : row) v = u(rng);
    return x;
}

}  // namespace

TEST_CASE("column shares") {
    const auto shares = column_shares(make({{2, 5, 0}, {1, 5, 1}, {1, 5, 0}}));
    CHECK(shares[0] == std::vector<double>{0.5, 0.25, 0.25});
    for (double p : shares[1]) CHECK(p == doctest::Approx(1.0 / 3.0));
    CHECK(shares[2] == std::vector<double>{0.0, 1.0, 0.0});
    CHECK_THROWS_WITH_AS(column_shares(make({{1, 0}, {1, 0}})), doctest::Contains("degenerate indicator column"),
                         ValidationError);
}

TEST_CASE("information entropy") {
    const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(information_entropy(uniform, 3) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> spike{0.0, 1.0, 0.0};
    CHECK(information_entropy(spike, 3) == 0.0);
    const std::vector<double> p{0.5, 0.25, 0.25};
    const double oracle = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25)) / std::log(3.0);
    CHECK(information_entropy(p, 3) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(std::abs(information_entropy(p, 3) - 0.9464) <= 1e-4);
}

TEST_CASE("three by two example puts all weight on the informative column") {
    const auto w = entropy_weights(make({{2, 1}, {1, 1}, {1, 1}}));
    CHECK(std::abs(w.values()[0] - 1.0) <= 1e-9);
    CHECK(std::abs(w.values()[1] - 0.0) <= 1e-9);
}

TEST_CASE("identical columns get equal weights") {
    const auto w = entropy_weights(make({{1, 1}, {3, 3}, {2, 2}}));
    CHECK(w.values()[0] == doctest::Approx(0.5));
    CHECK(w.values()[1] == doctest::Approx(0.5));
}

TEST_CASE("all-uniform matrix has no information") {
    CHECK_THROWS_WITH_AS(entropy_weights(make({{1, 2}, {1, 2}})), doctest::Contains("no information content"),
                         ValidationError);
}

TEST_CASE("decision matrix validation") {
    CHECK_THROWS_AS(make({{1, 2}}), ValidationError);
    CHECK_THROWS_AS(make({{1, -2}, {1, 2}}), ValidationError);
    CHECK_THROWS_AS(DecisionMatrix({"a", "b"}, {"x", "x"}, {{1, 2}, {1, 2}}), ValidationError);
    CHECK_THROWS_AS(DecisionMatrix({"a", "b"}, {"x", "y"}, {{1, 2}, {1}}), ValidationError);
}

TEST_CASE("entropy weights match the oracle on random matrices (property)") {
    std::mt19937_64 rng(testsupport::kSeed);
    std::uniform_int_distribution<int> dim(2, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(dim(rng));
        const auto m = static_cast<std::size_t>(dim(rng));
        const auto x = random_matrix(rng, n, m);
        const auto w = entropy_weights(make(x));
        const auto o = testsupport::oracle_entropy_weights(x);
        for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(w.values()[j] - o[j]) <= 1e-9);
        CHECK(std::abs(w.sum() - 1.0) <= 1e-12);
        for (double v : w.values()) CHECK(v >= 0.0);
        for (double e : column_entropies(make(x))) {
            CHECK(e >= 0.0);
            CHECK(e <= 1.0);
        }
    }
}

TEST_CASE("uniform columns get zero share (property)") {
    std::mt19937_64 rng(testsupport::kSeed + 1);
    std::uniform_real_distribution<double> c(0.5, 9.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_matrix(rng, 5, 4);
        const double v = c(rng);
        for (auto& row : x) row[2] = v;
        const auto w = entropy_weights(make(x));
        CHECK(std::abs(w.values()[2]) <= 1e-12);
        CHECK(std::abs(column_entropies(make(x))[2] - 1.0) <= 1e-9);
    }
}

TEST_CASE("column scaling and permutations (property)") {
    std::mt19937_64 rng(testsupport::kSeed + 2);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_matrix(rng, 6, 5);
        const auto base = entropy_weights(make(x));

        auto scaled = x;
        const double k = scale(rng);
        for (auto& row : scaled) row[1] *= k;
        const auto ws = entropy_weights(make(scaled));
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(ws.values()[j] - base.values()[j]) <= 1e-12);

        auto rows = x;
        std::shuffle(rows.begin(), rows.end(), rng);
        const auto wr = entropy_weights(make(rows));
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(wr.values()[j] - base.values()[j]) <= 1e-12);

        std::vector<std::size_t> perm{0, 1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix cols = x;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < 5; ++j) cols[i][j] = x[i][perm[j]];
        const auto wc = entropy_weights(make(cols));
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(wc.values()[j] - base.values()[perm[j]]) <= 1e-12);
    }
}
