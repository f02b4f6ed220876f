#include <doctest.h>

#include <cmath>
#include <vector>

#include "minla/oracle.hpp"

using namespace minla;

TEST_CASE("left_right_probability") {
    const std::vector<NodeId> x{0, 3};
    const std::vector<NodeId> y{1, 2};
    CHECK(left_right_probability(x, y, Permutation::identity(4)) == Rational(1, 2));
    CHECK(left_right_probability(y, x, Permutation::identity(4)) == Rational(1, 2));
    const std::vector<NodeId> a{0};
    const std::vector<NodeId> b{1, 2};
    CHECK(left_right_probability(a, b, Permutation::identity(3)) == Rational(1));
    const std::vector<NodeId> overlap{0, 1};
    CHECK_THROWS_AS(left_right_probability(x, overlap, Permutation::identity(4)), InvalidInput);
    CHECK_THROWS_AS(left_right_probability({}, y, Permutation::identity(4)), InvalidInput);
}

TEST_CASE("orientation_probability") {
    const std::vector<NodeId> path{0, 1, 2};
    CHECK(orientation_probability(path, Permutation({1, 0, 2})) == Rational(2, 3));
    const std::vector<NodeId> rev{2, 1, 0};
    CHECK(orientation_probability(rev, Permutation({1, 0, 2})) == Rational(1, 3));
    const std::vector<NodeId> single{0};
    CHECK_THROWS_AS(orientation_probability(single, Permutation({1, 0, 2})), InvalidInput);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(0).value == 0.0);
    CHECK(*harmonic_number(1).exact == BigRational(1));
    CHECK(*harmonic_number(2).exact == BigRational(3, 2));
    CHECK(*harmonic_number(5).exact == BigRational(137, 60));
    CHECK(harmonic_number(5).value == doctest::Approx(137.0 / 60.0));
    const auto big = harmonic_number(kExactHarmonicLimit + 1);
    CHECK_FALSE(big.exact);
    CHECK(big.value == doctest::Approx(std::log(10001.0) + 0.5772156649).epsilon(1e-4));
}

TEST_CASE("harmonic bounds on a short series") {
    const std::vector<std::uint64_t> s{2, 3};
    const auto check = check_harmonic_bounds(s);
    CHECK(check.all());
    // prefix ratio: 2/2 + 3/5 = 1.6 <= H_5
    CHECK(1.6 <= harmonic_number(5).value);
    const std::vector<std::uint64_t> zero{2, 0};
    CHECK_THROWS_AS(check_harmonic_bounds(zero), InvalidInput);
    CHECK_THROWS_AS(check_harmonic_bounds({}), InvalidInput);
}

TEST_CASE("squared merge sum excludes the first component") {
    // Counting the first term too gives s_1^2 / C(P_1, 2) = 4 for s = [2],
    // which already exceeds 2 H_2 = 3.
    const std::vector<std::uint64_t> s{2};
    const double with_first = 4.0 / 1.0;
    CHECK(with_first > 2.0 * harmonic_number(2).value);
    CHECK(check_harmonic_bounds(s).squared_merge);
}

TEST_CASE("harmonic bounds hold on many series") {
    std::uint64_t state = 1;
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<std::uint64_t> s(1 + rep % 50);
        for (auto& v : s) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            v = 1 + (state >> 33) % 20;
        }
        CHECK(check_harmonic_bounds(s).all());
    }
}

TEST_CASE("Bernoulli identities") {
    const std::vector<double> a{1, 6, 3};
    const std::vector<double> b{0.5, 0.5, 0.5};
    const auto c = check_identity_lemmas(a, b);
    CHECK(c.expectation_identity);
    CHECK(c.expectation_lhs == doctest::Approx(5.0));
    CHECK(c.product_bound);
    const std::vector<double> bad_b{0.5, 1.5, 0.5};
    CHECK_THROWS_AS(check_identity_lemmas(a, bad_b), InvalidInput);
    const std::vector<double> short_b{0.5};
    CHECK_THROWS_AS(check_identity_lemmas(a, short_b), InvalidInput);
}

TEST_CASE("product bound needs nonnegative weights") {
    const std::vector<double> a{1, -1};
    const std::vector<double> b{1, 1};
    const auto c = check_identity_lemmas(a, b);
    CHECK(c.product_lhs == doctest::Approx(0.0));
    CHECK(c.product_rhs == doctest::Approx(-2.0));
    CHECK_FALSE(c.product_bound);
}
