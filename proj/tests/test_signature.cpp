#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "eigloc/signature.hpp"
#include "test_support.hpp"

using namespace eigloc;
using test_support::random_symmetric;

TEST_CASE("extremal cosine pi_{k,n}") {
    CHECK(pi_k_n(4, 4) == doctest::Approx(1.0));
    CHECK(pi_k_n(1, 4) == doctest::Approx(0.5));
    CHECK_THROWS_AS(pi_k_n(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(pi_k_n(5, 4), std::invalid_argument);

    // a vector with exactly k equal positive entries and n-k zeros attains it
    for (int n : {4, 7, 10})
        for (int k = 1; k <= n; ++k) {
            Vector x(n, 0.0);
            for (int i = 0; i < k; ++i) x[i] = 2.5;
            CHECK(cos_vectors(x, Vector(n, 1.0)) == doctest::Approx(pi_k_n(k, n)).epsilon(1e-14));
        }
}

TEST_CASE("pi_{k,n} bounds every vector with at most k positive entries") {
    std::mt19937_64 rng(401);
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    std::uniform_int_distribution<int> size(2, 12);
    const Vector ones_cache(12, 1.0);
    for (int rep = 0; rep < 10000; ++rep) {
        const int n = size(rng);
        std::uniform_int_distribution<int> kk(1, n);
        const int k = kk(rng);
        Vector x(n);
        for (int i = 0; i < n; ++i) x[i] = i < k ? mag(rng) : -mag(rng);
        std::shuffle(x.begin(), x.end(), rng);
        if (norm2(x) == 0.0) continue;
        const double c = cos_vectors(x, Vector(n, 1.0));
        CHECK(c <= pi_k_n(k, n) + 1e-12);
    }
}

TEST_CASE("sign census") {
    Vector v{1.0, 0.0, -1.0};
    auto c = sign_census(v, 0.0);
    CHECK(c.nonneg == 2);
    CHECK(c.pos == 1);

    auto all = sign_census(Vector(6, 1.0), 0.0);
    CHECK(all.nonneg == 6);
    CHECK(all.pos == 6);

    auto tol = sign_census(Vector{1e-12, -1e-12, 0.5}, 1e-10);
    CHECK(tol.nonneg == 3);
    CHECK(tol.pos == 1);

    CHECK_THROWS_AS(sign_census(v, -1.0), std::invalid_argument);
}

TEST_CASE("plain signature check on the all-ones matrix") {
    auto r = check_signature(SymmetricMatrix::all_ones(6), 1);
    CHECK(r.condition_lhs == doctest::Approx(36.0));
    CHECK(r.condition_rhs == doctest::Approx(std::sqrt(26.0) * 6.0).epsilon(1e-14));
    CHECK(r.condition_holds);
    REQUIRE(r.pos_count.has_value());
    CHECK(*r.pos_count == 6);
    CHECK(*r.nonneg_count == 6);
    CHECK(r.rho_simple.value());

    auto neg = check_signature(-1.0 * SymmetricMatrix::all_ones(6), 1);
    CHECK(neg.condition_lhs == doctest::Approx(-36.0));
    CHECK_FALSE(neg.condition_holds);
    CHECK_FALSE(neg.nonneg_count.has_value());
    CHECK_FALSE(neg.rho_simple.has_value());

    CHECK_THROWS_AS(check_signature(SymmetricMatrix::all_ones(10), 6), std::invalid_argument);
    CHECK_THROWS_AS(check_signature(SymmetricMatrix::all_ones(10), 0), std::invalid_argument);
    CHECK_THROWS_AS(check_signature(SymmetricMatrix::all_ones(10), 5), std::invalid_argument);
}

TEST_CASE("block-J construction is the equality case") {
    auto a = blockJ_example(3, 10);
    CHECK(a.sum_all() == doctest::Approx(9.0 + 49.0));
    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(58.0)).epsilon(1e-14));

    auto r = check_signature(a, 3);
    CHECK(std::abs(r.condition_lhs - r.condition_rhs) <= 1e-12 * (1.0 + r.condition_rhs));
    CHECK(r.condition_holds);
    CHECK(*r.pos_count == 7);
    CHECK(*r.nonneg_count >= 8);
    CHECK(r.rho_simple.value());

    // leading eigenvector lives on the larger block
    auto dec = eig_full(a);
    CHECK(dec.eigenvalues[0] == doctest::Approx(7.0).epsilon(1e-10));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(dec.eigenvectors[0][i]) <= 1e-9);
    for (int i = 3; i < 10; ++i)
        CHECK(std::abs(dec.eigenvectors[0][i]) == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-9));

    auto small = blockJ_example(1, 3);
    auto decs = eig_full(small);
    CHECK(decs.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(decs.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(decs.eigenvalues[2] == doctest::Approx(0.0));

    for (int n : {7, 12, 19})
        for (int k = 1; 2 * k < n; ++k) {
            auto b = blockJ_example(k, n);
            const double lhs = b.sum_all();
            const double nk = n - k;
            const double rhs = std::sqrt(nk * nk + double(k) * k) * frobenius_norm(b);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
}

TEST_CASE("shifted variant") {
    std::mt19937_64 rng(402);
    for (int rep = 0; rep < 50; ++rep) {
        auto a = random_symmetric(rng, 8);
        auto plain = check_signature(a, 2);
        auto shift0 = check_signature_shifted(a, 2, 0.0);
        CHECK(plain.condition_holds == shift0.condition_holds);
        CHECK(plain.condition_lhs == shift0.condition_lhs);
        CHECK(plain.condition_rhs == doctest::Approx(shift0.condition_rhs).epsilon(1e-15));
    }

    // hollow all-ones matrix: the unit shift restores the equality structure
    auto hollow = SymmetricMatrix::all_ones(6) - SymmetricMatrix::identity(6);
    auto shifted = check_signature_shifted(hollow, 1, 1.0);
    CHECK(shifted.condition_lhs == doctest::Approx(30.0));
    CHECK(shifted.condition_rhs == doctest::Approx(std::sqrt(26.0) * 6.0 - 6.0).epsilon(1e-14));
    CHECK(shifted.condition_holds);
    CHECK(*shifted.pos_count == 6);
    CHECK(shifted.rho_simple.value());

    auto plain_hollow = check_signature(hollow, 1);
    CHECK(plain_hollow.condition_rhs ==
          doctest::Approx(std::sqrt(26.0 * 30.0)).epsilon(1e-14));
    CHECK(plain_hollow.condition_holds);  // 30 >= 27.93
}

TEST_CASE("variance variant") {
    // J at n = 4: mu = 1, sigma^2 = 3, lhs = 3, rhs = sqrt(3 * 10 / 4)
    auto r = check_signature_variance(SymmetricMatrix::all_ones(4), 1);
    CHECK(r.condition_lhs == doctest::Approx(3.0));
    CHECK(r.condition_rhs == doctest::Approx(std::sqrt(7.5)).epsilon(1e-14));
    CHECK(r.condition_holds);
    CHECK_FALSE(r.degenerate);
    CHECK(*r.pos_count == 4);

    // A = I: zero variance, condition degenerates to 0 >= 0
    auto deg = check_signature_variance(SymmetricMatrix::identity(5), 2);
    CHECK(deg.condition_lhs == doctest::Approx(0.0));
    CHECK(deg.condition_rhs == doctest::Approx(0.0));
    CHECK(deg.condition_holds);
    CHECK(deg.degenerate);
    CHECK_FALSE(deg.pos_count.has_value());
}

TEST_CASE("variant verdicts are consistent") {
    std::mt19937_64 rng(403);
    std::uniform_int_distribution<int> size(5, 12);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = size(rng);
        auto a = random_symmetric(rng, n);
        std::uniform_int_distribution<int> kk(1, (n - 1) / 2);
        const int k = kk(rng);

        auto variance = check_signature_variance(a, k);
        auto shifted = check_signature_shifted(a, k, -a.trace() / n);
        CHECK(variance.condition_holds == shifted.condition_holds);

        auto plain = check_signature(a, k);
        auto shift0 = check_signature_shifted(a, k, 0.0);
        CHECK(plain.condition_holds == shift0.condition_holds);
    }
}

TEST_CASE("trace-heavy matrices pass more easily after centering") {
    std::mt19937_64 rng(404);
    int improved = 0;
    for (int rep = 0; rep < 200; ++rep) {
        auto noise = random_symmetric(rng, 8, 0.2);
        auto a = SymmetricMatrix::all_ones(8) + noise + 5.0 * SymmetricMatrix::identity(8);
        auto plain = check_signature(a, 1);
        auto centered = check_signature_shifted(a, 1, -a.trace() / 8);
        if (centered.condition_holds && !plain.condition_holds) ++improved;
        if (plain.condition_holds) CHECK(centered.condition_holds);
    }
    CHECK(improved > 100);
}

TEST_CASE("condition implies the sign conclusions on random draws") {
    std::mt19937_64 rng(405);
    std::normal_distribution<double> noise(0.0, 0.05);
    int passing = 0;
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 10;
        std::uniform_int_distribution<int> kk(1, 4);
        const int k = kk(rng);
        auto a = SymmetricMatrix::all_ones(n) + random_symmetric(rng, n, 0.05);
        auto r = check_signature(a, k);
        if (!r.condition_holds) continue;
        ++passing;
        CHECK(*r.nonneg_count >= n - k + 1);
        CHECK(*r.pos_count >= n - k);
        CHECK(r.rho_simple.value());
    }
    CHECK(passing > 250);
}

TEST_CASE("largest qualifying k") {
    CHECK(max_k(SymmetricMatrix::all_ones(10)).value() == 4);
    CHECK_FALSE(max_k(-1.0 * SymmetricMatrix::all_ones(10)).has_value());
    auto a = blockJ_example(3, 10);
    CHECK(max_k(a).value() == 4);  // the condition relaxes as k grows
}

TEST_CASE("signature report serialization") {
    auto r = check_signature(SymmetricMatrix::all_ones(6), 1);
    auto j = signature_to_json(r);
    for (const char* key : {"k", "condition_lhs", "condition_rhs", "condition_holds",
                            "nonneg_count", "pos_count", "rho_simple", "variant", "degenerate"})
        CHECK(j.contains(key));
    CHECK(j["variant"] == "plain");
    CHECK(j["pos_count"].get<int>() == 6);

    auto s = check_signature_shifted(SymmetricMatrix::all_ones(6), 1, 2.0);
    auto js = signature_to_json(s);
    CHECK(js["variant"] == "shifted");
    CHECK(js["alpha"].get<double>() == 2.0);

    auto neg = signature_to_json(check_signature(-1.0 * SymmetricMatrix::all_ones(6), 1));
    CHECK(neg["pos_count"].is_null());
    CHECK(neg["rho_simple"].is_null());
}
