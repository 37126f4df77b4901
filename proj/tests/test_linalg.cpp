#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "eigloc/linalg.hpp"
#include "eigloc/localize.hpp"
#include "test_support.hpp"

using namespace eigloc;
using test_support::frobenius_inner_oracle;
using test_support::random_symmetric;
using test_support::random_vector;

namespace {

SymmetricMatrix reconstruct(const EigenDecomposition& dec) {
    const int n = static_cast<int>(dec.eigenvalues.size());
    return SymmetricMatrix::from_generator(n, [&](int i, int j) {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
            s += dec.eigenvalues[r] * dec.eigenvectors[r][i] * dec.eigenvectors[r][j];
        return s;
    });
}

}  // namespace

TEST_CASE("symmetric matrix basics") {
    auto a = SymmetricMatrix::from_generator(3, [](int i, int j) { return 10.0 * i + j; });
    CHECK(a(1, 2) == a(2, 1));
    CHECK(a(0, 2) == 2.0);
    CHECK(a.trace() == doctest::Approx(0.0 + 11.0 + 22.0));

    Vector v{1.0, 2.0, 3.0};
    Vector y = a.matvec(v);
    for (int i = 0; i < 3; ++i) {
        double want = 0.0;
        for (int j = 0; j < 3; ++j) want += a(i, j) * v[j];
        CHECK(y[i] == doctest::Approx(want).epsilon(1e-14));
    }
    CHECK(a.quad_form(v) == doctest::Approx(dot(v, y)).epsilon(1e-14));

    CHECK_THROWS_AS(SymmetricMatrix(0), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricMatrix::from_packed(2, Vector{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricMatrix::from_packed(1, Vector{std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(a.matvec(Vector{1.0}), std::invalid_argument);

    // from_dense rejects mirrored disagreement beyond tolerance
    Vector dense{1.0, 2.0, 2.0 + 1e-9, 4.0};
    CHECK_THROWS_AS(SymmetricMatrix::from_dense(2, dense), std::invalid_argument);
    dense[2] = 2.0;
    CHECK_NOTHROW(SymmetricMatrix::from_dense(2, dense));

    CHECK_THROWS_AS(Landmark(Vector{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Landmark(Vector{}), std::invalid_argument);
}

TEST_CASE("frobenius inner product") {
    CHECK(frobenius_inner(SymmetricMatrix::identity(3), SymmetricMatrix::identity(3)) == 3.0);
    CHECK(frobenius_inner(SymmetricMatrix::all_ones(3), SymmetricMatrix::all_ones(3)) == 9.0);
    CHECK_THROWS_AS(frobenius_inner(SymmetricMatrix::identity(2), SymmetricMatrix::identity(3)),
                    std::invalid_argument);

    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_symmetric(rng, 5);
        auto b = random_symmetric(rng, 5);
        CHECK(frobenius_inner(a, b) ==
              doctest::Approx(frobenius_inner_oracle(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(SymmetricMatrix::zero(4)) == 0.0);
    CHECK(frobenius_norm(SymmetricMatrix::identity(9)) == doctest::Approx(3.0).epsilon(1e-15));

    // ||A||_F^2 equals the sum of squared eigenvalues
    std::mt19937_64 rng(102);
    auto a = random_symmetric(rng, 6);
    auto dec = eig_full(a);
    double sum_sq = 0.0;
    for (double l : dec.eigenvalues) sum_sq += l * l;
    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(sum_sq)).epsilon(1e-10));
}

TEST_CASE("cosine between matrices") {
    std::mt19937_64 rng(103);
    auto a = random_symmetric(rng, 4);
    CHECK(cos_matrices(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    auto d = SymmetricMatrix::diagonal(Vector{1.0, -1.0});
    CHECK(cos_matrices(SymmetricMatrix::identity(2), d) == doctest::Approx(0.0));

    for (int rep = 0; rep < 30; ++rep) {
        auto p = random_symmetric(rng, 5);
        auto q = random_symmetric(rng, 5);
        const double c = cos_matrices(p, q);
        CHECK(c >= -1.0 - 1e-12);
        CHECK(c <= 1.0 + 1e-12);
        const double direct =
            frobenius_inner_oracle(p, q) / (frobenius_norm(p) * frobenius_norm(q));
        CHECK(c == doctest::Approx(direct).epsilon(1e-12));
    }

    CHECK_THROWS_AS(cos_matrices(SymmetricMatrix::zero(3), a), std::invalid_argument);
}

TEST_CASE("cosine against a rank-one landmark") {
    std::mt19937_64 rng(104);
    Vector xv = random_vector(rng, 5);
    Landmark x(xv);
    auto xxt = SymmetricMatrix::outer(xv);
    CHECK(cos_rank_one(xxt, x) == doctest::Approx(1.0).epsilon(1e-12));

    // rank-two block constructions reach exactly 1/sqrt(2)
    const double inv_sqrt2 = 0.70710678118654752440;
    auto [ad, xd] = counterexample_diag(Vector{1.0, 1.0, 1.0, 1.0});
    CHECK(cos_rank_one(ad, xd) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    auto [aa, xa] = counterexample_antidiag(Vector{1.0, 1.0, 1.0, 1.0});
    CHECK(cos_rank_one(aa, xa) == doctest::Approx(inv_sqrt2).epsilon(1e-12));

    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_symmetric(rng, 6);
        Vector v = random_vector(rng, 6);
        CHECK(cos_rank_one(a, Landmark(v)) ==
              doctest::Approx(cos_matrices(a, SymmetricMatrix::outer(v))).epsilon(1e-12));
    }

    // invariance under positive scaling; negation under A -> -A
    auto a = random_symmetric(rng, 5);
    Vector v = random_vector(rng, 5);
    const double base = cos_rank_one(a, Landmark(v));
    Vector v3(v);
    for (double& t : v3) t *= 3.0;
    CHECK(cos_rank_one(a, Landmark(v3)) == doctest::Approx(base).epsilon(1e-12));
    CHECK(cos_rank_one(2.5 * a, Landmark(v)) == doctest::Approx(base).epsilon(1e-12));
    CHECK(cos_rank_one(-1.0 * a, Landmark(v)) == doctest::Approx(-base).epsilon(1e-12));

    CHECK_THROWS_AS(cos_rank_one(SymmetricMatrix::zero(5), Landmark(v)), std::invalid_argument);
}

TEST_CASE("rank-one projection") {
    Vector unit{1.0, 0.0, 0.0};
    auto [tau_exact, res_exact] = project_rank_one(SymmetricMatrix::outer(unit), Landmark(unit));
    CHECK(tau_exact == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(frobenius_norm(res_exact) == doctest::Approx(0.0));

    auto d = SymmetricMatrix::diagonal(Vector{1.0, -1.0});
    auto [tau0, res0] = project_rank_one(d, Landmark::ones(2));
    CHECK(tau0 == doctest::Approx(0.0));
    CHECK(frobenius_norm(res0 - d) == doctest::Approx(0.0));

    std::mt19937_64 rng(105);
    for (int rep = 0; rep < 30; ++rep) {
        auto a = random_symmetric(rng, 6);
        Vector v = random_vector(rng, 6);
        Landmark x(v);
        auto [tau, z] = project_rank_one(a, x);
        auto xxt = SymmetricMatrix::outer(v);

        // residual is Frobenius-orthogonal to the landmark
        CHECK(std::abs(frobenius_inner(z, xxt)) <=
              1e-10 * frobenius_norm(a) * x.squared_norm());

        // orthogonal decomposition: ||A||^2 = tau^2 ||xx^T||^2 + ||Z||^2
        const double lhs = frobenius_inner(a, a);
        const double rhs = tau * tau * frobenius_inner(xxt, xxt) + frobenius_inner(z, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("full eigendecomposition") {
    auto dec = eig_full(SymmetricMatrix::diagonal(Vector{3.0, 1.0, 2.0}));
    CHECK(dec.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.eigenvectors[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.eigenvectors[1][2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.eigenvectors[2][1] == doctest::Approx(1.0).epsilon(1e-12));

    const int n = 7;
    auto decj = eig_full(SymmetricMatrix::all_ones(n));
    CHECK(decj.eigenvalues[0] == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    for (int i = 1; i < n; ++i) CHECK(decj.eigenvalues[i] == doctest::Approx(0.0));

    std::mt19937_64 rng(106);
    for (int rep = 0; rep < 10; ++rep) {
        auto a = random_symmetric(rng, 8);
        auto d = eig_full(a);

        CHECK(frobenius_norm(reconstruct(d) - a) <= 1e-9 * (1.0 + frobenius_norm(a)));
        CHECK(d.residual_norm <= 1e-9 * (1.0 + frobenius_norm(a)));

        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                const double want = i == j ? 1.0 : 0.0;
                CHECK(std::abs(dot(d.eigenvectors[i], d.eigenvectors[j]) - want) <= 1e-10);
            }

        double sum_sq = 0.0;
        for (double l : d.eigenvalues) sum_sq += l * l;
        const double norm_sq = frobenius_inner(a, a);
        CHECK(std::abs(norm_sq - sum_sq) <= 1e-9 * (1.0 + norm_sq));

        for (int i = 0; i + 1 < 8; ++i) CHECK(d.eigenvalues[i] >= d.eigenvalues[i + 1]);
    }

    EigOptions tiny_cap;
    tiny_cap.max_order = 4;
    CHECK_THROWS_AS(eig_full(random_symmetric(rng, 5), tiny_cap), std::invalid_argument);

    // sweep cap exhausted: the error carries the best iterate
    EigOptions no_sweeps;
    no_sweeps.max_sweeps = 0;
    auto offdiag = random_symmetric(rng, 5);
    try {
        eig_full(offdiag, no_sweeps);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best().eigenvalues.size() == 5);
        CHECK(e.best().eigenvectors.size() == 5);
    }
}

TEST_CASE("matrix-free leading eigenpair") {
    auto d = SymmetricMatrix::diagonal(Vector{5.0, 1.0, 1.0});
    auto pair = leading_eigenpair([&](const Vector& v) { return d.matvec(v); }, 3);
    CHECK(pair.lambda1 == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(std::abs(pair.v1[0]) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_FALSE(pair.gap_flag);

    // -I: rightmost eigenvalue is -1; fully degenerate spectrum
    auto neg = leading_eigenpair(
        [](const Vector& v) {
            Vector y(v);
            for (double& x : y) x = -x;
            return y;
        },
        4);
    CHECK(neg.lambda1 == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(norm2(neg.v1) - 1.0) <= 1e-12);
    CHECK(neg.gap_flag);

    // zero operator: degenerate, lambda = 0
    auto zero = leading_eigenpair([](const Vector& v) { return Vector(v.size(), 0.0); }, 5);
    CHECK(zero.lambda1 == doctest::Approx(0.0));
    CHECK(zero.gap_flag);

    // a resolvable but tiny gap exhausts the iteration cap; the error
    // carries the best iterate and its residual
    auto slow = SymmetricMatrix::diagonal(Vector{1.0, 1.0 - 1e-6, 0.0});
    SolverOptions strict;
    strict.max_iter = 200;
    try {
        leading_eigenpair(slow, strict);
        FAIL("expected IterationLimitError");
    } catch (const IterationLimitError& e) {
        CHECK(e.best().v1.size() == 3);
        CHECK(e.best().residual > 0.0);
        CHECK(e.best().lambda1 == doctest::Approx(1.0).epsilon(1e-3));
    }

    // agreement with the dense path on random matrices
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 15; ++rep) {
        auto a = random_symmetric(rng, 12);
        auto mf = leading_eigenpair(a);
        if (mf.gap_flag) continue;
        auto full = eig_full(a);
        CHECK(std::abs(mf.lambda1 - full.eigenvalues[0]) <=
              std::max(1e-8, 1e-8 * std::abs(full.eigenvalues[0])));
        CHECK(norm2(a.matvec(mf.v1)) >= 0.0);  // finite
        CHECK(mf.residual <= 1e-10 * (1.0 + std::abs(mf.lambda1)));
    }
}

TEST_CASE("eigenvalue perturbation bound") {
    std::mt19937_64 rng(108);
    auto a = random_symmetric(rng, 6);
    auto same = hoffman_wielandt_gap(a, a);
    CHECK(same.lhs == doctest::Approx(0.0));
    CHECK(same.rhs == doctest::Approx(0.0));

    auto p = hoffman_wielandt_gap(SymmetricMatrix::diagonal(Vector{1.0, 0.0}),
                                  SymmetricMatrix::diagonal(Vector{0.0, 1.0}));
    CHECK(p.lhs == doctest::Approx(0.0));
    CHECK(p.rhs == doctest::Approx(2.0));

    std::uniform_int_distribution<int> size(2, 10);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = size(rng);
        auto x = random_symmetric(rng, n);
        auto y = random_symmetric(rng, n);
        auto g = hoffman_wielandt_gap(x, y);
        CHECK(g.lhs <= g.rhs + 1e-9 * (1.0 + g.rhs));
    }

    CHECK_THROWS_AS(hoffman_wielandt_gap(a, random_symmetric(rng, 5)), std::invalid_argument);
}
