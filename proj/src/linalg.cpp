#include "eigloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eigloc {

namespace {

void require_same_order(const SymmetricMatrix& a, const SymmetricMatrix& b, const char* op) {
    if (a.order() != b.order())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.order()) + " vs " +
                                    std::to_string(b.order()) + ")");
}

}  // namespace

double frobenius_inner(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    require_same_order(a, b, "frobenius_inner");
    const Vector& pa = a.packed();
    const Vector& pb = b.packed();
    const int n = a.order();
    double diag = 0.0, off = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
        diag += pa[p] * pb[p];
        ++p;
        for (int j = i + 1; j < n; ++j, ++p) off += pa[p] * pb[p];
    }
    return diag + 2.0 * off;  // off-diagonal entries appear twice in Tr(AB^T)
}

double frobenius_norm(const SymmetricMatrix& a) { return std::sqrt(frobenius_inner(a, a)); }

double cos_matrices(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    require_same_order(a, b, "cos_matrices");
    const double na = frobenius_norm(a);
    const double nb = frobenius_norm(b);
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("cos_matrices: undefined for a zero matrix");
    return frobenius_inner(a, b) / (na * nb);
}

double cos_rank_one(const SymmetricMatrix& a, const Landmark& x) {
    if (a.order() != x.size())
        throw std::invalid_argument("cos_rank_one: dimension mismatch");
    const double na = frobenius_norm(a);
    if (na == 0.0) throw std::invalid_argument("cos_rank_one: undefined for a zero matrix");
    return a.quad_form(x.vec()) / (x.squared_norm() * na);
}

RankOneProjection project_rank_one(const SymmetricMatrix& a, const Landmark& x) {
    if (a.order() != x.size())
        throw std::invalid_argument("project_rank_one: dimension mismatch");
    const double xx = x.squared_norm();
    const double tau = a.quad_form(x.vec()) / (xx * xx);
    SymmetricMatrix residual = a - tau * SymmetricMatrix::outer(x.vec());
    return {tau, std::move(residual)};
}

namespace {

// Cyclic Jacobi on a full dense working copy; V accumulates rotations.
struct JacobiState {
    int n;
    Vector a;  // row-major n*n, kept symmetric
    Vector v;  // row-major n*n, columns are eigenvector candidates

    double& A(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double& V(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }

    double off_sq() const {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double x = a[static_cast<std::size_t>(i) * n + j];
                s += 2.0 * x * x;
            }
        return s;
    }

    void rotate(int p, int q) {
        const double apq = A(p, q);
        if (apq == 0.0) return;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = A(p, p), aqq = A(q, q);
        A(p, p) = app - t * apq;
        A(q, q) = aqq + t * apq;
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == p || k == q) continue;
            const double akp = A(k, p), akq = A(k, q);
            A(k, p) = akp - s * (akq + tau * akp);
            A(k, q) = akq + s * (akp - tau * akq);
            A(p, k) = A(k, p);
            A(q, k) = A(k, q);
        }
        for (int k = 0; k < n; ++k) {
            const double vkp = V(k, p), vkq = V(k, q);
            V(k, p) = vkp - s * (vkq + tau * vkp);
            V(k, q) = vkq + s * (vkp - tau * vkq);
        }
    }
};

void orient_largest_entry_positive(Vector& v) {
    int arg = 0;
    double best = std::abs(v[0]);
    for (int i = 1; i < static_cast<int>(v.size()); ++i) {
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            arg = i;
        }
    }
    if (v[arg] < 0.0)
        for (double& x : v) x = -x;
}

EigenDecomposition finish_decomposition(const SymmetricMatrix& original, JacobiState& st) {
    const int n = st.n;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return st.A(i, i) > st.A(j, j); });

    EigenDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors.resize(n);
    for (int r = 0; r < n; ++r) {
        const int c = order[r];
        dec.eigenvalues[r] = st.A(c, c);
        Vector vec(n);
        for (int k = 0; k < n; ++k) vec[k] = st.V(k, c);
        orient_largest_entry_positive(vec);
        dec.eigenvectors[r] = std::move(vec);
    }

    double worst = 0.0;
    for (int r = 0; r < n; ++r) {
        Vector av = original.matvec(dec.eigenvectors[r]);
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = av[k] - dec.eigenvalues[r] * dec.eigenvectors[r][k];
            s += d * d;
        }
        worst = std::max(worst, std::sqrt(s));
    }
    dec.residual_norm = worst;
    return dec;
}

}  // namespace

EigenDecomposition eig_full(const SymmetricMatrix& a, const EigOptions& opts) {
    const int n = a.order();
    if (n > opts.max_order)
        throw std::invalid_argument("eig_full: order " + std::to_string(n) +
                                    " exceeds cap " + std::to_string(opts.max_order));

    JacobiState st;
    st.n = n;
    st.a = a.to_dense();
    st.v.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) st.V(i, i) = 1.0;

    const double norm = frobenius_norm(a);
    const double target_sq = (opts.off_tol * norm) * (opts.off_tol * norm);

    if (n == 1 || st.off_sq() <= target_sq) return finish_decomposition(a, st);

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) st.rotate(p, q);
        if (st.off_sq() <= target_sq) return finish_decomposition(a, st);
    }
    throw ConvergenceError("eig_full: no convergence after " +
                               std::to_string(opts.max_sweeps) + " sweeps",
                           finish_decomposition(a, st));
}

namespace {

Vector hashed_start_vector(int n, std::uint64_t seed) {
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t h = detail::splitmix64(seed ^ detail::splitmix64(i + 1));
        v[i] = 2.0 * detail::u01(h) - 1.0;
    }
    double nv = norm2(v);
    if (nv == 0.0) {  // unreachable for the hash, kept as a hard guard
        v[0] = 1.0;
        nv = 1.0;
    }
    for (double& x : v) x /= nv;
    return v;
}

void normalize(Vector& v) {
    const double nv = norm2(v);
    if (nv > 0.0)
        for (double& x : v) x /= nv;
}

double residual_norm(const Vector& av, double lambda, const Vector& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = av[i] - lambda * v[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Spectral-radius estimate from a short power run on A itself; an upper-ish
// bound on |lambda_n| good enough to choose the shift.
double estimate_radius(const MatVec& matvec, int n, std::uint64_t seed) {
    Vector v = hashed_start_vector(n, seed);
    double rho = 0.0;
    for (int it = 0; it < 40; ++it) {
        Vector w = matvec(v);
        const double nw = norm2(w);
        rho = std::max(rho, std::abs(dot(v, w)));
        if (nw == 0.0) break;
        for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    return rho;
}

}  // namespace

LeadingEigenpair leading_eigenpair(const MatVec& matvec, int n, const SolverOptions& opts) {
    if (n < 1) throw std::invalid_argument("leading_eigenpair: n must be >= 1");

    const double sigma =
        opts.shift ? *opts.shift
                   : 1.1 * estimate_radius(matvec, n, opts.start_seed ^ 0xabcdULL) + 0.01;

    Vector v = hashed_start_vector(n, opts.start_seed);
    LeadingEigenpair best;
    best.v1 = v;
    best.residual = std::numeric_limits<double>::infinity();

    bool converged = false;
    for (long it = 0; it < opts.max_iter; ++it) {
        Vector av = matvec(v);
        const double lambda = dot(v, av);
        const double res = residual_norm(av, lambda, v);
        if (res < best.residual) {
            best.lambda1 = lambda;
            best.v1 = v;
            best.residual = res;
        }
        if (res <= opts.tol * (1.0 + std::abs(lambda))) {
            converged = true;
            break;
        }
        for (int i = 0; i < n; ++i) av[i] += sigma * v[i];
        normalize(av);
        v = std::move(av);
    }

    // Deflated estimate of the second eigenvalue for the degeneracy check.
    bool degenerate = false;
    if (n > 1) {
        Vector u = hashed_start_vector(n, opts.start_seed ^ 0x5ec04dULL);
        const double proj0 = dot(u, best.v1);
        for (int i = 0; i < n; ++i) u[i] -= proj0 * best.v1[i];
        normalize(u);
        double lambda2 = 0.0;
        for (int it = 0; it < 2000; ++it) {
            Vector au = matvec(u);
            lambda2 = dot(u, au);
            const double res = residual_norm(au, lambda2, u);
            if (res <= 1e-6 * (1.0 + std::abs(lambda2))) break;
            for (int i = 0; i < n; ++i) au[i] += sigma * u[i];
            const double proj = dot(au, best.v1);
            for (int i = 0; i < n; ++i) au[i] -= proj * best.v1[i];
            normalize(au);
            u = std::move(au);
        }
        degenerate =
            std::abs(best.lambda1 - lambda2) < opts.degeneracy_tol * (1.0 + std::abs(best.lambda1));
    }
    best.gap_flag = degenerate;

    if (!converged && !degenerate)
        throw IterationLimitError("leading_eigenpair: iteration cap " +
                                      std::to_string(opts.max_iter) +
                                      " exceeded (residual " + std::to_string(best.residual) + ")",
                                  best);
    return best;
}

LeadingEigenpair leading_eigenpair(const SymmetricMatrix& a, const SolverOptions& opts) {
    SolverOptions o = opts;
    if (!o.shift) o.shift = frobenius_norm(a);
    return leading_eigenpair([&a](const Vector& v) { return a.matvec(v); }, a.order(), o);
}

HoffmanWielandtGap hoffman_wielandt_gap(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    require_same_order(a, b, "hoffman_wielandt_gap");
    const EigenDecomposition da = eig_full(a);
    const EigenDecomposition db = eig_full(b);
    double lhs = 0.0;
    for (int i = 0; i < a.order(); ++i) {
        const double d = da.eigenvalues[i] - db.eigenvalues[i];
        lhs += d * d;
    }
    const SymmetricMatrix diff = a - b;
    const double rhs = frobenius_inner(diff, diff);
    return {lhs, rhs};
}

}  // namespace eigloc
