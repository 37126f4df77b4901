#include "eigloc/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace eigloc {

SymmetricMatrix SymmetricMatrix::from_packed(int n, Vector packed) {
    SymmetricMatrix a(n);
    if (packed.size() != packed_size(n))
        throw std::invalid_argument("SymmetricMatrix: packed size does not match order");
    a.data_ = std::move(packed);
    a.check_finite();
    return a;
}

SymmetricMatrix SymmetricMatrix::from_dense(int n, const Vector& dense, double sym_tol) {
    if (dense.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("SymmetricMatrix: dense size does not match order");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double aij = dense[static_cast<std::size_t>(i) * n + j];
            const double aji = dense[static_cast<std::size_t>(j) * n + i];
            if (!(std::abs(aij - aji) <= sym_tol))
                throw std::invalid_argument(
                    "SymmetricMatrix: mirrored entries disagree beyond tolerance at (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return from_generator(n, [&](int i, int j) {
        // Average the mirrored pair so tiny asymmetries within tolerance cancel.
        return 0.5 * (dense[static_cast<std::size_t>(i) * n + j] +
                      dense[static_cast<std::size_t>(j) * n + i]);
    });
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
    return from_generator(n, [](int i, int j) { return i == j ? 1.0 : 0.0; });
}

SymmetricMatrix SymmetricMatrix::all_ones(int n) {
    return from_generator(n, [](int, int) { return 1.0; });
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
    const int n = static_cast<int>(d.size());
    return from_generator(n, [&](int i, int j) { return i == j ? d[i] : 0.0; });
}

SymmetricMatrix SymmetricMatrix::outer(const Vector& x) {
    const int n = static_cast<int>(x.size());
    return from_generator(n, [&](int i, int j) { return x[i] * x[j]; });
}

void SymmetricMatrix::check_finite() const {
    for (double v : data_)
        if (!std::isfinite(v))
            throw std::invalid_argument("SymmetricMatrix: entries must be finite");
}

Vector SymmetricMatrix::matvec(const Vector& v) const {
    if (static_cast<int>(v.size()) != n_)
        throw std::invalid_argument("SymmetricMatrix::matvec: dimension mismatch");
    Vector y(n_, 0.0);
    std::size_t p = 0;
    for (int i = 0; i < n_; ++i) {
        double yi = data_[p++] * v[i];  // diagonal
        const double vi = v[i];
        for (int j = i + 1; j < n_; ++j, ++p) {
            const double a = data_[p];
            yi += a * v[j];
            y[j] += a * vi;
        }
        y[i] += yi;
    }
    return y;
}

double SymmetricMatrix::quad_form(const Vector& v) const {
    if (static_cast<int>(v.size()) != n_)
        throw std::invalid_argument("SymmetricMatrix::quad_form: dimension mismatch");
    double total = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < n_; ++i) {
        total += data_[p++] * v[i] * v[i];
        double cross = 0.0;
        for (int j = i + 1; j < n_; ++j, ++p) cross += data_[p] * v[j];
        total += 2.0 * v[i] * cross;
    }
    return total;
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < n_; ++i) {
        t += data_[p];
        p += static_cast<std::size_t>(n_ - i);
    }
    return t;
}

double SymmetricMatrix::sum_all() const {
    double diag = 0.0, off = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < n_; ++i) {
        diag += data_[p++];
        for (int j = i + 1; j < n_; ++j, ++p) off += data_[p];
    }
    return diag + 2.0 * off;
}

Vector SymmetricMatrix::to_dense() const {
    Vector d(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) d[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
    return d;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    a.check_same_order(b);
    SymmetricMatrix c(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    a.check_same_order(b);
    SymmetricMatrix c(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
    SymmetricMatrix c(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
    return c;
}

SymmetricMatrix SymmetricMatrix::plus_scaled_identity(double alpha) const {
    SymmetricMatrix c = *this;
    std::size_t p = 0;
    for (int i = 0; i < n_; ++i) {
        c.data_[p] += alpha;
        p += static_cast<std::size_t>(n_ - i);
    }
    return c;
}

Landmark::Landmark(Vector x) : x_(std::move(x)) {
    if (x_.empty()) throw std::invalid_argument("Landmark: vector must be nonempty");
    bool nonzero = false;
    for (double v : x_) {
        if (!std::isfinite(v)) throw std::invalid_argument("Landmark: entries must be finite");
        if (v != 0.0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("Landmark: vector must be nonzero");
}

Landmark Landmark::ones(int n) {
    if (n < 1) throw std::invalid_argument("Landmark::ones: size must be >= 1");
    return Landmark(Vector(static_cast<std::size_t>(n), 1.0));
}

double Landmark::squared_norm() const { return dot(x_, x_); }

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double cos_vectors(const Vector& a, const Vector& b) {
    const double na = norm2(a), nb = norm2(b);
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("cos_vectors: undefined for a zero vector");
    return dot(a, b) / (na * nb);
}

}  // namespace eigloc
