#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eigloc {

using Vector = std::vector<double>;

/// Dense real symmetric matrix of order n, stored as the packed upper
/// triangle (entries for index pairs i <= j, row-major). Immutable after
/// construction; all entries are finite by construction.
class SymmetricMatrix {
public:
    /// Zero matrix of order n.
    explicit SymmetricMatrix(int n) : n_(check_order(n)), data_(packed_size(n_), 0.0) {}

    /// Build from the packed upper triangle (row-major, i <= j).
    static SymmetricMatrix from_packed(int n, Vector packed);

    /// Build from a full row-major dense array; mirrored entries must agree
    /// within sym_tol (absolute).
    static SymmetricMatrix from_dense(int n, const Vector& dense, double sym_tol = 1e-12);

    /// Build entry (i, j), i <= j, from a callable f(i, j).
    template <class F>
    static SymmetricMatrix from_generator(int n, F&& f) {
        SymmetricMatrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.data_[a.index(i, j)] = f(i, j);
        a.check_finite();
        return a;
    }

    static SymmetricMatrix identity(int n);
    static SymmetricMatrix zero(int n) { return SymmetricMatrix(n); }
    /// All-ones matrix J (diagonal included).
    static SymmetricMatrix all_ones(int n);
    static SymmetricMatrix diagonal(const Vector& d);
    /// Rank-one matrix x x^T.
    static SymmetricMatrix outer(const Vector& x);

    int order() const { return n_; }

    double operator()(int i, int j) const {
        check_range(i);
        check_range(j);
        return i <= j ? data_[index(i, j)] : data_[index(j, i)];
    }

    const Vector& packed() const { return data_; }

    /// y = A v.
    Vector matvec(const Vector& v) const;
    /// v^T A v.
    double quad_form(const Vector& v) const;
    double trace() const;
    /// 1^T A 1, the sum of all entries.
    double sum_all() const;
    /// Full row-major n*n copy.
    Vector to_dense() const;

    friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
    friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
    friend SymmetricMatrix operator*(double s, const SymmetricMatrix& a);
    /// A + alpha I.
    SymmetricMatrix plus_scaled_identity(double alpha) const;

    static std::size_t packed_size(int n) {
        return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2;
    }

private:
    // Offset of (i, j) with i <= j in the row-major packed upper triangle.
    std::size_t index(int i, int j) const {
        const auto ui = static_cast<std::size_t>(i);
        const auto un = static_cast<std::size_t>(n_);
        return ui * un - ui * (ui - 1) / 2 + static_cast<std::size_t>(j - i);
    }

    static int check_order(int n) {
        if (n < 1) throw std::invalid_argument("SymmetricMatrix: order must be >= 1");
        return n;
    }
    void check_range(int i) const {
        if (i < 0 || i >= n_) throw std::out_of_range("SymmetricMatrix: index out of range");
    }
    void check_finite() const;
    void check_same_order(const SymmetricMatrix& other) const {
        if (n_ != other.n_)
            throw std::invalid_argument("SymmetricMatrix: dimension mismatch (" +
                                        std::to_string(n_) + " vs " +
                                        std::to_string(other.n_) + ")");
    }

    int n_;
    Vector data_;
};

/// A nonzero n-vector x standing for the rank-one landmark matrix x x^T.
class Landmark {
public:
    explicit Landmark(Vector x);

    /// The all-ones landmark of size n.
    static Landmark ones(int n);

    const Vector& vec() const { return x_; }
    int size() const { return static_cast<int>(x_.size()); }
    double squared_norm() const;
    double norm() const { return std::sqrt(squared_norm()); }

private:
    Vector x_;
};

// Euclidean vector helpers shared across the library.
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
/// cos of the angle between two nonzero vectors.
double cos_vectors(const Vector& a, const Vector& b);

}  // namespace eigloc
