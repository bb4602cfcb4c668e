#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "relcx/gf.hpp"

namespace relcx {

/// Row vector over GF(q); coordinates are field-element encodings.
struct Vec {
    FieldPtr F;
    std::vector<long long> c;

    size_t size() const { return c.size(); }
    bool is_zero() const;
    bool operator==(const Vec& o) const { return c == o.c; }
};

/// Dense matrix over GF(q), row major.  Vectors are rows and matrices act
/// on the right (v -> v*A), so the rows of A are the images of the basis
/// vectors.
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr F, int rows, int cols);

    static Mat identity(FieldPtr F, int n);
    /// E_{ij}: the n x n matrix with a single 1 in position (i, j), 0-based.
    static Mat elem_unit(FieldPtr F, int n, int i, int j);
    static Mat diag(FieldPtr F, const std::vector<long long>& entries);
    static Mat block_diag(const Mat& A, const Mat& B);
    static Mat from_rows(FieldPtr F, const std::vector<std::vector<long long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return F_; }

    long long at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, long long v) { a_[static_cast<size_t>(i) * cols_ + j] = v; }
    const std::vector<long long>& data() const { return a_; }

    Vec row(int i) const;
    void set_row(int i, const Vec& v);

    Mat mul(const Mat& B) const;
    Mat add(const Mat& B) const;
    Mat scaled(long long lambda) const;
    Mat transpose() const;
    long long det() const;
    /// Throws std::domain_error if singular.
    Mat inverse() const;
    bool is_invertible() const;

    /// Unique reduced row echelon form with zero rows removed, plus rank.
    std::pair<Mat, int> rref() const;
    int rank() const { return rref().second; }

    /// Basis of {v : A v^T = 0}, returned as row vectors of length cols().
    std::vector<Vec> right_kernel() const;

    /// Entry encodings, row major; the canonical comparison key.
    const std::vector<long long>& key() const { return a_; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    FieldPtr F_;
    int rows_ = 0, cols_ = 0;
    std::vector<long long> a_;
};

Vec vec_mat_mul(const Vec& v, const Mat& A);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scaled(const Vec& a, long long lambda);

/// Entrywise frobenius x -> x^(p^i).
Mat mat_frobenius(const Mat& A, long long i);
Vec vec_frobenius(const Vec& v, long long i);

}  // namespace relcx
