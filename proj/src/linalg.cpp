#include "relcx/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace relcx {

bool Vec::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
}

Mat::Mat(FieldPtr F, int rows, int cols)
    : F_(std::move(F)), rows_(rows), cols_(cols),
      a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimensions");
}

Mat Mat::identity(FieldPtr F, int n) {
    Mat m(std::move(F), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::elem_unit(FieldPtr F, int n, int i, int j) {
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("elem_unit: index out of range");
    Mat m(std::move(F), n, n);
    m.set(i, j, 1);
    return m;
}

Mat Mat::diag(FieldPtr F, const std::vector<long long>& entries) {
    int n = static_cast<int>(entries.size());
    Mat m(std::move(F), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, entries[i]);
    return m;
}

Mat Mat::block_diag(const Mat& A, const Mat& B) {
    Mat m(A.F_, A.rows_ + B.rows_, A.cols_ + B.cols_);
    for (int i = 0; i < A.rows_; ++i)
        for (int j = 0; j < A.cols_; ++j) m.set(i, j, A.at(i, j));
    for (int i = 0; i < B.rows_; ++i)
        for (int j = 0; j < B.cols_; ++j) m.set(A.rows_ + i, A.cols_ + j, B.at(i, j));
    return m;
}

Mat Mat::from_rows(FieldPtr F, const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Mat m(std::move(F), r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Vec Mat::row(int i) const {
    Vec v{F_, std::vector<long long>(cols_)};
    for (int j = 0; j < cols_; ++j) v.c[j] = at(i, j);
    return v;
}

void Mat::set_row(int i, const Vec& v) {
    for (int j = 0; j < cols_; ++j) set(i, j, v.c[j]);
}

Mat Mat::mul(const Mat& B) const {
    if (cols_ != B.rows_) throw std::invalid_argument("mat_mul: dimension mismatch");
    const Field& F = *F_;
    Mat C(F_, rows_, B.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            long long aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols_; ++j) {
                long long t = F.mul(aik, B.at(k, j));
                if (t != 0) C.set(i, j, F.add(C.at(i, j), t));
            }
        }
    return C;
}

Mat Mat::add(const Mat& B) const {
    if (rows_ != B.rows_ || cols_ != B.cols_)
        throw std::invalid_argument("mat_add: dimension mismatch");
    Mat C(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) C.a_[i] = F_->add(a_[i], B.a_[i]);
    return C;
}

Mat Mat::scaled(long long lambda) const {
    Mat C(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) C.a_[i] = F_->mul(a_[i], lambda);
    return C;
}

Mat Mat::transpose() const {
    Mat C(F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) C.set(j, i, at(i, j));
    return C;
}

long long Mat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: matrix not square");
    const Field& F = *F_;
    Mat m = *this;
    int n = rows_;
    long long d = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                long long t = m.at(col, j);
                m.set(col, j, m.at(pivot, j));
                m.set(pivot, j, t);
            }
            d = F.neg(d);
        }
        long long pv = m.at(col, col);
        d = F.mul(d, pv);
        long long pv_inv = F.inv(pv);
        for (int r = col + 1; r < n; ++r) {
            long long factor = m.at(r, col);
            if (factor == 0) continue;
            long long scale = F.mul(factor, pv_inv);
            for (int j = col; j < n; ++j)
                m.set(r, j, F.sub(m.at(r, j), F.mul(scale, m.at(col, j))));
        }
    }
    return d;
}

Mat Mat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("mat_inv: matrix not square");
    const Field& F = *F_;
    int n = rows_;
    Mat m = *this;
    Mat inv = identity(F_, n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::domain_error("mat_inv: singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.a_[static_cast<size_t>(col) * n + j],
                          m.a_[static_cast<size_t>(pivot) * n + j]);
                std::swap(inv.a_[static_cast<size_t>(col) * n + j],
                          inv.a_[static_cast<size_t>(pivot) * n + j]);
            }
        long long pv_inv = F.inv(m.at(col, col));
        for (int j = 0; j < n; ++j) {
            m.set(col, j, F.mul(m.at(col, j), pv_inv));
            inv.set(col, j, F.mul(inv.at(col, j), pv_inv));
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            long long factor = m.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j < n; ++j) {
                m.set(r, j, F.sub(m.at(r, j), F.mul(factor, m.at(col, j))));
                inv.set(r, j, F.sub(inv.at(r, j), F.mul(factor, inv.at(col, j))));
            }
        }
    }
    return inv;
}

bool Mat::is_invertible() const {
    return rows_ == cols_ && det() != 0;
}

std::pair<Mat, int> Mat::rref() const {
    const Field& F = *F_;
    Mat m = *this;
    int r = 0;
    std::vector<int> pivot_cols;
    for (int col = 0; col < cols_ && r < rows_; ++col) {
        int pivot = -1;
        for (int i = r; i < rows_; ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols_; ++j) {
                long long t = m.at(r, j);
                m.set(r, j, m.at(pivot, j));
                m.set(pivot, j, t);
            }
        long long pv_inv = F.inv(m.at(r, col));
        for (int j = 0; j < cols_; ++j) m.set(r, j, F.mul(m.at(r, j), pv_inv));
        for (int i = 0; i < rows_; ++i) {
            if (i == r) continue;
            long long factor = m.at(i, col);
            if (factor == 0) continue;
            for (int j = 0; j < cols_; ++j)
                m.set(i, j, F.sub(m.at(i, j), F.mul(factor, m.at(r, j))));
        }
        pivot_cols.push_back(col);
        ++r;
    }
    Mat out(F_, r, cols_);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols_; ++j) out.set(i, j, m.at(i, j));
    return {out, r};
}

std::vector<Vec> Mat::right_kernel() const {
    const Field& F = *F_;
    auto [R, rank] = rref();
    std::vector<int> pivot_col_of_row(rank, -1);
    std::vector<bool> is_pivot(cols_, false);
    {
        int col = 0;
        for (int i = 0; i < rank; ++i) {
            while (col < cols_ && R.at(i, col) == 0) ++col;
            pivot_col_of_row[i] = col;
            is_pivot[col] = true;
        }
    }
    std::vector<Vec> basis;
    for (int freec = 0; freec < cols_; ++freec) {
        if (is_pivot[freec]) continue;
        Vec v{F_, std::vector<long long>(cols_, 0)};
        v.c[freec] = 1;
        for (int i = 0; i < rank; ++i)
            v.c[pivot_col_of_row[i]] = F.neg(R.at(i, freec));
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec vec_mat_mul(const Vec& v, const Mat& A) {
    if (static_cast<int>(v.size()) != A.rows())
        throw std::invalid_argument("vec_mat_mul: dimension mismatch");
    const Field& F = *v.F;
    Vec out{v.F, std::vector<long long>(A.cols(), 0)};
    for (int i = 0; i < A.rows(); ++i) {
        if (v.c[i] == 0) continue;
        for (int j = 0; j < A.cols(); ++j) {
            long long t = F.mul(v.c[i], A.at(i, j));
            if (t != 0) out.c[j] = F.add(out.c[j], t);
        }
    }
    return out;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec out{a.F, std::vector<long long>(a.size())};
    for (size_t i = 0; i < a.size(); ++i) out.c[i] = a.F->add(a.c[i], b.c[i]);
    return out;
}

Vec vec_scaled(const Vec& a, long long lambda) {
    Vec out{a.F, std::vector<long long>(a.size())};
    for (size_t i = 0; i < a.size(); ++i) out.c[i] = a.F->mul(a.c[i], lambda);
    return out;
}

Mat mat_frobenius(const Mat& A, long long i) {
    Mat out = A;
    const Field& F = *A.field();
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) out.set(r, c, F.frobenius(A.at(r, c), i));
    return out;
}

Vec vec_frobenius(const Vec& v, long long i) {
    Vec out = v;
    for (auto& x : out.c) x = v.F->frobenius(x, i);
    return out;
}

}  // namespace relcx
