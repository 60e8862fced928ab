#include "cliffordprym/matrix.hpp"

#include <algorithm>

namespace cliffordprym {

Mat::Mat(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
    a_.assign(static_cast<size_t>(rows) * cols, Fel::zero(field_));
}

Mat Mat::identity(const FieldPtr& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Fel::one(f);
    return m;
}

Mat Mat::from_rows(const FieldPtr& f,
                   const std::vector<std::vector<Fel>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw MathError("bad-matrix", "ragged row lengths");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw MathError("bad-matrix", "shape mismatch in addition");
    Mat m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw MathError("bad-matrix", "shape mismatch in subtraction");
    Mat m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_)
        throw MathError("bad-matrix", "shape mismatch in product");
    Mat m(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
        }
    return m;
}

Mat Mat::operator*(const Fel& c) const {
    Mat m = *this;
    for (auto& x : m.a_) x = x * c;
    return m;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Mat Mat::transpose() const {
    Mat m(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const Fel& x) { return x.is_zero(); });
}

namespace {

// In-place forward elimination; returns pivot columns.
std::vector<int> eliminate(Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        Fel inv = m.at(row, col).inv();
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Fel factor = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int Mat::rank() const {
    Mat m = *this;
    return static_cast<int>(eliminate(m).size());
}

Fel Mat::det() const {
    if (rows_ != cols_)
        throw MathError("bad-matrix", "determinant of a nonsquare matrix");
    Mat m = *this;
    Fel d = Fel::one(field_);
    for (int col = 0; col < cols_; ++col) {
        int sel = -1;
        for (int i = col; i < rows_; ++i)
            if (!m.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) return Fel::zero(field_);
        if (sel != col) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(col, j));
            d = -d;
        }
        d = d * m.at(col, col);
        Fel inv = m.at(col, col).inv();
        for (int i = col + 1; i < rows_; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Fel factor = m.at(i, col) * inv;
            for (int j = col; j < cols_; ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(col, j);
        }
    }
    return d;
}

Mat Mat::inverse() const {
    if (rows_ != cols_)
        throw MathError("bad-matrix", "inverse of a nonsquare matrix");
    Mat aug(field_, rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Fel::one(field_);
    }
    auto pivots = eliminate(aug);
    if (static_cast<int>(pivots.size()) != rows_)
        throw MathError("bad-matrix", "matrix is singular");
    Mat inv(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

std::vector<Fel> Mat::apply(const std::vector<Fel>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw MathError("bad-matrix", "vector length mismatch");
    std::vector<Fel> out(rows_, Fel::zero(field_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] = out[i] + at(i, j) * v[j];
    return out;
}

Mat Mat::rref() const {
    Mat m = *this;
    eliminate(m);
    return m;
}

std::vector<std::vector<Fel>> Mat::kernel_basis() const {
    Mat m = *this;
    auto pivots = eliminate(m);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Fel>> basis;
    for (int free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Fel> v(cols_, Fel::zero(field_));
        v[free_col] = Fel::one(field_);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(static_cast<int>(r), free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

Mat canonical_subspace(const FieldPtr& f,
                       const std::vector<std::vector<Fel>>& spanning_rows) {
    Mat m = Mat::from_rows(f, spanning_rows);
    Mat r = m.rref();
    int nonzero = 0;
    for (int i = 0; i < r.rows(); ++i) {
        bool z = true;
        for (int j = 0; j < r.cols(); ++j)
            if (!r.at(i, j).is_zero()) z = false;
        if (!z) ++nonzero;
    }
    Mat out(f, nonzero, r.cols());
    for (int i = 0; i < nonzero; ++i)
        for (int j = 0; j < r.cols(); ++j) out.at(i, j) = r.at(i, j);
    return out;
}

}  // namespace cliffordprym
