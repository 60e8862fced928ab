#pragma once

#include <vector>

#include "cliffordprym/field.hpp"

namespace cliffordprym {

/* Dense matrix over a FieldSpec field.  Sized for the small exact linear
 * algebra this project needs (dimensions stay in single digits). */
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr field, int rows, int cols);
    static Mat identity(const FieldPtr& f, int n);
    static Mat from_rows(const FieldPtr& f,
                         const std::vector<std::vector<Fel>>& rows);

    const FieldPtr& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Fel& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Fel& at(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(const Fel& c) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    bool is_zero() const;

    int rank() const;
    Fel det() const;           // square only
    Mat inverse() const;       // errors when singular
    std::vector<Fel> apply(const std::vector<Fel>& v) const;  // M * v

    // Reduced row echelon form (canonical representative of the row space).
    Mat rref() const;
    // Basis of the right kernel, one vector per row, canonically ordered.
    std::vector<std::vector<Fel>> kernel_basis() const;

private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<Fel> a_;
};

// Canonical basis of a subspace given by spanning rows: RREF with zero rows
// dropped.  Two spans are equal iff their canonical bases are equal.
Mat canonical_subspace(const FieldPtr& f,
                       const std::vector<std::vector<Fel>>& spanning_rows);

}  // namespace cliffordprym
