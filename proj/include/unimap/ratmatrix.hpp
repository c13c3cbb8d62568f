#pragma once

#include <string>
#include <vector>

#include "unimap/rational.hpp"

namespace unimap {

/// Dense matrix over the exact rationals. Row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Rational(0)) {}

    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<RatVec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }
    bool operator<(const RatMatrix& o) const; // deterministic ordering for dedup

    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator*(const Rational& c) const;
    RatVec operator*(const RatVec& v) const;

    bool is_zero() const;
    bool is_strictly_upper_triangular() const;

    RatMatrix transposed() const;

    // Reduced row echelon form; returns pivot column indices.
    std::vector<int> rref_in_place();

    int rank() const;
    Rational det() const;
    // Throws when singular.
    RatMatrix inverse() const;
    // Basis of the right kernel in reduced form, one vector per free column
    // in increasing column order.
    std::vector<RatVec> kernel_basis() const;

    // Classical adjoint (transpose of the cofactor matrix); 1x1 convention
    // gives [1]. Satisfies M * adj(M) = det(M) * I.
    RatMatrix adjugate() const;

    std::string to_string() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

// Stacks matrices vertically (shared column count).
RatMatrix vstack(const std::vector<RatMatrix>& blocks);

} // namespace unimap
