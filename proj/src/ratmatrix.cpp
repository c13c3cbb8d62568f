#include "unimap/ratmatrix.hpp"

#include "unimap/errors.hpp"

namespace unimap {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw DimensionMismatch("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool RatMatrix::operator<(const RatMatrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (size_t i = 0; i < data_.size(); ++i) {
        if (data_[i] != o.data_[i]) return data_[i] < o.data_[i];
    }
    return false;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
    RatMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j) != 0) out.at(i, j) += a * o.at(k, j);
            }
        }
    }
    return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    RatMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    RatMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
}

RatMatrix RatMatrix::operator*(const Rational& c) const {
    RatMatrix out = *this;
    for (auto& v : out.data_) v *= c;
    return out;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
    RatVec out(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j) != 0) out[i] += at(i, j) * v[j];
        }
    }
    return out;
}

bool RatMatrix::is_zero() const {
    for (const auto& v : data_) {
        if (v != 0) return false;
    }
    return true;
}

bool RatMatrix::is_strictly_upper_triangular() const {
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j <= i && j < cols_; ++j) {
            if (at(i, j) != 0) return false;
        }
    }
    return true;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    }
    return out;
}

std::vector<int> RatMatrix::rref_in_place() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int p = -1;
        for (int r = row; r < rows_; ++r) {
            if (at(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (p < 0) continue;
        if (p != row) {
            for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
        }
        Rational inv = at(row, col);
        for (int j = 0; j < cols_; ++j) at(row, j) /= inv;
        for (int r = 0; r < rows_; ++r) {
            if (r == row || at(r, col) == 0) continue;
            Rational factor = at(r, col);
            for (int j = 0; j < cols_; ++j) at(r, j) -= factor * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int RatMatrix::rank() const {
    RatMatrix copy = *this;
    return static_cast<int>(copy.rref_in_place().size());
}

Rational RatMatrix::det() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    RatMatrix m = *this;
    Rational d = 1;
    for (int col = 0; col < cols_; ++col) {
        int p = -1;
        for (int r = col; r < rows_; ++r) {
            if (m.at(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (p < 0) return 0;
        if (p != col) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        for (int r = col + 1; r < rows_; ++r) {
            if (m.at(r, col) == 0) continue;
            Rational factor = m.at(r, col) / m.at(col, col);
            for (int j = col; j < cols_; ++j) m.at(r, j) -= factor * m.at(col, j);
        }
    }
    return d;
}

RatMatrix RatMatrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    RatMatrix aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    auto pivots = aug.rref_in_place();
    if (static_cast<int>(pivots.size()) != rows_ || pivots.back() >= cols_) {
        throw Error("matrix is singular");
    }
    RatMatrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    }
    return inv;
}

std::vector<RatVec> RatMatrix::kernel_basis() const {
    RatMatrix m = *this;
    std::vector<int> pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols_, Rational(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m.at(static_cast<int>(r), free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix RatMatrix::adjugate() const {
    if (rows_ != cols_) throw DimensionMismatch("adjugate of non-square matrix");
    int n = rows_;
    if (n == 1) {
        RatMatrix out(1, 1);
        out.at(0, 0) = 1;
        return out;
    }
    RatMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            RatMatrix minor(n - 1, n - 1);
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc) = at(r, c);
                    ++mc;
                }
                ++mr;
            }
            Rational cof = minor.det();
            if ((i + j) % 2 != 0) cof = -cof;
            out.at(j, i) = cof; // transpose of cofactors
        }
    }
    return out;
}

std::string RatMatrix::to_string() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
        s += "[ ";
        for (int j = 0; j < cols_; ++j) {
            if (j) s += ", ";
            s += unimap::to_string(at(i, j));
        }
        s += " ]\n";
    }
    return s;
}

RatMatrix vstack(const std::vector<RatMatrix>& blocks) {
    if (blocks.empty()) return RatMatrix(0, 0);
    int cols = blocks[0].cols();
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw DimensionMismatch("vstack column mismatch");
        rows += b.rows();
    }
    RatMatrix out(rows, cols);
    int r0 = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i) {
            for (int j = 0; j < cols; ++j) out.at(r0 + i, j) = b.at(i, j);
        }
        r0 += b.rows();
    }
    return out;
}

} // namespace unimap
