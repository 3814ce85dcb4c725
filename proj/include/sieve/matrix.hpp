#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sieve/errors.hpp"

namespace sieve {

/// Dense row-major matrix of doubles. Rows are instances, columns features.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data_.data() + r * cols_, cols_);
    }
    std::span<double> row(std::size_t r) {
        return std::span<double>(data_.data() + r * cols_, cols_);
    }

    /// New matrix keeping only the given columns, in the given order.
    Matrix select_columns(std::span<const std::size_t> columns) const {
        Matrix out(rows_, columns.size());
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t j = 0; j < columns.size(); ++j) {
                if (columns[j] >= cols_) throw DimensionMismatch("column index out of range");
                out(r, j) = (*this)(r, columns[j]);
            }
        }
        return out;
    }

    /// New matrix keeping only the given rows, in the given order.
    Matrix select_rows(std::span<const std::size_t> row_ids) const {
        Matrix out(row_ids.size(), cols_);
        for (std::size_t i = 0; i < row_ids.size(); ++i) {
            for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(row_ids[i], c);
        }
        return out;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace sieve
