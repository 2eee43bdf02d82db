#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace memolab {

using Vector = std::vector<double>;

// Small vector helpers shared across modules.
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
Vector vec_sub(const Vector& a, const Vector& b);
Vector vec_add(const Vector& a, const Vector& b);
Vector vec_scale(const Vector& v, double s);
double distance2(const Vector& a, const Vector& b);

/**
 * Dense row-major matrix of doubles. Value type; all operations return new
 * matrices. Shapes are checked and mismatches throw InvalidInput.
 */
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vector& d);
    static Matrix from_rows(const std::vector<Vector>& rows);
    static Matrix outer(const Vector& u, const Vector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    void set_row(std::size_t i, const Vector& v);
    void set_col(std::size_t j, const Vector& v);

    Matrix transpose() const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator*(double s) const;
    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);
    bool operator==(const Matrix& other) const = default;

    Vector apply(const Vector& x) const;           // this * x
    Vector apply_transposed(const Vector& x) const;  // this^T * x

    double frobenius_norm() const;
    double max_abs() const;
    double trace() const;
    bool is_square() const { return rows_ == cols_; }
    bool all_finite() const;
    /// max |a_ij - a_ji|, infinity for non-square input
    double asymmetry() const;

    /// Submatrix from the given row/column index lists.
    Matrix select(const std::vector<std::size_t>& row_idx,
                  const std::vector<std::size_t>& col_idx) const;

    std::string to_text() const;
    static Matrix from_text(const std::string& text);
    void save(const std::string& path) const;
    static Matrix load(const std::string& path);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(double s, const Matrix& m);

/// Formats with 17 significant digits; round-trips doubles exactly.
std::string format_double(double x);

}  // namespace memolab
