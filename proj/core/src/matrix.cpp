#include "memolab/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "memolab/errors.hpp"

namespace memolab {

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

Vector vec_sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("vec_sub: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector vec_add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("vec_add: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector vec_scale(const Vector& v, double s) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
    return r;
}

double distance2(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("distance2: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw InvalidInput("Matrix: data length does not equal rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return Matrix();
    const std::size_t c = rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw InvalidInput("from_rows: ragged rows");
        m.set_row(i, rows[i]);
    }
    return m;
}

Matrix Matrix::outer(const Vector& u, const Vector& v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<long>(i * cols_),
                  data_.begin() + static_cast<long>((i + 1) * cols_));
}

Vector Matrix::col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_row(std::size_t i, const Vector& v) {
    if (v.size() != cols_) throw InvalidInput("set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void Matrix::set_col(std::size_t j, const Vector& v) {
    if (v.size() != rows_) throw InvalidInput("set_col: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator+(const Matrix& other) const {
    Matrix r = *this;
    r += other;
    return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
    Matrix r = *this;
    r -= other;
    return r;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix +: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix -: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw InvalidInput("matrix *: inner dimension mismatch");
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* arow = row_ptr(i);
        double* rrow = r.row_ptr(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = other.row_ptr(k);
            for (std::size_t j = 0; j < other.cols_; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

Matrix Matrix::operator*(double s) const {
    Matrix r = *this;
    r *= s;
    return r;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

Matrix operator*(double s, const Matrix& m) { return m * s; }

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols_) throw InvalidInput("apply: vector length mismatch");
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* arow = row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += arow[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector Matrix::apply_transposed(const Vector& x) const {
    if (x.size() != rows_) throw InvalidInput("apply_transposed: vector length mismatch");
    Vector y(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* arow = row_ptr(i);
        const double xi = x[i];
        for (std::size_t j = 0; j < cols_; ++j) y[j] += arow[j] * xi;
    }
    return y;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::fabs(x));
    return m;
}

double Matrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

bool Matrix::all_finite() const {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

double Matrix::asymmetry() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
    return m;
}

Matrix Matrix::select(const std::vector<std::size_t>& row_idx,
                      const std::vector<std::size_t>& col_idx) const {
    Matrix r(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        if (row_idx[i] >= rows_) throw InvalidInput("select: row index out of range");
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            if (col_idx[j] >= cols_) throw InvalidInput("select: col index out of range");
            r(i, j) = (*this)(row_idx[i], col_idx[j]);
        }
    }
    return r;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string Matrix::to_text() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << format_double((*this)(i, j));
        }
        os << '\n';
    }
    return os.str();
}

Matrix Matrix::from_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t r = 0, c = 0;
    if (!(is >> r >> c)) throw InvalidInput("matrix text: missing 'rows cols' header");
    Matrix m(r, c);
    for (std::size_t i = 0; i < r * c; ++i) {
        if (!(is >> m.data_[i])) throw InvalidInput("matrix text: not enough entries");
    }
    return m;
}

void Matrix::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << to_text();
}

Matrix Matrix::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

}  // namespace memolab
