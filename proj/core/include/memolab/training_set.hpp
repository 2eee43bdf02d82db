#pragma once

#include <string>
#include <vector>

#include "memolab/matrix.hpp"

namespace memolab {

/// n vectors of identical dimension d, stacked as rows of a matrix.
class TrainingSet {
public:
    TrainingSet() = default;
    explicit TrainingSet(Matrix stacked);
    explicit TrainingSet(const std::vector<Vector>& examples);

    std::size_t size() const { return stacked_.rows(); }
    std::size_t dim() const { return stacked_.cols(); }
    Vector example(std::size_t i) const { return stacked_.row(i); }
    const Matrix& stacked() const { return stacked_; }

    std::vector<Vector> examples() const;

    /// Median over all pairwise example distances (0 when n < 2).
    double median_pairwise_distance() const;

    /// Text format: "n d" header, then one example per line.
    std::string to_text() const;
    static TrainingSet from_text(const std::string& text);
    void save(const std::string& path) const;
    static TrainingSet load(const std::string& path);

private:
    Matrix stacked_;
};

}  // namespace memolab
