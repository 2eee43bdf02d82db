#include "memolab/training_set.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "memolab/errors.hpp"

namespace memolab {

TrainingSet::TrainingSet(Matrix stacked) : stacked_(std::move(stacked)) {
    if (stacked_.rows() < 1) throw InvalidInput("TrainingSet: needs at least one example");
    if (!stacked_.all_finite()) throw InvalidInput("TrainingSet: non-finite entries");
}

TrainingSet::TrainingSet(const std::vector<Vector>& examples)
    : TrainingSet(Matrix::from_rows(examples)) {}

std::vector<Vector> TrainingSet::examples() const {
    std::vector<Vector> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(example(i));
    return out;
}

double TrainingSet::median_pairwise_distance() const {
    if (size() < 2) return 0.0;
    std::vector<double> d;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            d.push_back(distance2(example(i), example(j)));
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();
    return (m % 2 == 1) ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
}

std::string TrainingSet::to_text() const {
    std::ostringstream os;
    os << size() << ' ' << dim() << '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) {
            if (j) os << ' ';
            os << format_double(stacked_(i, j));
        }
        os << '\n';
    }
    return os.str();
}

TrainingSet TrainingSet::from_text(const std::string& text) {
    std::istringstream is(text);
    std::size_t n = 0, d = 0;
    if (!(is >> n >> d)) throw InvalidInput("training set text: missing 'n d' header");
    Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!(is >> m(i, j))) throw InvalidInput("training set text: not enough entries");
    return TrainingSet(std::move(m));
}

void TrainingSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << to_text();
}

TrainingSet TrainingSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

}  // namespace memolab
