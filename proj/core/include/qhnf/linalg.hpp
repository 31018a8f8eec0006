#ifndef QHNF_LINALG_HPP
#define QHNF_LINALG_HPP

#include <optional>
#include <vector>

#include "qhnf/grading.hpp"

namespace qhnf {

// Small dense rational matrix, row major. Sizes here are graded-slice sizes,
// so everything is exact Gaussian elimination with deterministic pivoting
// (first usable row, columns left to right).
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rational(0)) {}

    Rational& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rational& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Reduced row echelon form in place; returns pivot column indices in order.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Particular solution of A x = b with all free variables set to zero.
std::optional<std::vector<Rational>> solve(const Mat& A, const std::vector<Rational>& b);

// Kernel basis, one vector per free column, echelon-normalized.
std::vector<std::vector<Rational>> kernel_basis(const Mat& A);

// Incrementally built row space used for greedy complement selection:
// add() returns true when the vector enlarged the span.
class SpanBuilder {
public:
    explicit SpanBuilder(int dim) : dim_(dim) {}

    bool contains(std::vector<Rational> v) const;
    bool add(std::vector<Rational> v);
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    void reduce(std::vector<Rational>& v) const;

    int dim_;
    std::vector<std::vector<Rational>> rows_; // normalized, pivot 1
    std::vector<int> pivots_;
};

} // namespace qhnf

#endif
