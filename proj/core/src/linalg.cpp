#include "qhnf/linalg.hpp"

#include <algorithm>

namespace qhnf {

std::vector<int> rref(Mat& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int pr = -1;
        for (int r = row; r < m.rows; ++r) {
            if (m.at(r, col) != 0) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (int c = col; c < m.cols; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            Rational f = m.at(r, col);
            if (f == 0) continue;
            for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(Mat m)
{
    return static_cast<int>(rref(m).size());
}

std::optional<std::vector<Rational>> solve(const Mat& A, const std::vector<Rational>& b)
{
    Mat aug(A.rows, A.cols + 1);
    for (int r = 0; r < A.rows; ++r) {
        for (int c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[static_cast<std::size_t>(r)];
    }
    std::vector<int> pivots = rref(aug);
    // inconsistent iff a pivot lands in the augmented column
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    std::vector<Rational> x(static_cast<std::size_t>(A.cols), Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[static_cast<std::size_t>(pivots[i])] = aug.at(static_cast<int>(i), A.cols);
    return x;
}

std::vector<std::vector<Rational>> kernel_basis(const Mat& A)
{
    Mat m = A;
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<Rational>> out;
    for (int free = 0; free < A.cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(A.cols), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<std::size_t>(pivots[i])] = -m.at(static_cast<int>(i), free);
        out.push_back(std::move(v));
    }
    return out;
}

void SpanBuilder::reduce(std::vector<Rational>& v) const
{
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Rational f = v[static_cast<std::size_t>(pivots_[i])];
        if (f == 0) continue;
        for (int c = 0; c < dim_; ++c) v[static_cast<std::size_t>(c)] -= f * rows_[i][static_cast<std::size_t>(c)];
    }
}

bool SpanBuilder::contains(std::vector<Rational> v) const
{
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

bool SpanBuilder::add(std::vector<Rational> v)
{
    reduce(v);
    int pivot = -1;
    for (int c = 0; c < dim_; ++c) {
        if (v[static_cast<std::size_t>(c)] != 0) {
            pivot = c;
            break;
        }
    }
    if (pivot < 0) return false;
    Rational inv = Rational(1) / v[static_cast<std::size_t>(pivot)];
    for (auto& r : v) r *= inv;
    // keep existing rows reduced against the new one
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Rational f = rows_[i][static_cast<std::size_t>(pivot)];
        if (f == 0) continue;
        for (int c = 0; c < dim_; ++c)
            rows_[i][static_cast<std::size_t>(c)] -= f * v[static_cast<std::size_t>(c)];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

} // namespace qhnf
