#pragma once

#include <cstddef>
#include <vector>

namespace cfnl::assignment {

/// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    /// column assigned to each row
    std::vector<std::size_t> col_for_row;
    double total = 0.0;
};

/// Minimum-cost perfect matching, O(n^3) Hungarian method with potentials.
Assignment solve_min(const Matrix& cost);
/// Maximum-weight perfect matching (min-cost on negated weights).
Assignment solve_max(const Matrix& weight);

double evaluate(const Matrix& m, const std::vector<std::size_t>& col_for_row);
bool is_permutation(const std::vector<std::size_t>& p, std::size_t n);

}  // namespace cfnl::assignment
