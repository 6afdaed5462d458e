#include "gptlab/linalg.hpp"

namespace gptlab {

void rref_in_place(RatMat& A, std::vector<int>* pivot_cols)
{
    const Eigen::Index rows = A.rows();
    const Eigen::Index cols = A.cols();
    Eigen::Index pivot_row = 0;
    for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col)
    {
        Eigen::Index sel = -1;
        for (Eigen::Index r = pivot_row; r < rows; ++r)
        {
            if (A(r, col) != 0)
            {
                sel = r;
                break;
            }
        }
        if (sel < 0)
            continue;
        if (sel != pivot_row)
            A.row(sel).swap(A.row(pivot_row));
        const Rational inv_pivot = Rational(1) / A(pivot_row, col);
        for (Eigen::Index c = col; c < cols; ++c)
            A(pivot_row, c) *= inv_pivot;
        for (Eigen::Index r = 0; r < rows; ++r)
        {
            if (r == pivot_row || A(r, col) == 0)
                continue;
            const Rational factor = A(r, col);
            for (Eigen::Index c = col; c < cols; ++c)
                A(r, c) -= factor * A(pivot_row, c);
        }
        if (pivot_cols != nullptr)
            pivot_cols->push_back(static_cast<int>(col));
        ++pivot_row;
    }
}

LinearSolution solve_linear_system(const RatMat& A, const RatVec& b)
{
    if (A.rows() != b.size())
        throw UsageError("solve_linear_system: rhs length must equal the row count");
    const Eigen::Index rows = A.rows();
    const Eigen::Index cols = A.cols();
    RatMat aug(rows, cols + 1);
    aug.leftCols(cols) = A;
    aug.col(cols) = b;
    std::vector<int> pivots;
    rref_in_place(aug, &pivots);

    LinearSolution out;
    // A pivot in the augmented column marks an inconsistent row 0 = 1.
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols))
        return out;
    out.consistent = true;

    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;

    out.particular = RatVec::Zero(cols);
    for (std::size_t k = 0; k < pivots.size(); ++k)
        out.particular(pivots[k]) = aug(static_cast<Eigen::Index>(k), cols);

    std::vector<int> free_cols;
    for (Eigen::Index c = 0; c < cols; ++c)
    {
        if (!is_pivot[static_cast<std::size_t>(c)])
            free_cols.push_back(static_cast<int>(c));
    }
    out.kernel = RatMat::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t j = 0; j < free_cols.size(); ++j)
    {
        const Eigen::Index fc = free_cols[j];
        out.kernel(fc, static_cast<Eigen::Index>(j)) = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            out.kernel(pivots[k], static_cast<Eigen::Index>(j)) = -aug(static_cast<Eigen::Index>(k), fc);
        // Normalize so the first nonzero entry is positive.
        for (Eigen::Index r = 0; r < cols; ++r)
        {
            const Rational& v = out.kernel(r, static_cast<Eigen::Index>(j));
            if (v != 0)
            {
                if (v < 0)
                    out.kernel.col(static_cast<Eigen::Index>(j)) = -out.kernel.col(static_cast<Eigen::Index>(j));
                break;
            }
        }
    }
    return out;
}

int rank(const RatMat& A)
{
    RatMat copy = A;
    std::vector<int> pivots;
    rref_in_place(copy, &pivots);
    return static_cast<int>(pivots.size());
}

RatMat kernel_basis(const RatMat& A)
{
    return solve_linear_system(A, RatVec::Zero(A.rows())).kernel;
}

std::optional<RatMat> inverse(const RatMat& A)
{
    if (A.rows() != A.cols())
        return std::nullopt;
    const Eigen::Index n = A.rows();
    RatMat aug(n, 2 * n);
    aug.leftCols(n) = A;
    aug.rightCols(n) = RatMat::Identity(n, n);
    std::vector<int> pivots;
    rref_in_place(aug, &pivots);
    if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != static_cast<int>(n - 1))
        return std::nullopt;
    return aug.rightCols(n);
}

}  // namespace gptlab
