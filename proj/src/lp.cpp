#include "gptlab/lp.hpp"

#include "gptlab/errors.hpp"

namespace gptlab {

void LinearProgram::add_eq(RatVec coeffs, Rational rhs)
{
    if (coeffs.size() != variables)
        throw UsageError("LinearProgram::add_eq: coefficient length mismatch");
    equalities.push_back({std::move(coeffs), std::move(rhs)});
}

void LinearProgram::add_le(RatVec coeffs, Rational rhs)
{
    if (coeffs.size() != variables)
        throw UsageError("LinearProgram::add_le: coefficient length mismatch");
    inequalities.push_back({std::move(coeffs), std::move(rhs)});
}

void LinearProgram::add_ge(RatVec coeffs, Rational rhs)
{
    add_le(-coeffs, -rhs);
}

bool satisfies(const LinearProgram& lp, const RatVec& x)
{
    if (x.size() != lp.variables)
        return false;
    for (const LinearConstraint& c : lp.equalities)
    {
        if (c.coeffs.dot(x) != c.rhs)
            return false;
    }
    for (const LinearConstraint& c : lp.inequalities)
    {
        if (c.coeffs.dot(x) > c.rhs)
            return false;
    }
    return true;
}

bool farkas_valid(const LinearProgram& lp, const FarkasCertificate& cert)
{
    const Eigen::Index ne = static_cast<Eigen::Index>(lp.equalities.size());
    const Eigen::Index ni = static_cast<Eigen::Index>(lp.inequalities.size());
    if (cert.eq_multipliers.size() != ne || cert.ineq_multipliers.size() != ni)
        return false;
    for (Eigen::Index k = 0; k < ni; ++k)
    {
        if (cert.ineq_multipliers(k) < 0)
            return false;
    }
    RatVec combo = RatVec::Zero(lp.variables);
    Rational combo_rhs = 0;
    for (Eigen::Index j = 0; j < ne; ++j)
    {
        combo += cert.eq_multipliers(j) * lp.equalities[j].coeffs;
        combo_rhs += cert.eq_multipliers(j) * lp.equalities[j].rhs;
    }
    for (Eigen::Index k = 0; k < ni; ++k)
    {
        combo += cert.ineq_multipliers(k) * lp.inequalities[k].coeffs;
        combo_rhs += cert.ineq_multipliers(k) * lp.inequalities[k].rhs;
    }
    if (combo_rhs >= 0)
        return false;
    for (Eigen::Index j = 0; j < lp.variables; ++j)
    {
        if (combo(j) != 0)
            return false;
    }
    return true;
}

namespace {

// Dense tableau for min c.y subject to M y = rhs, y >= 0, driven by Bland's
// rule. Free variables of the caller's program are split into positive and
// negative parts; one slack per inequality and one artificial per row
// complete the standard form.
class Simplex
{
  public:
    explicit Simplex(const LinearProgram& lp)
    {
        n_ = lp.variables;
        ne_ = static_cast<int>(lp.equalities.size());
        ni_ = static_cast<int>(lp.inequalities.size());
        rows_ = ne_ + ni_;
        slack_begin_ = 2 * n_;
        art_begin_ = slack_begin_ + ni_;
        cols_ = art_begin_ + rows_;  // rhs column appended separately

        tableau_ = RatMat::Zero(rows_, cols_ + 1);
        basis_.resize(rows_);
        row_sign_.assign(rows_, 1);

        for (int r = 0; r < rows_; ++r)
        {
            const LinearConstraint& c = (r < ne_) ? lp.equalities[r] : lp.inequalities[r - ne_];
            for (int j = 0; j < n_; ++j)
            {
                tableau_(r, 2 * j) = c.coeffs(j);
                tableau_(r, 2 * j + 1) = -c.coeffs(j);
            }
            if (r >= ne_)
                tableau_(r, slack_begin_ + (r - ne_)) = 1;
            tableau_(r, cols_) = c.rhs;
            if (c.rhs < 0)
            {
                tableau_.row(r) = -tableau_.row(r);
                row_sign_[r] = -1;
            }
            tableau_(r, art_begin_ + r) = 1;
            basis_[r] = art_begin_ + r;
        }
    }

    // Runs phase 1. Returns true when the program is feasible.
    bool phase1()
    {
        obj_ = RatVec::Zero(cols_ + 1);
        for (int r = 0; r < rows_; ++r)
            obj_(art_begin_ + r) = 1;
        for (int r = 0; r < rows_; ++r)
            obj_ -= tableau_.row(r).transpose();  // every initial basic cost is 1
        const bool bounded = run(/*block_artificials=*/false);
        if (!bounded)
            throw InternalInconsistencyError("phase-1 objective cannot be unbounded");
        return obj_(cols_) == 0;
    }

    FarkasCertificate farkas() const
    {
        // Dual multipliers from the final reduced costs of the artificial
        // columns: pi_r = 1 - redcost(artificial r).
        FarkasCertificate cert;
        cert.eq_multipliers = RatVec::Zero(ne_);
        cert.ineq_multipliers = RatVec::Zero(ni_);
        for (int r = 0; r < rows_; ++r)
        {
            const Rational pi = Rational(1) - obj_(art_begin_ + r);
            const Rational multiplier = -pi * row_sign_[r];
            if (r < ne_)
                cert.eq_multipliers(r) = multiplier;
            else
                cert.ineq_multipliers(r - ne_) = multiplier;
        }
        return cert;
    }

    RatVec witness() const
    {
        RatVec basic_values = RatVec::Zero(cols_);
        for (int r = 0; r < rows_; ++r)
            basic_values(basis_[r]) = tableau_(r, cols_);
        RatVec x(n_);
        for (int j = 0; j < n_; ++j)
            x(j) = basic_values(2 * j) - basic_values(2 * j + 1);
        return x;
    }

    // Pivots zero-valued artificials out of the basis (dropping redundant
    // rows), then maximizes the objective. Call only after a feasible
    // phase 1.
    LpOptimum::Status phase2(const RatVec& objective)
    {
        for (int r = rows_ - 1; r >= 0; --r)
        {
            if (basis_[r] < art_begin_)
                continue;
            int enter = -1;
            for (int c = 0; c < art_begin_; ++c)
            {
                if (tableau_(r, c) != 0)
                {
                    enter = c;
                    break;
                }
            }
            if (enter >= 0)
                pivot(r, enter);
            else
                remove_row(r);
        }
        obj_ = RatVec::Zero(cols_ + 1);
        for (int j = 0; j < n_; ++j)
        {
            obj_(2 * j) = -objective(j);  // maximize f == minimize -f
            obj_(2 * j + 1) = objective(j);
        }
        for (int r = 0; r < rows_; ++r)
        {
            const Rational basic_cost = obj_(basis_[r]);
            if (basic_cost != 0)
                obj_ -= basic_cost * tableau_.row(r).transpose();
        }
        const bool bounded = run(/*block_artificials=*/true);
        return bounded ? LpOptimum::Status::Optimal : LpOptimum::Status::Unbounded;
    }

    // Value of the maximized objective: obj_(cols_) holds minus the minimum
    // of the negated objective.
    Rational objective_value() const { return obj_(cols_); }

  private:
    // Bland's rule: entering column is the lowest-index negative reduced
    // cost; the leaving row minimizes the ratio, ties broken by the lowest
    // basis index. Returns false when the objective is unbounded below.
    bool run(bool block_artificials)
    {
        const int limit = block_artificials ? art_begin_ : cols_;
        while (true)
        {
            int enter = -1;
            for (int c = 0; c < limit; ++c)
            {
                if (obj_(c) < 0)
                {
                    enter = c;
                    break;
                }
            }
            if (enter < 0)
                return true;
            int leave = -1;
            Rational best_ratio = 0;
            for (int r = 0; r < rows_; ++r)
            {
                if (tableau_(r, enter) <= 0)
                    continue;
                const Rational ratio = tableau_(r, cols_) / tableau_(r, enter);
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave]))
                {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0)
                return false;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col)
    {
        const Rational inv = Rational(1) / tableau_(row, col);
        tableau_.row(row) *= inv;
        for (int r = 0; r < rows_; ++r)
        {
            if (r == row || tableau_(r, col) == 0)
                continue;
            const Rational factor = tableau_(r, col);
            tableau_.row(r) -= factor * tableau_.row(row);
        }
        const Rational obj_factor = obj_(col);
        if (obj_factor != 0)
            obj_ -= obj_factor * tableau_.row(row).transpose();
        basis_[row] = col;
    }

    void remove_row(int row)
    {
        const int last = rows_ - 1;
        if (row != last)
        {
            tableau_.row(row) = tableau_.row(last);
            basis_[row] = basis_[last];
            row_sign_[row] = row_sign_[last];
        }
        tableau_.conservativeResize(last, Eigen::NoChange);
        basis_.resize(last);
        row_sign_.resize(last);
        rows_ = last;
    }

    int n_ = 0, ne_ = 0, ni_ = 0, rows_ = 0;
    int slack_begin_ = 0, art_begin_ = 0, cols_ = 0;
    RatMat tableau_;
    RatVec obj_;
    std::vector<int> basis_;
    std::vector<int> row_sign_;
};

}  // namespace

LpResult lp_feasible(const LinearProgram& lp)
{
    LpResult out;
    Simplex simplex(lp);
    if (simplex.phase1())
    {
        out.feasible = true;
        out.witness = simplex.witness();
        if (!satisfies(lp, out.witness))
            throw InternalInconsistencyError("simplex produced an invalid feasible point");
    }
    else
    {
        out.feasible = false;
        out.certificate = simplex.farkas();
        if (!farkas_valid(lp, out.certificate))
            throw InternalInconsistencyError("simplex produced an invalid Farkas certificate");
    }
    return out;
}

LpOptimum lp_maximize(const LinearProgram& lp)
{
    if (!lp.objective.has_value() || lp.objective->size() != lp.variables)
        throw UsageError("lp_maximize: objective missing or of wrong length");
    LpOptimum out;
    Simplex simplex(lp);
    if (!simplex.phase1())
    {
        out.status = LpOptimum::Status::Infeasible;
        out.certificate = simplex.farkas();
        if (!farkas_valid(lp, out.certificate))
            throw InternalInconsistencyError("simplex produced an invalid Farkas certificate");
        return out;
    }
    out.status = simplex.phase2(*lp.objective);
    if (out.status == LpOptimum::Status::Optimal)
    {
        out.argmax = simplex.witness();
        out.value = simplex.objective_value();
        if (!satisfies(lp, out.argmax) || lp.objective->dot(out.argmax) != out.value)
            throw InternalInconsistencyError("simplex produced an invalid optimum");
    }
    return out;
}

}  // namespace gptlab
