#include "gptlab/fourier_motzkin.hpp"

#include <map>
#include <optional>
#include <vector>

#include "gptlab/errors.hpp"

namespace gptlab {

namespace {

// One working inequality coeffs.x <= rhs, carrying its provenance as
// multipliers over the doubled system (each equality split into <= and >=).
struct WorkRow
{
    RatVec coeffs;
    Rational rhs;
    RatVec multipliers;
};

constexpr std::size_t kRowBudget = 200000;

struct RowKey
{
    std::vector<Rational> entries;

    bool operator<(const RowKey& other) const
    {
        for (std::size_t i = 0; i < entries.size() && i < other.entries.size(); ++i)
        {
            if (entries[i] != other.entries[i])
                return entries[i] < other.entries[i];
        }
        return entries.size() < other.entries.size();
    }
};

class Eliminator
{
  public:
    explicit Eliminator(const LinearProgram& lp) : lp_(lp)
    {
        ne_ = static_cast<Eigen::Index>(lp.equalities.size());
        ni_ = static_cast<Eigen::Index>(lp.inequalities.size());
    }

    // Returns the multipliers of the first derived row 0 <= negative, if any.
    std::optional<RatVec> contradiction() const { return contradiction_; }

    // Scales so the first nonzero coefficient has absolute value one, drops
    // tautologies and Imbert-redundant rows, and keeps only the tightest rhs
    // per coefficient vector. Returns false once a contradiction has been
    // recorded. A row whose provenance uses more than eliminated+1 original
    // rows is implied by the others (Imbert's acceleration theorem), so
    // dropping it preserves the projection exactly.
    bool insert(std::map<RowKey, WorkRow>& rows, WorkRow row, int eliminated)
    {
        int support = 0;
        for (Eigen::Index i = 0; i < row.multipliers.size(); ++i)
        {
            if (row.multipliers(i) != 0)
                ++support;
        }
        if (support > eliminated + 1)
            return true;
        Rational scale = 0;
        for (Eigen::Index i = 0; i < row.coeffs.size(); ++i)
        {
            if (row.coeffs(i) != 0)
            {
                scale = abs(row.coeffs(i));
                break;
            }
        }
        if (scale == 0)
        {
            if (row.rhs < 0)
            {
                contradiction_ = row.multipliers;
                return false;
            }
            return true;
        }
        if (scale != 1)
        {
            const Rational inv = Rational(1) / scale;
            row.coeffs *= inv;
            row.rhs *= inv;
            row.multipliers *= inv;
        }
        RowKey key;
        key.entries.assign(row.coeffs.data(), row.coeffs.data() + row.coeffs.size());
        auto it = rows.find(key);
        if (it == rows.end())
            rows.emplace(std::move(key), std::move(row));
        else if (row.rhs < it->second.rhs)
            it->second = std::move(row);
        return true;
    }

    FarkasCertificate certificate(const RatVec& doubled) const
    {
        FarkasCertificate cert;
        cert.eq_multipliers = RatVec::Zero(ne_);
        cert.ineq_multipliers = RatVec::Zero(ni_);
        for (Eigen::Index j = 0; j < ne_; ++j)
            cert.eq_multipliers(j) = doubled(2 * j) - doubled(2 * j + 1);
        for (Eigen::Index k = 0; k < ni_; ++k)
            cert.ineq_multipliers(k) = doubled(2 * ne_ + k);
        return cert;
    }

  private:
    const LinearProgram& lp_;
    Eigen::Index ne_ = 0, ni_ = 0;
    std::optional<RatVec> contradiction_;
};

}  // namespace

LpResult lp_feasible_fm(const LinearProgram& lp)
{
    if (lp.variables > kFourierMotzkinMaxVariables)
        throw TooLargeError("lp_feasible_fm: more than 12 variables");

    const int n = lp.variables;
    const Eigen::Index ne = static_cast<Eigen::Index>(lp.equalities.size());
    const Eigen::Index ni = static_cast<Eigen::Index>(lp.inequalities.size());
    const Eigen::Index doubled = 2 * ne + ni;

    Eliminator elim(lp);
    LpResult out;
    const auto finish_infeasible = [&]() {
        out.feasible = false;
        out.certificate = elim.certificate(*elim.contradiction());
        if (!farkas_valid(lp, out.certificate))
            throw InternalInconsistencyError("Fourier-Motzkin produced an invalid certificate");
        return out;
    };

    std::map<RowKey, WorkRow> current;
    for (Eigen::Index j = 0; j < ne; ++j)
    {
        WorkRow le{lp.equalities[j].coeffs, lp.equalities[j].rhs, RatVec::Zero(doubled)};
        le.multipliers(2 * j) = 1;
        if (!elim.insert(current, std::move(le)))
            return finish_infeasible();
        WorkRow ge{-lp.equalities[j].coeffs, -lp.equalities[j].rhs, RatVec::Zero(doubled)};
        ge.multipliers(2 * j + 1) = 1;
        if (!elim.insert(current, std::move(ge)))
            return finish_infeasible();
    }
    for (Eigen::Index k = 0; k < ni; ++k)
    {
        WorkRow row{lp.inequalities[k].coeffs, lp.inequalities[k].rhs, RatVec::Zero(doubled)};
        row.multipliers(2 * ne + k) = 1;
        if (!elim.insert(current, std::move(row)))
            return finish_infeasible();
    }

    // Snapshot of the system before each variable is eliminated, for
    // back-substitution.
    std::vector<std::vector<WorkRow>> stages;
    for (int var = 0; var < n; ++var)
    {
        std::vector<WorkRow> snapshot;
        snapshot.reserve(current.size());
        for (const auto& [key, row] : current)
            snapshot.push_back(row);
        stages.push_back(snapshot);

        std::map<RowKey, WorkRow> next;
        std::vector<const WorkRow*> lower, upper;
        for (const WorkRow& row : snapshot)
        {
            if (row.coeffs(var) > 0)
            {
                upper.push_back(&row);
            }
            else if (row.coeffs(var) < 0)
            {
                lower.push_back(&row);
            }
            else if (!elim.insert(next, row))
            {
                return finish_infeasible();
            }
        }
        for (const WorkRow* up : upper)
        {
            const Rational up_inv = Rational(1) / up->coeffs(var);
            for (const WorkRow* lo : lower)
            {
                const Rational lo_inv = Rational(-1) / lo->coeffs(var);
                WorkRow combined;
                combined.coeffs = up_inv * up->coeffs + lo_inv * lo->coeffs;
                combined.coeffs(var) = 0;
                combined.rhs = up_inv * up->rhs + lo_inv * lo->rhs;
                combined.multipliers = up_inv * up->multipliers + lo_inv * lo->multipliers;
                if (!elim.insert(next, std::move(combined)))
                    return finish_infeasible();
                if (next.size() > kRowBudget)
                    throw TooLargeError("lp_feasible_fm: row blow-up beyond budget");
            }
        }
        current = std::move(next);
    }

    // Everything eliminated without contradiction: feasible. Assign the
    // variables back to front, pinning each inside its remaining interval.
    RatVec x = RatVec::Zero(n);
    for (int var = n - 1; var >= 0; --var)
    {
        const std::vector<WorkRow>& rows = stages[static_cast<std::size_t>(var)];
        bool has_lower = false, has_upper = false;
        Rational lower = 0, upper = 0;
        for (const WorkRow& row : rows)
        {
            if (row.coeffs(var) == 0)
                continue;
            Rational rest = row.rhs;
            for (int k = var + 1; k < n; ++k)
                rest -= row.coeffs(k) * x(k);
            const Rational bound = rest / row.coeffs(var);
            if (row.coeffs(var) > 0)
            {
                if (!has_upper || bound < upper)
                {
                    upper = bound;
                    has_upper = true;
                }
            }
            else
            {
                if (!has_lower || bound > lower)
                {
                    lower = bound;
                    has_lower = true;
                }
            }
        }
        if (has_lower && has_upper)
            x(var) = (lower + upper) / 2;
        else if (has_lower)
            x(var) = lower;
        else if (has_upper)
            x(var) = upper;
    }

    out.feasible = true;
    out.witness = x;
    if (!satisfies(lp, out.witness))
        throw InternalInconsistencyError("Fourier-Motzkin back-substitution produced an invalid point");
    return out;
}

}  // namespace gptlab
