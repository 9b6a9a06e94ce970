#include "polymat/lp.hpp"

#include "polymat/tensor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace polymat {

LinearRow LinearSystem::normalize(std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs,
                                  std::size_t num_vars)
{
    std::map<std::size_t, Rational> merged;
    for (auto& [var, coef] : terms) {
        if (var >= num_vars)
            throw InputError("variable index " + std::to_string(var) + " out of range");
        merged[var] += coef;
    }
    LinearRow row;
    row.rhs = std::move(rhs);
    for (auto& [var, coef] : merged)
        if (coef != 0)
            row.terms.emplace_back(var, std::move(coef));
    return row;
}

void LinearSystem::add_equality(std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs)
{
    equalities_.push_back(normalize(std::move(terms), std::move(rhs), num_vars_));
}

void LinearSystem::add_inequality(std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs)
{
    inequalities_.push_back(normalize(std::move(terms), std::move(rhs), num_vars_));
}

std::uint64_t LinearSystem::fingerprint() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    mix("vars " + std::to_string(num_vars_) + "\n");
    auto emit = [&](const char* kind, const LinearRow& row) {
        std::string line = kind;
        for (const auto& [var, coef] : row.terms)
            line += " " + std::to_string(var) + ":" + format_rational(coef);
        line += " | " + format_rational(row.rhs) + "\n";
        mix(line);
    };
    for (const auto& row : equalities_)
        emit("eq", row);
    for (const auto& row : inequalities_)
        emit("ge", row);
    return h;
}

namespace {

// Sum of multiplier * row over all rows, plus the combined right-hand side.
std::pair<std::vector<Rational>, Rational> combine(const LinearSystem& sys, const std::vector<Rational>& mult)
{
    std::vector<Rational> coef(sys.num_vars());
    Rational rhs = 0;
    std::size_t r = 0;
    auto add = [&](const LinearRow& row) {
        const Rational& m = mult[r++];
        if (m == 0)
            return;
        for (const auto& [var, c] : row.terms)
            coef[var] += m * c;
        rhs += m * row.rhs;
    };
    for (const auto& row : sys.equalities())
        add(row);
    for (const auto& row : sys.inequalities())
        add(row);
    return {std::move(coef), std::move(rhs)};
}

} // namespace

bool verify_certificate(const LinearSystem& sys, const FarkasCertificate& cert)
{
    if (cert.multipliers.size() != sys.num_rows())
        throw InputError("certificate has " + std::to_string(cert.multipliers.size()) + " multipliers, system has " +
                         std::to_string(sys.num_rows()) + " rows");
    for (std::size_t i = 0; i < sys.inequalities().size(); ++i)
        if (cert.multipliers[sys.equalities().size() + i] < 0)
            return false;
    auto [coef, rhs] = combine(sys, cert.multipliers);
    for (const auto& c : coef)
        if (c != 0)
            return false;
    return rhs > 0;
}

bool satisfies(const LinearSystem& sys, const std::vector<Rational>& x)
{
    if (x.size() != sys.num_vars())
        return false;
    auto activity = [&](const LinearRow& row) {
        Rational s = 0;
        for (const auto& [var, c] : row.terms)
            s += c * x[var];
        return s;
    };
    for (const auto& row : sys.equalities())
        if (activity(row) != row.rhs)
            return false;
    for (const auto& row : sys.inequalities())
        if (activity(row) < row.rhs)
            return false;
    return true;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// A row of the reduced system: pinned variables substituted, equalities split into two
// inequalities. source is the original row index (equalities first), sign is +1 or -1.
struct ReducedRow {
    std::vector<std::pair<std::size_t, Rational>> terms; // over original variables
    Rational rhs;
    std::size_t source;
    int sign;
};

struct BoundProof {
    std::size_t row = kNone; // reduced row that implies the bound
    std::size_t stamp = 0;   // order of the final update
};

class Solver {
public:
    Solver(const LinearSystem& sys, const SolveOptions& options) : sys_(sys), options_(options) {}

    FeasibilityResult run();

private:
    void pin_variables();
    bool reduce_rows(); // false if a constant row is violated (certificate_ is set)
    void propagate_bounds();
    void build_columns();
    void iterate();

    Rational activity(std::size_t row) const;
    void refresh_point();
    void grow(std::size_t row, std::size_t col, const std::vector<Rational>& d, const Rational& s);
    void replace_row(std::size_t q, std::size_t row, const std::vector<Rational>& d);
    void shrink(std::size_t jpos, std::size_t q);
    void replace_col(std::size_t jpos, std::size_t col);
    std::vector<Rational> column_in_basis(std::size_t col) const; // A[K, col]

    void finish_feasible();
    void finish_infeasible(const std::vector<Rational>& row_mult, const std::vector<Rational>& slack_mult);
    void finish_certificate(std::vector<Rational> reduced_mult, std::vector<Rational> bound_mult);

    const LinearSystem& sys_;
    const SolveOptions& options_;
    FeasibilityResult result_;

    std::size_t neq_ = 0;
    std::vector<std::size_t> pin_row_;   // per variable: equality row that pins it, or kNone
    std::vector<Rational> pin_value_;

    std::vector<ReducedRow> rows_;
    std::vector<std::optional<Rational>> lower_;
    std::vector<BoundProof> proof_;

    // Columns: bounded variable -> one column (x = L + u); free variable -> two (x = u+ - u-).
    std::vector<std::pair<std::size_t, int>> columns_; // (variable, sign)
    std::vector<std::vector<std::pair<std::size_t, Rational>>> col_rows_; // per reduced row, terms over columns
    std::vector<Rational> col_rhs_;

    // Basis: K tight rows, J columns off their bound; inverse_ is |J| x |K| with A[K,J] inverse_ = I.
    std::vector<std::size_t> basis_rows_;
    std::vector<std::size_t> basis_cols_;
    std::vector<std::size_t> row_pos_;
    std::vector<std::size_t> col_pos_;
    std::vector<std::vector<Rational>> inverse_;
    std::vector<Rational> point_; // u over columns
    std::vector<char> nonzero_;
    std::vector<std::size_t> written_cols_;
};

void Solver::pin_variables()
{
    neq_ = sys_.equalities().size();
    pin_row_.assign(sys_.num_vars(), kNone);
    pin_value_.assign(sys_.num_vars(), Rational(0));
    for (std::size_t k = 0; k < neq_; ++k) {
        const auto& row = sys_.equalities()[k];
        if (row.terms.size() != 1)
            continue;
        auto [var, c] = row.terms.front();
        if (pin_row_[var] != kNone)
            continue;
        pin_row_[var] = k;
        pin_value_[var] = row.rhs / c;
        ++result_.stats.pinned;
    }
}

bool Solver::reduce_rows()
{
    auto reduce = [&](const LinearRow& row, std::size_t source, int sign) -> bool {
        ReducedRow rr{{}, sign * row.rhs, source, sign};
        for (const auto& [var, c] : row.terms) {
            if (pin_row_[var] != kNone)
                rr.rhs -= sign * c * pin_value_[var];
            else
                rr.terms.emplace_back(var, sign * c);
        }
        if (rr.terms.empty()) {
            if (rr.rhs > 0) {
                std::vector<Rational> mult(rows_.size() + 1);
                mult.back() = 1;
                rows_.push_back(std::move(rr));
                finish_certificate(std::move(mult), std::vector<Rational>(sys_.num_vars()));
                return false;
            }
            return true;
        }
        rows_.push_back(std::move(rr));
        return true;
    };
    for (std::size_t k = 0; k < neq_; ++k) {
        const auto& row = sys_.equalities()[k];
        if (row.terms.size() == 1 && pin_row_[row.terms.front().first] == k)
            continue;
        if (!reduce(row, k, 1) || !reduce(row, k, -1))
            return false;
    }
    for (std::size_t i = 0; i < sys_.inequalities().size(); ++i)
        if (!reduce(sys_.inequalities()[i], neq_ + i, 1))
            return false;
    return true;
}

void Solver::propagate_bounds()
{
    // x_a >= (rhs + sum |c_k| L_k) / c_a for rows with a single positive coefficient whose other
    // variables are all bounded below. Runs to a fixpoint; the final update of each bound then only
    // depends on bounds whose final update came earlier, so stamps give a derivation order.
    const std::size_t nv = sys_.num_vars();
    lower_.assign(nv, std::nullopt);
    proof_.assign(nv, BoundProof{});
    std::size_t stamp = 0;
    bool changed = true;
    std::size_t passes = 0;
    while (changed) {
        changed = false;
        if (++passes > nv + 2) {
            lower_.assign(nv, std::nullopt);
            proof_.assign(nv, BoundProof{});
            return;
        }
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto& row = rows_[r];
            std::size_t pos = kNone;
            bool usable = true;
            for (const auto& [var, c] : row.terms) {
                if (c > 0) {
                    if (pos != kNone) {
                        usable = false;
                        break;
                    }
                    pos = var;
                } else if (!lower_[var]) {
                    usable = false;
                    break;
                }
            }
            if (!usable || pos == kNone)
                continue;
            Rational num = row.rhs;
            Rational ca;
            for (const auto& [var, c] : row.terms) {
                if (var == pos)
                    ca = c;
                else
                    num -= c * *lower_[var];
            }
            Rational bound = num / ca;
            if (!lower_[pos] || bound > *lower_[pos]) {
                lower_[pos] = bound;
                proof_[pos] = {r, ++stamp};
                changed = true;
            }
        }
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (lower_[v])
            ++result_.stats.bounded;
}

void Solver::build_columns()
{
    const std::size_t nv = sys_.num_vars();
    std::vector<std::size_t> plus(nv, kNone), minus(nv, kNone);
    for (std::size_t v = 0; v < nv; ++v) {
        if (pin_row_[v] != kNone)
            continue;
        plus[v] = columns_.size();
        columns_.emplace_back(v, 1);
        if (!lower_[v]) {
            minus[v] = columns_.size();
            columns_.emplace_back(v, -1);
        }
    }
    col_rows_.resize(rows_.size());
    col_rhs_.resize(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational rhs = rows_[r].rhs;
        auto& out = col_rows_[r];
        for (const auto& [var, c] : rows_[r].terms) {
            out.emplace_back(plus[var], c);
            if (lower_[var])
                rhs -= c * *lower_[var];
            else
                out.emplace_back(minus[var], -c);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        col_rhs_[r] = std::move(rhs);
    }
    row_pos_.assign(rows_.size(), kNone);
    col_pos_.assign(columns_.size(), kNone);
    point_.assign(columns_.size(), Rational(0));
    nonzero_.assign(columns_.size(), 0);
}

Rational Solver::activity(std::size_t row) const
{
    Rational s = 0;
    for (const auto& [col, c] : col_rows_[row])
        if (nonzero_[col])
            s += c * point_[col];
    return s;
}

void Solver::refresh_point()
{
    for (auto col : written_cols_) {
        point_[col] = 0;
        nonzero_[col] = 0;
    }
    written_cols_ = basis_cols_;
    for (std::size_t j = 0; j < basis_cols_.size(); ++j) {
        Rational v = 0;
        for (std::size_t q = 0; q < basis_rows_.size(); ++q)
            if (inverse_[j][q] != 0 && col_rhs_[basis_rows_[q]] != 0)
                v += inverse_[j][q] * col_rhs_[basis_rows_[q]];
        const auto col = basis_cols_[j];
        nonzero_[col] = v != 0;
        point_[col] = std::move(v);
    }
}

std::vector<Rational> Solver::column_in_basis(std::size_t col) const
{
    std::vector<Rational> b(basis_rows_.size());
    for (std::size_t q = 0; q < basis_rows_.size(); ++q)
        for (const auto& [c, v] : col_rows_[basis_rows_[q]])
            if (c == col)
                b[q] = v;
    return b;
}

void Solver::grow(std::size_t row, std::size_t col, const std::vector<Rational>& d, const Rational& s)
{
    const std::size_t k = basis_rows_.size();
    auto b = column_in_basis(col);
    std::vector<Rational> h(k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t q = 0; q < k; ++q)
            if (b[q] != 0 && inverse_[j][q] != 0)
                h[j] += inverse_[j][q] * b[q];
    for (std::size_t j = 0; j < k; ++j) {
        if (h[j] != 0) {
            Rational hs = h[j] / s;
            for (std::size_t q = 0; q < k; ++q)
                if (d[q] != 0)
                    inverse_[j][q] += hs * d[q];
        }
        inverse_[j].push_back(-h[j] / s);
    }
    std::vector<Rational> last(k + 1);
    for (std::size_t q = 0; q < k; ++q)
        last[q] = -d[q] / s;
    last[k] = 1 / s;
    inverse_.push_back(std::move(last));
    row_pos_[row] = k;
    col_pos_[col] = k;
    basis_rows_.push_back(row);
    basis_cols_.push_back(col);
}

void Solver::replace_row(std::size_t p, std::size_t row, const std::vector<Rational>& d)
{
    const std::size_t k = basis_rows_.size();
    const Rational& dp = d[p];
    for (std::size_t j = 0; j < k; ++j) {
        if (inverse_[j][p] == 0)
            continue;
        Rational f = inverse_[j][p] / dp;
        for (std::size_t q = 0; q < k; ++q) {
            if (q == p)
                continue;
            if (d[q] != 0)
                inverse_[j][q] -= f * d[q];
        }
        inverse_[j][p] = f;
    }
    row_pos_[basis_rows_[p]] = kNone;
    basis_rows_[p] = row;
    row_pos_[row] = p;
}

void Solver::shrink(std::size_t jpos, std::size_t q)
{
    const std::size_t k = basis_rows_.size();
    const Rational pivot = inverse_[jpos][q];
    for (std::size_t j = 0; j < k; ++j) {
        if (j == jpos || inverse_[j][q] == 0)
            continue;
        Rational f = inverse_[j][q] / pivot;
        for (std::size_t c = 0; c < k; ++c)
            if (c != q && inverse_[jpos][c] != 0)
                inverse_[j][c] -= f * inverse_[jpos][c];
    }
    // Swap-remove row jpos and column q.
    const std::size_t last = k - 1;
    if (jpos != last) {
        std::swap(inverse_[jpos], inverse_[last]);
        col_pos_[basis_cols_[last]] = jpos;
    }
    col_pos_[basis_cols_[jpos]] = kNone;
    std::swap(basis_cols_[jpos], basis_cols_[last]);
    inverse_.pop_back();
    basis_cols_.pop_back();
    for (auto& r : inverse_) {
        if (q != last)
            std::swap(r[q], r[last]);
        r.pop_back();
    }
    if (q != last)
        row_pos_[basis_rows_[last]] = q;
    row_pos_[basis_rows_[q]] = kNone;
    std::swap(basis_rows_[q], basis_rows_[last]);
    basis_rows_.pop_back();
}

void Solver::replace_col(std::size_t jpos, std::size_t col)
{
    const std::size_t k = basis_rows_.size();
    auto b = column_in_basis(col);
    std::vector<Rational> h(k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t q = 0; q < k; ++q)
            if (b[q] != 0 && inverse_[j][q] != 0)
                h[j] += inverse_[j][q] * b[q];
    const Rational hp = h[jpos];
    std::vector<Rational> prow = inverse_[jpos];
    for (auto& v : prow)
        v /= hp;
    for (std::size_t j = 0; j < k; ++j) {
        if (j == jpos || h[j] == 0)
            continue;
        for (std::size_t q = 0; q < k; ++q)
            if (prow[q] != 0)
                inverse_[j][q] -= h[j] * prow[q];
    }
    inverse_[jpos] = std::move(prow);
    col_pos_[basis_cols_[jpos]] = kNone;
    basis_cols_[jpos] = col;
    col_pos_[col] = jpos;
}

void Solver::iterate()
{
    const auto start = std::chrono::steady_clock::now();
    const std::size_t nrows = rows_.size();
    std::vector<Rational> slack(columns_.size());
    std::vector<char> touched(columns_.size(), 0);
    std::vector<std::size_t> touched_list;

    for (;;) {
        auto& stats = result_.stats;
        if (options_.budget && std::chrono::steady_clock::now() - start > *options_.budget) {
            result_.status = SolveStatus::budget_exhausted;
            return;
        }
        if (options_.progress && options_.progress_every && stats.iterations % options_.progress_every == 0)
            options_.progress(stats.iterations, basis_rows_.size());

        // Bland's rule: rows (indices 0..R-1) before column slacks (R..R+C-1).
        std::size_t entering_row = kNone;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (row_pos_[r] != kNone)
                continue;
            if (activity(r) < col_rhs_[r]) {
                entering_row = r;
                break;
            }
        }
        std::size_t entering_col = kNone;
        if (entering_row == kNone) {
            for (std::size_t col = 0; col < columns_.size(); ++col) {
                if (col_pos_[col] != kNone && point_[col] < 0) {
                    entering_col = col;
                    break;
                }
            }
            if (entering_col == kNone) {
                finish_feasible();
                return;
            }
        }
        ++stats.iterations;

        const std::size_t k = basis_rows_.size();
        std::vector<Rational> d(k);
        if (entering_row != kNone) {
            for (const auto& [col, c] : col_rows_[entering_row]) {
                const auto j = col_pos_[col];
                if (j == kNone)
                    continue;
                for (std::size_t q = 0; q < k; ++q)
                    if (inverse_[j][q] != 0)
                        d[q] += inverse_[j][q] * c;
            }
        } else {
            d = inverse_[col_pos_[entering_col]];
        }

        // Ratio test: every basic value is zero, so any positive component ties; take the smallest index.
        std::size_t leave_q = kNone;
        for (std::size_t q = 0; q < k; ++q)
            if (d[q] > 0 && (leave_q == kNone || basis_rows_[q] < basis_rows_[leave_q]))
                leave_q = q;

        if (leave_q != kNone) {
            if (entering_row != kNone)
                replace_row(leave_q, entering_row, d);
            else
                shrink(col_pos_[entering_col], leave_q);
            refresh_point();
            continue;
        }

        // Slack components: (entering column) - sum_q d_q a_{K[q]}, restricted to columns outside J.
        for (auto col : touched_list) {
            slack[col] = 0;
            touched[col] = 0;
        }
        touched_list.clear();
        auto touch = [&](std::size_t col) -> Rational& {
            if (!touched[col]) {
                touched[col] = 1;
                touched_list.push_back(col);
            }
            return slack[col];
        };
        if (entering_row != kNone)
            for (const auto& [col, c] : col_rows_[entering_row])
                touch(col) += c;
        for (std::size_t q = 0; q < k; ++q) {
            if (d[q] == 0)
                continue;
            for (const auto& [col, c] : col_rows_[basis_rows_[q]])
                touch(col) -= d[q] * c;
        }
        std::size_t leave_col = kNone;
        for (auto col : touched_list)
            if (col_pos_[col] == kNone && slack[col] > 0 && (leave_col == kNone || col < leave_col))
                leave_col = col;

        if (leave_col == kNone) {
            // Unbounded ray of the multiplier problem: a Farkas certificate.
            std::vector<Rational> row_mult(nrows);
            std::vector<Rational> slack_mult(columns_.size());
            if (entering_row != kNone)
                row_mult[entering_row] = 1;
            else
                slack_mult[entering_col] = 1;
            for (std::size_t q = 0; q < k; ++q)
                row_mult[basis_rows_[q]] = -d[q];
            for (auto col : touched_list)
                if (col_pos_[col] == kNone)
                    slack_mult[col] = -slack[col];
            finish_infeasible(row_mult, slack_mult);
            return;
        }

        if (entering_row != kNone)
            grow(entering_row, leave_col, d, slack[leave_col]);
        else
            replace_col(col_pos_[entering_col], leave_col);
        stats.max_active_rows = std::max(stats.max_active_rows, basis_rows_.size());
        refresh_point();
    }
}

void Solver::finish_feasible()
{
    std::vector<Rational> x(sys_.num_vars());
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (pin_row_[v] != kNone)
            x[v] = pin_value_[v];
        else if (lower_[v])
            x[v] = *lower_[v];
    }
    for (std::size_t col = 0; col < columns_.size(); ++col) {
        if (!nonzero_[col])
            continue;
        auto [var, sign] = columns_[col];
        x[var] += sign * point_[col];
    }
    if (!satisfies(sys_, x))
        throw std::logic_error("solve_feasibility: feasible point failed exact re-validation");
    result_.status = SolveStatus::feasible;
    result_.point = std::move(x);
}

void Solver::finish_infeasible(const std::vector<Rational>& row_mult, const std::vector<Rational>& slack_mult)
{
    std::vector<Rational> bound_mult(sys_.num_vars());
    for (std::size_t col = 0; col < columns_.size(); ++col) {
        auto [var, sign] = columns_[col];
        if (lower_[var] && slack_mult[col] != 0)
            bound_mult[var] += slack_mult[col];
    }
    finish_certificate(row_mult, std::move(bound_mult));
}

void Solver::finish_certificate(std::vector<Rational> reduced_mult, std::vector<Rational> bound_mult)
{
    reduced_mult.resize(rows_.size());
    // Expand each bound x_a >= L_a into the row that implied it plus the bounds it used.
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < bound_mult.size(); ++v)
        if (lower_.size() > v && lower_[v])
            order.push_back(v);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return proof_[a].stamp > proof_[b].stamp; });
    for (auto a : order) {
        if (bound_mult[a] == 0)
            continue;
        const auto& row = rows_[proof_[a].row];
        Rational ca;
        for (const auto& [var, c] : row.terms)
            if (var == a)
                ca = c;
        Rational m = bound_mult[a] / ca;
        reduced_mult[proof_[a].row] += m;
        for (const auto& [var, c] : row.terms)
            if (var != a)
                bound_mult[var] -= m * c;
    }

    std::vector<Rational> mult(sys_.num_rows());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (reduced_mult[r] != 0)
            mult[rows_[r].source] += rows_[r].sign * reduced_mult[r];

    // Cancel pinned variables through their defining equalities.
    auto [coef, rhs] = combine(sys_, mult);
    for (std::size_t v = 0; v < coef.size(); ++v) {
        if (pin_row_[v] == kNone || coef[v] == 0)
            continue;
        const auto& pin = sys_.equalities()[pin_row_[v]];
        mult[pin_row_[v]] -= coef[v] / pin.terms.front().second;
    }
    result_.certificate.multipliers = std::move(mult);
    if (!verify_certificate(sys_, result_.certificate))
        throw std::logic_error("solve_feasibility: certificate failed exact verification");
    result_.status = SolveStatus::infeasible;
}

FeasibilityResult Solver::run()
{
    const auto start = std::chrono::steady_clock::now();
    pin_variables();
    if (reduce_rows()) {
        propagate_bounds();
        build_columns();
        iterate();
    }
    result_.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(result_);
}

} // namespace

FeasibilityResult solve_feasibility(const LinearSystem& sys, const SolveOptions& options)
{
    Solver solver(sys, options);
    auto result = solver.run();
    result.stats.solved_vars = sys.num_vars();
    result.stats.solved_rows = sys.num_rows();
    return result;
}

namespace {

std::string row_key(char kind, const LinearRow& row)
{
    std::string key(1, kind);
    for (const auto& [var, coef] : row.terms)
        key += " " + std::to_string(var) + ":" + coef.get_str();
    key += "|" + row.rhs.get_str();
    return key;
}

LinearRow permuted(const LinearRow& row, const VariablePermutation& perm)
{
    LinearRow out;
    out.rhs = row.rhs;
    out.terms.reserve(row.terms.size());
    for (const auto& [var, coef] : row.terms)
        out.terms.emplace_back(perm[var], coef);
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace

FeasibilityResult solve_feasibility_symmetric(const LinearSystem& sys, const std::vector<VariablePermutation>& group,
                                              const SolveOptions& options)
{
    const std::size_t nv = sys.num_vars();
    for (const auto& perm : group)
        if (perm.size() != nv)
            throw InputError("permutation length does not match the number of variables");

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> orbit(nv, unset);
    std::size_t orbits = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        if (orbit[v] != unset)
            continue;
        for (const auto& perm : group)
            orbit[perm[v]] = orbits;
        orbit[v] = orbits++;
    }

    LinearSystem reduced(orbits);
    std::vector<std::size_t> origin_eq, origin_ge;
    std::unordered_map<std::string, std::size_t> seen;
    auto substitute = [&](const LinearRow& row) {
        std::vector<std::pair<std::size_t, Rational>> terms;
        terms.reserve(row.terms.size());
        for (const auto& [var, coef] : row.terms)
            terms.emplace_back(orbit[var], coef);
        return terms;
    };
    for (std::size_t r = 0; r < sys.equalities().size(); ++r) {
        const auto& row = sys.equalities()[r];
        LinearSystem probe(orbits);
        probe.add_equality(substitute(row), row.rhs);
        const auto& q = probe.equalities().front();
        if (q.terms.empty() && q.rhs == 0)
            continue;
        if (seen.emplace(row_key('e', q), origin_eq.size()).second) {
            reduced.add_equality(q.terms, q.rhs);
            origin_eq.push_back(r);
        }
    }
    for (std::size_t r = 0; r < sys.inequalities().size(); ++r) {
        const auto& row = sys.inequalities()[r];
        LinearSystem probe(orbits);
        probe.add_inequality(substitute(row), row.rhs);
        const auto& q = probe.inequalities().front();
        if (q.terms.empty() && q.rhs <= 0)
            continue;
        if (seen.emplace(row_key('g', q), origin_ge.size()).second) {
            reduced.add_inequality(q.terms, q.rhs);
            origin_ge.push_back(sys.equalities().size() + r);
        }
    }
    seen.clear();

    auto result = solve_feasibility(reduced, options);
    if (result.status == SolveStatus::feasible) {
        std::vector<Rational> point(nv);
        for (std::size_t v = 0; v < nv; ++v)
            point[v] = result.point[orbit[v]];
        if (!satisfies(sys, point))
            throw std::logic_error("expanded orbit point does not satisfy the full system");
        result.point = std::move(point);
    } else if (result.status == SolveStatus::infeasible) {
        std::unordered_map<std::string, std::size_t> index;
        const std::size_t ne = sys.equalities().size();
        for (std::size_t r = 0; r < ne; ++r)
            index.emplace(row_key('e', sys.equalities()[r]), r);
        for (std::size_t r = 0; r < sys.inequalities().size(); ++r)
            index.emplace(row_key('g', sys.inequalities()[r]), ne + r);

        std::vector<Rational> mult(sys.num_rows());
        const Rational share(1, static_cast<unsigned long>(group.size()));
        const auto& m = result.certificate.multipliers;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0)
                continue;
            const std::size_t r = k < origin_eq.size() ? origin_eq[k] : origin_ge[k - origin_eq.size()];
            const bool eq = r < ne;
            const LinearRow& row = eq ? sys.equalities()[r] : sys.inequalities()[r - ne];
            for (const auto& perm : group) {
                auto it = index.find(row_key(eq ? 'e' : 'g', permuted(row, perm)));
                if (it == index.end())
                    throw std::logic_error("variable group does not preserve the system");
                mult[it->second] += m[k] * share;
            }
        }
        result.certificate.multipliers = std::move(mult);
        if (!verify_certificate(sys, result.certificate))
            throw std::logic_error("averaged certificate failed verification");
    }
    return result;
}

std::vector<VariablePermutation> tensor_symmetry_group(const SetFunction& f)
{
    const std::size_t n = f.size();
    if (n > kMaxTensorSearchGround)
        throw InputError("tensor search supports ground sets of at most " + std::to_string(kMaxTensorSearchGround) +
                         " elements, got " + std::to_string(n));
    auto apply = [](const std::vector<std::size_t>& perm, Mask m) {
        Mask out = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (m & bit(i))
                out |= bit(perm[i]);
        return out;
    };

    std::vector<std::vector<std::size_t>> automorphisms;
    std::vector<std::size_t> pi(n);
    std::iota(pi.begin(), pi.end(), std::size_t{0});
    do {
        bool keeps = true;
        for (Mask x = 0; keeps && x < f.ground().subset_count(); ++x)
            keeps = f(apply(pi, x)) == f(x);
        if (keeps)
            automorphisms.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));

    std::vector<VariablePermutation> group;
    std::vector<std::size_t> tau{0, 1, 2};
    do {
        for (const auto& a : automorphisms) {
            std::vector<std::size_t> on_product(3 * n);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t x = 0; x < n; ++x)
                    on_product[i * n + x] = tau[i] * n + a[x];
            VariablePermutation perm(std::size_t{1} << (3 * n));
            for (std::size_t m = 0; m < perm.size(); ++m)
                perm[m] = apply(on_product, static_cast<Mask>(m));
            group.push_back(std::move(perm));
        }
    } while (std::next_permutation(tau.begin(), tau.end()));
    return group;
}

LinearSystem build_tensor_feasibility_system(const SetFunction& f)
{
    const std::size_t n = f.size();
    if (n > kMaxTensorSearchGround)
        throw InputError("tensor search supports ground sets of at most " + std::to_string(kMaxTensorSearchGround) +
                         " elements, got " + std::to_string(n));
    const std::size_t big = 3 * n;
    const Mask full = (Mask{1} << big) - 1;
    LinearSystem sys(std::size_t{1} << big);

    const GroundSet product = ProductGround(f.ground()).ground();
    sys.var_names.reserve(sys.num_vars());
    for (std::size_t m = 0; m < sys.num_vars(); ++m)
        sys.var_names.push_back("g{" + product.format_subset(static_cast<Mask>(m)) + "}");

    sys.add_equality({{0, Rational(1)}}, Rational(0));
    for (Mask x = 0; x < f.ground().subset_count(); ++x) {
        for (Mask y = 0; y < 8; ++y) {
            Mask m = 0;
            for (std::size_t i = 0; i < 3; ++i)
                if (y & bit(i))
                    m |= x << (i * n);
            sys.add_equality({{m, Rational(1)}}, f(x) * std::min(popcount(y), 2));
        }
    }
    for (Mask x = 0;; ++x) {
        for (std::size_t i = 0; i < big; ++i) {
            if (x & bit(i))
                continue;
            for (std::size_t j = i; j < big; ++j) {
                if (x & bit(j))
                    continue;
                const Mask xy = x | bit(i), xz = x | bit(j), xyz = x | bit(i) | bit(j);
                if (i == j)
                    sys.add_inequality({{xy, Rational(1)}, {x, Rational(-1)}}, Rational(0));
                else
                    sys.add_inequality({{xy, Rational(1)}, {xz, Rational(1)}, {xyz, Rational(-1)}, {x, Rational(-1)}},
                                       Rational(0));
            }
        }
        if (x == full)
            break;
    }
    return sys;
}

} // namespace polymat
