#pragma once

#include "polymat/rational.hpp"
#include "polymat/setfn.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polymat {

struct LinearRow {
    std::vector<std::pair<std::size_t, Rational>> terms; // (variable, coefficient), sorted, no zeros
    Rational rhs;
};

// Equality rows a.x = rhs and inequality rows a.x >= rhs over free rational variables.
// Certificates and points index rows as: all equalities first, then all inequalities.
class LinearSystem {
public:
    LinearSystem() = default;
    explicit LinearSystem(std::size_t num_vars) : num_vars_(num_vars) {}

    std::size_t num_vars() const { return num_vars_; }
    std::size_t num_rows() const { return equalities_.size() + inequalities_.size(); }
    const std::vector<LinearRow>& equalities() const { return equalities_; }
    const std::vector<LinearRow>& inequalities() const { return inequalities_; }

    void add_equality(std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs);
    void add_inequality(std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs);

    // Optional diagnostic names, one per variable.
    std::vector<std::string> var_names;

    // FNV-1a over a canonical text rendering of every row.
    std::uint64_t fingerprint() const;

private:
    static LinearRow normalize(std::vector<std::pair<std::size_t, Rational>> terms, Rational rhs,
                               std::size_t num_vars);

    std::size_t num_vars_ = 0;
    std::vector<LinearRow> equalities_;
    std::vector<LinearRow> inequalities_;
};

struct FarkasCertificate {
    // One per row; free on equality rows, nonnegative on inequality rows.
    std::vector<Rational> multipliers;
};

// True iff the multipliers combine the rows into 0.x >= c with c > 0.
// Throws InputError on a length mismatch.
bool verify_certificate(const LinearSystem& sys, const FarkasCertificate& cert);

// True iff x satisfies every row exactly.
bool satisfies(const LinearSystem& sys, const std::vector<Rational>& x);

struct SolveOptions {
    std::optional<std::chrono::duration<double>> budget; // unlimited when empty
    std::size_t progress_every = 0;                      // 0 disables progress callbacks
    std::function<void(std::size_t iterations, std::size_t active_rows)> progress;
};

struct SolveStats {
    std::size_t iterations = 0;
    std::size_t max_active_rows = 0;
    std::size_t pinned = 0;
    std::size_t bounded = 0;
    double seconds = 0;
    std::size_t solved_vars = 0; // size of the system actually handed to the simplex
    std::size_t solved_rows = 0;
};

enum class SolveStatus { feasible, infeasible, budget_exhausted };

struct FeasibilityResult {
    SolveStatus status = SolveStatus::budget_exhausted;
    std::vector<Rational> point;   // feasible only
    FarkasCertificate certificate; // infeasible only
    SolveStats stats;
};

// Exact phase-one simplex with Bland's rule. Feasible points and certificates are
// re-validated in exact arithmetic before being returned.
FeasibilityResult solve_feasibility(const LinearSystem& sys, const SolveOptions& options = {});

// A permutation of variable indices: variable v is sent to perm[v].
using VariablePermutation = std::vector<std::size_t>;

// Solves sys after identifying variables in the same orbit of `group` (every element listed,
// identity included). A feasible orbit point is expanded back to all variables; an orbit
// certificate is averaged over the group. Both are re-checked against sys itself, so a group
// that does not preserve the row set of sys raises std::logic_error rather than a wrong answer.
FeasibilityResult solve_feasibility_symmetric(const LinearSystem& sys, const std::vector<VariablePermutation>& group,
                                              const SolveOptions& options = {});

// Aut(f) x S3 acting on the variables of build_tensor_feasibility_system(f).
std::vector<VariablePermutation> tensor_symmetry_group(const SetFunction& f);

// Variables g(S), S a subset of E x {1,2,3} (mask in product order). Constraints: g(empty) = 0,
// elemental inequalities g(y:z|X) >= 0 (y = z allowed), and g(X x Y) = f(X) u23(Y).
// Requires |E| <= 4.
LinearSystem build_tensor_feasibility_system(const SetFunction& f);

inline constexpr std::size_t kMaxTensorSearchGround = 4;

} // namespace polymat
