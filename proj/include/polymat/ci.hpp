#pragma once

#include "polymat/linrep.hpp"
#include "polymat/lp.hpp"
#include "polymat/setfn.hpp"
#include "polymat/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polymat {

// The three defining quantities of "z is a common information for (X, Y)".
struct CIWitness {
    std::string z;
    Mask x = 0;
    Mask y = 0;
    Rational gap;    // f(z) - f(X:Y)
    Rational given_x; // f(z|X)
    Rational given_y; // f(z|Y)

    bool valid() const { return gap == 0 && given_x == 0 && given_y == 0; }
    friend bool operator==(const CIWitness&, const CIWitness&) = default;
};

// X and Y are masks over f_ext's ground and must avoid z.
CIWitness is_common_information(const SetFunction& f_ext, std::string_view z, Mask x, Mask y);

// "z", then "z1", "z2", ... until the label is unused.
std::string fresh_label(const GroundSet& ground, std::string_view stem = "z");

// Adds V_z = U_X ∩ U_Y as a new last element.
LinearRep linear_ci_extension(const LinearRep& rep, Mask x, Mask y);

// f(Az) = g(X^1 Y^2 A^3) - f(XY) for every A; f unchanged on E. Throws InputError when g is
// not a tensor product of f with U_{2,3}.
SetFunction ci_extension_from_tensor(const SetFunction& f, const SetFunction& g, Mask x, Mask y);

// Oracle form; only the product identities are checked.
SetFunction ci_extension_from_tensor(const SetFunction& f, const ProductRank& g, Mask x, Mask y);

struct PairResult {
    Mask x = 0;
    Mask y = 0;
    bool polymatroid = false; // all three characterizations agree and pass
    std::optional<PolymatroidWitness> witness;
    bool extension = false;   // agrees with f on E
    CIWitness ci;
    bool ok() const { return polymatroid && extension && ci.valid(); }
    friend bool operator==(const PairResult&, const PairResult&) = default;
};

struct OneCIReport {
    bool ok = false;
    std::vector<PairResult> pairs;
    friend bool operator==(const OneCIReport&, const OneCIReport&) = default;
};

// Every ordered pair (X, Y) of subsets of E, including X = Y and the empty set.
OneCIReport check_1ci_via_tensor(const SetFunction& f, const SetFunction& g);

// Oracle form. Without an explicit pair list every ordered pair is checked, which is refused
// when 3n exceeds the table cap.
OneCIReport check_1ci_via_tensor(const SetFunction& f, const ProductRank& g,
                                 const std::optional<std::vector<std::pair<Mask, Mask>>>& pairs = std::nullopt);

inline constexpr std::size_t kMaxCIExtensionLP = 8;

struct CIExtensionLPResult {
    bool feasible = false;
    std::optional<SetFunction> extension; // feasible
    LinearSystem system;                  // variables f(Az), indexed by A
    FarkasCertificate certificate;        // infeasible
};

// Searches for f(Az) with the elemental inequalities on Ez, f(z) = f(X:Y), f(Xz) = f(X) and
// f(Yz) = f(Y). Requires f to be a polymatroid with n <= 8.
CIExtensionLPResult ci_extension_lp(const SetFunction& f, Mask x, Mask y, const SolveOptions& options = {});

} // namespace polymat
