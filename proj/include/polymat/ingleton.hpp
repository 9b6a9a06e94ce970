#pragma once

#include "polymat/setfn.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <variant>

namespace polymat {

struct IngletonReport {
    Rational delta; // [f(AB)+f(AC)+f(BC)+f(AD)+f(BD)] - [f(A)+f(B)+f(ABC)+f(ABD)+f(CD)]
    std::array<Mask, 4> quadruple{};
    bool satisfied = true;
    friend bool operator==(const IngletonReport&, const IngletonReport&) = default;
};

IngletonReport ingleton_delta(const SetFunction& f, Mask a, Mask b, Mask c, Mask d);

struct ExhaustiveScan {};
struct SampledScan {
    std::size_t count = 0;
    std::uint64_t seed = 0;
};
using IngletonScanMode = std::variant<ExhaustiveScan, SampledScan>;

inline constexpr std::size_t kMaxExhaustiveIngleton = 4;

// First violation in lexicographic (A, B, C, D) order for the exhaustive mode, first in draw order
// for the sampled mode. Exhaustive scans require n <= 4.
std::optional<IngletonReport> ingleton_scan(const SetFunction& f, const IngletonScanMode& mode);

} // namespace polymat
