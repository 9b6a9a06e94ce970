#include "polymat/ingleton.hpp"

#include <random>

namespace polymat {

IngletonReport ingleton_delta(const SetFunction& f, Mask a, Mask b, Mask c, Mask d)
{
    for (Mask m : {a, b, c, d})
        if (!f.ground().valid(m))
            throw InputError("ingleton: subset mask out of range");
    IngletonReport r;
    r.delta = f(a | b) + f(a | c) + f(b | c) + f(a | d) + f(b | d) - f(a) - f(b) - f(a | b | c) - f(a | b | d) -
              f(c | d);
    r.quadruple = {a, b, c, d};
    r.satisfied = r.delta >= 0;
    return r;
}

std::optional<IngletonReport> ingleton_scan(const SetFunction& f, const IngletonScanMode& mode)
{
    const Mask count = static_cast<Mask>(f.ground().subset_count());
    if (std::holds_alternative<ExhaustiveScan>(mode)) {
        if (f.size() > kMaxExhaustiveIngleton)
            throw InputError("exhaustive Ingleton scan supports at most " + std::to_string(kMaxExhaustiveIngleton) +
                             " elements, got " + std::to_string(f.size()));
        for (Mask a = 0; a < count; ++a)
            for (Mask b = 0; b < count; ++b)
                for (Mask c = 0; c < count; ++c)
                    for (Mask d = 0; d < count; ++d) {
                        auto r = ingleton_delta(f, a, b, c, d);
                        if (!r.satisfied)
                            return r;
                    }
        return std::nullopt;
    }
    const auto& s = std::get<SampledScan>(mode);
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<Mask> pick(0, count - 1);
    for (std::size_t i = 0; i < s.count; ++i) {
        const Mask a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        auto r = ingleton_delta(f, a, b, c, d);
        if (!r.satisfied)
            return r;
    }
    return std::nullopt;
}

} // namespace polymat
