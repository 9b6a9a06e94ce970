#include "polymat/corpus.hpp"

#include "polymat/tensor.hpp"

#include <algorithm>
#include <charconv>

namespace polymat::corpus {

SetFunction vamos()
{
    GroundSet ground({"a", "a'", "b", "b'", "c", "c'", "d", "d'"});
    const Mask a = 0x03, b = 0x0c, c = 0x30, d = 0xc0;
    const Mask planes[] = {a | b, a | c, a | d, b | c, b | d};
    std::vector<Rational> values(ground.subset_count());
    for (Mask m = 0; m < values.size(); ++m) {
        int r = std::min(popcount(m), 4);
        if (std::find(std::begin(planes), std::end(planes), m) != std::end(planes))
            r = 3;
        values[m] = r;
    }
    return SetFunction(std::move(ground), std::move(values));
}

LinearRep fano_rep()
{
    std::vector<std::string> labels;
    std::vector<std::vector<FieldVector>> gens;
    for (std::uint32_t i = 1; i <= 7; ++i) {
        labels.push_back(std::to_string(i));
        gens.push_back({{i & 1, (i >> 1) & 1, (i >> 2) & 1}});
    }
    return LinearRep(GroundSet(std::move(labels)), 2, 3, std::move(gens));
}

SetFunction fano() { return rep_rank_function(fano_rep()); }

SetFunction ingleton_violator4()
{
    GroundSet ground({"a", "b", "c", "d"});
    std::vector<Rational> values(ground.subset_count());
    for (Mask m = 1; m < values.size(); ++m) {
        const int k = popcount(m);
        values[m] = k == 1 ? 2 : k == 2 ? 3 : 4;
    }
    values[0b1100] = 4;
    return SetFunction(std::move(ground), std::move(values));
}

LinearRep free2_rep() { return LinearRep(GroundSet({"a", "b"}), 2, 2, {{{1, 0}}, {{0, 1}}}); }

SetFunction free2() { return rep_rank_function(free2_rep()); }

LinearRep pair_rep()
{
    return LinearRep(GroundSet({"a", "b"}), 2, 3, {{{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {0, 0, 1}}});
}

SetFunction pair_polymatroid() { return rep_rank_function(pair_rep()); }

namespace {

std::optional<std::size_t> parse_size(const std::string& s)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace

std::optional<SetFunction> set_function(const std::vector<std::string>& name)
{
    if (name.empty())
        return std::nullopt;
    const auto& head = name.front();
    if (name.size() == 3 && head == "uniform") {
        auto k = parse_size(name[1]), n = parse_size(name[2]);
        if (!k || !n)
            throw InputError("usage: uniform <k> <n>");
        return uniform_matroid(*k, *n);
    }
    if (name.size() != 1)
        return std::nullopt;
    if (head == "u23")
        return u23();
    if (head == "fano")
        return fano();
    if (head == "vamos")
        return vamos();
    if (head == "ingleton-violator-4")
        return ingleton_violator4();
    if (head == "free2")
        return free2();
    if (head == "pair")
        return pair_polymatroid();
    return std::nullopt;
}

std::optional<LinearRep> representation(const std::string& name)
{
    if (name == "u23-rep")
        return u23_rep(2);
    if (name == "fano-rep")
        return fano_rep();
    if (name == "free2-rep")
        return free2_rep();
    if (name == "pair-rep")
        return pair_rep();
    return std::nullopt;
}

std::vector<std::string> names()
{
    return {"u23", "uniform <k> <n>", "fano", "vamos", "ingleton-violator-4", "free2", "pair",
            "u23-rep", "fano-rep", "free2-rep", "pair-rep"};
}

} // namespace polymat::corpus
