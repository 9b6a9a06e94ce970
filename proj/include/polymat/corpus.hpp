#pragma once

#include "polymat/linrep.hpp"
#include "polymat/setfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polymat::corpus {

// Rank 4 on a, a', b, b', c, c', d, d'; the five planes {aa'bb'}, {aa'cc'}, {aa'dd'}, {bb'cc'},
// {bb'dd'} have rank 3, every other set X has rank min(|X|, 4).
SetFunction vamos();

// Points 1..7 are the nonzero vectors of GF(2)^3 (point i = binary digits of i).
SetFunction fano();
LinearRep fano_rep();

// On a, b, c, d: singletons 2, pairs 3 except f(cd) = 4, triples and the full set 4.
SetFunction ingleton_violator4();

// Free matroid on {a, b}.
SetFunction free2();
LinearRep free2_rep();

// V_a = span{e1, e2}, V_b = span{e2, e3} in GF(2)^3.
LinearRep pair_rep();
SetFunction pair_polymatroid();

// Names accepted by the CLI: u23, "uniform k n", fano, vamos, ingleton-violator-4, free2, pair.
std::optional<SetFunction> set_function(const std::vector<std::string>& name);
// u23-rep, fano-rep, free2-rep, pair-rep.
std::optional<LinearRep> representation(const std::string& name);

std::vector<std::string> names();

} // namespace polymat::corpus
