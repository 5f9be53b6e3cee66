#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "kr/krmodules.hpp"

namespace kr {

// Canonical JSON renderings (sorted keys, two-space indent, trailing
// newline); identical inputs always produce byte-identical documents.

// {"algebra":"B2","terms":[{"weight":[1,0],"mult":1},...]}
std::string character_json(const ClassicalCharacter &c);
ClassicalCharacter parse_character_json(const std::string &text);

// {"algebra":"A2","node":1,"level":2,"monomials":[{"exps":[[1,0,1],...],"mult":1},...]}
// Also the cache-file schema.
std::string qchar_json(const QCharacter &qc, int node, int level);
QCharacter parse_qchar_json(const std::string &text, const CartanData &cd, int node, int level);

std::string decomposition_json(const CartanData &cd, const std::map<Weight, std::int64_t> &mult);
std::string tensor_json(const CartanData &cd, int node, const Partition &p,
                        const MultiplicityVector &mult);
std::string poset_json(int m);
std::string positivity_report_json(const PositivityReport &r);

}  // namespace kr
