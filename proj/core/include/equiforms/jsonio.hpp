#pragma once
// JSON serialization of forms and relative pairs: exact rationals as
// "num/den" strings, deterministic field and term ordering, lossless
// round trip.  The schema is documented in docs/formjson.md.

#include <random>
#include <string>

#include "equiforms/equivariant.hpp"

namespace equiforms {

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

// kind "form"
std::string form_to_json(const Form& a, const std::string& name = "", int indent = 2);
Form form_from_json(const std::string& text);

// kind "pair"
std::string pair_to_json(const RelativePair& p, const std::string& name = "", int indent = 2);
RelativePair pair_from_json(const std::string& text);

// random form exercising every ring feature (coordinates, r-powers,
// Gaussian atoms, cutoff derivatives, formal atoms, t/theta powers,
// exponentials, X-monomials, dx/w/e generators); built from ring
// operations so the result is canonical
Form random_form(int d, std::mt19937_64& rng);

}  // namespace equiforms
