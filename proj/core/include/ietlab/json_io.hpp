#pragma once

#include "ietlab/field_vector.hpp"
#include "ietlab/gasket.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/restriction.hpp"
#include "ietlab/spi_itm.hpp"

#include <json.hpp>

namespace ietlab {

using Json = nlohmann::json;

// Rationals travel as bare integers when they are integral (and fit), as
// "p/q" strings otherwise; both forms parse back.
Json rat_to_json(const Rat& value);
Rat rat_from_json(const Json& j);

// {"names": [...], "decimals": [...], "digits": n}  declares generators by
// truncated decimal strings (generator 0, the literal 1, is implicit), or
// {"names": [...], "values": [...], "guard": ...}  gives exact values for a
// derived basis.  Omitted entirely means the rational basis {1}.
BasisPtr basis_from_json(const Json& j);
Json basis_to_json(const BasisPtr& basis);

// Coordinates as an array of rationals over the basis; a lone rational is
// shorthand for a constant.
FieldVector fv_from_json(const Json& j, const BasisPtr& basis);
Json fv_to_json(const FieldVector& v);

// {"pi": [...1-based...], "lengths": [[...], ...], "generators": {...}}
Iet iet_from_json(const Json& j);
Json iet_to_json(const Iet& map);

Json permutation_to_json(const Permutation& perm);
Permutation permutation_from_json(const Json& j);

std::vector<Rat> rat_vector_from_json(const Json& j);
Json rat_vector_to_json(const std::vector<Rat>& v);

Json restriction_to_json(const RestrictionSpace& space);
RestrictionSpace restriction_from_json(const Json& j);

// {"coords": [c1, c2, c3], "generators": {...}}
GasketPoint gasket_point_from_json(const Json& j);
Json gasket_point_to_json(const GasketPoint& p);

// {"arms": [{"a":..,"b":..,"c":..,"d":..}, ...], "heights": [...],
//  "generators": {...}}
Spi spi_from_json(const Json& j);
Json spi_to_json(const Spi& spi);

// {"lengths": [...], "translations": [...], "generators": {...}}
Itm itm_from_json(const Json& j);
Json itm_to_json(const Itm& map);

Json interval_set_to_json(const IntervalSet& set);

} // namespace ietlab
