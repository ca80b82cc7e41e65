#include "ietlab/json_io.hpp"

#include "ietlab/errors.hpp"

namespace ietlab {

Json rat_to_json(const Rat& value) {
  // Reduce a copy so equal values serialize identically even when the
  // caller built the mpq_class from an unreduced fraction.
  Rat v = value;
  v.canonicalize();
  if (v.get_den() == 1 && v.get_num().fits_slong_p())
    return Json(v.get_num().get_si());
  return Json(to_string(v));
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_number(j.get<std::string>());
  throw StructuralError("rational must be an integer or a \"p/q\" string");
}

BasisPtr basis_from_json(const Json& j) {
  if (j.is_null()) return rational_basis();
  if (!j.is_object()) throw StructuralError("generators must be an object");
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  if (j.contains("decimals")) {
    auto decimals = j.at("decimals").get<std::vector<std::string>>();
    if (names.empty()) {
      names.push_back("1");
      for (std::size_t k = 0; k < decimals.size(); ++k)
        names.push_back("g" + std::to_string(k + 1));
    }
    unsigned digits = j.value("digits", 0u);
    return std::make_shared<GeneratorBasis>(std::move(names), decimals, digits);
  }
  if (j.contains("values")) {
    std::vector<Rat> values;
    for (const Json& v : j.at("values")) values.push_back(rat_from_json(v));
    if (names.empty()) {
      names.push_back("1");
      for (std::size_t k = 1; k < values.size(); ++k)
        names.push_back("g" + std::to_string(k));
    }
    if (!j.contains("guard"))
      throw StructuralError("value-form generators need a guard");
    return std::make_shared<GeneratorBasis>(std::move(names), std::move(values),
                                            rat_from_json(j.at("guard")));
  }
  if (names.size() <= 1 && (names.empty() || names[0] == "1"))
    return rational_basis();
  throw StructuralError("generators need decimals or values");
}

Json basis_to_json(const BasisPtr& basis) {
  Json j = Json::object();
  Json names = Json::array(), values = Json::array();
  for (std::size_t k = 0; k < basis->size(); ++k) {
    names.push_back(basis->name(k));
    values.push_back(rat_to_json(basis->value(k)));
  }
  j["names"] = std::move(names);
  j["values"] = std::move(values);
  j["guard"] = rat_to_json(basis->guard());
  return j;
}

FieldVector fv_from_json(const Json& j, const BasisPtr& basis) {
  if (j.is_number_integer() || j.is_string())
    return FieldVector::constant(basis, rat_from_json(j));
  if (!j.is_array()) throw StructuralError("coordinates must be an array");
  std::vector<Rat> coeffs;
  for (const Json& c : j) coeffs.push_back(rat_from_json(c));
  if (coeffs.size() != basis->size())
    throw StructuralError("coordinate count does not match the generators");
  return FieldVector(basis, std::move(coeffs));
}

Json fv_to_json(const FieldVector& v) {
  Json j = Json::array();
  for (const Rat& c : v.coeffs()) j.push_back(rat_to_json(c));
  return j;
}

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) throw StructuralError("permutation must be an array");
  return Permutation::from_one_based(j.get<std::vector<std::size_t>>());
}

Json permutation_to_json(const Permutation& perm) {
  return Json(perm.to_one_based());
}

Iet iet_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("exchange must be an object");
  BasisPtr basis = basis_from_json(j.contains("generators") ? j.at("generators")
                                                            : Json());
  Permutation perm = permutation_from_json(j.at("pi"));
  std::vector<FieldVector> lengths;
  for (const Json& l : j.at("lengths")) lengths.push_back(fv_from_json(l, basis));
  return Iet(std::move(perm), std::move(lengths));
}

Json iet_to_json(const Iet& map) {
  Json j = Json::object();
  j["pi"] = permutation_to_json(map.perm());
  Json lengths = Json::array();
  for (const FieldVector& l : map.lengths()) lengths.push_back(fv_to_json(l));
  j["lengths"] = std::move(lengths);
  j["generators"] = basis_to_json(map.basis());
  return j;
}

std::vector<Rat> rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw StructuralError("vector must be an array");
  std::vector<Rat> v;
  for (const Json& c : j) v.push_back(rat_from_json(c));
  return v;
}

Json rat_vector_to_json(const std::vector<Rat>& v) {
  Json j = Json::array();
  for (const Rat& c : v) j.push_back(rat_to_json(c));
  return j;
}

Json restriction_to_json(const RestrictionSpace& space) {
  Json rows = Json::array();
  for (const std::vector<Rat>& r : space.rows())
    rows.push_back(rat_vector_to_json(r));
  Json j = Json::object();
  j["ambient"] = space.ambient();
  j["rows"] = std::move(rows);
  return j;
}

RestrictionSpace restriction_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows"))
    throw StructuralError("restriction must be {ambient, rows}");
  Mat rows;
  for (const Json& r : j.at("rows")) rows.push_back(rat_vector_from_json(r));
  std::size_t ambient;
  if (j.contains("ambient")) ambient = j.at("ambient").get<std::size_t>();
  else if (!rows.empty()) ambient = rows.front().size();
  else throw StructuralError("restriction needs ambient dimension");
  return RestrictionSpace(ambient, std::move(rows));
}

GasketPoint gasket_point_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("point must be an object");
  BasisPtr basis = basis_from_json(j.contains("generators") ? j.at("generators")
                                                            : Json());
  const Json& coords = j.at("coords");
  if (!coords.is_array() || coords.size() != 3)
    throw StructuralError("point needs exactly 3 coordinates");
  return GasketPoint{fv_from_json(coords[0], basis),
                     fv_from_json(coords[1], basis),
                     fv_from_json(coords[2], basis)};
}

Json gasket_point_to_json(const GasketPoint& p) {
  Json j = Json::object();
  j["coords"] = Json::array({fv_to_json(p[0]), fv_to_json(p[1]), fv_to_json(p[2])});
  j["generators"] = basis_to_json(p[0].basis());
  return j;
}

Spi spi_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("system must be an object");
  BasisPtr basis = basis_from_json(j.contains("generators") ? j.at("generators")
                                                            : Json());
  std::vector<SpiArm> arms;
  for (const Json& a : j.at("arms"))
    arms.push_back(SpiArm{fv_from_json(a.at("a"), basis),
                          fv_from_json(a.at("b"), basis),
                          fv_from_json(a.at("c"), basis),
                          fv_from_json(a.at("d"), basis)});
  std::vector<FieldVector> heights;
  for (const Json& h : j.at("heights")) heights.push_back(fv_from_json(h, basis));
  return Spi(std::move(arms), std::move(heights));
}

Json spi_to_json(const Spi& spi) {
  Json arms = Json::array();
  for (const SpiArm& a : spi.arms()) {
    Json arm = Json::object();
    arm["a"] = fv_to_json(a.a);
    arm["b"] = fv_to_json(a.b);
    arm["c"] = fv_to_json(a.c);
    arm["d"] = fv_to_json(a.d);
    arms.push_back(std::move(arm));
  }
  Json heights = Json::array();
  for (const FieldVector& h : spi.heights()) heights.push_back(fv_to_json(h));
  Json j = Json::object();
  j["arms"] = std::move(arms);
  j["heights"] = std::move(heights);
  j["generators"] = basis_to_json(spi.basis());
  return j;
}

Itm itm_from_json(const Json& j) {
  if (!j.is_object()) throw StructuralError("mapping must be an object");
  BasisPtr basis = basis_from_json(j.contains("generators") ? j.at("generators")
                                                            : Json());
  std::vector<FieldVector> lengths, translations;
  for (const Json& l : j.at("lengths")) lengths.push_back(fv_from_json(l, basis));
  for (const Json& t : j.at("translations"))
    translations.push_back(fv_from_json(t, basis));
  return Itm(std::move(lengths), std::move(translations));
}

Json itm_to_json(const Itm& map) {
  Json lengths = Json::array(), translations = Json::array();
  for (const FieldVector& l : map.lengths()) lengths.push_back(fv_to_json(l));
  for (const FieldVector& t : map.translations())
    translations.push_back(fv_to_json(t));
  Json j = Json::object();
  j["lengths"] = std::move(lengths);
  j["translations"] = std::move(translations);
  j["generators"] = basis_to_json(map.basis());
  return j;
}

Json interval_set_to_json(const IntervalSet& set) {
  Json parts = Json::array();
  for (const auto& p : set.parts())
    parts.push_back(Json::array({fv_to_json(p.first), fv_to_json(p.second)}));
  return parts;
}

} // namespace ietlab
