#pragma once

#include <nlohmann/json.hpp>

#include "k3kit/counting.hpp"
#include "k3kit/mirror.hpp"
#include "k3kit/orbit.hpp"

namespace k3kit {

using nlohmann::json;

// Rationals serialize as JSON integers when they fit exactly in an int64 and
// are integral, otherwise as "p" / "p/q" strings; parsing accepts both.
json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j);

json coords_to_json(const std::vector<Rat>& coords);
std::vector<Rat> coords_from_json(const json& j);

json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const json& j);

json word_to_json(const IsometryWord& word);
IsometryWord word_from_json(const LatticePtr& ambient, const json& j);

json certificate_to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const json& j);

json msurface_to_json(const MarkedMSurfaceData& d);
MarkedMSurfaceData msurface_from_json(const json& j);

json profile_to_json(const CountProfile& p);

}  // namespace k3kit
