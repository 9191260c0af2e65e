#pragma once

#include <nlohmann/json_fwd.hpp>

#include "ordmat/decompose.hpp"
#include "ordmat/genword.hpp"

// Wire formats (see docs/schemas.md). Indices are 1-based on the wire,
// rationals are strings, a k=1 ring element may be a bare string.

namespace ordmat {

using json = nlohmann::json;

json to_json(const RingDescriptor& ring);
RingDescriptor ring_from_json(const json& j);

json to_json(const RingElem& e);
RingElem elem_from_json(const json& j, const RingDescriptor& ring);

json to_json(const Mat& m);
Mat mat_from_json(const json& j, const RingDescriptor& ring);

json to_json(const PermSpec& p);
PermSpec perm_from_json(const json& j);

json to_json(const GenWord& w);
GenWord word_from_json(const json& j, const RingDescriptor& ring, int n);

json to_json(const EquivChainCert& c);
EquivChainCert chain_from_json(const json& j);

json to_json(const RingAutomorphism& c);
RingAutomorphism ring_automorphism_from_json(const json& j, const RingDescriptor& ring);

json to_json(const HomothetySpec& h);
HomothetySpec homothety_from_json(const json& j, const RingDescriptor& ring);

json to_json(const AutomorphismSpec& s);
AutomorphismSpec automorphism_spec_from_json(const json& j);

json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j, const RingDescriptor& ring, int n);

} // namespace ordmat
