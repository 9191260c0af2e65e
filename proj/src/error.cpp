#include "ordmat/error.hpp"

namespace ordmat {

const char* errc_name(errc kind) {
    switch (kind) {
    case errc::input: return "input";
    case errc::descriptor_mismatch: return "descriptor_mismatch";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::not_invertible: return "not_invertible";
    case errc::singular: return "singular";
    case errc::config_bound: return "config_bound";
    case errc::precondition: return "precondition";
    case errc::shape: return "shape";
    case errc::not_an_automorphism: return "not_an_automorphism";
    case errc::pipeline_order: return "pipeline_order";
    case errc::unsupported_ring_automorphism: return "unsupported_ring_automorphism";
    case errc::unsupported_homothety: return "unsupported_homothety";
    case errc::decomposition_mismatch: return "decomposition_mismatch";
    }
    return "unknown";
}

} // namespace ordmat
