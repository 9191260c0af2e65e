#pragma once

#include <stdexcept>
#include <string>

namespace ordmat {

// Error taxonomy shared by the library and the CLI exit-code contract:
// `input` means malformed input (CLI exit 2), everything else is a
// mathematical/precondition failure (CLI exit 1).
enum class errc {
    input,
    descriptor_mismatch,
    dimension_mismatch,
    not_invertible,
    singular,
    config_bound,
    precondition,
    shape,
    not_an_automorphism,
    pipeline_order,
    unsupported_ring_automorphism,
    unsupported_homothety,
    decomposition_mismatch,
};

const char* errc_name(errc kind);

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg, std::string witness = {})
        : std::runtime_error(msg), kind_(kind), witness_(std::move(witness)) {}

    errc kind() const { return kind_; }
    // Optional preformatted witness (offending matrix / element / index).
    const std::string& witness() const { return witness_; }

private:
    errc kind_;
    std::string witness_;
};

} // namespace ordmat
