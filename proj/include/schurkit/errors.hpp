#pragma once

#include <stdexcept>
#include <string>

namespace schurkit {

// Incompatible grid or block shapes between operands. Messages name the
// first offending grid index.
class shape_error : public std::invalid_argument {
public:
    explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical preconditions violated: non-finite entries, non-Hermitian input
// where Hermitian is required, eigenvalues negative beyond tolerance.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid serialized input (valid JSON, wrong schema).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace schurkit
