#pragma once

#include <stdexcept>
#include <string>

namespace hogsvm {

// Error categories map 1:1 onto the CLI exit codes (see tools/):
//   IoError -> 2, GeometryError -> 3, DatasetError -> 4, ModelError -> 5.

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hogsvm
