#ifndef CITESIM_ERRORS_HPP
#define CITESIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace citesim {

// Malformed or inconsistent input data (bad corpus file, invalid config).
// The CLI maps this to exit code 2; internal failures map to 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace citesim

#endif
