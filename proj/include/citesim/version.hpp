#ifndef CITESIM_VERSION_HPP
#define CITESIM_VERSION_HPP

namespace citesim {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
