#ifndef CITESIM_CSV_HPP
#define CITESIM_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>

namespace citesim {

// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v);

// ofstream that throws DataError when the file cannot be opened.
std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace citesim

#endif
