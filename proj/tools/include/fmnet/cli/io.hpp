#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fmnet::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to a sibling temporary file and renames it over `path`, creating
/// parent directories as needed. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// `p` if absolute, otherwise `dir / p`.
std::filesystem::path resolve(const std::filesystem::path& dir, const std::string& p);

}  // namespace fmnet::cli
