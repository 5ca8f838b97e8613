#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace screenforge {

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames over the target, so readers
// never observe a half-written file. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Appends one line and fsyncs before returning.
void append_line_durable(const std::filesystem::path& path, std::string_view line);

}  // namespace screenforge
