#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace screenforge {

// Every failure the library raises carries one of these codes; the CLI maps
// them onto process exit codes.
enum class Errc {
  parse_error,
  unknown_attribute,
  schema_mismatch,
  asset_root_missing,
  no_eligible_product,
  missing_generator,
  bad_pattern,
  negative_amount,
  missing_key,
  fill_mismatch,
  bad_density,
  empty_value,
  navigation_timeout,
  script_error,
  protocol_error,
  browser_crashed,
  unknown_brand,
  unknown_page_type,
  unvalidated_sample,
  leakage_unresolved,
  unknown_sample_id,
  runner_failed,
  unknown_layout,
  io_error,
  invalid_argument,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Markup and record parse failures; line/column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace screenforge
