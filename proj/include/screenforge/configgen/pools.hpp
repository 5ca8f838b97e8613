#pragma once

#include <span>
#include <string_view>

namespace screenforge::configgen::pools {

struct CityState {
  std::string_view city;
  std::string_view state;
};

std::span<const std::string_view> first_names();
std::span<const std::string_view> last_names();
std::span<const std::string_view> street_names();
std::span<const std::string_view> street_suffixes();
std::span<const CityState> cities();
std::span<const std::string_view> email_domains();
std::span<const std::string_view> area_codes();
std::span<const std::string_view> month_names();

}  // namespace screenforge::configgen::pools
