#pragma once

#include <string>
#include <string_view>

#include "expunge/rules.hpp"

namespace expunge {

inline constexpr std::string_view kCertificateFormat = "expunge-certificate/1";

/// Canonical JSON: sorted keys, two-space indent, trailing newline, integers only.
std::string serialize_certificate(const Certificate& cert);

/// Throws ParseError on malformed input; sequence constraints are re-validated.
Certificate parse_certificate(std::string_view text);

void write_certificate_file(const std::string& path, const Certificate& cert);
Certificate read_certificate_file(const std::string& path);

}  // namespace expunge
