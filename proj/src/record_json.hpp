// SPDX-License-Identifier: Apache-2.0

// Internal: NDJSON record encoding shared by corpus and hit-file I/O.

#ifndef SINYAL_SRC_RECORD_JSON_HPP
#define SINYAL_SRC_RECORD_JSON_HPP

#include <cstddef>

#include <json.hpp>

#include "sinyal/corpus.hpp"

namespace sinyal::detail {

/// Validates and converts one parsed NDJSON object; throws LoadError
/// carrying `line_no` on any schema violation.
TweetRecord record_from_json(const nlohmann::json& obj, std::size_t line_no);

nlohmann::json record_to_json(const TweetRecord& rec);

} // namespace sinyal::detail

#endif
