// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_CORPUS_HPP
#define SINYAL_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sinyal {

/// One geo-timestamped message; the atom of every pipeline stage.
struct TweetRecord {
    std::string id;
    std::int64_t created_at = 0; // UTC epoch seconds
    std::string text;
    std::optional<double> lat; // both present or both absent
    std::optional<double> lon;
    std::string lang; // lowercase code
    bool retweet = false;
    std::optional<bool> label; // gold label, present in labeled corpora

    bool has_geo() const { return lat.has_value(); }

    bool operator==(const TweetRecord&) const = default;
};

struct LabeledTweet {
    TweetRecord tweet;
    bool label = false;
};

/// Loads a newline-delimited record file in file order. Malformed lines
/// raise LoadError with the 1-based line number; unreadable files IoError.
std::vector<TweetRecord> load_corpus(const std::string& path);

/// One record per line, canonical field encoding; load_corpus round-trips it.
void save_corpus(std::span<const TweetRecord> records, const std::string& path);
void write_record_line(const TweetRecord& record, std::ostream& out);

/// Keeps the first occurrence of each id, order otherwise preserved.
std::vector<TweetRecord> dedupe(std::vector<TweetRecord> records);

std::vector<TweetRecord> drop_retweets(std::vector<TweetRecord> records);

/// Case-insensitive language filter.
std::vector<TweetRecord> filter_lang(std::vector<TweetRecord> records, std::string_view lang_code);

/// Fails with DataError naming the first unlabeled record.
std::vector<LabeledTweet> require_labels(std::span<const TweetRecord> records);

} // namespace sinyal

#endif
