// SPDX-License-Identifier: Apache-2.0

#include "sinyal/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "record_json.hpp"
#include "sinyal/error.hpp"
#include "sinyal/iso8601.hpp"
#include "sinyal/utf8.hpp"

namespace sinyal {

using nlohmann::json;

namespace detail {

TweetRecord record_from_json(const json& obj, std::size_t line_no) {
    if (!obj.is_object())
        throw LoadError(line_no, "record is not an object");

    auto require = [&](const char* key) -> const json& {
        auto it = obj.find(key);
        if (it == obj.end())
            throw LoadError(line_no, std::string("missing required field '") + key + "'");
        return *it;
    };

    TweetRecord rec;

    const json& id = require("id");
    if (!id.is_string() || id.get<std::string>().empty())
        throw LoadError(line_no, "'id' must be a non-empty string");
    rec.id = id.get<std::string>();

    const json& created = require("created_at");
    if (!created.is_string())
        throw LoadError(line_no, "'created_at' must be an ISO-8601 string");
    auto ts = parse_utc_timestamp(created.get<std::string>());
    if (!ts)
        throw LoadError(line_no, "'created_at' is not a valid UTC instant: \"" +
                                     created.get<std::string>() + "\"");
    rec.created_at = *ts;

    const json& text = require("text");
    if (!text.is_string() || text.get<std::string>().empty())
        throw LoadError(line_no, "'text' must be a non-empty string");
    rec.text = text.get<std::string>();

    const json& lang = require("lang");
    if (!lang.is_string() || lang.get<std::string>().empty())
        throw LoadError(line_no, "'lang' must be a non-empty string");
    rec.lang = utf8::lower_copy(lang.get<std::string>());

    const json& retweet = require("retweet");
    if (!retweet.is_boolean())
        throw LoadError(line_no, "'retweet' must be a boolean");
    rec.retweet = retweet.get<bool>();

    const bool has_lat = obj.contains("lat");
    const bool has_lon = obj.contains("lon");
    if (has_lat != has_lon)
        throw LoadError(line_no, "'lat' and 'lon' must be present together");
    if (has_lat) {
        const json& lat = obj.at("lat");
        const json& lon = obj.at("lon");
        if (!lat.is_number() || !lon.is_number())
            throw LoadError(line_no, "'lat'/'lon' must be numbers");
        const double la = lat.get<double>();
        const double lo = lon.get<double>();
        if (la < -90.0 || la > 90.0)
            throw LoadError(line_no, "'lat' out of range [-90, 90]");
        if (lo < -180.0 || lo > 180.0)
            throw LoadError(line_no, "'lon' out of range [-180, 180]");
        rec.lat = la;
        rec.lon = lo;
    }

    if (auto it = obj.find("label"); it != obj.end()) {
        if (!it->is_boolean())
            throw LoadError(line_no, "'label' must be a boolean");
        rec.label = it->get<bool>();
    }
    return rec;
}

json record_to_json(const TweetRecord& rec) {
    json obj;
    obj["id"] = rec.id;
    obj["created_at"] = format_utc_timestamp(rec.created_at);
    obj["text"] = rec.text;
    obj["lang"] = rec.lang;
    obj["retweet"] = rec.retweet;
    if (rec.lat) {
        obj["lat"] = *rec.lat;
        obj["lon"] = *rec.lon;
    }
    if (rec.label) obj["label"] = *rec.label;
    return obj;
}

} // namespace detail

namespace {

bool all_whitespace(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

} // namespace

std::vector<TweetRecord> load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open corpus file: " + path);

    std::vector<TweetRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || all_whitespace(line)) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw LoadError(line_no, std::string("malformed record: ") + e.what());
        }
        records.push_back(detail::record_from_json(obj, line_no));
    }
    if (in.bad())
        throw IoError("read failure on corpus file: " + path);
    return records;
}

void write_record_line(const TweetRecord& rec, std::ostream& out) {
    out << detail::record_to_json(rec).dump() << '\n';
}

void save_corpus(std::span<const TweetRecord> records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file: " + path);
    for (const TweetRecord& rec : records) write_record_line(rec, out);
    if (!out)
        throw IoError("write failure on output file: " + path);
}

std::vector<TweetRecord> dedupe(std::vector<TweetRecord> records) {
    std::unordered_set<std::string_view> seen;
    std::vector<TweetRecord> out;
    out.reserve(records.size());
    for (TweetRecord& rec : records) {
        if (seen.insert(rec.id).second) out.push_back(std::move(rec));
    }
    return out;
}

std::vector<TweetRecord> drop_retweets(std::vector<TweetRecord> records) {
    std::erase_if(records, [](const TweetRecord& r) { return r.retweet; });
    return records;
}

std::vector<TweetRecord> filter_lang(std::vector<TweetRecord> records, std::string_view lang_code) {
    const std::string code = utf8::lower_copy(lang_code);
    std::erase_if(records, [&](const TweetRecord& r) { return r.lang != code; });
    return records;
}

std::vector<LabeledTweet> require_labels(std::span<const TweetRecord> records) {
    std::vector<LabeledTweet> out;
    out.reserve(records.size());
    for (const TweetRecord& rec : records) {
        if (!rec.label)
            throw DataError("record '" + rec.id + "' has no label; a training corpus must be fully labeled");
        out.push_back(LabeledTweet{rec, *rec.label});
    }
    return out;
}

} // namespace sinyal
