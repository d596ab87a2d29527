// SPDX-License-Identifier: Apache-2.0

#include "sinyal/geostream.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include <fstream>

#include "record_json.hpp"
#include "sinyal/error.hpp"
#include "sinyal/iso8601.hpp"

namespace sinyal {

using nlohmann::json;

void BBox::validate() const {
    if (!(lat_min < lat_max) || !(lon_min < lon_max))
        throw ConfigError("bounding box must satisfy lat_min < lat_max and lon_min < lon_max");
    if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max > 180.0)
        throw ConfigError("bounding box exceeds valid degree ranges");
}

bool in_bbox(double lat, double lon, const BBox& bbox) {
    return lat >= bbox.lat_min && lat <= bbox.lat_max && lon >= bbox.lon_min &&
           lon <= bbox.lon_max;
}

void GridSpec::validate() const {
    bbox.validate();
    if (!(cell_deg > 0.0)) throw ConfigError("grid cell size must be positive");
}

namespace {

std::int32_t cell_count(double span, double cell_deg) {
    // exact multiples stay exact; the epsilon only guards float noise
    const double cells = span / cell_deg;
    const auto n = static_cast<std::int32_t>(std::ceil(cells - 1e-9));
    return std::max(n, 1);
}

std::int32_t cell_index(double value, double origin, double cell_deg, std::int32_t n_cells) {
    auto idx = static_cast<std::int32_t>(std::floor((value - origin) / cell_deg));
    return std::clamp(idx, 0, n_cells - 1); // max edge maps to the last cell
}

} // namespace

std::int32_t GridSpec::n_lat_cells() const { return cell_count(bbox.lat_max - bbox.lat_min, cell_deg); }
std::int32_t GridSpec::n_lon_cells() const { return cell_count(bbox.lon_max - bbox.lon_min, cell_deg); }

std::pair<std::int32_t, std::int32_t> GridSpec::cell_of(double lat, double lon) const {
    return {cell_index(lat, bbox.lat_min, cell_deg, n_lat_cells()),
            cell_index(lon, bbox.lon_min, cell_deg, n_lon_cells())};
}

double GridSpec::lat_center(std::int32_t i) const {
    return bbox.lat_min + (static_cast<double>(i) + 0.5) * cell_deg;
}

double GridSpec::lon_center(std::int32_t j) const {
    return bbox.lon_min + (static_cast<double>(j) + 0.5) * cell_deg;
}

void replay(std::span<const TweetRecord> corpus, const Tree& tree,
            std::span<const std::string> vocab_terms, const StopwordSet& stopwords,
            const BBox& bbox, const Query* query, const HitSink& sink) {
    bbox.validate();
    if (vocab_terms.size() != tree.feature_names.size() ||
        !std::equal(vocab_terms.begin(), vocab_terms.end(), tree.feature_names.begin()))
        throw DataError("vocabulary does not match the model's feature names");

    std::vector<std::uint32_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return corpus[a].created_at < corpus[b].created_at;
    });

    for (std::uint32_t idx : order) {
        const TweetRecord& rec = corpus[idx];
        if (!rec.has_geo() || !in_bbox(*rec.lat, *rec.lon, bbox)) continue;
        if (query != nullptr && !matches(*query, rec.text)) continue;

        const TokenizedDoc doc = prepare_doc(rec.id, rec.text, stopwords);
        std::vector<std::uint32_t> x = count_vector(doc.tokens, vocab_terms);
        if (tree.binary_features) {
            for (std::uint32_t& v : x) v = v > 0 ? 1 : 0;
        }
        ClassifiedHit hit{rec, predict(tree, x), predict_proba(tree, x)};
        sink(hit);
    }
}

std::vector<ClassifiedHit> replay_collect(std::span<const TweetRecord> corpus, const Tree& tree,
                                          std::span<const std::string> vocab_terms,
                                          const StopwordSet& stopwords, const BBox& bbox,
                                          const Query* query) {
    std::vector<ClassifiedHit> hits;
    replay(corpus, tree, vocab_terms, stopwords, bbox, query,
           [&](const ClassifiedHit& hit) { hits.push_back(hit); });
    return hits;
}

void GridCounter::add(const ClassifiedHit& hit) {
    if (predicted_only_ && !hit.predicted) return;
    ++counts_[spec_.cell_of(*hit.tweet.lat, *hit.tweet.lon)];
}

void DailyCounter::add(const ClassifiedHit& hit) {
    const std::int64_t day = utc_day_of(hit.tweet.created_at);
    if (!any_) {
        first_day_ = last_day_ = day;
        any_ = true;
    } else {
        first_day_ = std::min(first_day_, day);
        last_day_ = std::max(last_day_, day);
    }
    if (!predicted_only_ || hit.predicted) ++counts_[day];
}

DailyCounts DailyCounter::series() const {
    DailyCounts out;
    if (!any_) return out;
    for (std::int64_t d = first_day_; d <= last_day_; ++d) out[d] = 0;
    for (const auto& [day, count] : counts_) out[day] = count;
    return out;
}

GridCounts aggregate_grid(std::span<const ClassifiedHit> hits, const GridSpec& grid,
                          bool predicted_only) {
    grid.validate();
    GridCounter counter(grid, predicted_only);
    for (const ClassifiedHit& hit : hits) counter.add(hit);
    return counter.counts();
}

DailyCounts daily_series(std::span<const ClassifiedHit> hits, bool predicted_only) {
    DailyCounter counter(predicted_only);
    for (const ClassifiedHit& hit : hits) counter.add(hit);
    return counter.series();
}

AuditSampler::AuditSampler(std::uint64_t n_true, std::uint64_t n_false, std::uint64_t seed)
    : rng_(seed) {
    true_.capacity = n_true;
    false_.capacity = n_false;
}

void AuditSampler::offer(Reservoir& r, const ClassifiedHit& hit) {
    ++r.seen;
    if (r.capacity == 0) return;
    if (r.sample.size() < r.capacity) {
        r.sample.push_back(hit);
        return;
    }
    const std::uint64_t j = rng_.below(r.seen);
    if (j < r.capacity) r.sample[static_cast<std::size_t>(j)] = hit;
}

void AuditSampler::add(const ClassifiedHit& hit) {
    offer(hit.predicted ? true_ : false_, hit);
}

std::vector<ClassifiedHit> AuditSampler::finish() const {
    if (true_.seen < true_.capacity || false_.seen < false_.capacity)
        throw DataError("audit sample needs " + std::to_string(true_.capacity) + " TRUE and " +
                        std::to_string(false_.capacity) + " FALSE predictions, but only " +
                        std::to_string(true_.seen) + " TRUE and " + std::to_string(false_.seen) +
                        " FALSE hits exist");
    std::vector<ClassifiedHit> out;
    out.reserve(true_.sample.size() + false_.sample.size());
    out.insert(out.end(), true_.sample.begin(), true_.sample.end());
    out.insert(out.end(), false_.sample.begin(), false_.sample.end());
    return out;
}

std::vector<ClassifiedHit> audit_sample(std::span<const ClassifiedHit> hits,
                                        std::uint64_t n_true, std::uint64_t n_false,
                                        std::uint64_t seed) {
    AuditSampler sampler(n_true, n_false, seed);
    for (const ClassifiedHit& hit : hits) sampler.add(hit);
    return sampler.finish();
}

std::vector<ClassifiedHit> load_hits(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open hits file: " + path);

    std::vector<ClassifiedHit> hits;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw LoadError(line_no, std::string("malformed record: ") + e.what());
        }
        ClassifiedHit hit;
        hit.tweet = detail::record_from_json(obj, line_no);
        if (!obj.contains("predicted") || !obj.at("predicted").is_boolean())
            throw LoadError(line_no, "'predicted' must be a boolean");
        if (!obj.contains("p_true") || !obj.at("p_true").is_number())
            throw LoadError(line_no, "'p_true' must be a number");
        hit.predicted = obj.at("predicted").get<bool>();
        hit.p_true = obj.at("p_true").get<double>();
        hits.push_back(std::move(hit));
    }
    if (in.bad()) throw IoError("read failure on hits file: " + path);
    return hits;
}

void write_hit_line(const ClassifiedHit& hit, std::ostream& out) {
    json obj = detail::record_to_json(hit.tweet);
    obj["predicted"] = hit.predicted;
    obj["p_true"] = hit.p_true;
    out << obj.dump() << '\n';
}

void write_grid_csv(const GridCounts& counts, const GridSpec& spec, std::ostream& out) {
    out << "lat_index,lon_index,lat_center,lon_center,count\n";
    char buf[64];
    for (const auto& [cell, count] : counts) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,", cell.first, cell.second,
                      spec.lat_center(cell.first), spec.lon_center(cell.second));
        out << buf << count << '\n';
    }
}

void write_grid_geojson(const GridCounts& counts, const GridSpec& spec, std::ostream& out) {
    json features = json::array();
    for (const auto& [cell, count] : counts) {
        json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "Point"},
                               {"coordinates", {spec.lon_center(cell.second), spec.lat_center(cell.first)}}};
        feature["properties"] = {{"lat_index", cell.first},
                                 {"lon_index", cell.second},
                                 {"count", count}};
        features.push_back(std::move(feature));
    }
    json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = std::move(features);
    out << doc.dump(2) << '\n';
}

void write_daily_csv(const DailyCounts& series, std::ostream& out) {
    out << "date,count\n";
    for (const auto& [day, count] : series) {
        out << format_utc_date(day) << ',' << count << '\n';
    }
}

} // namespace sinyal
