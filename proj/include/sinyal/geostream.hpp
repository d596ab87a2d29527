// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_GEOSTREAM_HPP
#define SINYAL_GEOSTREAM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sinyal/cart.hpp"
#include "sinyal/corpus.hpp"
#include "sinyal/query.hpp"
#include "sinyal/rng.hpp"
#include "sinyal/textpipe.hpp"

namespace sinyal {

/// Axis-aligned lat/lon rectangle; edges are inclusive.
struct BBox {
    double lat_min = -90.0, lat_max = 90.0;
    double lon_min = -180.0, lon_max = 180.0;

    /// The Indonesia region: 11S-6N, 95E-141E.
    static BBox indonesia() { return {-11.0, 6.0, 95.0, 141.0}; }

    /// Throws ConfigError unless min < max on both axes.
    void validate() const;
};

bool in_bbox(double lat, double lon, const BBox& bbox);

/// Grid anchored at the bbox min corner; points on the max edge fall into
/// the last cell.
struct GridSpec {
    BBox bbox;
    double cell_deg = 0.5;

    std::int32_t n_lat_cells() const;
    std::int32_t n_lon_cells() const;
    std::pair<std::int32_t, std::int32_t> cell_of(double lat, double lon) const;
    double lat_center(std::int32_t lat_index) const;
    double lon_center(std::int32_t lon_index) const;

    void validate() const;
};

struct ClassifiedHit {
    TweetRecord tweet;
    bool predicted = false;
    double p_true = 0.0;
};

using HitSink = std::function<void(const ClassifiedHit&)>;

/// Replays a corpus in non-decreasing created_at order (ties by input
/// order): drops records without coordinates or outside the bbox, drops
/// texts not matching `query` when one is given, classifies the rest and
/// feeds each hit to `sink` without materializing the hit list.
/// vocab_terms must equal the tree's feature names (checked up front).
void replay(std::span<const TweetRecord> corpus, const Tree& tree,
            std::span<const std::string> vocab_terms, const StopwordSet& stopwords,
            const BBox& bbox, const Query* query, const HitSink& sink);

std::vector<ClassifiedHit> replay_collect(std::span<const TweetRecord> corpus, const Tree& tree,
                                          std::span<const std::string> vocab_terms,
                                          const StopwordSet& stopwords, const BBox& bbox,
                                          const Query* query);

using GridCounts = std::map<std::pair<std::int32_t, std::int32_t>, std::uint64_t>;
using DailyCounts = std::map<std::int64_t, std::uint64_t>; // day number -> count

/// Streaming accumulators used by the CLI so only aggregate state is kept.
class GridCounter {
public:
    GridCounter(GridSpec spec, bool predicted_only)
        : spec_(spec), predicted_only_(predicted_only) {}
    void add(const ClassifiedHit& hit);
    const GridCounts& counts() const { return counts_; }
    const GridSpec& spec() const { return spec_; }

private:
    GridSpec spec_;
    bool predicted_only_;
    GridCounts counts_;
};

class DailyCounter {
public:
    explicit DailyCounter(bool predicted_only) : predicted_only_(predicted_only) {}
    void add(const ClassifiedHit& hit);
    /// Zero-fills every day between the first and last observed hit.
    DailyCounts series() const;

private:
    bool predicted_only_;
    bool any_ = false;
    std::int64_t first_day_ = 0, last_day_ = 0;
    DailyCounts counts_;
};

GridCounts aggregate_grid(std::span<const ClassifiedHit> hits, const GridSpec& grid,
                          bool predicted_only);
DailyCounts daily_series(std::span<const ClassifiedHit> hits, bool predicted_only);

/// Stratified reservoir sample: n_true predicted-TRUE hits then n_false
/// predicted-FALSE hits, deterministic for a fixed seed. Errors report the
/// available stratum sizes when a stratum is too small.
class AuditSampler {
public:
    AuditSampler(std::uint64_t n_true, std::uint64_t n_false, std::uint64_t seed);
    void add(const ClassifiedHit& hit);
    /// Throws DataError when a stratum is short.
    std::vector<ClassifiedHit> finish() const;

private:
    struct Reservoir {
        std::uint64_t capacity = 0;
        std::uint64_t seen = 0;
        std::vector<ClassifiedHit> sample;
    };
    void offer(Reservoir& r, const ClassifiedHit& hit);

    Reservoir true_, false_;
    Rng rng_;
};

std::vector<ClassifiedHit> audit_sample(std::span<const ClassifiedHit> hits,
                                        std::uint64_t n_true, std::uint64_t n_false,
                                        std::uint64_t seed);

/// Reads a hit file back (corpus schema plus `predicted` and `p_true`).
std::vector<ClassifiedHit> load_hits(const std::string& path);

// Deterministic exports.
void write_hit_line(const ClassifiedHit& hit, std::ostream& out);
void write_grid_csv(const GridCounts& counts, const GridSpec& spec, std::ostream& out);
void write_grid_geojson(const GridCounts& counts, const GridSpec& spec, std::ostream& out);
void write_daily_csv(const DailyCounts& series, std::ostream& out);

} // namespace sinyal

#endif
