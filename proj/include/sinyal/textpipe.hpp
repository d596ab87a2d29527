// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_TEXTPIPE_HPP
#define SINYAL_TEXTPIPE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sinyal {

using StopwordSet = std::unordered_set<std::string>;

/// Unicode-lowercases, replaces every punctuation/symbol and decimal-digit
/// character with a space, collapses whitespace runs, strips the ends.
/// Idempotent. Replacing (not deleting) keeps "sakit,parah" as two words.
std::string normalize(std::string_view text);

/// Splits normalized text on whitespace runs.
std::vector<std::string> tokenize(std::string_view normalized);

/// Order-preserving removal of exact matches. Stopwords must be lowercase.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordSet& stopwords);

struct TokenizedDoc {
    std::string doc_id;
    std::vector<std::string> tokens;
};

/// normalize + tokenize + remove_stopwords for one document.
TokenizedDoc prepare_doc(std::string doc_id, std::string_view raw_text,
                         const StopwordSet& stopwords);

/// Corpus-wide term statistics: terms with corpus frequency >= min_freq,
/// sorted by descending frequency, ties lexicographic.
struct Vocabulary {
    struct Entry {
        std::string term;
        std::uint64_t frequency;

        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> terms;
    std::uint64_t min_freq = 1;

    std::size_t size() const { return terms.size(); }
    std::optional<std::size_t> index_of(std::string_view term) const;
    std::vector<std::string> term_list() const;
};

Vocabulary build_vocab(std::span<const TokenizedDoc> docs, std::uint64_t min_freq);

/// Entry i counts occurrences of vocab term i; OOV tokens contribute nothing.
std::vector<std::uint32_t> vectorize(const TokenizedDoc& doc, const Vocabulary& vocab);

/// Same counting against an explicit term list (e.g. a model's features).
std::vector<std::uint32_t> count_vector(std::span<const std::string> tokens,
                                        std::span<const std::string> terms);

struct TermDocMatrix {
    Vocabulary vocab;
    std::vector<std::string> doc_ids;
    std::vector<std::vector<std::uint32_t>> rows; // rows[i].size() == vocab.size()
};

TermDocMatrix build_tdm(std::span<const TokenizedDoc> docs, Vocabulary vocab);

/// Pearson correlation of two term-count columns. Throws DataError for an
/// unknown term or a zero-variance column.
double term_correlation(const TermDocMatrix& tdm, std::string_view a, std::string_view b);

/// All other terms with defined correlation >= threshold, sorted descending,
/// ties lexicographic. Zero-variance columns are skipped here, not errors.
std::vector<std::pair<std::string, double>> top_associations(const TermDocMatrix& tdm,
                                                             std::string_view term,
                                                             double threshold);

/// Header row `doc_id,<term1>,...`, one row per document.
void write_tdm_csv(const TermDocMatrix& tdm, std::ostream& out);

/// The bundled Bahasa Indonesia stopword list (non-canonical, overridable;
/// shipped verbatim as data/stopwords_id.txt).
const StopwordSet& default_stopwords();

/// UTF-8 file, one lowercase token per line, `#` lines are comments.
StopwordSet load_stopwords(const std::string& path);

} // namespace sinyal

#endif
