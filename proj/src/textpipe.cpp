// SPDX-License-Identifier: Apache-2.0

#include "sinyal/textpipe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "sinyal/error.hpp"
#include "sinyal/utf8.hpp"

namespace sinyal {

std::string normalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = utf8::to_lower(utf8::decode(text, pos));
        if (utf8::is_letter(cp)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            utf8::encode(cp, out);
        } else {
            // whitespace, punctuation, symbols and digits all separate words
            pending_space = true;
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        while (pos < normalized.size() && normalized[pos] == ' ') ++pos;
        std::size_t end = pos;
        while (end < normalized.size() && normalized[end] != ' ') ++end;
        if (end > pos) tokens.emplace_back(normalized.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordSet& stopwords) {
    std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
    return tokens;
}

TokenizedDoc prepare_doc(std::string doc_id, std::string_view raw_text,
                         const StopwordSet& stopwords) {
    return {std::move(doc_id), remove_stopwords(tokenize(normalize(raw_text)), stopwords)};
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].term == term) return i;
    }
    return std::nullopt;
}

std::vector<std::string> Vocabulary::term_list() const {
    std::vector<std::string> out;
    out.reserve(terms.size());
    for (const Entry& e : terms) out.push_back(e.term);
    return out;
}

Vocabulary build_vocab(std::span<const TokenizedDoc> docs, std::uint64_t min_freq) {
    if (min_freq < 1)
        throw DataError("min_freq must be >= 1");
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const TokenizedDoc& doc : docs) {
        for (const std::string& tok : doc.tokens) ++freq[tok];
    }
    Vocabulary vocab;
    vocab.min_freq = min_freq;
    for (auto& [term, count] : freq) {
        if (count >= min_freq) vocab.terms.push_back({term, count});
    }
    std::sort(vocab.terms.begin(), vocab.terms.end(),
              [](const Vocabulary::Entry& a, const Vocabulary::Entry& b) {
                  if (a.frequency != b.frequency) return a.frequency > b.frequency;
                  return a.term < b.term;
              });
    return vocab;
}

std::vector<std::uint32_t> count_vector(std::span<const std::string> tokens,
                                        std::span<const std::string> terms) {
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], i);
    std::vector<std::uint32_t> counts(terms.size(), 0);
    for (const std::string& tok : tokens) {
        if (auto it = index.find(tok); it != index.end()) ++counts[it->second];
    }
    return counts;
}

std::vector<std::uint32_t> vectorize(const TokenizedDoc& doc, const Vocabulary& vocab) {
    std::vector<std::string> terms = vocab.term_list();
    return count_vector(doc.tokens, terms);
}

TermDocMatrix build_tdm(std::span<const TokenizedDoc> docs, Vocabulary vocab) {
    TermDocMatrix tdm;
    const std::vector<std::string> terms = vocab.term_list();
    tdm.vocab = std::move(vocab);
    tdm.doc_ids.reserve(docs.size());
    tdm.rows.reserve(docs.size());
    for (const TokenizedDoc& doc : docs) {
        tdm.doc_ids.push_back(doc.doc_id);
        tdm.rows.push_back(count_vector(doc.tokens, terms));
    }
    return tdm;
}

namespace {

// Centered scatter sum n*S_xx = n*sum(x^2) - sum(x)^2; exact in integers.
std::uint64_t column_scatter(const TermDocMatrix& tdm, std::size_t col) {
    std::uint64_t s = 0, ss = 0;
    for (const auto& row : tdm.rows) {
        const std::uint64_t x = row[col];
        s += x;
        ss += x * x;
    }
    return ss * tdm.rows.size() - s * s;
}

// Pearson via the sums formula; counts are small integers so this is
// numerically safe. Undefined when either column has zero variance.
double pearson(const TermDocMatrix& tdm, std::size_t a, std::size_t b,
               bool& defined) {
    const std::size_t n = tdm.rows.size();
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& row : tdm.rows) {
        const double x = row[a];
        const double y = row[b];
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double nd = static_cast<double>(n);
    const double var_x = sxx - sx * sx / nd;
    const double var_y = syy - sy * sy / nd;
    if (n == 0 || var_x <= 0.0 || var_y <= 0.0) {
        defined = false;
        return 0.0;
    }
    defined = true;
    return (sxy - sx * sy / nd) / std::sqrt(var_x * var_y);
}

std::size_t require_term(const TermDocMatrix& tdm, std::string_view term) {
    auto idx = tdm.vocab.index_of(term);
    if (!idx)
        throw DataError("unknown vocabulary term: '" + std::string(term) + "'");
    return *idx;
}

} // namespace

double term_correlation(const TermDocMatrix& tdm, std::string_view a, std::string_view b) {
    const std::size_t ia = require_term(tdm, a);
    const std::size_t ib = require_term(tdm, b);
    if (tdm.rows.empty() || column_scatter(tdm, ia) == 0)
        throw DataError("correlation undefined: zero-variance column '" + std::string(a) + "'");
    if (column_scatter(tdm, ib) == 0)
        throw DataError("correlation undefined: zero-variance column '" + std::string(b) + "'");
    bool defined = false;
    return pearson(tdm, ia, ib, defined);
}

std::vector<std::pair<std::string, double>> top_associations(const TermDocMatrix& tdm,
                                                             std::string_view term,
                                                             double threshold) {
    const std::size_t target = require_term(tdm, term);
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < tdm.vocab.size(); ++i) {
        if (i == target) continue;
        bool defined = false;
        const double r = pearson(tdm, target, i, defined);
        if (defined && r >= threshold) out.emplace_back(tdm.vocab.terms[i].term, r);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

void write_tdm_csv(const TermDocMatrix& tdm, std::ostream& out) {
    out << "doc_id";
    for (const auto& e : tdm.vocab.terms) out << ',' << e.term;
    out << '\n';
    for (std::size_t i = 0; i < tdm.rows.size(); ++i) {
        out << tdm.doc_ids[i];
        for (std::uint32_t c : tdm.rows[i]) out << ',' << c;
        out << '\n';
    }
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open stopword file: " + path);
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const std::size_t end = line.find_last_not_of(" \t");
        words.insert(line.substr(start, end - start + 1));
    }
    return words;
}

} // namespace sinyal
