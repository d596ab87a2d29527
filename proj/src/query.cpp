// SPDX-License-Identifier: Apache-2.0

#include "sinyal/query.hpp"

#include <algorithm>
#include <unordered_set>

#include "sinyal/error.hpp"
#include "sinyal/utf8.hpp"

namespace sinyal {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_quote(char c) {
    return c == '\'' || c == '"';
}

struct RawToken {
    enum Kind { kOr, kTerm } kind;
    Term term;
    std::size_t offset;
};

// Scans the quoted body starting after the opening quote at `open`.
// The closing quote is the first matching quote followed by whitespace or
// end of input; intermediate matching quotes stay part of the term.
std::string scan_quoted(std::string_view in, std::size_t open, std::size_t& pos) {
    const char q = in[open];
    for (std::size_t i = open + 1; i < in.size(); ++i) {
        if (in[i] == q && (i + 1 == in.size() || is_ascii_space(in[i + 1]))) {
            std::string body(in.substr(open + 1, i - open - 1));
            if (body.empty())
                throw QueryParseError(open, "empty quoted term");
            pos = i + 1;
            return body;
        }
    }
    throw QueryParseError(open, "unbalanced quote");
}

std::vector<RawToken> lex(std::string_view in) {
    std::vector<RawToken> tokens;
    std::size_t pos = 0;
    while (pos < in.size()) {
        if (is_ascii_space(in[pos])) {
            ++pos;
            continue;
        }
        const std::size_t start = pos;
        bool negated = false;
        if (in[pos] == '-') {
            negated = true;
            ++pos;
            if (pos == in.size() || is_ascii_space(in[pos]))
                throw QueryParseError(start, "'-' must be followed by a term");
        }
        if (pos < in.size() && is_quote(in[pos])) {
            Term t{scan_quoted(in, pos, pos), negated, true};
            tokens.push_back({RawToken::kTerm, std::move(t), start});
            continue;
        }
        std::size_t end = pos;
        while (end < in.size() && !is_ascii_space(in[end])) ++end;
        std::string word(in.substr(pos, end - pos));
        pos = end;
        if (!negated && word == "OR") {
            tokens.push_back({RawToken::kOr, {}, start});
        } else {
            tokens.push_back({RawToken::kTerm, Term{std::move(word), negated, false}, start});
        }
    }
    return tokens;
}

void finish_clause(Clause& clause, std::size_t offset) {
    if (std::none_of(clause.terms.begin(), clause.terms.end(),
                     [](const Term& t) { return !t.negated; }))
        throw QueryParseError(offset, "clause has no positive term");
}

} // namespace

Query parse_query(std::string_view input) {
    if (input.find_first_not_of(" \t\n\r\v\f") == std::string_view::npos)
        throw QueryParseError(0, "empty query");

    const std::vector<RawToken> tokens = lex(input);
    Query query;
    Clause clause;
    std::size_t clause_offset = tokens.empty() ? 0 : tokens.front().offset;

    for (const RawToken& tok : tokens) {
        if (tok.kind == RawToken::kOr) {
            if (clause.terms.empty())
                throw QueryParseError(tok.offset, "'OR' must follow a clause");
            finish_clause(clause, clause_offset);
            query.clauses.push_back(std::move(clause));
            clause = {};
            clause_offset = tok.offset;
        } else {
            if (clause.terms.empty()) clause_offset = tok.offset;
            clause.terms.push_back(tok.term);
        }
    }
    if (clause.terms.empty())
        throw QueryParseError(input.size(), "query ends with 'OR'");
    finish_clause(clause, clause_offset);
    query.clauses.push_back(std::move(clause));
    return query;
}

namespace {

// A delimiter works unless the body contains it followed by whitespace
// (the scanner would close early there). A trailing occurrence is fine.
bool delimiter_ok(const std::string& body, char q) {
    for (std::size_t i = 0; i + 1 < body.size(); ++i) {
        if (body[i] == q && is_ascii_space(body[i + 1])) return false;
    }
    return true;
}

void render_term(const Term& t, std::string& out) {
    if (t.text.empty())
        throw Error("cannot render empty term");
    if (t.negated) out.push_back('-');
    if (!t.quoted) {
        if (t.text == "OR" || is_quote(t.text.front()) ||
            (!t.negated && t.text.front() == '-') ||
            std::any_of(t.text.begin(), t.text.end(), is_ascii_space))
            throw Error("unquoted term '" + t.text + "' is not renderable");
        out += t.text;
        return;
    }
    char q = 0;
    for (char cand : {'\'', '"'}) {
        if (t.text.find(cand) == std::string::npos || delimiter_ok(t.text, cand)) {
            q = cand;
            break;
        }
    }
    if (q == 0)
        throw Error("quoted term '" + t.text + "' is not renderable");
    out.push_back(q);
    out += t.text;
    out.push_back(q);
}

} // namespace

std::string render(const Query& query) {
    std::string out;
    for (std::size_t c = 0; c < query.clauses.size(); ++c) {
        if (c > 0) out += " OR ";
        const Clause& clause = query.clauses[c];
        for (std::size_t t = 0; t < clause.terms.size(); ++t) {
            if (t > 0) out.push_back(' ');
            render_term(clause.terms[t], out);
        }
    }
    return out;
}

namespace {

// Tokens of the raw text: maximal runs of letters or digits, lowercased.
std::unordered_set<std::string> text_tokens(std::string_view text) {
    std::unordered_set<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = utf8::decode(text, pos);
        if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
            utf8::encode(utf8::to_lower(cp), current);
        } else if (!current.empty()) {
            tokens.insert(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.insert(std::move(current));
    return tokens;
}

} // namespace

bool matches(const Query& query, std::string_view text) {
    const std::string lowered = utf8::lower_copy(text);
    const std::unordered_set<std::string> tokens = text_tokens(text);

    auto term_occurs = [&](const Term& t) {
        const std::string needle = utf8::lower_copy(t.text);
        if (t.quoted) return lowered.find(needle) != std::string::npos;
        return tokens.contains(needle);
    };

    for (const Clause& clause : query.clauses) {
        bool ok = true;
        for (const Term& t : clause.terms) {
            if (term_occurs(t) == t.negated) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

std::string_view protocol2016_string() {
    return "rumah OR sakit OR rawat OR inap OR demam OR panas -cuaca OR berdarah "
           "OR pendarahan OR trombosit OR badan OR muntah OR badan OR tua OR ':'('";
}

const Query& default_protocol() {
    static const Query q = parse_query(protocol2016_string());
    return q;
}

} // namespace sinyal
