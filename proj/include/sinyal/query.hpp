// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_QUERY_HPP
#define SINYAL_QUERY_HPP

#include <string>
#include <string_view>
#include <vector>

namespace sinyal {

// Twitter-style boolean keyword protocol.
//
//   query  := clause ('OR' clause)*
//   clause := term+                      adjacency binds tighter than OR
//   term   := '-'? (WORD | QUOTED)
//
// WORD is a maximal run of non-whitespace bytes; the literal token OR (exact
// uppercase) is the disjunction operator, lowercase `or` is an ordinary term.
// QUOTED is delimited by matching single or double quotes and may contain any
// characters; the closing quote is the first matching quote followed by
// whitespace or end of input, so the emoticon `':'('` reads as the literal
// :'( instead of stopping at its inner apostrophe.

struct Term {
    std::string text;
    bool negated = false;
    bool quoted = false; // quoted terms match as raw substrings, unquoted as whole tokens

    bool operator==(const Term&) const = default;
};

struct Clause {
    std::vector<Term> terms; // at least one non-negated term

    bool operator==(const Clause&) const = default;
};

struct Query {
    std::vector<Clause> clauses;

    bool operator==(const Query&) const = default;
};

/// Throws QueryParseError (with byte offset) on unbalanced quotes, empty
/// terms, misplaced OR, or clauses with no positive term.
Query parse_query(std::string_view input);

/// Inverse of parse_query up to AST equality: parse_query(render(q)) == q.
std::string render(const Query& query);

/// A text matches iff at least one clause matches: every positive term of
/// the clause occurs and no negated term occurs. Unquoted terms compare
/// case-insensitively against tokens (maximal letter/digit runs) of the raw
/// text; quoted terms are case-insensitive substrings of the raw text.
bool matches(const Query& query, std::string_view text);

/// The verbatim 2016 health-term protocol string this pipeline ships with.
std::string_view protocol2016_string();

/// parse_query(protocol2016_string()), built once: 14 clauses, clause 6 is
/// {panas, -cuaca}, clause 14 the quoted emoticon :'(.
const Query& default_protocol();

} // namespace sinyal

#endif
