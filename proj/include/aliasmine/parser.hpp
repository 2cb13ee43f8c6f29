#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aliasmine {

// Command delimiters recognized at quote depth zero, longest match first.
enum class Separator { Pipe, PipeErr, And, Or, Background, Seq, None };

std::string_view separator_name(Separator sep);   // "pipe", "pipe-err", "and", ...
std::string_view separator_token(Separator sep);  // "|", "|&", "&&", ...
std::optional<Separator> separator_from_name(std::string_view name);

// One command inside an alias value. `sudo apt-get install` yields
// name "apt-get", arguments ["install"], sudo=true.
struct ParsedCommand {
    std::vector<std::string> env_prefixes;  // leading NAME=VALUE tokens
    std::string name;                       // command word, quote-stripped
    std::vector<std::string> arguments;     // quote-stripped, escapes preserved
    bool sudo = false;
    Separator separator_after = Separator::None;

    bool operator==(const ParsedCommand&) const = default;
};

// A single `alias ...` statement found in source text. Statements carrying
// several name=value pairs produce one occurrence per pair, all sharing the
// statement text and distinguished by pair_index.
struct RawAliasOccurrence {
    std::string file_id;
    int line = 1;  // 1-based, physical line the statement started on
    std::string text;
    int pair_index = 0;
    bool mid_line = false;  // statement followed a separator on its line
};

struct AliasDefinition {
    std::string name;
    std::string value;  // surrounding quotes stripped once, escapes preserved
    std::vector<ParsedCommand> commands;
    std::string file_id;
    int line = 1;
    int pair_index = 0;
    bool mid_line = false;

    bool operator==(const AliasDefinition&) const = default;
};

enum class ParseFailure {
    None,
    NoEquals,
    EmptyName,
    BadName,
    UnbalancedQuote,
    NotAliasStatement,
    PairIndexOutOfRange,
};

std::string_view parse_failure_name(ParseFailure f);

// Statements rejected during extraction or parsing, by reason.
struct SkipTally {
    std::uint64_t non_posix = 0;  // `alias name value` form, or pair word without `=`
    std::uint64_t flag_form = 0;  // statements like `alias -p`
    std::uint64_t malformed = 0;  // unbalanced quotes, empty/invalid names

    std::uint64_t total() const { return non_posix + flag_form + malformed; }
    SkipTally& operator+=(const SkipTally& o);
    bool operator==(const SkipTally&) const = default;
};

struct ExtractResult {
    std::vector<RawAliasOccurrence> occurrences;
    SkipTally tally;
};

// Finds every alias statement in the given text. Lines whose first
// non-whitespace character is `#` are skipped; backslash-newline
// continuations are joined first; statements after `;`, `&&`, etc. on the
// same line are extracted too and flagged mid_line.
ExtractResult extract_aliases(std::string_view source_text, std::string_view file_id);

// Splits an alias value into commands at quote-depth-zero separators.
// Quoted spans stay inside a single argument token; `$(...)` and backticks
// are kept verbatim as opaque argument text. Returns nullopt when a quote,
// backtick or `$(` span is unterminated.
std::optional<std::vector<ParsedCommand>> tokenize_value(std::string_view value);

std::optional<AliasDefinition> parse_definition(const RawAliasOccurrence& raw,
                                                ParseFailure* failure = nullptr);

struct ParseSourceResult {
    std::vector<AliasDefinition> aliases;
    SkipTally tally;
};

// extract_aliases + parse_definition over a whole file.
ParseSourceResult parse_source(std::string_view source_text, std::string_view file_id);

// Canonical single-space rendering of parsed commands; joining a command's
// pieces with single spaces and its commands with ` <op> `.
std::string reassemble_command(const ParsedCommand& command);
std::string reassemble(const std::vector<ParsedCommand>& commands);

}  // namespace aliasmine
