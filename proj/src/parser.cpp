#include "aliasmine/parser.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <cctype>

#include "aliasmine/text.hpp"

namespace aliasmine {

namespace {

bool is_blank(char c) {
    return c == ' ' || c == '\t';
}

bool is_word_char_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// ---------------------------------------------------------------------------
// Span consumption. Each take_* starts with text[i] at the opening delimiter
// and leaves i one past the closing delimiter. `keep_delims` controls whether
// the delimiters end up in `out` (raw statement words keep them, argument
// tokens drop quotes but keep `$()`/backticks verbatim).
// ---------------------------------------------------------------------------

bool take_single_quoted(std::string_view text, std::size_t& i, std::string& out,
                        bool keep_delims) {
    if (keep_delims)
        out += '\'';
    ++i;
    while (i < text.size()) {
        if (text[i] == '\'') {
            if (keep_delims)
                out += '\'';
            ++i;
            return true;
        }
        out += text[i++];
    }
    return false;
}

bool take_double_quoted(std::string_view text, std::size_t& i, std::string& out,
                        bool keep_delims) {
    if (keep_delims)
        out += '"';
    ++i;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\\' && i + 1 < text.size()) {
            out += c;
            out += text[i + 1];
            i += 2;
            continue;
        }
        if (c == '"') {
            if (keep_delims)
                out += '"';
            ++i;
            return true;
        }
        out += c;
        ++i;
    }
    return false;
}

bool take_backtick(std::string_view text, std::size_t& i, std::string& out) {
    out += '`';
    ++i;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\\' && i + 1 < text.size()) {
            out += c;
            out += text[i + 1];
            i += 2;
            continue;
        }
        out += c;
        ++i;
        if (c == '`')
            return true;
    }
    return false;
}

// `$(...)`, nesting-aware, quotes inside consumed atomically so a `)` in a
// string does not close the span.
bool take_dollar_paren(std::string_view text, std::size_t& i, std::string& out) {
    out += "$(";
    i += 2;
    int depth = 1;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\\' && i + 1 < text.size()) {
            out += c;
            out += text[i + 1];
            i += 2;
            continue;
        }
        if (c == '\'') {
            if (!take_single_quoted(text, i, out, /*keep_delims=*/true))
                return false;
            continue;
        }
        if (c == '"') {
            if (!take_double_quoted(text, i, out, /*keep_delims=*/true))
                return false;
            continue;
        }
        out += c;
        ++i;
        if (c == '(')
            ++depth;
        else if (c == ')' && --depth == 0)
            return true;
    }
    return false;
}

// Separator at text[i], or None. Advances past the operator when found.
Separator take_separator(std::string_view text, std::size_t& i) {
    char c = text[i];
    char next = i + 1 < text.size() ? text[i + 1] : '\0';
    if (c == '|') {
        if (next == '&') {
            i += 2;
            return Separator::PipeErr;
        }
        if (next == '|') {
            i += 2;
            return Separator::Or;
        }
        ++i;
        return Separator::Pipe;
    }
    if (c == '&') {
        if (next == '&') {
            i += 2;
            return Separator::And;
        }
        ++i;
        return Separator::Background;
    }
    if (c == ';') {
        ++i;
        return Separator::Seq;
    }
    return Separator::None;
}

bool at_separator(std::string_view text, std::size_t i) {
    char c = text[i];
    return c == '|' || c == '&' || c == ';';
}

// ---------------------------------------------------------------------------
// Value scanning: words with quote-stripped text, grouped into segments.
// ---------------------------------------------------------------------------

struct ScannedWord {
    std::string text;
    bool any_quoted = false;
};

struct ScannedSegment {
    std::vector<ScannedWord> words;
    Separator sep_after = Separator::None;
};

std::optional<std::vector<ScannedSegment>> scan_value(std::string_view value) {
    std::vector<ScannedSegment> segments;
    ScannedSegment segment;
    ScannedWord word;
    bool in_word = false;

    auto finish_word = [&] {
        if (in_word)
            segment.words.push_back(std::move(word));
        word = {};
        in_word = false;
    };
    auto finish_segment = [&](Separator sep) {
        finish_word();
        segment.sep_after = sep;
        if (!segment.words.empty())
            segments.push_back(std::move(segment));
        segment = {};
    };

    std::size_t i = 0;
    while (i < value.size()) {
        char c = value[i];
        if (is_blank(c)) {
            finish_word();
            ++i;
            continue;
        }
        if (at_separator(value, i)) {
            Separator sep = take_separator(value, i);
            finish_segment(sep);
            continue;
        }
        if (c == '\'') {
            if (!take_single_quoted(value, i, word.text, /*keep_delims=*/false))
                return std::nullopt;
            word.any_quoted = true;
            in_word = true;
            continue;
        }
        if (c == '"') {
            if (!take_double_quoted(value, i, word.text, /*keep_delims=*/false))
                return std::nullopt;
            word.any_quoted = true;
            in_word = true;
            continue;
        }
        if (c == '`') {
            if (!take_backtick(value, i, word.text))
                return std::nullopt;
            in_word = true;
            continue;
        }
        if (c == '$' && i + 1 < value.size() && value[i + 1] == '(') {
            if (!take_dollar_paren(value, i, word.text))
                return std::nullopt;
            in_word = true;
            continue;
        }
        if (c == '\\') {
            word.text += c;
            if (i + 1 < value.size())
                word.text += value[i + 1];
            i += std::min<std::size_t>(2, value.size() - i);
            in_word = true;
            continue;
        }
        word.text += c;
        in_word = true;
        ++i;
    }
    finish_segment(Separator::None);
    return segments;
}

// ---------------------------------------------------------------------------
// Statement word scanning: raw words (quotes and escapes verbatim), split at
// unquoted whitespace, stopping at a depth-zero separator or comment.
// ---------------------------------------------------------------------------

std::optional<std::vector<std::string>> statement_words(std::string_view text) {
    std::vector<std::string> words;
    std::string word;
    bool in_word = false;

    auto finish_word = [&] {
        if (in_word)
            words.push_back(std::move(word));
        word.clear();
        in_word = false;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_blank(c)) {
            finish_word();
            ++i;
            continue;
        }
        if (at_separator(text, i))
            break;
        if (c == '#' && !in_word)
            break;
        if (c == '\'') {
            if (!take_single_quoted(text, i, word, /*keep_delims=*/true))
                return std::nullopt;
            in_word = true;
            continue;
        }
        if (c == '"') {
            if (!take_double_quoted(text, i, word, /*keep_delims=*/true))
                return std::nullopt;
            in_word = true;
            continue;
        }
        if (c == '`') {
            if (!take_backtick(text, i, word))
                return std::nullopt;
            in_word = true;
            continue;
        }
        if (c == '$' && i + 1 < text.size() && text[i + 1] == '(') {
            if (!take_dollar_paren(text, i, word))
                return std::nullopt;
            in_word = true;
            continue;
        }
        if (c == '\\') {
            word += c;
            if (i + 1 < text.size())
                word += text[i + 1];
            i += std::min<std::size_t>(2, text.size() - i);
            in_word = true;
            continue;
        }
        word += c;
        in_word = true;
        ++i;
    }
    finish_word();
    return words;
}

bool is_env_assignment(std::string_view token) {
    if (token.empty() || !is_word_char_start(token[0]))
        return false;
    std::size_t i = 1;
    while (i < token.size() && is_word_char(token[i]))
        ++i;
    return i < token.size() && token[i] == '=';
}

// First `=` at quote depth zero within a raw word, or npos.
std::size_t find_unquoted_equals(std::string_view word) {
    std::size_t i = 0;
    std::string sink;
    while (i < word.size()) {
        char c = word[i];
        if (c == '=')
            return i;
        if (c == '\'') {
            if (!take_single_quoted(word, i, sink, true))
                return std::string_view::npos;
            continue;
        }
        if (c == '"') {
            if (!take_double_quoted(word, i, sink, true))
                return std::string_view::npos;
            continue;
        }
        if (c == '\\') {
            i += std::min<std::size_t>(2, word.size() - i);
            continue;
        }
        ++i;
    }
    return std::string_view::npos;
}

constexpr std::string_view kNameMetachars = "|&;'\"`()<>$\\ \t";

bool valid_alias_name(std::string_view name) {
    if (name.empty())
        return false;
    return name.find_first_of(kNameMetachars) == std::string_view::npos;
}

// Strips one layer of surrounding quotes when the quotes span the whole
// string; otherwise returns the input unchanged.
std::string strip_outer_quotes(std::string_view raw) {
    if (raw.size() >= 2 && (raw[0] == '\'' || raw[0] == '"')) {
        std::size_t i = 0;
        std::string content;
        bool ok = raw[0] == '\'' ? take_single_quoted(raw, i, content, false)
                                 : take_double_quoted(raw, i, content, false);
        if (ok && i == raw.size())
            return content;
    }
    return std::string(raw);
}

// ---------------------------------------------------------------------------
// Line assembly: physical lines joined across backslash-newline continuations.
// ---------------------------------------------------------------------------

struct LogicalLine {
    std::string_view text;
    int first_line = 1;
};

// Views into the source, except continuation-joined lines which live in
// `joined` (a deque so earlier views stay valid).
struct LogicalLines {
    std::vector<LogicalLine> lines;
    std::deque<std::string> joined;
};

LogicalLines logical_lines(std::string_view text) {
    LogicalLines out;
    std::string current;
    int line_no = 1;
    int start_line = 1;
    bool continuing = false;

    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t nl = text.find('\n', i);
        std::string_view phys =
            nl == std::string_view::npos ? text.substr(i) : text.substr(i, nl - i);
        if (!phys.empty() && phys.back() == '\r')
            phys.remove_suffix(1);

        if (!continuing)
            start_line = line_no;
        if (!phys.empty() && phys.back() == '\\' && nl != std::string_view::npos) {
            current.append(phys.substr(0, phys.size() - 1));
            continuing = true;
        } else if (continuing) {
            current.append(phys);
            out.joined.push_back(std::move(current));
            out.lines.push_back({out.joined.back(), start_line});
            current.clear();
            continuing = false;
        } else {
            out.lines.push_back({phys, start_line});
        }

        if (nl == std::string_view::npos)
            break;
        i = nl + 1;
        ++line_no;
    }
    return out;
}

std::size_t first_nonblank(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && is_blank(line[i]))
        ++i;
    return i;
}

struct CarvedStatement {
    std::string_view text;  // view into the logical line
    bool mid_line = false;
    bool unbalanced = false;
};

// Splits a logical line into statements at depth-zero separators; an
// unquoted `#` starting a word ends the line.
std::vector<CarvedStatement> carve_statements(std::string_view line) {
    std::vector<CarvedStatement> out;
    std::size_t i = 0;
    std::size_t stmt_start = std::string_view::npos;
    bool at_boundary = true;
    bool seen_separator = false;
    bool unbalanced = false;
    std::string sink;

    auto close_statement = [&](std::size_t end) {
        if (stmt_start == std::string_view::npos)
            return;
        std::string_view body = line.substr(stmt_start, end - stmt_start);
        while (!body.empty() && is_blank(body.back()))
            body.remove_suffix(1);
        if (!body.empty())
            out.push_back({body, seen_separator, unbalanced});
        stmt_start = std::string_view::npos;
        unbalanced = false;
    };

    while (i < line.size()) {
        char c = line[i];
        if (is_blank(c)) {
            at_boundary = true;
            ++i;
            continue;
        }
        if (at_separator(line, i)) {
            close_statement(i);
            take_separator(line, i);
            seen_separator = true;
            at_boundary = true;
            continue;
        }
        if (c == '#' && at_boundary) {
            close_statement(i);
            return out;
        }
        if (stmt_start == std::string_view::npos)
            stmt_start = i;
        at_boundary = false;
        sink.clear();
        bool ok = true;
        if (c == '\'')
            ok = take_single_quoted(line, i, sink, true);
        else if (c == '"')
            ok = take_double_quoted(line, i, sink, true);
        else if (c == '`')
            ok = take_backtick(line, i, sink);
        else if (c == '$' && i + 1 < line.size() && line[i + 1] == '(')
            ok = take_dollar_paren(line, i, sink);
        else if (c == '\\')
            i += std::min<std::size_t>(2, line.size() - i);
        else
            ++i;
        if (!ok)
            unbalanced = true;  // span ran to end of line
    }
    close_statement(line.size());
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Separator names
// ---------------------------------------------------------------------------

std::string_view separator_name(Separator sep) {
    switch (sep) {
        case Separator::Pipe: return "pipe";
        case Separator::PipeErr: return "pipe-err";
        case Separator::And: return "and";
        case Separator::Or: return "or";
        case Separator::Background: return "background";
        case Separator::Seq: return "seq";
        case Separator::None: return "none";
    }
    return "none";
}

std::string_view separator_token(Separator sep) {
    switch (sep) {
        case Separator::Pipe: return "|";
        case Separator::PipeErr: return "|&";
        case Separator::And: return "&&";
        case Separator::Or: return "||";
        case Separator::Background: return "&";
        case Separator::Seq: return ";";
        case Separator::None: return "";
    }
    return "";
}

std::optional<Separator> separator_from_name(std::string_view name) {
    for (Separator s : {Separator::Pipe, Separator::PipeErr, Separator::And, Separator::Or,
                        Separator::Background, Separator::Seq, Separator::None})
        if (separator_name(s) == name)
            return s;
    return std::nullopt;
}

std::string_view parse_failure_name(ParseFailure f) {
    switch (f) {
        case ParseFailure::None: return "none";
        case ParseFailure::NoEquals: return "no equals sign";
        case ParseFailure::EmptyName: return "empty alias name";
        case ParseFailure::BadName: return "invalid alias name";
        case ParseFailure::UnbalancedQuote: return "unbalanced quote";
        case ParseFailure::NotAliasStatement: return "not an alias statement";
        case ParseFailure::PairIndexOutOfRange: return "pair index out of range";
    }
    return "none";
}

SkipTally& SkipTally::operator+=(const SkipTally& o) {
    non_posix += o.non_posix;
    flag_form += o.flag_form;
    malformed += o.malformed;
    return *this;
}

// ---------------------------------------------------------------------------
// tokenize_value
// ---------------------------------------------------------------------------

std::optional<std::vector<ParsedCommand>> tokenize_value(std::string_view value) {
    auto segments = scan_value(value);
    if (!segments)
        return std::nullopt;

    std::vector<ParsedCommand> commands;
    commands.reserve(segments->size());
    for (auto& segment : *segments) {
        ParsedCommand cmd;
        cmd.separator_after = segment.sep_after;
        std::size_t k = 0;
        const auto& words = segment.words;
        while (k < words.size() && !words[k].any_quoted && is_env_assignment(words[k].text)) {
            cmd.env_prefixes.push_back(words[k].text);
            ++k;
        }
        if (k + 1 < words.size() && words[k].text == "sudo") {
            cmd.sudo = true;
            ++k;
        }
        if (k < words.size())
            cmd.name = words[k++].text;
        for (; k < words.size(); ++k)
            cmd.arguments.push_back(words[k].text);
        commands.push_back(std::move(cmd));
    }
    return commands;
}

// ---------------------------------------------------------------------------
// extract_aliases
// ---------------------------------------------------------------------------

// Reserved words that may precede the alias command inside one statement,
// as in `if ...; then alias ls='ls --color=auto'; fi`.
static std::string_view strip_leading_reserved(std::string_view text) {
    static constexpr std::string_view kReserved[] = {"then", "else", "do", "elif", "{"};
    for (bool stripped = true; stripped;) {
        stripped = false;
        for (std::string_view word : kReserved) {
            if (text.size() > word.size() && text.starts_with(word) &&
                is_blank(text[word.size()])) {
                text.remove_prefix(word.size());
                text.remove_prefix(first_nonblank(text));
                stripped = true;
            }
        }
    }
    return text;
}

ExtractResult extract_aliases(std::string_view source_text, std::string_view file_id) {
    ExtractResult result;
    std::string sanitized_storage;
    std::string_view sanitized = source_text;
    if (!utf8_valid(source_text)) {
        sanitized_storage = utf8_lossy(source_text);
        sanitized = sanitized_storage;
    }

    LogicalLines lines = logical_lines(sanitized);
    for (const LogicalLine& line : lines.lines) {
        std::size_t start = first_nonblank(line.text);
        if (start >= line.text.size() || line.text[start] == '#')
            continue;

        for (CarvedStatement stmt : carve_statements(line.text)) {
            stmt.text = strip_leading_reserved(stmt.text);
            bool alias_word = stmt.text.starts_with("alias") &&
                              (stmt.text.size() == 5 || is_blank(stmt.text[5]));
            auto words = statement_words(stmt.text);
            if (!words) {
                if (alias_word)
                    ++result.tally.malformed;
                continue;
            }
            if (words->empty() || (*words)[0] != "alias")
                continue;
            if (stmt.unbalanced) {
                ++result.tally.malformed;
                continue;
            }
            if (words->size() < 2)
                continue;  // bare `alias` lists definitions, nothing to record
            if ((*words)[1][0] == '-') {
                ++result.tally.flag_form;
                continue;
            }
            if (find_unquoted_equals((*words)[1]) == std::string_view::npos) {
                ++result.tally.non_posix;  // csh-style `alias name value`
                continue;
            }
            for (std::size_t j = 1; j < words->size(); ++j) {
                if (find_unquoted_equals((*words)[j]) == std::string_view::npos) {
                    ++result.tally.non_posix;
                    continue;
                }
                RawAliasOccurrence occ;
                occ.file_id = std::string(file_id);
                occ.line = line.first_line;
                occ.text = std::string(stmt.text);
                occ.pair_index = static_cast<int>(j - 1);
                occ.mid_line = stmt.mid_line;
                result.occurrences.push_back(std::move(occ));
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// parse_definition
// ---------------------------------------------------------------------------

std::optional<AliasDefinition> parse_definition(const RawAliasOccurrence& raw,
                                                ParseFailure* failure) {
    auto fail = [&](ParseFailure f) -> std::optional<AliasDefinition> {
        if (failure)
            *failure = f;
        return std::nullopt;
    };
    if (failure)
        *failure = ParseFailure::None;

    auto words = statement_words(raw.text);
    if (!words)
        return fail(ParseFailure::UnbalancedQuote);
    if (words->empty() || (*words)[0] != "alias")
        return fail(ParseFailure::NotAliasStatement);

    std::size_t idx = 1 + static_cast<std::size_t>(raw.pair_index);
    if (idx >= words->size())
        return fail(ParseFailure::PairIndexOutOfRange);

    const std::string& pair = (*words)[idx];
    std::size_t eq = find_unquoted_equals(pair);
    if (eq == std::string_view::npos)
        return fail(ParseFailure::NoEquals);
    std::string_view name(pair.data(), eq);
    if (name.empty())
        return fail(ParseFailure::EmptyName);
    if (!valid_alias_name(name))
        return fail(ParseFailure::BadName);

    std::string value = strip_outer_quotes(std::string_view(pair).substr(eq + 1));
    auto commands = tokenize_value(value);
    if (!commands)
        return fail(ParseFailure::UnbalancedQuote);

    AliasDefinition def;
    def.name = std::string(name);
    def.value = std::move(value);
    def.commands = std::move(*commands);
    def.file_id = raw.file_id;
    def.line = raw.line;
    def.pair_index = raw.pair_index;
    def.mid_line = raw.mid_line;
    return def;
}

ParseSourceResult parse_source(std::string_view source_text, std::string_view file_id) {
    ParseSourceResult result;
    ExtractResult extracted = extract_aliases(source_text, file_id);
    result.tally = extracted.tally;
    for (const RawAliasOccurrence& occ : extracted.occurrences) {
        if (auto def = parse_definition(occ))
            result.aliases.push_back(std::move(*def));
        else
            ++result.tally.malformed;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Reassembly
// ---------------------------------------------------------------------------

std::string reassemble_command(const ParsedCommand& command) {
    std::string out;
    auto append = [&](std::string_view part) {
        if (!out.empty())
            out += ' ';
        out.append(part);
    };
    for (const auto& env : command.env_prefixes)
        append(env);
    if (command.sudo)
        append("sudo");
    if (!command.name.empty())
        append(command.name);
    for (const auto& arg : command.arguments)
        append(arg);
    return out;
}

std::string reassemble(const std::vector<ParsedCommand>& commands) {
    std::string out;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        out += reassemble_command(commands[i]);
        Separator sep = commands[i].separator_after;
        if (sep != Separator::None) {
            out += ' ';
            out += separator_token(sep);
            if (i + 1 < commands.size())
                out += ' ';
        }
    }
    return out;
}

}  // namespace aliasmine
