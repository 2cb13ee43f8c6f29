#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aliasmine/knowledge_base.hpp"
#include "aliasmine/parser.hpp"

namespace aliasmine {

enum class PracticeKind {
    Nicknaming,
    AbbreviatingSubcommands,
    BookmarkingLocations,
    SubstitutingCommands,
    OverridingDefaults,
    ColorizingOutput,
    ElevatingPrivilege,
    TransformingData,
    ChainingSubcommands,
};

inline constexpr int kPracticeCount = 9;

std::string_view practice_name(PracticeKind kind);
std::optional<PracticeKind> practice_from_name(std::string_view name);

struct PracticeLabel {
    PracticeKind kind;
    std::string evidence;   // triggering token or rule
    bool typo_fix = false;  // Nicknaming only

    bool operator==(const PracticeLabel&) const = default;
};

// The nine predicates. Each returns a label when its mechanical definition
// fires; classify() is their union, ordered by kind.
std::optional<PracticeLabel> is_nickname(const AliasDefinition& alias, const KnowledgeBase& kb);
std::optional<PracticeLabel> is_subcommand_abbrev(const AliasDefinition& alias,
                                                  const KnowledgeBase& kb);
std::optional<PracticeLabel> is_bookmark(const AliasDefinition& alias, const KnowledgeBase& kb);
std::optional<PracticeLabel> is_substitution(const AliasDefinition& alias,
                                             const KnowledgeBase& kb);
std::optional<PracticeLabel> is_override(const AliasDefinition& alias);
std::optional<PracticeLabel> is_colorizing(const AliasDefinition& alias, const KnowledgeBase& kb);
std::optional<PracticeLabel> is_privilege_elevation(const AliasDefinition& alias);
std::optional<PracticeLabel> is_transform_pipeline(const AliasDefinition& alias);
std::optional<PracticeLabel> is_subcommand_chain(const AliasDefinition& alias,
                                                 const KnowledgeBase& kb);

std::vector<PracticeLabel> classify(const AliasDefinition& alias, const KnowledgeBase& kb);

// True when the argument names a path, an IPv4 address, or a known-TLD
// domain, minus the exclusions (`/dev/null`, remote refs like
// `origin/master`, dot-and-slash-only strings). `command_name` feeds the
// remote-ref exclusion for git.
bool is_location(std::string_view argument, const KnowledgeBase& kb,
                 std::string_view command_name = "");

// len(value) / len(name) in characters.
double compression_ratio(const AliasDefinition& alias);

}  // namespace aliasmine
