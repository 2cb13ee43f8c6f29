#pragma once

// Hand-labeled alias corpus used by the classifier tests and the acceptance
// suite. Each entry is a full alias statement, the expected practice label
// set under the mechanical definitions, and the expected typo flag for
// nicknames. An empty label set is a valid expectation: plenty of real
// aliases (ll='ls -l') fire none of the nine predicates.

#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aliasmine/classifier.hpp"
#include "aliasmine/parser.hpp"

namespace aliasmine::fixtures {

struct LabeledAlias {
    const char* statement;
    std::set<PracticeKind> expected;
    bool typo_fix = false;
};

using PK = PracticeKind;

inline const std::vector<LabeledAlias>& labeled_corpus() {
    static const std::vector<LabeledAlias> corpus = {
        // shortcuts that fire nothing: default-argument renames
        {"alias ll='ls -l'", {}},
        {"alias ll='ls -alF'", {}},
        {"alias la='ls -A'", {}},
        {"alias l='ls -CF'", {}},
        {"alias h23='history -23000'", {}},
        {"alias gcm='git commit -m'", {}},
        {"alias gm='git merge origin/master'", {}},

        // nicknaming
        {"alias g='git'", {PK::Nicknaming}, false},
        {"alias c='clear'", {PK::Nicknaming}, false},
        {"alias h='history'", {PK::Nicknaming}, false},
        {"alias v='vim'", {PK::Nicknaming}, false},
        {"alias got='git'", {PK::Nicknaming}, true},
        {"alias gti='git'", {PK::Nicknaming}, true},
        {"alias sl='ls'", {PK::Nicknaming}, true},
        {"alias grpe='grep'", {PK::Nicknaming}, true},
        {"alias Jupyter='jupyter'", {PK::Nicknaming}, true},
        {"alias pluralise='pluralize'", {PK::Nicknaming}, true},
        {"alias docker-build='docker_build'", {PK::Nicknaming}, true},

        // abbreviating subcommands
        {"alias gs='git status'", {PK::AbbreviatingSubcommands}},
        {"alias gst='git status'", {PK::AbbreviatingSubcommands}},
        {"alias gd='git diff'", {PK::AbbreviatingSubcommands}},
        {"alias gco='git checkout'", {PK::AbbreviatingSubcommands}},
        {"alias gp='git push'", {PK::AbbreviatingSubcommands}},
        {"alias ga='git add'", {PK::AbbreviatingSubcommands}},
        {"alias gb='git branch'", {PK::AbbreviatingSubcommands}},
        {"alias gpl='git pull'", {PK::AbbreviatingSubcommands}},

        // bookmarking locations
        {"alias dl='cd ~/Downloads'", {PK::BookmarkingLocations}},
        {"alias onoz='cat /var/log/errors.log'", {PK::BookmarkingLocations}},
        {"alias starwars='telnet towel.blinkenlights.nl'", {PK::BookmarkingLocations}},
        {"alias gitbash='source /Users/j/mybin/gitsh'", {PK::BookmarkingLocations}},

        // substituting commands
        {"alias more='less'", {PK::SubstitutingCommands}},
        {"alias vi='vim'", {PK::SubstitutingCommands}},
        {"alias vim='nvim'", {PK::SubstitutingCommands}},
        {"alias vi='nvim'", {PK::SubstitutingCommands}},
        {"alias emacs='vim'", {PK::SubstitutingCommands}},
        {"alias vim='emacs'", {PK::SubstitutingCommands}},

        // overriding defaults
        {"alias df='df -h'", {PK::OverridingDefaults}},
        {"alias mv='mv -i'", {PK::OverridingDefaults}},
        {"alias cp='cp -i'", {PK::OverridingDefaults}},
        {"alias rm='rm -i'", {PK::OverridingDefaults}},
        {"alias ll='ls -lh'", {}},
        {"alias java='java -ea -server'", {PK::OverridingDefaults}},
        {"alias ffmpeg='ffmpeg -hide_banner'", {PK::OverridingDefaults}},
        {"alias ls='ls -GphF'", {PK::OverridingDefaults}},
        {"alias mount='mount | column -t'",
         {PK::OverridingDefaults, PK::TransformingData}},

        // colorizing output
        {"alias grep='grep --color=auto'", {PK::OverridingDefaults, PK::ColorizingOutput}},
        {"alias grep='grep --color=always'",
         {PK::OverridingDefaults, PK::ColorizingOutput}},
        {"alias ls='ls --color=auto'", {PK::OverridingDefaults, PK::ColorizingOutput}},
        {"alias ls='ls -G'", {PK::OverridingDefaults, PK::ColorizingOutput}},
        {"alias diff='colordiff'", {PK::SubstitutingCommands, PK::ColorizingOutput}},
        {"alias ssh='TERM=xterm256color ssh'",
         {PK::OverridingDefaults, PK::ColorizingOutput}},
        {"alias ll='ls -l --color=auto'", {PK::ColorizingOutput}},

        // elevating privilege
        {"alias agi='sudo apt-get install'",
         {PK::AbbreviatingSubcommands, PK::ElevatingPrivilege}},
        {"alias update='sudo apt-get update && sudo apt-get upgrade'",
         {PK::ElevatingPrivilege, PK::ChainingSubcommands}},

        // transforming data
        {"alias ducks='du -cksh * | sort -hr | head -n 15'", {PK::TransformingData}},
        {"alias mem10='ps auxf | sort -nr -k 4 | head -10'", {PK::TransformingData}},
        {"alias diskspace='du -S | sort -n -r | more'", {PK::TransformingData}},
        {"alias h='history | uniq | tail -15'", {PK::TransformingData}},
        {"alias lll='ls -trlh | less'", {PK::TransformingData}},
        {R"(alias lsd='ls -l | grep "^d"')", {PK::TransformingData}},
        {"alias weather='wget -qO - http://wttr.in/ | head -7'",
         {PK::BookmarkingLocations, PK::TransformingData}},

        // chaining subcommands
        {"alias brewup='brew update && brew upgrade'", {PK::ChainingSubcommands}},
        {"alias bup='brew update; brew upgrade'", {PK::ChainingSubcommands}},
        {"alias whoops='git reset --hard && git clean -df'", {PK::ChainingSubcommands}},
        {"alias gitpull='git stash && git pull && git stash pop'",
         {PK::ChainingSubcommands}},
        {"alias gspull='git stash && git pull && git stash pop'",
         {PK::ChainingSubcommands}},
        {"alias gsc='git stash && git checkout $1 && git stash pop'",
         {PK::ChainingSubcommands}},
        {"alias commit='git add . && git commit -m'", {PK::ChainingSubcommands}},
        {"alias gac='git add --all && git commit'", {PK::ChainingSubcommands}},
        {"alias gitstatus='git remote update && git status'", {PK::ChainingSubcommands}},
    };
    return corpus;
}

inline AliasDefinition parse_fixture(const char* statement) {
    ExtractResult extracted = extract_aliases(statement, "fixture");
    if (extracted.occurrences.size() != 1)
        throw std::runtime_error(std::string("fixture did not yield one occurrence: ") +
                                 statement);
    auto def = parse_definition(extracted.occurrences[0]);
    if (!def)
        throw std::runtime_error(std::string("fixture failed to parse: ") + statement);
    return *def;
}

// A dotfile holding the whole corpus, one alias per line.
inline std::string corpus_as_dotfile() {
    std::string text;
    for (const auto& entry : labeled_corpus()) {
        text += entry.statement;
        text += '\n';
    }
    return text;
}

}  // namespace aliasmine::fixtures
