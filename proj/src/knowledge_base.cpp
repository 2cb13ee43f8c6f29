#include "aliasmine/knowledge_base.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "aliasmine/text.hpp"

namespace aliasmine {

namespace {

// ---------------------------------------------------------------------------
// Bundled defaults. Same format as the on-disk files so one loader serves
// both. The command lists are seeded from common Unix/GNU tools plus the
// multi-mode commands package managers and VCS frontends expose.
// ---------------------------------------------------------------------------

constexpr std::string_view kDefaultKnownCommands = R"(
# coreutils / file system
ls dir vdir cat tac head tail less more cp mv rm ln mkdir rmdir touch stat
file tree du df sync mount umount chmod chown chgrp find locate which whereis
readlink realpath basename dirname pwd cd pushd popd mktemp install shred
# text processing
grep egrep fgrep rg ag ack sed awk gawk cut tr sort uniq wc fmt fold join
paste split comm diff colordiff patch column nl od xxd hexdump strings rev
tee xargs yes seq printf echo expand unexpand iconv
# processes / system
ps top htop kill killall pkill pgrep jobs fg bg nohup nice renice time watch
uptime free vmstat iostat lsof strace ltrace dmesg journalctl systemctl
service shutdown reboot halt poweroff sudo su env printenv export uname
hostname whoami who w id groups date cal sleep crontab at
# networking
ssh scp sftp ftp telnet nc netcat curl wget ping ping6 traceroute dig
nslookup host whois ifconfig ip route netstat ss rsync mtr arp
# archives / compression
tar gzip gunzip bzip2 bunzip2 xz unxz zip unzip zcat 7z rar unrar zstd
# editors / viewers
vi vim nvim gvim emacs nano pico ed subl code atom gedit kate open xdg-open
man info
# development
git hg svn cvs bzr make cmake gcc g++ clang clang++ gdb lldb ld ar nm objdump
python python3 python2 ruby perl php node deno npm npx yarn pnpm pip pip3
gem bundle rake cargo rustc go javac java kotlin scala sbt mvn gradle lua
ghc stack cabal dotnet swift R julia irb
# package managers
apt apt-get apt-cache aptitude dpkg pacman yay paru abs aur brew port snap
yum dnf rpm zypper emerge nix apk composer conda mamba flatpak
# infrastructure / cloud
docker docker-compose podman kubectl minikube helm vagrant terraform ansible
gcloud aws az heroku flyctl
# multiplexers / shells
tmux screen bash zsh sh fish dash ksh csh tcsh
# misc
clear history alias unalias type hash source exec exit logout bc dc units
ffmpeg ffprobe convert mogrify youtube-dl yt-dlp jq yq pandoc latex pdflatex
gpg openssl base64 md5sum sha1sum sha256sum cksum jupyter beep say spark
pygmentize grc grcat ccze lolcat bat ccat highlight colorls exa fd fzf
ranger mc ncdu entr direnv asdf
)";

constexpr std::string_view kDefaultSubcommandCommands = R"(
git hg svn bzr
docker docker-compose podman kubectl minikube helm vagrant terraform ansible
apt apt-get apt-cache aptitude pacman brew port snap yum dnf zypper nix apk
npm yarn pnpm pip pip3 gem bundle rake cargo go composer conda mamba flatpak
systemctl service gcloud aws az heroku flyctl asdf
)";

// command <TAB> flag pattern ("*" command row applies to every command)
constexpr std::string_view kDefaultColorFlags =
    "*\t--color*\n"
    "*\t--colour*\n"
    "ls\t-G\n"
    "less\t-R\n"
    "less\t-r\n"
    "more\t-R\n"
    "tree\t-C\n"
    "ip\t-c\n";

constexpr std::string_view kDefaultColorizerTools = R"(
grc grcat pygmentize ccze lolcat highlight colordiff bat ccat
)";

// plain command <TAB> colorized twin
constexpr std::string_view kDefaultColorTwins =
    "diff\tcolordiff\n"
    "diff\ticdiff\n"
    "cat\tbat\n"
    "cat\tccat\n"
    "ls\tcolorls\n"
    "make\tcolormake\n"
    "gcc\tcolorgcc\n"
    "tail\tcolortail\n";

constexpr std::string_view kDefaultColorEnvVars = R"(
TERM COLORTERM CLICOLOR CLICOLOR_FORCE FORCE_COLOR
LS_COLORS LSCOLORS GREP_COLOR GREP_COLORS
)";

// Snapshot of the IANA top-level domain registry (generic + country codes).
constexpr std::string_view kDefaultTlds = R"(
com org net int edu gov mil arpa
aero asia biz cat coop info jobs mobi museum name pro tel travel xxx
app art bank bar bio blog bot box buy call camera car cards care casa cash
chat city click cloud club codes coffee cool date dev digital directory
download earth email events exchange expert express farm fashion finance
fit fitness flights florist fm football foundation fun fund gallery games
gift gives gold golf graphics group guide guru health help here homes host
house how icu inc industries ink institute insure international io jetzt
kim kitchen land legal life lighting limited link live loan lol love ltd
market marketing media memorial men menu moda moe money mortgage movie
network news ninja now nyc one online ooo page paris partners parts party
photo photography photos pics pictures pink pizza place plus poker press
pub pw red rentals repair report rest restaurant reviews rip rocks run
sale school science services shoes shop show singles site ski soccer
social software solar solutions space store stream studio study style
supply support surf systems tax taxi team tech technology tips today tools
top tours town toys trade training tube uno vacations ventures vet video
villas vision vodka vote voyage watch webcam website wedding wiki win wine
work works world wtf xyz zone
ac ad ae af ag ai al am ao aq ar as at au aw ax az ba bb bd be bf bg bh bi
bj bm bn bo br bs bt bw by bz ca cc cd cf cg ch ci ck cl cm cn co cr cu cv
cw cx cy cz de dj dk dm do dz ec ee eg er es et eu fi fj fk fo fr ga gd ge
gf gg gh gi gl gm gn gp gq gr gs gt gu gw gy hk hm hn hr ht hu id ie il im
in iq ir is it je jm jo jp ke kg kh ki km kn kp kr kw ky kz la lb lc li lk
lr ls lt lu lv ly ma mc md me mg mh mk ml mm mn mo mp mq mr ms mt mu mv mw
mx my mz na nc ne nf ng ni nl no np nr nu nz om pa pe pf pg ph pk pl pm pn
pr ps pt pw py qa re ro rs ru rw sa sb sc sd se sg sh si sk sl sm sn so sr
ss st sv sx sy sz tc td tf tg th tj tk tl tm tn to tr tt tv tw tz ua ug uk
us uy uz va vc ve vg vi vn vu wf ws ye yt za zm zw
)";

constexpr std::string_view kDefaultLocationExclusions = R"(
/dev/null
)";

// Function words only. Possessives like "my" stay countable: they dominate
// real repository descriptions ("my dotfiles").
constexpr std::string_view kDefaultStopWords = R"(
a an and are as at be but by for from had has have if in into is it its of
on or s so such t that the their then there these they this to was were
will with
)";

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!cur.empty())
                words.push_back(std::move(cur));
            cur = {};
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        words.push_back(std::move(cur));
    return words;
}

std::set<std::string> parse_set(std::string_view text, bool lowercase = false) {
    std::set<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        for (auto& word : tokenize_words(line))
            out.insert(lowercase ? to_lower(word) : word);
    }
    return out;
}

std::map<std::string, std::set<std::string>> parse_map(std::string_view text) {
    std::map<std::string, std::set<std::string>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            continue;
        std::string key = line.substr(0, tab);
        std::string value = line.substr(tab + 1);
        while (!value.empty() && (value.back() == '\r' || value.back() == ' '))
            value.pop_back();
        if (!key.empty() && !value.empty())
            out[key].insert(value);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

bool KnowledgeBase::has_color_flag(std::string_view command, std::string_view argument) const {
    for (const auto& key : {std::string(command), std::string("*")}) {
        auto it = color_flags.find(key);
        if (it == color_flags.end())
            continue;
        for (const auto& pattern : it->second)
            if (glob_match(pattern, argument))
                return true;
    }
    return false;
}

KnowledgeBase default_knowledge_base() {
    KnowledgeBase kb;
    kb.known_commands = parse_set(kDefaultKnownCommands);
    kb.subcommand_commands = parse_set(kDefaultSubcommandCommands);
    kb.color_flags = parse_map(kDefaultColorFlags);
    kb.colorizer_tools = parse_set(kDefaultColorizerTools);
    kb.color_twins = parse_map(kDefaultColorTwins);
    kb.color_env_vars = parse_set(kDefaultColorEnvVars);
    kb.tld_set = parse_set(kDefaultTlds, /*lowercase=*/true);
    kb.location_exclusions = parse_set(kDefaultLocationExclusions);
    kb.stop_words = parse_set(kDefaultStopWords, /*lowercase=*/true);
    return kb;
}

KnowledgeBase load_knowledge_base(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error("knowledge base directory not found: " + dir);

    KnowledgeBase kb = default_knowledge_base();
    auto maybe = [&](std::string_view name) -> std::optional<std::string> {
        fs::path p = fs::path(dir) / name;
        if (!fs::exists(p))
            return std::nullopt;
        return read_file(p);
    };

    if (auto t = maybe("known_commands.txt"))
        kb.known_commands = parse_set(*t);
    if (auto t = maybe("subcommand_commands.txt"))
        kb.subcommand_commands = parse_set(*t);
    if (auto t = maybe("color_flags.tsv"))
        kb.color_flags = parse_map(*t);
    if (auto t = maybe("colorizer_tools.txt"))
        kb.colorizer_tools = parse_set(*t);
    if (auto t = maybe("color_twins.tsv"))
        kb.color_twins = parse_map(*t);
    if (auto t = maybe("color_env_vars.txt"))
        kb.color_env_vars = parse_set(*t);
    if (auto t = maybe("tlds.txt"))
        kb.tld_set = parse_set(*t, /*lowercase=*/true);
    if (auto t = maybe("location_exclusions.txt"))
        kb.location_exclusions = parse_set(*t);
    if (auto t = maybe("stopwords.txt"))
        kb.stop_words = parse_set(*t, /*lowercase=*/true);
    return kb;
}

}  // namespace aliasmine
