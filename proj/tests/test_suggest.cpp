#include <doctest.h>

#include "aliasmine/pipeline.hpp"
#include <stdexcept>

#include "aliasmine/suggest.hpp"

using namespace aliasmine;

namespace {

// Fixture corpus shaped for rule mining: sudo-heavy apt-get install,
// systemctl status invocations, and brew update chains.
CorpusStore rules_store() {
    std::string dotfile;
    for (int i = 0; i < 9; ++i)
        dotfile += "alias agi" + std::to_string(i) + "='sudo apt-get install'\n";
    dotfile += "alias agn='apt-get install'\n";  // the one non-sudo use
    for (int i = 0; i < 6; ++i)
        dotfile += "alias sds" + std::to_string(i) + "='systemctl status docker'\n";
    for (int i = 0; i < 3; ++i)
        dotfile += "alias brewup" + std::to_string(i) + "='brew update && brew upgrade'\n";
    dotfile += "alias grep='grep --color=auto'\n";

    CorpusStore store;
    store.ingest_file(".bashrc", dotfile);

    KnowledgeBase kb = default_knowledge_base();
    auto defs = materialize_aliases(store);
    auto labels = classify_batch_serial(defs, kb);
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (const auto& label : labels[i])
            store.labels.push_back(
                {static_cast<std::int64_t>(i), label.kind, label.evidence, label.typo_fix});
    return store;
}

}  // namespace

TEST_CASE("build_rules keeps sudo pairs above support and count floors") {
    CorpusStore store = rules_store();
    RuleSet rules = build_rules(store);

    auto it = rules.sudo_rules.find({"apt-get", "install"});
    REQUIRE(it != rules.sudo_rules.end());
    CHECK(it->second.total == 10);
    CHECK(it->second.with_sudo == 9);
    CHECK(it->second.support() == doctest::Approx(0.9));

    // systemctl is never sudo'd here, so no sudo rule for it
    CHECK(rules.sudo_rules.find({"systemctl", "status"}) == rules.sudo_rules.end());

    // order vocabulary recorded for systemctl
    REQUIRE(rules.order_rules.count("systemctl"));
    CHECK(rules.order_rules.at("systemctl").at("status") == 6);

    // chain precedent keyed by the final invocation
    auto chain = rules.chain_rules.find({"brew", "upgrade"});
    REQUIRE(chain != rules.chain_rules.end());
    REQUIRE(chain->second.size() == 1);
    CHECK(chain->second[0].chain == "brew update && brew upgrade");
    CHECK(chain->second[0].count == 3);
}

TEST_CASE("raising min_support never adds sudo rules") {
    CorpusStore store = rules_store();
    BuildOptions loose{0.5, 1};
    BuildOptions strict{0.95, 1};
    RuleSet loose_rules = build_rules(store, loose);
    RuleSet strict_rules = build_rules(store, strict);
    for (const auto& [key, rule] : strict_rules.sudo_rules)
        CHECK(loose_rules.sudo_rules.count(key));
    CHECK(strict_rules.sudo_rules.size() <= loose_rules.sudo_rules.size());
    CHECK(strict_rules.sudo_rules.find({"apt-get", "install"}) ==
          strict_rules.sudo_rules.end());  // 0.9 < 0.95
}

TEST_CASE("empty store builds an empty rule set and suggests nothing") {
    CorpusStore store;
    RuleSet rules = build_rules(store);
    CHECK(rules.empty());
    CHECK(suggest("apt-get install vim", rules).empty());
    CHECK(suggest("anything at all", rules).empty());
}

TEST_CASE("suggest fixes the three scenario inputs") {
    CorpusStore store = rules_store();
    RuleSet rules = build_rules(store);

    auto sudo_fix = suggest("apt-get install vim", rules);
    REQUIRE(!sudo_fix.empty());
    CHECK(sudo_fix[0].replacement == "sudo apt-get install vim");
    CHECK(sudo_fix[0].rule_kind == RuleKind::SudoPrefix);

    auto order_fix = suggest("systemctl docker status", rules);
    REQUIRE(!order_fix.empty());
    CHECK(order_fix[0].replacement == "systemctl status docker");
    CHECK(order_fix[0].rule_kind == RuleKind::ArgOrder);

    auto chain_fix = suggest("brew upgrade", rules);
    REQUIRE(!chain_fix.empty());
    CHECK(chain_fix[0].replacement == "brew update && brew upgrade");
    CHECK(chain_fix[0].rule_kind == RuleKind::Chain);
}

TEST_CASE("typo rule proposes the nearest known command") {
    CorpusStore store = rules_store();
    RuleSet rules = build_rules(store);
    auto fixes = suggest("grpe foo bar.txt", rules);
    REQUIRE(!fixes.empty());
    CHECK(fixes[0].replacement == "grep foo bar.txt");
    CHECK(fixes[0].rule_kind == RuleKind::Typo);
    CHECK(fixes[0].score == doctest::Approx(0.5));
}

TEST_CASE("suggestions never equal the input and always re-parse") {
    CorpusStore store = rules_store();
    RuleSet rules = build_rules(store);
    for (const char* input : {"apt-get install vim", "systemctl docker status",
                              "brew upgrade", "grpe foo", "sudo apt-get install vim"}) {
        auto commands = tokenize_value(input);
        REQUIRE(commands);
        std::string canonical = reassemble(*commands);
        for (const auto& s : suggest(input, rules, 10)) {
            CHECK(s.replacement != canonical);
            CHECK(tokenize_value(s.replacement).has_value());
            CHECK(s.score > 0.0);
            CHECK(s.score <= 1.0);
        }
    }
}

TEST_CASE("unparseable input raises an error naming the failure") {
    RuleSet rules;
    CHECK_THROWS_WITH_AS(suggest("echo 'unterminated", rules),
                         doctest::Contains("unbalanced quote"), std::invalid_argument);
}

TEST_CASE("rules survive a jsonl round trip") {
    CorpusStore store = rules_store();
    RuleSet rules = build_rules(store);
    RuleSet reloaded = rules_from_jsonl(rules_to_jsonl(rules));
    CHECK(rules_to_jsonl(reloaded) == rules_to_jsonl(rules));

    auto fix = suggest("brew upgrade", reloaded);
    REQUIRE(!fix.empty());
    CHECK(fix[0].replacement == "brew update && brew upgrade");
}
