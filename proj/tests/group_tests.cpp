#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tyre/bench.hpp"
#include "tyre/compile.hpp"
#include "tyre/group.hpp"
#include "tyre/run.hpp"

using namespace tyre;

namespace {

/// Literal restart-scan merging, used as an oracle for the bucketed
/// implementation: find the first equal pair in ascending order, redirect
/// and delete, start over.
plain_nfa naive_merge(plain_nfa nfa) {
    auto arrows_equal = [](const std::vector<plain_nfa::arrow>& xs,
                           const std::vector<plain_nfa::arrow>& ys) {
        if (xs.size() != ys.size()) return false;
        std::vector<bool> used(ys.size(), false);
        for (const auto& x : xs) {
            bool found = false;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (used[j]) continue;
                if (cond_equal(x.guard, ys[j].guard) && x.targets == ys[j].targets) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };

restart:
    for (int i = 0; i < nfa.state_count; ++i) {
        for (int j = i + 1; j < nfa.state_count; ++j) {
            if (!arrows_equal(nfa.edges[i], nfa.edges[j])) continue;
            // redirect j to i, delete j, renumber everything above j
            auto fix = [&](int t) {
                if (t == accept_state) return t;
                if (t == j) t = i;
                return t > j ? t - 1 : t;
            };
            plain_nfa out;
            out.state_count = nfa.state_count - 1;
            for (int s = 0; s < nfa.state_count; ++s) {
                if (s == j) continue;
                auto st = nfa.edges[s];
                for (auto& e : st) {
                    for (int& t : e.targets) t = fix(t);
                    std::sort(e.targets.begin(), e.targets.end());
                    e.targets.erase(std::unique(e.targets.begin(), e.targets.end()),
                                    e.targets.end());
                }
                out.edges.push_back(std::move(st));
            }
            for (int s : nfa.starts) out.starts.push_back(fix(s));
            std::vector<int> dedup;
            for (int s : out.starts)
                if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(s);
            out.starts = std::move(dedup);
            nfa = std::move(out);
            goto restart;
        }
    }
    return nfa;
}

bool nfa_equal(const plain_nfa& a, const plain_nfa& b) {
    if (a.state_count != b.state_count || a.starts != b.starts) return false;
    for (int s = 0; s < a.state_count; ++s) {
        if (a.edges[s].size() != b.edges[s].size()) return false;
        for (std::size_t i = 0; i < a.edges[s].size(); ++i) {
            const auto& x = a.edges[s][i];
            const auto& y = b.edges[s][i];
            if (!cond_equal(x.guard, y.guard) || x.targets != y.targets) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("build_nfa structure") {
    SECTION("single predicate") {
        plain_nfa n = build_nfa(regex::match(char_cond::one_of({'a'})));
        CHECK(n.state_count == 1);
        CHECK(n.starts == std::vector<int>{0});
        REQUIRE(n.edges[0].size() == 1);
        CHECK(n.edges[0][0].targets == std::vector<int>{accept_state});
    }
    SECTION("duplicated alternation branches give identical outgoing edges") {
        plain_nfa n = build_nfa(regex::alt(regex::match(char_cond::one_of({'a'})),
                                           regex::match(char_cond::one_of({'a'}))));
        CHECK(n.state_count == 2);
        CHECK(cond_equal(n.edges[0][0].guard, n.edges[1][0].guard));
        CHECK(n.edges[0][0].targets == n.edges[1][0].targets);
    }
    SECTION("empty regex starts at accept") {
        plain_nfa n = build_nfa(regex::empty());
        CHECK(n.state_count == 0);
        CHECK(n.starts == std::vector<int>{accept_state});
    }
}

TEST_CASE("cond_equal") {
    CHECK(cond_equal(char_cond::range('a', 'z'), char_cond::range('a', 'z')));
    CHECK_FALSE(cond_equal(char_cond::range('a', 'z'), char_cond::range('a', 'y')));
    CHECK(cond_equal(char_cond::one_of({'b', 'a'}), char_cond::one_of({'a', 'b'})));
    auto f = [](char) { return true; };
    char_cond p = char_cond::pred(f);
    CHECK_FALSE(cond_equal(p, p));
    CHECK_FALSE(cond_equal(char_cond::one_of({'a'}), char_cond::range('a', 'a')));
}

TEST_CASE("merge_states") {
    SECTION("identical alternation branches collapse") {
        plain_nfa n = merge_states(build_nfa(regex::alt(
            regex::match(char_cond::one_of({'a'})), regex::match(char_cond::one_of({'a'})))));
        CHECK(n.state_count == 1);
    }
    SECTION("the unbalanced alternation family collapses to a single path") {
        for (std::size_t n : {2u, 5u, 17u, 64u}) {
            auto [re, input] = bench_case("alt-grouped", n);
            plain_nfa before = build_nfa(re.inner());
            plain_nfa after = merge_states(before);
            CHECK(before.state_count == static_cast<int>(n));
            CHECK(after.state_count == 1);
        }
    }
    SECTION("predicate guards never merge") {
        regex p1 = regex::match(char_cond::pred([](char c) { return c == 'a'; }));
        regex p2 = regex::match(char_cond::pred([](char c) { return c == 'a'; }));
        plain_nfa before = build_nfa(regex::alt(p1, p2));
        plain_nfa after = merge_states(before);
        CHECK(after.state_count == before.state_count);
    }
    SECTION("merging agrees with the literal restart-scan algorithm") {
        std::mt19937 rng(211);
        for (int i = 0; i < 250; ++i) {
            regex re = test::random_typed(rng, 4);
            plain_nfa nfa = build_nfa(re);
            plain_nfa fast = merge_states(nfa);
            plain_nfa slow = naive_merge(nfa);
            INFO("case " << i);
            REQUIRE(fast.state_count == slow.state_count);
            REQUIRE(nfa_equal(fast, slow));
        }
    }
    SECTION("never grows and preserves the language") {
        std::mt19937 rng(223);
        auto strings = test::enumerate_strings(5);
        for (int i = 0; i < 80; ++i) {
            regex re = test::random_typed(rng, 3);
            plain_nfa before = build_nfa(re);
            plain_nfa after = merge_states(before);
            REQUIRE(after.state_count <= before.state_count);
            moore_machine m = nfa_to_machine(after).freeze();
            REQUIRE(validate_machine(m).empty());
            for (const auto& s : strings) REQUIRE(match(m, s, true) == test::oracle_matches(re, s));
        }
    }
}

TEST_CASE("group machines yield the matched sub-string") {
    SECTION("one character") {
        compiled g(ignore(regex::match(char_cond::range('a', 'z'))), true);
        CHECK(g.parse("q") == parse_value::string("q"));
    }
    SECTION("nullable group emits the empty buffer") {
        compiled g(ignore(rep0(match_char('a'))), true);
        CHECK(g.parse("") == parse_value::string(""));
    }
    SECTION("the group text is exactly the consumed substring") {
        std::mt19937 rng(227);
        auto strings = test::enumerate_strings(5);
        for (int i = 0; i < 60; ++i) {
            regex re = test::random_typed(rng, 3);
            compiled g(ignore(re), true);
            for (const auto& s : strings) {
                prefix_result p = g.parse_prefix(s, true);
                if (!p.value) continue;
                REQUIRE(p.value->as_string() == s.substr(0, p.consumed));
            }
        }
    }
}
