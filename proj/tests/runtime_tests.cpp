#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "tyre/tyre.hpp"

using namespace tyre;

namespace {

compiled lit(const char* s) { return compiled(compile_literal(s).second, true); }

regex time2_regex() {
    auto two_digits = [](const parse_value& v) {
        return parse_value::natural(10 * (v.first().as_char() - '0') +
                                    (v.second().as_char() - '0'));
    };
    regex hours = map(two_digits, shape::natural(),
                      or_else(compile_literal("([01][0-9])!").second,
                              compile_literal("([2][0-3])!").second));
    regex minutes = map(two_digits, shape::natural(), compile_literal(":([0-5][0-9])!").second);
    return seq(hours, minutes);
}

}  // namespace

TEST_CASE("init_threads") {
    SECTION("the empty machine starts accepted with [()]") {
        auto ts = init_threads(compile(regex::empty()), true);
        REQUIRE(ts.size() == 1);
        CHECK(ts[0].state == accept_state);
        CHECK(ts[0].data.stack.items() == std::vector<parse_value>{parse_value::unit()});
    }
    SECTION("a predicate machine starts at its state with an empty stack") {
        auto ts = init_threads(compile(regex::match(char_cond::any())), true);
        REQUIRE(ts.size() == 1);
        CHECK(ts[0].state == 0);
        CHECK(ts[0].data.stack.empty());
    }
    SECTION("duplicate init states collapse to the first") {
        moore_machine m = compile(regex::match(char_cond::one_of({'a'})));
        m.init.push_back(m.init[0]);
        CHECK(init_threads(m, true).size() == 1);
    }
}

TEST_CASE("step") {
    moore_machine m = compile(compile_literal("A[0-9]!").second);
    auto ts = init_threads(m, true);
    ts = step(m, ts, 'A', true);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].data.stack.items() == std::vector<parse_value>{parse_value::unit()});
    ts = step(m, ts, '3', true);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].state == accept_state);
    CHECK(ts[0].data.stack.items() == std::vector<parse_value>{parse_value::character('3')});

    SECTION("the pool is bounded by state count plus one") {
        std::mt19937 rng(331);
        auto strings = test::enumerate_strings(5);
        for (int i = 0; i < 40; ++i) {
            regex re = test::random_typed(rng, 3);
            moore_machine mm = compile(re);
            for (const auto& s : strings) {
                auto pool = init_threads(mm, true);
                REQUIRE(pool.size() <= static_cast<std::size_t>(mm.state_count) + 1);
                for (char c : s) {
                    pool = step(mm, pool, c, true);
                    REQUIRE(pool.size() <= static_cast<std::size_t>(mm.state_count) + 1);
                }
            }
        }
    }
}

TEST_CASE("run_full and match") {
    compiled time1 = lit("(([01][0-9])|([2][0-3])):[0-5][0-9]");
    CHECK(time1.match("07:45"));
    CHECK(time1.match("23:59"));
    CHECK_FALSE(time1.match("25:00"));
    CHECK_FALSE(time1.match("7:45"));
    CHECK_FALSE(time1.match("11:15x"));

    SECTION("mid-input acceptance does not count") {
        compiled a = lit("a");
        CHECK_FALSE(a.match("ab"));
    }
    SECTION("a dead pool means no match") {
        CHECK_FALSE(lit("abc").match("xbc"));
    }
    SECTION("group-recorded output re-matches") {
        compiled g(ignore(compile_literal("a+b").second), true);
        auto v = g.parse("aab");
        REQUIRE(v.has_value());
        CHECK(g.match(v->as_string()));
    }
}

TEST_CASE("parse_prefix") {
    compiled stars(rep0(regex::match(char_cond::one_of({'a'}))), true);

    SECTION("greedy takes the longest prefix") {
        prefix_result p = stars.parse_prefix("aab", true);
        REQUIRE(p.value.has_value());
        CHECK(p.consumed == 2);
        CHECK(*p.value == parse_value::list_of(
                              {parse_value::character('a'), parse_value::character('a')}));
    }
    SECTION("non-greedy takes the first acceptance") {
        prefix_result p = stars.parse_prefix("aab", false);
        REQUIRE(p.value.has_value());
        CHECK(p.consumed == 0);
        CHECK(*p.value == parse_value::empty_list());
    }
    SECTION("no input, no acceptance") {
        compiled pred(regex::match(char_cond::any()), true);
        prefix_result p = pred.parse_prefix("", true);
        CHECK_FALSE(p.value.has_value());
        CHECK(p.consumed == 0);
    }
    SECTION("greedy consumes at least as much as non-greedy") {
        std::mt19937 rng(337);
        auto strings = test::enumerate_strings(5);
        for (int i = 0; i < 50; ++i) {
            regex re = test::random_typed(rng, 3);
            compiled c(re, true);
            for (const auto& s : strings) {
                prefix_result g = c.parse_prefix(s, true);
                prefix_result n = c.parse_prefix(s, false);
                REQUIRE(g.value.has_value() == n.value.has_value());
                if (g.value) REQUIRE(g.consumed >= n.consumed);
            }
        }
    }
}

TEST_CASE("disjoint_matches") {
    compiled digits = lit("[0-9][0-9]");

    SECTION("occurrences left to right, gaps kept apart") {
        scan_result r = digits.disjoint_matches("a12b34", true);
        REQUIRE(r.hits.size() == 2);
        CHECK(r.hits[0].gap == "a");
        CHECK(r.hits[0].text == "12");
        CHECK(r.hits[1].gap == "b");
        CHECK(r.hits[1].text == "34");
        CHECK(r.trailing.empty());
        auto pairs = r.matches();
        CHECK(pairs[0].first == "12");
        CHECK(pairs[1].first == "34");
    }
    SECTION("no occurrences") {
        scan_result r = digits.disjoint_matches("abc", true);
        CHECK(r.hits.empty());
        CHECK(r.trailing == "abc");
    }
    SECTION("non-consuming regexes are rejected") {
        compiled stars(rep0(match_char('a')), true);
        CHECK_THROWS_AS(stars.disjoint_matches("aaa", true), not_consuming);
        CHECK_THROWS_AS(stars.substitute("aaa", [](const parse_value&) { return ""; }),
                        not_consuming);
    }
    SECTION("greedy matches do not overlap") {
        scan_result r = lit("aa").disjoint_matches("aaaaa", true);
        CHECK(r.hits.size() == 2);
        CHECK(r.trailing == "a");
    }
}

TEST_CASE("substitute") {
    SECTION("the timestamp rewriting example") {
        compiled time2(time2_regex(), true);
        std::string out = time2.substitute("Look, it is 11:15.", [](const parse_value& v) {
            return std::to_string(v.second().as_natural()) + " past " +
                   std::to_string(v.first().as_natural());
        });
        CHECK(out == "Look, it is 15 past 11.");
    }
    SECTION("no matches leaves the input unchanged") {
        compiled time2(time2_regex(), true);
        CHECK(time2.substitute("nothing here", [](const parse_value&) { return "X"; }) ==
              "nothing here");
    }
    SECTION("re-emitting the matched text reproduces the input") {
        compiled g(ignore(compile_literal("[ab]+").second), true);
        std::mt19937 rng(347);
        for (const auto& s : test::enumerate_strings(6)) {
            std::string out =
                g.substitute(s, [](const parse_value& v) { return v.as_string(); });
            REQUIRE(out == s);
        }
    }
}

TEST_CASE("get_token") {
    compiled token(discard_left(match_char(';'), digit()), true);

    SECTION("tokenizing a semicolon-separated digit stream") {
        char_stream s = char_stream::of(std::string(";1;2;3"));
        CHECK(token.get_token(s, true) == parse_value::natural(1));
        CHECK(token.get_token(s, true) == parse_value::natural(2));
        CHECK(token.get_token(s, true) == parse_value::natural(3));
        CHECK_FALSE(token.get_token(s, true).has_value());
    }
    SECTION("failure leaves the stream unconsumed") {
        char_stream s = char_stream::of(std::string(";x;1"));
        CHECK_FALSE(token.get_token(s, true).has_value());
        CHECK(s.get() == ';');
        CHECK(s.get() == 'x');
    }
    SECTION("lookahead beyond the last acceptance is handed back") {
        compiled as(rep0(match_char('a')), true);
        char_stream s = char_stream::of(std::string("aab"));
        auto v = as.get_token(s, true);
        REQUIRE(v.has_value());
        CHECK(v->list_length() == 2);
        CHECK(s.get() == 'b');
    }
    SECTION("works over istreams") {
        std::istringstream in(";7;8");
        char_stream s = char_stream::of(in);
        CHECK(token.get_token(s, true) == parse_value::natural(7));
        CHECK(token.get_token(s, true) == parse_value::natural(8));
    }
}

TEST_CASE("determinism") {
    std::mt19937 rng(353);
    auto strings = test::enumerate_strings(4);
    for (int i = 0; i < 30; ++i) {
        regex re = test::random_typed(rng, 3);
        compiled c(re, true);
        for (const auto& s : strings) {
            auto a = c.parse(s);
            auto b = c.parse(s);
            REQUIRE(a.has_value() == b.has_value());
            if (a) REQUIRE(*a == *b);
        }
    }
}
