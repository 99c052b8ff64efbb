#pragma once

// Shared test machinery: an independent backtracking oracle for the regex
// language, and generators/enumerators for random and exhaustive regex and
// descriptor populations. The oracle works position-set-wise on the ASTs
// and never touches the machine pipeline it is used to check.

#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tyre/core.hpp"
#include "tyre/literal.hpp"
#include "tyre/shape.hpp"

namespace tyre::test {

/// Positions reachable after matching `re` against s starting at i.
inline std::set<std::size_t> oracle_after(const untyped_regex& re, std::string_view s,
                                          std::size_t i) {
    using k = untyped_regex::kind;
    std::set<std::size_t> out;
    switch (re.what()) {
        case k::exactly:
            if (i < s.size() && s[i] == re.ch()) out.insert(i + 1);
            break;
        case k::one_of:
            if (i < s.size() &&
                std::find(re.set().begin(), re.set().end(), s[i]) != re.set().end())
                out.insert(i + 1);
            break;
        case k::to:
            if (i < s.size() && re.lo() <= s[i] && s[i] <= re.hi()) out.insert(i + 1);
            break;
        case k::any:
            if (i < s.size()) out.insert(i + 1);
            break;
        case k::epsilon:
            out.insert(i);
            break;
        case k::concat:
            for (std::size_t j : oracle_after(re.left(), s, i))
                for (std::size_t r : oracle_after(re.right(), s, j)) out.insert(r);
            break;
        case k::alt: {
            out = oracle_after(re.left(), s, i);
            for (std::size_t j : oracle_after(re.right(), s, i)) out.insert(j);
            break;
        }
        case k::optional:
            out = oracle_after(re.inner(), s, i);
            out.insert(i);
            break;
        case k::rep0:
        case k::rep1: {
            std::set<std::size_t> frontier =
                re.what() == k::rep0 ? std::set<std::size_t>{i} : oracle_after(re.inner(), s, i);
            std::set<std::size_t> seen = frontier;
            while (!frontier.empty()) {
                std::set<std::size_t> next;
                for (std::size_t j : frontier)
                    for (std::size_t r : oracle_after(re.inner(), s, j))
                        if (seen.insert(r).second) next.insert(r);
                frontier = std::move(next);
            }
            out = std::move(seen);
            break;
        }
        case k::keep:
            out = oracle_after(re.inner(), s, i);
            break;
    }
    return out;
}

inline bool oracle_matches(const untyped_regex& re, std::string_view s) {
    return oracle_after(re, s, 0).count(s.size()) > 0;
}

/// Same oracle over the typed core AST.
inline std::set<std::size_t> oracle_after(const regex& re, std::string_view s, std::size_t i) {
    using k = regex::kind;
    std::set<std::size_t> out;
    switch (re.what()) {
        case k::empty:
            out.insert(i);
            break;
        case k::match_char:
            if (i < s.size() && satisfies(re.cond(), s[i])) out.insert(i + 1);
            break;
        case k::seq:
            for (std::size_t j : oracle_after(re.left(), s, i))
                for (std::size_t r : oracle_after(re.right(), s, j)) out.insert(r);
            break;
        case k::alt: {
            out = oracle_after(re.left(), s, i);
            for (std::size_t j : oracle_after(re.right(), s, i)) out.insert(j);
            break;
        }
        case k::rep: {
            std::set<std::size_t> seen{i};
            std::set<std::size_t> frontier{i};
            while (!frontier.empty()) {
                std::set<std::size_t> next;
                for (std::size_t j : frontier)
                    for (std::size_t r : oracle_after(re.inner(), s, j))
                        if (seen.insert(r).second) next.insert(r);
                frontier = std::move(next);
            }
            out = std::move(seen);
            break;
        }
        case k::conv:
        case k::group:
            out = oracle_after(re.inner(), s, i);
            break;
    }
    return out;
}

inline bool oracle_matches(const regex& re, std::string_view s) {
    return oracle_after(re, s, 0).count(s.size()) > 0;
}

/// Random literal-level regex over {a, b, c} with the constructor set of
/// the oracle-equivalence criterion.
inline untyped_regex random_untyped(std::mt19937& rng, int depth) {
    auto leaf = [&] {
        return untyped_regex::exactly(static_cast<char>('a' + rng() % 3));
    };
    if (depth <= 0) return leaf();
    switch (rng() % 8) {
        case 0:
        case 1: return leaf();
        case 2: return untyped_regex::concat(random_untyped(rng, depth - 1),
                                             random_untyped(rng, depth - 1));
        case 3: return untyped_regex::alt(random_untyped(rng, depth - 1),
                                          random_untyped(rng, depth - 1));
        case 4: return untyped_regex::rep0(random_untyped(rng, depth - 1));
        case 5: return untyped_regex::optional(random_untyped(rng, depth - 1));
        default: return untyped_regex::keep(random_untyped(rng, depth - 1));
    }
}

/// Random literal AST over the full constructor set, for round-trip tests.
inline untyped_regex random_untyped_full(std::mt19937& rng, int depth) {
    auto any_char = [&] {
        static const std::string pool = "abcxyz019 .*+?!|()[]\\-";
        return pool[rng() % pool.size()];
    };
    if (depth <= 0) {
        switch (rng() % 4) {
            case 0: return untyped_regex::exactly(any_char());
            case 1: {
                std::vector<char> cs;
                for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) cs.push_back(any_char());
                return untyped_regex::one_of(std::move(cs));
            }
            case 2: {
                char lo = static_cast<char>('a' + rng() % 20);
                char hi = static_cast<char>(lo + rng() % 6);
                return untyped_regex::to(lo, hi);
            }
            default: return rng() % 2 ? untyped_regex::any() : untyped_regex::epsilon();
        }
    }
    switch (rng() % 7) {
        case 0: return untyped_regex::concat(random_untyped_full(rng, depth - 1),
                                             random_untyped_full(rng, depth - 1));
        case 1: return untyped_regex::alt(random_untyped_full(rng, depth - 1),
                                          random_untyped_full(rng, depth - 1));
        case 2: return untyped_regex::optional(random_untyped_full(rng, depth - 1));
        case 3: return untyped_regex::rep0(random_untyped_full(rng, depth - 1));
        case 4: return untyped_regex::rep1(random_untyped_full(rng, depth - 1));
        case 5: return untyped_regex::keep(random_untyped_full(rng, depth - 1));
        default: return random_untyped_full(rng, 0);
    }
}

/// Random typed regex over {a, b, c}, for machine-level property tests.
inline regex random_typed(std::mt19937& rng, int depth) {
    auto leaf = [&]() -> regex {
        switch (rng() % 4) {
            case 0: return regex::match(char_cond::one_of({'a'}));
            case 1: return regex::match(char_cond::one_of({'b', 'c'}));
            case 2: return regex::match(char_cond::range('a', 'b'));
            default: return regex::empty();
        }
    };
    if (depth <= 0) return leaf();
    switch (rng() % 8) {
        case 0:
        case 1: return leaf();
        case 2: return regex::seq(random_typed(rng, depth - 1), random_typed(rng, depth - 1));
        case 3: return regex::alt(random_typed(rng, depth - 1), random_typed(rng, depth - 1));
        case 4: return regex::rep(random_typed(rng, depth - 1));
        case 5: return regex::group(random_typed(rng, depth - 1));
        default: {
            regex a = random_typed(rng, depth - 1);
            shape y = a.yields();
            return regex::conv(
                a, [](const parse_value& v) { return v; }, y);
        }
    }
}

/// All untyped regexes over {a, b, c} with the criterion constructor set
/// and at most `max_nodes` constructors.
inline std::vector<untyped_regex> enumerate_untyped(int max_nodes) {
    std::vector<std::vector<untyped_regex>> by_size(max_nodes + 1);
    by_size[1] = {untyped_regex::exactly('a'), untyped_regex::exactly('b'),
                  untyped_regex::exactly('c')};
    for (int n = 2; n <= max_nodes; ++n) {
        for (const auto& a : by_size[n - 1]) {
            by_size[n].push_back(untyped_regex::rep0(a));
            by_size[n].push_back(untyped_regex::optional(a));
            if (a.what() != untyped_regex::kind::keep)
                by_size[n].push_back(untyped_regex::keep(a));
        }
        for (int i = 1; i < n - 1; ++i)
            for (const auto& a : by_size[i])
                for (const auto& b : by_size[n - 1 - i]) {
                    by_size[n].push_back(untyped_regex::concat(a, b));
                    by_size[n].push_back(untyped_regex::alt(a, b));
                }
    }
    std::vector<untyped_regex> out;
    for (auto& bucket : by_size)
        for (auto& re : bucket) out.push_back(std::move(re));
    return out;
}

/// All strings over {a, b, c} up to the given length.
inline std::vector<std::string> enumerate_strings(int max_len) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : {'a', 'b', 'c'}) out.push_back(out[i] + c);
        begin = end;
    }
    return out;
}

/// All shape descriptors with at most `max_nodes` constructors over the
/// atoms {Unit, Char} and the combiners {Pair, Sum, Option, List}.
inline std::vector<shape> enumerate_shapes(int max_nodes) {
    std::vector<std::vector<shape>> by_size(max_nodes + 1);
    by_size[1] = {shape::unit(), shape::character()};
    for (int n = 2; n <= max_nodes; ++n) {
        for (const auto& a : by_size[n - 1]) {
            by_size[n].push_back(shape::option(a));
            by_size[n].push_back(shape::list(a));
        }
        for (int i = 1; i < n - 1; ++i)
            for (const auto& a : by_size[i])
                for (const auto& b : by_size[n - 1 - i]) {
                    by_size[n].push_back(shape::pair(a, b));
                    by_size[n].push_back(shape::sum(a, b));
                }
    }
    std::vector<shape> out;
    for (auto& bucket : by_size)
        for (auto& s : bucket) out.push_back(std::move(s));
    return out;
}

/// A random value conforming to `s`, for stack-shape property tests.
inline parse_value random_value(std::mt19937& rng, const shape& s) {
    using k = shape::kind;
    switch (s.what()) {
        case k::unit: return parse_value::unit();
        case k::character: return parse_value::character(static_cast<char>('a' + rng() % 26));
        case k::string: return parse_value::string(std::string(rng() % 4, 'x'));
        case k::natural: return parse_value::natural(rng() % 100);
        case k::boolean: return parse_value::boolean(rng() % 2 == 0);
        case k::pair:
            return parse_value::pair(random_value(rng, s.left()), random_value(rng, s.right()));
        case k::sum:
            return rng() % 2 ? parse_value::left(random_value(rng, s.left()))
                             : parse_value::right(random_value(rng, s.right()));
        case k::option:
            return rng() % 2 ? parse_value::left(random_value(rng, s.left()))
                             : parse_value::right(parse_value::unit());
        case k::list: {
            parse_value out = parse_value::empty_list();
            for (std::size_t i = 0, n = rng() % 4; i < n; ++i)
                out = out.snoc(random_value(rng, s.left()));
            return out;
        }
    }
    return parse_value::unit();
}

}  // namespace tyre::test
