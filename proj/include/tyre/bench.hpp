#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tyre/compile.hpp"
#include "tyre/core.hpp"
#include "tyre/error.hpp"
#include "tyre/literal.hpp"
#include "tyre/run.hpp"

namespace tyre {

namespace detail {

inline untyped_regex concat_spine(std::size_t n, char c) {
    untyped_regex a = untyped_regex::exactly(c);
    untyped_regex re = a;
    for (std::size_t i = 1; i < n; ++i) re = untyped_regex::concat(a, re);
    return re;
}

/// a(|a)^{n-1}: the left-nested alternation spine of n branches.
inline untyped_regex alt_spine(std::size_t n) {
    untyped_regex a = untyped_regex::exactly('a');
    untyped_regex re = a;
    for (std::size_t i = 1; i < n; ++i) re = untyped_regex::alt(re, a);
    return re;
}

inline untyped_regex alt_balanced(std::size_t n) {
    if (n <= 1) return untyped_regex::exactly('a');
    return untyped_regex::alt(alt_balanced(n / 2), alt_balanced(n - n / 2));
}

}  // namespace detail

/// The regex/input generator behind the benchmark families:
///   concat               regex a^n, input a^n
///   star                 regex a*, input a^n
///   star2                regex ((a*c)|a)*b, input a^n b
///   alt                  regex a(|a)^{n-1} unbalanced, input "a"
///   alt-balanced         the balanced form of the same alternation
///   alt-grouped          the unbalanced alternation wrapped in a group
///   alt-balanced-grouped the balanced alternation wrapped in a group
inline std::pair<regex, std::string> bench_case(const std::string& family, std::size_t n) {
    using u = untyped_regex;
    if (family == "concat")
        return {to_typed(detail::concat_spine(n, 'a')), std::string(n, 'a')};
    if (family == "star")
        return {to_typed(u::rep0(u::exactly('a'))), std::string(n, 'a')};
    if (family == "star2") {
        u a = u::exactly('a');
        u inner = u::alt(u::concat(u::rep0(a), u::exactly('c')), a);
        u re = u::concat(u::rep0(inner), u::exactly('b'));
        return {to_typed(re), std::string(n, 'a') + "b"};
    }
    if (family == "alt") return {to_typed(detail::alt_spine(n)), "a"};
    if (family == "alt-balanced") return {to_typed(detail::alt_balanced(n)), "a"};
    if (family == "alt-grouped") return {ignore(to_typed(detail::alt_spine(n))), "a"};
    if (family == "alt-balanced-grouped")
        return {ignore(to_typed(detail::alt_balanced(n))), "a"};
    throw error("unknown bench family: " + family);
}

struct bench_row {
    std::string family;
    std::size_t n = 0;
    int sample = 0;
    std::int64_t compile_ns = 0;
    std::int64_t parse_ns = 0;
};

/// Times compilation and end-to-end parsing separately. Fast parses are
/// repeated internally until the measurement window is meaningful; the
/// reported time is per parse.
inline std::vector<bench_row> run_bench(const std::string& family,
                                        const std::vector<std::size_t>& sizes, int samples) {
    using clock = std::chrono::steady_clock;
    auto ns = [](clock::duration d) {
        return std::chrono::duration_cast<std::chrono::nanoseconds>(d).count();
    };

    std::vector<bench_row> rows;
    for (std::size_t n : sizes) {
        auto [re, input] = bench_case(family, n);
        for (int sample = 0; sample < samples; ++sample) {
            auto t0 = clock::now();
            moore_machine m = compile(re);
            auto t1 = clock::now();

            if (!run_full(m, input).has_value())  // warm-up, settles the allocator
                throw error("bench input unexpectedly rejected");

            auto t2 = clock::now();
            run_full(m, input);
            auto t3 = clock::now();
            std::int64_t parse_ns = ns(t3 - t2);
            if (parse_ns < 1'000'000) {
                int reps = static_cast<int>(4'000'000 / (parse_ns + 1000)) + 1;
                auto t4 = clock::now();
                for (int i = 0; i < reps; ++i) run_full(m, input);
                auto t5 = clock::now();
                parse_ns = ns(t5 - t4) / reps;
            }
            rows.push_back({family, n, sample, ns(t1 - t0), parse_ns});
        }
    }
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<bench_row>& rows) {
    out << "family,n,sample,compile_ns,parse_ns\n";
    for (const auto& r : rows)
        out << r.family << ',' << r.n << ',' << r.sample << ',' << r.compile_ns << ','
            << r.parse_ns << '\n';
}

}  // namespace tyre
