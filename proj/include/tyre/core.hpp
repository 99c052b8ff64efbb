#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "tyre/cond.hpp"
#include "tyre/error.hpp"
#include "tyre/shape.hpp"
#include "tyre/value.hpp"

namespace tyre {

using unary_conv = std::function<parse_value(const parse_value&)>;
using binary_conv = std::function<parse_value(const parse_value&, const parse_value&)>;

/// The core typed regex. Every node is annotated with the descriptor of the
/// parse tree it yields: sequencing yields a pair, alternation a sum,
/// repetition a left-nested list, grouping the matched sub-string, and a
/// conversion node rewrites the yield through an opaque function.
///
/// Values are immutable after construction and can be shared freely between
/// threads. Conversion functions must be side-effect-free.
class regex {
public:
    enum class kind { empty, match_char, seq, alt, rep, conv, group };

private:
    struct node {
        kind k;
        shape yield;
        std::shared_ptr<const node> a;
        std::shared_ptr<const node> b;
        std::shared_ptr<const char_cond> cond;
        unary_conv fn;
    };

    std::shared_ptr<const node> n_;

    explicit regex(std::shared_ptr<const node> n) : n_(std::move(n)) {}

    static std::shared_ptr<node> mk(kind k, shape y) {
        auto p = std::make_shared<node>(node{k, std::move(y), nullptr, nullptr, nullptr, {}});
        return p;
    }

public:
    static regex empty() { return regex(mk(kind::empty, shape::unit())); }

    static regex match(char_cond cond) {
        auto p = mk(kind::match_char, shape::character());
        p->cond = std::make_shared<char_cond>(std::move(cond));
        return regex(std::move(p));
    }

    /// Concatenation; yields the pair of both parse trees.
    static regex seq(const regex& a, const regex& b) {
        auto p = mk(kind::seq, shape::pair(a.yields(), b.yields()));
        p->a = a.n_;
        p->b = b.n_;
        return regex(std::move(p));
    }

    /// Alternation; yields a sum tagging which branch matched.
    static regex alt(const regex& a, const regex& b) {
        auto p = mk(kind::alt, shape::sum(a.yields(), b.yields()));
        p->a = a.n_;
        p->b = b.n_;
        return regex(std::move(p));
    }

    /// Kleene star; yields the list of iteration parse trees.
    static regex rep(const regex& a) {
        auto p = mk(kind::rep, shape::list(a.yields()));
        p->a = a.n_;
        return regex(std::move(p));
    }

    /// Shape transformation: same language, parse tree mapped through `fn`
    /// whose codomain descriptor must be declared.
    static regex conv(const regex& a, unary_conv fn, shape codomain) {
        auto p = mk(kind::conv, std::move(codomain));
        p->a = a.n_;
        p->fn = std::move(fn);
        return regex(std::move(p));
    }

    /// Forfeit structured parsing: yields the matched sub-string. The
    /// machine for a group is minimised, which may make it much smaller.
    static regex group(const regex& a) {
        auto p = mk(kind::group, shape::string());
        p->a = a.n_;
        return regex(std::move(p));
    }

    kind what() const { return n_->k; }
    const shape& yields() const { return n_->yield; }
    regex inner() const { return regex(n_->a); }
    regex left() const { return regex(n_->a); }
    regex right() const { return regex(n_->b); }
    const char_cond& cond() const { return *n_->cond; }
    const unary_conv& fn() const { return n_->fn; }
};

/// True when every match consumes at least one character.
inline bool is_consuming(const regex& re) {
    switch (re.what()) {
        case regex::kind::empty: return false;
        case regex::kind::match_char: return true;
        case regex::kind::seq: return is_consuming(re.left()) || is_consuming(re.right());
        case regex::kind::alt: return is_consuming(re.left()) && is_consuming(re.right());
        case regex::kind::rep: return false;
        case regex::kind::conv:
        case regex::kind::group: return is_consuming(re.inner());
    }
    return false;
}

// Smart constructors mirroring the combinator surface.

/// Functor map: declare the codomain descriptor of `fn`.
inline regex map(unary_conv fn, shape codomain, const regex& re) {
    return regex::conv(re, std::move(fn), std::move(codomain));
}

/// Uniform alternation: both branches must have the same shape and the
/// result does not track which branch matched.
inline regex or_else(const regex& a, const regex& b) {
    if (a.yields() != b.yields())
        throw shape_mismatch("or: branch shapes differ: " + to_string(a.yields()) + " vs " +
                             to_string(b.yields()));
    shape y = a.yields();
    return regex::conv(
        regex::alt(a, b), [](const parse_value& v) { return v.payload(); }, y);
}

inline regex seq(const regex& a, const regex& b) { return regex::seq(a, b); }

/// Sequencing that discards the first parse tree.
inline regex discard_left(const regex& a, const regex& b) {
    shape y = b.yields();
    return regex::conv(
        regex::seq(a, b), [](const parse_value& v) { return v.second(); }, y);
}

/// Match exactly `c`, yielding unit.
inline regex match_char(char c) {
    return regex::conv(
        regex::match(char_cond::one_of({c})),
        [](const parse_value&) { return parse_value::unit(); }, shape::unit());
}

/// A decimal digit, as its numeric value.
inline regex digit() {
    return regex::conv(
        regex::match(char_cond::range('0', '9')),
        [](const parse_value& v) {
            return parse_value::natural(static_cast<std::uint64_t>(v.as_char() - '0'));
        },
        shape::natural());
}

/// Match the string verbatim, yielding unit.
inline regex text(const std::string& s) {
    regex out = regex::empty();
    bool first = true;
    for (char c : s) {
        out = first ? match_char(c) : discard_left(out, match_char(c));
        first = false;
    }
    return out;
}

inline regex rep0(const regex& re) { return regex::rep(re); }

/// Drop the parse-tree structure and return the matched sub-string; the
/// machine behind it is minimised.
inline regex ignore(const regex& re) { return regex::group(re); }

}  // namespace tyre
