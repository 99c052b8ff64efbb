#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tyre/core.hpp"
#include "tyre/error.hpp"
#include "tyre/shape.hpp"

namespace tyre {

/// The literal-level regex: what a regex string denotes before any typing.
/// Keep marks select the sub-regexes that contribute parse-tree structure.
/// Immutable, structurally shared.
class untyped_regex {
public:
    enum class kind {
        exactly,
        one_of,
        to,
        any,
        concat,
        alt,
        optional,
        rep0,
        rep1,
        keep,
        epsilon,
    };

private:
    struct node {
        kind k;
        char c = 0, lo = 0, hi = 0;
        std::vector<char> set;  // sorted, unique
        std::shared_ptr<const node> a, b;
        bool has_keep = false;
    };

    std::shared_ptr<const node> n_;

    explicit untyped_regex(std::shared_ptr<const node> n) : n_(std::move(n)) {}

    static untyped_regex wrap(kind k, const untyped_regex& a) {
        auto p = std::make_shared<node>();
        p->k = k;
        p->a = a.n_;
        p->has_keep = k == kind::keep || a.contains_keep();
        return untyped_regex(std::move(p));
    }

public:
    static untyped_regex exactly(char c) {
        auto p = std::make_shared<node>();
        p->k = kind::exactly;
        p->c = c;
        return untyped_regex(std::move(p));
    }
    static untyped_regex one_of(std::vector<char> cs) {
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        auto p = std::make_shared<node>();
        p->k = kind::one_of;
        p->set = std::move(cs);
        return untyped_regex(std::move(p));
    }
    static untyped_regex to(char lo, char hi) {
        assert(lo <= hi);
        auto p = std::make_shared<node>();
        p->k = kind::to;
        p->lo = lo;
        p->hi = hi;
        return untyped_regex(std::move(p));
    }
    static untyped_regex any() {
        auto p = std::make_shared<node>();
        p->k = kind::any;
        return untyped_regex(std::move(p));
    }
    static untyped_regex epsilon() {
        auto p = std::make_shared<node>();
        p->k = kind::epsilon;
        return untyped_regex(std::move(p));
    }
    static untyped_regex concat(const untyped_regex& a, const untyped_regex& b) {
        auto p = std::make_shared<node>();
        p->k = kind::concat;
        p->a = a.n_;
        p->b = b.n_;
        p->has_keep = a.contains_keep() || b.contains_keep();
        return untyped_regex(std::move(p));
    }
    static untyped_regex alt(const untyped_regex& a, const untyped_regex& b) {
        auto p = std::make_shared<node>();
        p->k = kind::alt;
        p->a = a.n_;
        p->b = b.n_;
        p->has_keep = a.contains_keep() || b.contains_keep();
        return untyped_regex(std::move(p));
    }
    static untyped_regex optional(const untyped_regex& a) { return wrap(kind::optional, a); }
    static untyped_regex rep0(const untyped_regex& a) { return wrap(kind::rep0, a); }
    static untyped_regex rep1(const untyped_regex& a) { return wrap(kind::rep1, a); }
    /// Keep is idempotent: keeping a kept regex is the kept regex.
    static untyped_regex keep(const untyped_regex& a) {
        if (a.what() == kind::keep) return a;
        return wrap(kind::keep, a);
    }

    kind what() const { return n_->k; }
    char ch() const { return n_->c; }
    char lo() const { return n_->lo; }
    char hi() const { return n_->hi; }
    const std::vector<char>& set() const { return n_->set; }
    untyped_regex left() const { return untyped_regex(n_->a); }
    untyped_regex right() const { return untyped_regex(n_->b); }
    untyped_regex inner() const { return untyped_regex(n_->a); }
    bool contains_keep() const { return n_->has_keep; }

    friend bool operator==(const untyped_regex& x, const untyped_regex& y) {
        if (x.n_ == y.n_) return true;
        if (x.n_->k != y.n_->k) return false;
        switch (x.n_->k) {
            case kind::exactly: return x.ch() == y.ch();
            case kind::one_of: return x.set() == y.set();
            case kind::to: return x.lo() == y.lo() && x.hi() == y.hi();
            case kind::any:
            case kind::epsilon: return true;
            case kind::concat:
            case kind::alt: return x.left() == y.left() && x.right() == y.right();
            default: return x.inner() == y.inner();
        }
    }
    friend bool operator!=(const untyped_regex& x, const untyped_regex& y) { return !(x == y); }
};

namespace detail {

/// Recursive-descent parser for the literal grammar. Alternation binds
/// loosest, then concatenation, then the postfix operators ? * + !, which
/// attach to the immediately preceding atom or parenthesised group.
/// A backslash makes the next character literal.
class literal_parser {
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
        throw malformed_literal(at, msg);
    }
    bool done() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    static bool is_postfix(char c) { return c == '?' || c == '*' || c == '+' || c == '!'; }

    char class_char() {
        if (done()) fail(pos_, "unbalanced brackets");
        char c = src_[pos_++];
        if (c == '\\') {
            if (done()) fail(pos_ - 1, "trailing backslash");
            return src_[pos_++];
        }
        return c;
    }

    untyped_regex bracket_class() {
        std::size_t open = pos_ - 1;
        if (!done() && peek() == ']') fail(open, "empty bracket class");
        std::vector<std::pair<char, char>> ranges;
        std::vector<char> singles;
        while (true) {
            if (done()) fail(open, "unbalanced brackets");
            if (peek() == ']') {
                ++pos_;
                break;
            }
            if (peek() == '-') fail(pos_, "bad range");
            char c1 = class_char();
            if (!done() && peek() == '-') {
                std::size_t dash = pos_++;
                if (done()) fail(open, "unbalanced brackets");
                if (peek() == ']') fail(dash, "bad range");
                char c2 = class_char();
                if (c1 > c2) fail(dash, "bad range");
                ranges.emplace_back(c1, c2);
            } else {
                singles.push_back(c1);
            }
        }
        if (singles.empty() && ranges.size() == 1)
            return untyped_regex::to(ranges[0].first, ranges[0].second);
        for (auto [lo, hi] : ranges)
            for (int c = lo; c <= hi; ++c) singles.push_back(static_cast<char>(c));
        return untyped_regex::one_of(std::move(singles));
    }

    untyped_regex atom() {
        char c = src_[pos_++];
        switch (c) {
            case '(': {
                std::size_t open = pos_ - 1;
                untyped_regex inner = alternation();
                if (done() || peek() != ')') fail(open, "unbalanced parenthesis");
                ++pos_;
                return inner;
            }
            case '[': return bracket_class();
            case '.': return untyped_regex::any();
            case '\\':
                if (done()) fail(pos_ - 1, "trailing backslash");
                return untyped_regex::exactly(src_[pos_++]);
            case ')': fail(pos_ - 1, "unbalanced parenthesis");
            case ']': fail(pos_ - 1, "unbalanced brackets");
            default:
                if (is_postfix(c)) fail(pos_ - 1, "dangling postfix operator");
                return untyped_regex::exactly(c);
        }
    }

    untyped_regex postfixed() {
        untyped_regex re = atom();
        while (!done() && is_postfix(peek())) {
            switch (src_[pos_++]) {
                case '?': re = untyped_regex::optional(re); break;
                case '*': re = untyped_regex::rep0(re); break;
                case '+': re = untyped_regex::rep1(re); break;
                case '!': re = untyped_regex::keep(re); break;
            }
        }
        return re;
    }

    bool at_sequence_end() const { return done() || peek() == '|' || peek() == ')'; }

    untyped_regex sequence() {
        if (at_sequence_end()) return untyped_regex::epsilon();
        std::vector<untyped_regex> parts;
        while (!at_sequence_end()) parts.push_back(postfixed());
        untyped_regex re = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;)
            re = untyped_regex::concat(parts[i], re);
        return re;
    }

    untyped_regex alternation() {
        untyped_regex lhs = sequence();
        if (!done() && peek() == '|') {
            ++pos_;
            return untyped_regex::alt(lhs, alternation());
        }
        return lhs;
    }

public:
    explicit literal_parser(std::string_view src) : src_(src) {}

    untyped_regex parse() {
        untyped_regex re = alternation();
        if (!done()) fail(pos_, "unbalanced parenthesis");
        return re;
    }
};

}  // namespace detail

/// Parses a regex string literal into an untyped regex. The empty literal
/// denotes the empty-word regex.
inline untyped_regex parse_literal(std::string_view text) {
    return detail::literal_parser(text).parse();
}

/// The parse-tree shape of a kept sub-regex: character classes contribute
/// chars, concatenation pairs, alternation sums, repetition lists, with
/// unit elimination applied at every level.
inline shape keep_shape(const untyped_regex& re) {
    using k = untyped_regex::kind;
    switch (re.what()) {
        case k::exactly:
        case k::epsilon: return shape::unit();
        case k::one_of:
        case k::to:
        case k::any: return shape::character();
        case k::concat:
            return simplify(shape::pair(keep_shape(re.left()), keep_shape(re.right())));
        case k::alt:
            return simplify(shape::sum(keep_shape(re.left()), keep_shape(re.right())));
        case k::optional: return simplify(shape::option(keep_shape(re.inner())));
        case k::rep0:
        case k::rep1: return simplify(shape::list(keep_shape(re.inner())));
        case k::keep: return keep_shape(re.inner());
    }
    return shape::unit();
}

/// The parse-tree shape of a literal regex: every sub-regex without a keep
/// mark flattens to unit; structure around kept parts survives, simplified.
inline shape literal_shape(const untyped_regex& re) {
    using k = untyped_regex::kind;
    if (!re.contains_keep()) return shape::unit();
    switch (re.what()) {
        case k::concat:
            return simplify(shape::pair(literal_shape(re.left()), literal_shape(re.right())));
        case k::alt:
            return simplify(shape::sum(literal_shape(re.left()), literal_shape(re.right())));
        case k::optional: return simplify(shape::option(literal_shape(re.inner())));
        case k::rep0:
        case k::rep1: return simplify(shape::list(literal_shape(re.inner())));
        case k::keep: return keep_shape(re.inner());
        default: return shape::unit();  // leaves carry no keep
    }
}

/// Renders with full parenthesisation; parsing the result reproduces the
/// regex exactly.
inline std::string render(const untyped_regex& re) {
    using k = untyped_regex::kind;
    auto esc = [](char c) {
        static const std::string specials = "()[]|?*+.!\\";
        std::string out;
        if (specials.find(c) != std::string::npos) out += '\\';
        out += c;
        return out;
    };
    auto esc_class = [](char c) {
        std::string out;
        if (c == ']' || c == '-' || c == '\\') out += '\\';
        out += c;
        return out;
    };
    switch (re.what()) {
        case k::exactly: return esc(re.ch());
        case k::one_of: {
            std::string out = "[";
            for (char c : re.set()) out += esc_class(c);
            return out + "]";
        }
        case k::to:
            return "[" + esc_class(re.lo()) + "-" + esc_class(re.hi()) + "]";
        case k::any: return ".";
        case k::epsilon: return "()";
        case k::concat: return "(" + render(re.left()) + ")(" + render(re.right()) + ")";
        case k::alt: return "(" + render(re.left()) + ")|(" + render(re.right()) + ")";
        case k::optional: return "(" + render(re.inner()) + ")?";
        case k::rep0: return "(" + render(re.inner()) + ")*";
        case k::rep1: return "(" + render(re.inner()) + ")+";
        case k::keep: return "(" + render(re.inner()) + ")!";
    }
    return {};
}

namespace detail {

inline parse_value const_unit(const parse_value&) { return parse_value::unit(); }

inline char_cond cond_of(const untyped_regex& re) {
    switch (re.what()) {
        case untyped_regex::kind::one_of: return char_cond::one_of(re.set());
        case untyped_regex::kind::to: return char_cond::range(re.lo(), re.hi());
        default: return char_cond::any();
    }
}

inline regex to_unit(const regex& re) {
    return regex::conv(re, const_unit, shape::unit());
}

/// Language-preserving lowering of a keep-free sub-regex; the whole subtree
/// parses as unit.
inline regex lower_unit(const untyped_regex& re) {
    using k = untyped_regex::kind;
    switch (re.what()) {
        case k::exactly: return to_unit(regex::match(char_cond::one_of({re.ch()})));
        case k::one_of:
        case k::to:
        case k::any: return to_unit(regex::match(cond_of(re)));
        case k::epsilon: return regex::empty();
        case k::concat:
            return to_unit(regex::seq(lower_unit(re.left()), lower_unit(re.right())));
        case k::alt:
            return to_unit(regex::alt(lower_unit(re.left()), lower_unit(re.right())));
        case k::optional: return to_unit(regex::alt(lower_unit(re.inner()), regex::empty()));
        case k::rep0: return to_unit(regex::rep(lower_unit(re.inner())));
        case k::rep1: {
            regex one = lower_unit(re.inner());
            return to_unit(regex::seq(one, regex::rep(one)));
        }
        case k::keep: break;  // unreachable: caller checked contains_keep
    }
    return regex::empty();
}

/// Rewrites a pair whose components were already simplified, realising the
/// unit-elimination rules as conversions.
inline regex simplify_pair(const regex& s) {
    shape a = s.yields().left(), b = s.yields().right();
    if (a.is_unit() && b.is_unit()) return regex::conv(s, const_unit, shape::unit());
    if (b.is_unit())
        return regex::conv(s, [](const parse_value& v) { return v.first(); }, a);
    if (a.is_unit())
        return regex::conv(s, [](const parse_value& v) { return v.second(); }, b);
    return s;
}

/// Rewrites a regex yielding sum(payload, unit) into its option form: lists
/// absorb the absent arm as the empty list, anything else keeps the sum
/// encoding under an option descriptor.
inline regex option_form(const regex& s, const shape& payload) {
    if (payload.is(shape::kind::list))
        return regex::conv(
            s,
            [](const parse_value& v) {
                return v.is(parse_value::kind::left) ? v.payload() : parse_value::empty_list();
            },
            payload);
    return regex::conv(
        s, [](const parse_value& v) { return v; }, shape::option(payload));
}

/// Rewrites an alternation sum per the simplification rules: two unit arms
/// become a boolean (left is true), a single unit arm becomes an option of
/// the other.
inline regex simplify_sum(const regex& s) {
    shape a = s.yields().left(), b = s.yields().right();
    if (a.is_unit() && b.is_unit())
        return regex::conv(
            s,
            [](const parse_value& v) {
                return parse_value::boolean(v.is(parse_value::kind::left));
            },
            shape::boolean());
    if (b.is_unit()) return option_form(s, a);
    if (a.is_unit()) {
        if (b.is(shape::kind::list))
            return regex::conv(
                s,
                [](const parse_value& v) {
                    return v.is(parse_value::kind::right) ? v.payload()
                                                          : parse_value::empty_list();
                },
                b);
        return regex::conv(
            s,
            [](const parse_value& v) {
                return v.is(parse_value::kind::left)
                           ? parse_value::right(parse_value::unit())
                           : parse_value::left(v.payload());
            },
            shape::option(b));
    }
    return s;
}

/// Rewrites a list of units into its length.
inline regex simplify_list(const regex& s) {
    if (!s.yields().left().is_unit()) return s;
    return regex::conv(
        s, [](const parse_value& v) { return parse_value::natural(v.list_length()); },
        shape::natural());
}

inline regex lower(const untyped_regex& re, bool kept) {
    using k = untyped_regex::kind;
    if (!kept && !re.contains_keep()) return lower_unit(re);
    switch (re.what()) {
        case k::keep: return lower(re.inner(), true);
        case k::exactly: return to_unit(regex::match(char_cond::one_of({re.ch()})));
        case k::one_of:
        case k::to:
        case k::any: return regex::match(cond_of(re));
        case k::epsilon: return regex::empty();
        case k::concat:
            return simplify_pair(regex::seq(lower(re.left(), kept), lower(re.right(), kept)));
        case k::alt:
            return simplify_sum(regex::alt(lower(re.left(), kept), lower(re.right(), kept)));
        case k::optional: {
            regex a = lower(re.inner(), kept);
            return option_form(regex::alt(a, regex::empty()), a.yields());
        }
        case k::rep0: return simplify_list(regex::rep(lower(re.inner(), kept)));
        case k::rep1: {
            regex a = lower(re.inner(), kept);
            regex both = regex::seq(a, regex::rep(a));
            shape out = shape::list(a.yields());
            regex lst = regex::conv(
                both,
                [](const parse_value& v) {
                    parse_value out = parse_value::empty_list().snoc(v.first());
                    for (const auto& item : v.second().list_items()) out = out.snoc(item);
                    return out;
                },
                out);
            return simplify_list(lst);
        }
    }
    return regex::empty();
}

}  // namespace detail

/// Lowers an untyped regex into the core typed regex realising its shape;
/// each simplification step becomes a conversion node.
inline regex to_typed(const untyped_regex& re) { return detail::lower(re, false); }

/// Parses and lowers a regex literal, returning its simplified shape and a
/// typed regex whose parse results conform to it.
inline std::pair<shape, regex> compile_literal(std::string_view text) {
    untyped_regex re = parse_literal(text);
    regex typed = to_typed(re);
    return {typed.yields(), typed};
}

}  // namespace tyre
