#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tyre {

/// A single-character condition guarding a transition: a sorted character
/// set, an inclusive range, or an opaque predicate. Predicates are never
/// considered equal, not even to themselves.
class char_cond {
public:
    enum class kind { one_of, range, pred };

private:
    struct node {
        kind k;
        std::vector<char> set;  // sorted, deduplicated
        char lo = 0, hi = 0;
        std::function<bool(char)> fn;
    };

    std::shared_ptr<const node> n_;

    explicit char_cond(std::shared_ptr<node> n) : n_(std::move(n)) {}

public:
    static char_cond one_of(std::vector<char> cs) {
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        auto p = std::make_shared<node>();
        p->k = kind::one_of;
        p->set = std::move(cs);
        return char_cond(std::move(p));
    }
    static char_cond range(char lo, char hi) {
        auto p = std::make_shared<node>();
        p->k = kind::range;
        p->lo = lo;
        p->hi = hi;
        return char_cond(std::move(p));
    }
    static char_cond pred(std::function<bool(char)> fn) {
        auto p = std::make_shared<node>();
        p->k = kind::pred;
        p->fn = std::move(fn);
        return char_cond(std::move(p));
    }
    /// Matches any character.
    static char_cond any() {
        return pred([](char) { return true; });
    }

    kind what() const { return n_->k; }
    const std::vector<char>& set() const { return n_->set; }
    char lo() const { return n_->lo; }
    char hi() const { return n_->hi; }
    const std::function<bool(char)>& fn() const { return n_->fn; }
};

inline bool satisfies(const char_cond& cond, char c) {
    switch (cond.what()) {
        case char_cond::kind::one_of: {
            const auto& s = cond.set();
            return std::binary_search(s.begin(), s.end(), c);
        }
        case char_cond::kind::range:
            return cond.lo() <= c && c <= cond.hi();
        case char_cond::kind::pred:
            return cond.fn()(c);
    }
    return false;
}

/// Decidable guard equality: sets by content, ranges by endpoints, and any
/// comparison touching a predicate or mixing constructors is false.
inline bool cond_equal(const char_cond& a, const char_cond& b) {
    if (a.what() != b.what()) return false;
    switch (a.what()) {
        case char_cond::kind::one_of: return a.set() == b.set();
        case char_cond::kind::range: return a.lo() == b.lo() && a.hi() == b.hi();
        case char_cond::kind::pred: return false;
    }
    return false;
}

/// Guard rendering for machine dumps: set members verbatim, "lo-hi" for
/// ranges, "<pred>" for opaque predicates.
inline std::string to_string(const char_cond& cond) {
    switch (cond.what()) {
        case char_cond::kind::one_of: return std::string(cond.set().begin(), cond.set().end());
        case char_cond::kind::range: return std::string{cond.lo(), '-', cond.hi()};
        case char_cond::kind::pred: return "<pred>";
    }
    return {};
}

}  // namespace tyre
