#pragma once

#include <cassert>
#include <memory>
#include <string>
#include <vector>

namespace tyre {

/// Describes the type of the parse tree a regex produces: an atom
/// (unit/char/string/nat/bool) or a composite (pair/sum/option/list).
/// Immutable; copies share structure.
class shape {
public:
    enum class kind {
        unit,
        character,
        string,
        natural,
        boolean,
        pair,
        sum,
        option,
        list,
    };

private:
    struct node {
        kind k;
        std::shared_ptr<const node> a;
        std::shared_ptr<const node> b;
    };

    std::shared_ptr<const node> n_;

    explicit shape(std::shared_ptr<const node> n) : n_(std::move(n)) {}

    static const std::shared_ptr<const node>& atom(kind k) {
        static const std::shared_ptr<const node> atoms[] = {
            std::make_shared<node>(node{kind::unit, nullptr, nullptr}),
            std::make_shared<node>(node{kind::character, nullptr, nullptr}),
            std::make_shared<node>(node{kind::string, nullptr, nullptr}),
            std::make_shared<node>(node{kind::natural, nullptr, nullptr}),
            std::make_shared<node>(node{kind::boolean, nullptr, nullptr}),
        };
        return atoms[static_cast<int>(k)];
    }

public:
    static shape unit() { return shape(atom(kind::unit)); }
    static shape character() { return shape(atom(kind::character)); }
    static shape string() { return shape(atom(kind::string)); }
    static shape natural() { return shape(atom(kind::natural)); }
    static shape boolean() { return shape(atom(kind::boolean)); }
    static shape pair(const shape& a, const shape& b) {
        return shape(std::make_shared<node>(node{kind::pair, a.n_, b.n_}));
    }
    static shape sum(const shape& a, const shape& b) {
        return shape(std::make_shared<node>(node{kind::sum, a.n_, b.n_}));
    }
    static shape option(const shape& a) {
        return shape(std::make_shared<node>(node{kind::option, a.n_, nullptr}));
    }
    static shape list(const shape& a) {
        return shape(std::make_shared<node>(node{kind::list, a.n_, nullptr}));
    }

    kind what() const { return n_->k; }
    bool is(kind k) const { return n_->k == k; }
    bool is_unit() const { return is(kind::unit); }

    /// First child (pair/sum left, option/list payload).
    shape left() const {
        assert(n_->a);
        return shape(n_->a);
    }
    /// Second child (pair/sum right).
    shape right() const {
        assert(n_->b);
        return shape(n_->b);
    }

    friend bool operator==(const shape& x, const shape& y) {
        if (x.n_ == y.n_) return true;  // shared-structure fast path
        if (x.n_->k != y.n_->k) return false;
        switch (x.n_->k) {
            case kind::pair:
            case kind::sum:
                return x.left() == y.left() && x.right() == y.right();
            case kind::option:
            case kind::list:
                return x.left() == y.left();
            default:
                return true;
        }
    }
    friend bool operator!=(const shape& x, const shape& y) { return !(x == y); }
};

/// Rewrites a descriptor bottom-up, to a fixpoint, with the unit-elimination
/// rules: (Unit,Unit) and one-sided unit pairs collapse, List Unit becomes
/// Nat, Sum Unit Unit becomes Bool, a one-sided unit sum becomes Option,
/// and Option(List a) becomes List a (absent maps to the empty list).
inline shape simplify(const shape& s) {
    using k = shape::kind;
    switch (s.what()) {
        case k::pair: {
            shape a = simplify(s.left());
            shape b = simplify(s.right());
            if (a.is_unit() && b.is_unit()) return shape::unit();
            if (b.is_unit()) return a;
            if (a.is_unit()) return b;
            return shape::pair(a, b);
        }
        case k::sum: {
            shape a = simplify(s.left());
            shape b = simplify(s.right());
            if (a.is_unit() && b.is_unit()) return shape::boolean();
            if (b.is_unit()) return simplify(shape::option(a));
            if (a.is_unit()) return simplify(shape::option(b));
            return shape::sum(a, b);
        }
        case k::option: {
            shape a = simplify(s.left());
            if (a.is(k::list)) return a;
            return shape::option(a);
        }
        case k::list: {
            shape a = simplify(s.left());
            if (a.is_unit()) return shape::natural();
            return shape::list(a);
        }
        default:
            return s;
    }
}

/// Renders a descriptor as e.g. "Option(Pair(Nat, List(Char)))".
inline std::string to_string(const shape& s) {
    using k = shape::kind;
    switch (s.what()) {
        case k::unit: return "Unit";
        case k::character: return "Char";
        case k::string: return "String";
        case k::natural: return "Nat";
        case k::boolean: return "Bool";
        case k::pair: return "Pair(" + to_string(s.left()) + ", " + to_string(s.right()) + ")";
        case k::sum: return "Sum(" + to_string(s.left()) + ", " + to_string(s.right()) + ")";
        case k::option: return "Option(" + to_string(s.left()) + ")";
        case k::list: return "List(" + to_string(s.left()) + ")";
    }
    return {};
}

/// A stack shape: one descriptor per stack slot, bottom first.
using stack_shape = std::vector<shape>;

inline std::string to_string(const stack_shape& ss) {
    std::string out = "[<";
    for (std::size_t i = 0; i < ss.size(); ++i) {
        out += i == 0 ? " " : ", ";
        out += to_string(ss[i]);
    }
    out += "]";
    return out;
}

}  // namespace tyre
