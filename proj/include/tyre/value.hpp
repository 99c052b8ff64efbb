#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tyre/shape.hpp"

namespace tyre {

/// A dynamically typed parse-tree fragment. The runtime carrier for values
/// whose static type the descriptor in `shape` tracks. Immutable and cheaply
/// copyable; lists are left-nested chains so extending on the right is O(1)
/// and shares the prefix.
class parse_value {
public:
    enum class kind {
        unit,
        character,
        string,
        natural,
        boolean,
        pair,
        left,
        right,
        list,
    };

private:
    struct list_node;
    using list_link = std::shared_ptr<const list_node>;

    struct node {
        kind k;
        char c = 0;
        std::uint64_t n = 0;
        bool b = false;
        std::string s;
        std::shared_ptr<const node> fst;
        std::shared_ptr<const node> snd;
        list_link last;         // newest list element
        std::size_t length = 0; // list length
    };

    struct list_node {
        std::shared_ptr<const node> item;
        list_link prev;
    };

    std::shared_ptr<const node> n_;

    explicit parse_value(std::shared_ptr<const node> n) : n_(std::move(n)) {}

    static std::shared_ptr<node> mk(kind k) {
        auto p = std::make_shared<node>();
        p->k = k;
        return p;
    }

public:
    parse_value() : parse_value(unit()) {}

    static parse_value unit() {
        static const parse_value u{mk(kind::unit)};
        return u;
    }
    static parse_value character(char c) {
        auto p = mk(kind::character);
        p->c = c;
        return parse_value(std::move(p));
    }
    static parse_value string(std::string s) {
        auto p = mk(kind::string);
        p->s = std::move(s);
        return parse_value(std::move(p));
    }
    static parse_value natural(std::uint64_t n) {
        auto p = mk(kind::natural);
        p->n = n;
        return parse_value(std::move(p));
    }
    static parse_value boolean(bool b) {
        auto p = mk(kind::boolean);
        p->b = b;
        return parse_value(std::move(p));
    }
    static parse_value pair(parse_value a, parse_value b) {
        auto p = mk(kind::pair);
        p->fst = std::move(a.n_);
        p->snd = std::move(b.n_);
        return parse_value(std::move(p));
    }
    static parse_value left(parse_value a) {
        auto p = mk(kind::left);
        p->fst = std::move(a.n_);
        return parse_value(std::move(p));
    }
    static parse_value right(parse_value a) {
        auto p = mk(kind::right);
        p->fst = std::move(a.n_);
        return parse_value(std::move(p));
    }
    static parse_value empty_list() {
        static const parse_value e{mk(kind::list)};
        return e;
    }
    /// The list extended with `v` on the right; `*this` is unchanged.
    parse_value snoc(parse_value v) const {
        auto p = mk(kind::list);
        p->last = std::make_shared<list_node>(list_node{std::move(v.n_), n_->last});
        p->length = n_->length + 1;
        return parse_value(std::move(p));
    }
    static parse_value list_of(const std::vector<parse_value>& items) {
        parse_value out = empty_list();
        for (const auto& v : items) out = out.snoc(v);
        return out;
    }

    kind what() const { return n_->k; }
    bool is(kind k) const { return n_->k == k; }

    char as_char() const { return n_->c; }
    const std::string& as_string() const { return n_->s; }
    std::uint64_t as_natural() const { return n_->n; }
    bool as_bool() const { return n_->b; }
    parse_value first() const { return parse_value(n_->fst); }
    parse_value second() const { return parse_value(n_->snd); }
    /// Payload of a left/right injection.
    parse_value payload() const { return parse_value(n_->fst); }
    std::size_t list_length() const { return n_->length; }

    /// Materialises a list chain into left-to-right order.
    std::vector<parse_value> list_items() const {
        std::vector<parse_value> out(n_->length);
        std::size_t i = n_->length;
        for (const list_node* p = n_->last.get(); p; p = p->prev.get())
            out[--i] = parse_value(p->item);
        return out;
    }

    friend bool operator==(const parse_value& x, const parse_value& y) {
        if (x.n_ == y.n_) return true;
        if (x.n_->k != y.n_->k) return false;
        switch (x.n_->k) {
            case kind::unit: return true;
            case kind::character: return x.n_->c == y.n_->c;
            case kind::string: return x.n_->s == y.n_->s;
            case kind::natural: return x.n_->n == y.n_->n;
            case kind::boolean: return x.n_->b == y.n_->b;
            case kind::pair: return x.first() == y.first() && x.second() == y.second();
            case kind::left:
            case kind::right: return x.payload() == y.payload();
            case kind::list: {
                if (x.n_->length != y.n_->length) return false;
                const list_node* p = x.n_->last.get();
                const list_node* q = y.n_->last.get();
                while (p) {
                    if (!(parse_value(p->item) == parse_value(q->item))) return false;
                    p = p->prev.get();
                    q = q->prev.get();
                }
                return true;
            }
        }
        return false;
    }
    friend bool operator!=(const parse_value& x, const parse_value& y) { return !(x == y); }
};

/// Does `v` inhabit descriptor `s`? Options are encoded as sums: a left
/// injection carries the payload, a right unit marks absence.
inline bool conforms(const parse_value& v, const shape& s) {
    using vk = parse_value::kind;
    using sk = shape::kind;
    switch (s.what()) {
        case sk::unit: return v.is(vk::unit);
        case sk::character: return v.is(vk::character);
        case sk::string: return v.is(vk::string);
        case sk::natural: return v.is(vk::natural);
        case sk::boolean: return v.is(vk::boolean);
        case sk::pair:
            return v.is(vk::pair) && conforms(v.first(), s.left()) &&
                   conforms(v.second(), s.right());
        case sk::sum:
            if (v.is(vk::left)) return conforms(v.payload(), s.left());
            if (v.is(vk::right)) return conforms(v.payload(), s.right());
            return false;
        case sk::option:
            if (v.is(vk::left)) return conforms(v.payload(), s.left());
            if (v.is(vk::right)) return v.payload().is(vk::unit);
            return false;
        case sk::list: {
            if (!v.is(vk::list)) return false;
            for (const auto& item : v.list_items())
                if (!conforms(item, s.left())) return false;
            return true;
        }
    }
    return false;
}

/// Display form matching the execution-trace notation: () for unit, quoted
/// chars and strings, (a, b) pairs, Left/Right injections, [a, b] lists.
inline std::string to_string(const parse_value& v) {
    using vk = parse_value::kind;
    switch (v.what()) {
        case vk::unit: return "()";
        case vk::character: return std::string("'") + v.as_char() + "'";
        case vk::string: return "\"" + v.as_string() + "\"";
        case vk::natural: return std::to_string(v.as_natural());
        case vk::boolean: return v.as_bool() ? "true" : "false";
        case vk::pair: return "(" + to_string(v.first()) + ", " + to_string(v.second()) + ")";
        case vk::left: return "Left " + to_string(v.payload());
        case vk::right: return "Right " + to_string(v.payload());
        case vk::list: {
            std::string out = "[";
            bool sep = false;
            for (const auto& item : v.list_items()) {
                if (sep) out += ", ";
                out += to_string(item);
                sep = true;
            }
            return out + "]";
        }
    }
    return {};
}

}  // namespace tyre
