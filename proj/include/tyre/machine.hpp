#pragma once

#include <cassert>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tyre/cond.hpp"
#include "tyre/core.hpp"
#include "tyre/error.hpp"
#include "tyre/shape.hpp"
#include "tyre/value.hpp"

namespace tyre {

/// The per-thread value stack. Left-nested and persistent: push, pop and
/// copy are O(1), and copies share structure, so a thread can be forked on
/// every transition without touching the values below the top.
class value_stack {
    struct node {
        parse_value v;
        std::shared_ptr<const node> below;
        std::size_t depth;
    };
    std::shared_ptr<const node> top_;

    explicit value_stack(std::shared_ptr<const node> top) : top_(std::move(top)) {}

public:
    value_stack() = default;

    bool empty() const { return !top_; }
    std::size_t depth() const { return top_ ? top_->depth : 0; }
    const parse_value& top() const {
        assert(top_);
        return top_->v;
    }
    value_stack push(parse_value v) const {
        return value_stack(
            std::make_shared<node>(node{std::move(v), top_, depth() + 1}));
    }
    value_stack pop() const {
        assert(top_);
        return value_stack(top_->below);
    }
    /// Bottom-first contents.
    std::vector<parse_value> items() const {
        std::vector<parse_value> out(depth());
        std::size_t i = depth();
        for (const node* p = top_.get(); p; p = p->below.get()) out[--i] = p->v;
        return out;
    }
};

/// The recorded-character buffer, persistent for the same reason.
class char_chain {
    struct node {
        char c;
        std::shared_ptr<const node> prev;
    };
    std::shared_ptr<const node> last_;
    std::size_t len_ = 0;

    char_chain(std::shared_ptr<const node> last, std::size_t len)
        : last_(std::move(last)), len_(len) {}

public:
    char_chain() = default;

    std::size_t size() const { return len_; }
    char_chain append(char c) const {
        return char_chain(std::make_shared<node>(node{c, last_}), len_ + 1);
    }
    std::string str() const {
        std::string out(len_, '\0');
        std::size_t i = len_;
        for (const node* p = last_.get(); p; p = p->prev.get()) out[--i] = p->c;
        return out;
    }
};

/// Everything a simulation thread owns: its value stack, the recording
/// buffer, and the record flag that tells the stepper to collect consumed
/// characters into the buffer.
struct thread_data {
    value_stack stack;
    char_chain recorded;
    bool rec = false;
};

// The instruction set labelling machine transitions. Each instruction
// carries its stack-shape delta so machines can be validated and execution
// can be checked against the declared contracts.

/// Pushes a fixed value.
struct push_instr {
    parse_value value;
    shape value_shape;
};
/// Pushes the currently consumed character.
struct push_char_instr {};
/// Pops the top two values y (top) and x and pushes fn(x, y).
struct reduce_pair_instr {
    binary_conv fn;
    shape lhs, rhs, out;
};
/// Maps the top of the stack.
struct transform_instr {
    unary_conv fn;
    shape in, out;
};
/// Pushes the recorded characters as a string, clears the buffer and lowers
/// the record flag.
struct emit_string_instr {};
/// Raises the record flag and starts collecting characters.
struct record_instr {};

using instruction = std::variant<push_instr, push_char_instr, reduce_pair_instr,
                                 transform_instr, emit_string_instr, record_instr>;
using instr_ptr = std::shared_ptr<const instruction>;

/// A routine in execution order.
using routine = std::vector<instr_ptr>;

inline const char* instruction_name(const instruction& i) {
    struct v {
        const char* operator()(const push_instr&) const { return "Push"; }
        const char* operator()(const push_char_instr&) const { return "PushChar"; }
        const char* operator()(const reduce_pair_instr&) const { return "ReducePair"; }
        const char* operator()(const transform_instr&) const { return "Transform"; }
        const char* operator()(const emit_string_instr&) const { return "EmitString"; }
        const char* operator()(const record_instr&) const { return "Record"; }
    };
    return std::visit(v{}, i);
}

/// A routine is an init routine when it never reads the current character,
/// so it can run before the machine has consumed anything.
inline bool is_init_routine(const routine& r) {
    for (const auto& i : r)
        if (std::holds_alternative<push_char_instr>(*i)) return false;
    return true;
}

/// Executes one instruction. `current` must be present when the instruction
/// is PushChar. In checked mode the stack is verified against the
/// instruction's declared pre-shape and a shape_violation is thrown on any
/// breach; otherwise the machine is trusted.
inline thread_data exec_instruction(const instruction& instr, std::optional<char> current,
                                    thread_data td, bool checked = false) {
    struct v {
        std::optional<char> current;
        thread_data& td;
        bool checked;

        void need(bool ok, const char* what) const {
            if (!ok) throw shape_violation(std::string("stack breaks contract of ") + what);
        }

        thread_data operator()(const push_instr& i) {
            if (checked) need(conforms(i.value, i.value_shape), "Push");
            td.stack = td.stack.push(i.value);
            return std::move(td);
        }
        thread_data operator()(const push_char_instr&) {
            if (!current) throw missing_char("PushChar before any character was consumed");
            td.stack = td.stack.push(parse_value::character(*current));
            return std::move(td);
        }
        thread_data operator()(const reduce_pair_instr& i) {
            if (checked) {
                need(td.stack.depth() >= 2, "ReducePair");
                need(conforms(td.stack.top(), i.rhs), "ReducePair");
                need(conforms(td.stack.pop().top(), i.lhs), "ReducePair");
            }
            parse_value y = td.stack.top();
            value_stack rest = td.stack.pop();
            parse_value x = rest.top();
            parse_value z = i.fn(x, y);
            if (checked) need(conforms(z, i.out), "ReducePair");
            td.stack = rest.pop().push(std::move(z));
            return std::move(td);
        }
        thread_data operator()(const transform_instr& i) {
            if (checked) {
                need(td.stack.depth() >= 1, "Transform");
                need(conforms(td.stack.top(), i.in), "Transform");
            }
            parse_value y = i.fn(td.stack.top());
            if (checked) need(conforms(y, i.out), "Transform");
            td.stack = td.stack.pop().push(std::move(y));
            return std::move(td);
        }
        thread_data operator()(const emit_string_instr&) {
            td.stack = td.stack.push(parse_value::string(td.recorded.str()));
            td.recorded = char_chain();
            td.rec = false;
            return std::move(td);
        }
        thread_data operator()(const record_instr&) {
            td.rec = true;
            td.recorded = char_chain();
            return std::move(td);
        }
    };
    return std::visit(v{current, td, checked}, instr);
}

/// Left-to-right fold of exec_instruction over the routine.
inline thread_data exec_routine(const routine& r, std::optional<char> current, thread_data td,
                                bool checked = false) {
    for (const auto& i : r) td = exec_instruction(*i, current, std::move(td), checked);
    return td;
}

/// Target of a transition or init entry: a state index, or accept.
inline constexpr int accept_state = -1;

struct init_entry {
    int target;
    routine r;
};

struct edge {
    char_cond guard;
    int target;
    routine r;
};

/// A routine-labelled NFA. Non-accepting states are 0..state_count-1 with a
/// stack shape each; the accepting state is distinguished, carries the
/// machine's yield as a one-slot stack shape, and has no outgoing edges.
struct moore_machine {
    int state_count = 0;
    std::vector<stack_shape> lookup;
    shape yield = shape::unit();
    std::vector<init_entry> init;
    std::vector<std::vector<edge>> next;

    stack_shape shape_of(int target) const {
        return target == accept_state ? stack_shape{yield} : lookup[target];
    }
};

namespace detail {

/// Symbolically runs a routine over stack shapes, checking each declared
/// contract. Returns the resulting shape or an error description.
inline bool simulate_routine(const routine& r, stack_shape cur, const stack_shape& want,
                             std::string& err) {
    for (const auto& ip : r) {
        const instruction& ins = *ip;
        if (const auto* p = std::get_if<push_instr>(&ins)) {
            if (!conforms(p->value, p->value_shape)) {
                err = "Push value does not conform to its declared shape";
                return false;
            }
            cur.push_back(p->value_shape);
        } else if (std::holds_alternative<push_char_instr>(ins)) {
            cur.push_back(shape::character());
        } else if (const auto* rp = std::get_if<reduce_pair_instr>(&ins)) {
            if (cur.size() < 2 || cur[cur.size() - 2] != rp->lhs || cur.back() != rp->rhs) {
                err = "ReducePair pre-shape mismatch";
                return false;
            }
            cur.pop_back();
            cur.back() = rp->out;
        } else if (const auto* t = std::get_if<transform_instr>(&ins)) {
            if (cur.empty() || cur.back() != t->in) {
                err = "Transform pre-shape mismatch";
                return false;
            }
            cur.back() = t->out;
        } else if (std::holds_alternative<emit_string_instr>(ins)) {
            cur.push_back(shape::string());
        }
        // record: no shape change
    }
    if (cur.size() != want.size()) {
        err = "routine post-shape has wrong depth";
        return false;
    }
    for (std::size_t i = 0; i < cur.size(); ++i)
        if (cur[i] != want[i]) {
            err = "routine post-shape mismatch at slot " + std::to_string(i);
            return false;
        }
    return true;
}

}  // namespace detail

/// Whole-machine static check: every routine must telescope from its
/// source shape to its target shape, init routines must be init-safe, and
/// all targets must be in range. An empty result means well-typed.
inline std::vector<std::string> validate_machine(const moore_machine& m) {
    std::vector<std::string> out;
    auto bad_target = [&](int t) { return t != accept_state && (t < 0 || t >= m.state_count); };

    if (static_cast<int>(m.lookup.size()) != m.state_count)
        out.push_back("lookup size differs from state_count");
    if (static_cast<int>(m.next.size()) != m.state_count)
        out.push_back("transition table size differs from state_count");

    std::string err;
    for (std::size_t i = 0; i < m.init.size(); ++i) {
        const auto& e = m.init[i];
        std::string where = "init[" + std::to_string(i) + "]: ";
        if (bad_target(e.target)) {
            out.push_back(where + "target out of range");
            continue;
        }
        if (!is_init_routine(e.r)) out.push_back(where + "routine contains PushChar");
        if (!detail::simulate_routine(e.r, {}, m.shape_of(e.target), err))
            out.push_back(where + err);
    }
    for (int s = 0; s < static_cast<int>(m.next.size()); ++s) {
        for (std::size_t i = 0; i < m.next[s].size(); ++i) {
            const auto& e = m.next[s][i];
            std::string where =
                "edge[" + std::to_string(s) + "][" + std::to_string(i) + "]: ";
            if (bad_target(e.target)) {
                out.push_back(where + "target out of range");
                continue;
            }
            if (s >= m.state_count) continue;
            if (!detail::simulate_routine(e.r, m.lookup[s], m.shape_of(e.target), err))
                out.push_back(where + err);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Construction-time representation. Routines are accumulated as persistent
// reversed chains so that appending one instruction to an existing routine
// is O(1) and shares the rest; freezing reverses them into vectors once.

class routine_chain {
    struct node {
        instr_ptr instr;
        std::shared_ptr<const node> prev;
    };
    std::shared_ptr<const node> last_;
    std::size_t len_ = 0;

    routine_chain(std::shared_ptr<const node> last, std::size_t len)
        : last_(std::move(last)), len_(len) {}

public:
    routine_chain() = default;

    static routine_chain of(std::initializer_list<instr_ptr> instrs) {
        routine_chain out;
        for (const auto& i : instrs) out = out.append(i);
        return out;
    }

    std::size_t size() const { return len_; }

    routine_chain append(instr_ptr i) const {
        return routine_chain(std::make_shared<node>(node{std::move(i), last_}), len_ + 1);
    }
    /// O(size): rebuilds the chain. Only ever used on short init routines.
    routine_chain prepend(instr_ptr i) const {
        routine out = freeze();
        routine_chain c;
        c = c.append(std::move(i));
        for (auto& p : out) c = c.append(std::move(p));
        return c;
    }
    /// this ++ suffix, costing O(|suffix|).
    routine_chain concat(const routine_chain& suffix) const {
        routine_chain out = *this;
        for (auto& p : suffix.freeze()) out = out.append(std::move(p));
        return out;
    }

    /// Execution order.
    routine freeze() const {
        routine out(len_);
        std::size_t i = len_;
        for (const node* p = last_.get(); p; p = p->prev.get()) out[--i] = p->instr;
        return out;
    }
};

/// Per-state stack shapes under construction: linked from the bottom so a
/// sub-machine's states can be re-based under a new bottom slot in O(1).
class shape_chain {
    struct node {
        shape s;
        std::shared_ptr<const node> up;
    };
    std::shared_ptr<const node> bottom_;
    std::size_t len_ = 0;

    shape_chain(std::shared_ptr<const node> bottom, std::size_t len)
        : bottom_(std::move(bottom)), len_(len) {}

public:
    shape_chain() = default;

    std::size_t size() const { return len_; }
    shape_chain prefixed(shape s) const {
        return shape_chain(std::make_shared<node>(node{std::move(s), bottom_}), len_ + 1);
    }
    stack_shape freeze() const {
        stack_shape out;
        out.reserve(len_);
        for (const node* p = bottom_.get(); p; p = p->up.get()) out.push_back(p->s);
        return out;
    }
};

struct builder_init {
    int target;
    routine_chain r;
};

struct builder_edge {
    char_cond guard;
    int target;
    routine_chain r;
};

struct machine_builder {
    int state_count = 0;
    std::vector<shape_chain> lookup;
    shape yield = shape::unit();
    std::vector<builder_init> init;
    std::vector<std::vector<builder_edge>> next;

    moore_machine freeze() const {
        moore_machine m;
        m.state_count = state_count;
        m.yield = yield;
        m.lookup.reserve(lookup.size());
        for (const auto& c : lookup) m.lookup.push_back(c.freeze());
        m.init.reserve(init.size());
        for (const auto& e : init) m.init.push_back({e.target, e.r.freeze()});
        m.next.resize(next.size());
        for (std::size_t s = 0; s < next.size(); ++s) {
            m.next[s].reserve(next[s].size());
            for (const auto& e : next[s]) m.next[s].push_back({e.guard, e.target, e.r.freeze()});
        }
        return m;
    }
};

}  // namespace tyre
