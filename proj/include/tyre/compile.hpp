#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "tyre/core.hpp"
#include "tyre/group.hpp"
#include "tyre/machine.hpp"

namespace tyre {
namespace detail {

inline instr_ptr mk_instr(instruction i) {
    return std::make_shared<const instruction>(std::move(i));
}

inline bool instr_equal(const instr_ptr& a, const instr_ptr& b) {
    if (a == b) return true;  // same interned instruction
    if (a->index() != b->index()) return false;
    if (const auto* p = std::get_if<push_instr>(a.get())) {
        const auto& q = std::get<push_instr>(*b);
        return p->value == q.value && p->value_shape == q.value_shape;
    }
    // Function-bearing instructions are opaque and never compare equal.
    if (std::holds_alternative<reduce_pair_instr>(*a)) return false;
    if (std::holds_alternative<transform_instr>(*a)) return false;
    return true;  // PushChar / EmitString / Record
}

inline bool routine_equal(const routine_chain& a, const routine_chain& b) {
    if (a.size() != b.size()) return false;
    routine ra = a.freeze(), rb = b.freeze();
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (!instr_equal(ra[i], rb[i])) return false;
    return true;
}

inline bool edge_present(const std::vector<builder_edge>& es, const builder_edge& e) {
    for (const auto& x : es)
        if (x.target == e.target && cond_equal(x.guard, e.guard) && routine_equal(x.r, e.r))
            return true;
    return false;
}

/// Appends instructions of `tail` to every init entry and edge that targets
/// the accepting state.
inline void decorate_accepting(machine_builder& mb, const instr_ptr& tail) {
    for (auto& e : mb.init)
        if (e.target == accept_state) e.r = e.r.append(tail);
    for (auto& st : mb.next)
        for (auto& e : st)
            if (e.target == accept_state) e.r = e.r.append(tail);
}

}  // namespace detail

/// Single-character machine: one start state and one guarded transition to
/// accept, labelled [PushChar].
inline machine_builder build_pred(const char_cond& cond) {
    machine_builder mb;
    mb.state_count = 1;
    mb.lookup.assign(1, shape_chain());
    mb.yield = shape::character();
    mb.init.push_back({0, routine_chain()});
    mb.next.resize(1);
    mb.next[0].push_back({cond, accept_state,
                          routine_chain::of({detail::mk_instr(push_char_instr{})})});
    return mb;
}

/// Empty-word machine: accept is the only state and a start, initialised
/// with [Push ()].
inline machine_builder build_empty() {
    machine_builder mb;
    mb.yield = shape::unit();
    mb.init.push_back({accept_state,
                       routine_chain::of({detail::mk_instr(
                           push_instr{parse_value::unit(), shape::unit()})})});
    return mb;
}

/// Disjoint union of both machines with a merged accepting state; routines
/// reaching accept are extended with the left/right injection so the parse
/// tree records which branch matched. The left operand's states, init
/// entries and edges come first, fixing thread priority.
inline machine_builder build_alt(const machine_builder& r, const machine_builder& s) {
    shape y = shape::sum(r.yield, s.yield);
    instr_ptr inj_l = detail::mk_instr(transform_instr{
        [](const parse_value& v) { return parse_value::left(v); }, r.yield, y});
    instr_ptr inj_r = detail::mk_instr(transform_instr{
        [](const parse_value& v) { return parse_value::right(v); }, s.yield, y});

    int off = r.state_count;
    machine_builder mb;
    mb.state_count = r.state_count + s.state_count;
    mb.yield = y;
    mb.lookup = r.lookup;
    mb.lookup.insert(mb.lookup.end(), s.lookup.begin(), s.lookup.end());

    for (const auto& e : r.init)
        mb.init.push_back({e.target, e.target == accept_state ? e.r.append(inj_l) : e.r});
    for (const auto& e : s.init)
        mb.init.push_back({e.target == accept_state ? accept_state : e.target + off,
                           e.target == accept_state ? e.r.append(inj_r) : e.r});

    mb.next = r.next;
    for (auto& st : mb.next)
        for (auto& e : st)
            if (e.target == accept_state) e.r = e.r.append(inj_l);
    for (const auto& st : s.next) {
        std::vector<builder_edge> row;
        row.reserve(st.size());
        for (const auto& e : st) {
            if (e.target == accept_state)
                row.push_back({e.guard, accept_state, e.r.append(inj_r)});
            else
                row.push_back({e.guard, e.target + off, e.r});
        }
        mb.next.push_back(std::move(row));
    }
    return mb;
}

/// Kleene star. An empty-list accumulator is pushed below the inner
/// machine's stack; finished iterations are reduced onto it with a snoc,
/// and every transition into accept also loops back to the starting states
/// to begin the next iteration. Accept becomes an additional start so zero
/// iterations parse as the empty list.
inline machine_builder build_star(const machine_builder& r) {
    shape a = r.yield;
    shape y = shape::list(a);
    instr_ptr push_empty =
        detail::mk_instr(push_instr{parse_value::empty_list(), y});
    instr_ptr snoc_i = detail::mk_instr(reduce_pair_instr{
        [](const parse_value& xs, const parse_value& x) { return xs.snoc(x); }, y, a, y});

    machine_builder mb;
    mb.state_count = r.state_count;
    mb.yield = y;
    mb.lookup.reserve(r.lookup.size());
    for (const auto& c : r.lookup) mb.lookup.push_back(c.prefixed(y));

    for (const auto& e : r.init) {
        routine_chain nr = e.r.prepend(push_empty);
        if (e.target == accept_state) nr = nr.append(snoc_i);
        mb.init.push_back({e.target, nr});
    }
    mb.init.push_back({accept_state, routine_chain::of({push_empty})});

    mb.next.resize(r.next.size());
    for (std::size_t st = 0; st < r.next.size(); ++st) {
        for (const auto& e : r.next[st]) {
            if (e.target != accept_state) {
                mb.next[st].push_back(e);
                continue;
            }
            routine_chain done = e.r.append(snoc_i);
            mb.next[st].push_back({e.guard, accept_state, done});
            // Loop back to each original start to open the next iteration.
            for (const auto& in : r.init) {
                routine_chain lr = done.concat(in.r);
                if (in.target == accept_state) lr = lr.append(snoc_i);
                builder_edge loop{e.guard, in.target, lr};
                if (!detail::edge_present(mb.next[st], loop))
                    mb.next[st].push_back(std::move(loop));
            }
        }
    }
    return mb;
}

/// Concatenation. The left machine's transitions into accept are replaced
/// by transitions into the right machine's starting states (running their
/// init routines), the right machine's states keep the left parse tree
/// below their stacks, and its transitions into accept combine the two
/// results with a pair-building reduce.
inline machine_builder build_concat(const machine_builder& r, const machine_builder& s) {
    shape a = r.yield, b = s.yield;
    shape y = shape::pair(a, b);
    instr_ptr mkpair = detail::mk_instr(reduce_pair_instr{
        [](const parse_value& x, const parse_value& v) { return parse_value::pair(x, v); },
        a, b, y});

    int off = r.state_count;
    auto into_s = [&](const routine_chain& prefix, const builder_init& in) {
        routine_chain nr = prefix.concat(in.r);
        int tgt = in.target == accept_state ? accept_state : in.target + off;
        if (in.target == accept_state) nr = nr.append(mkpair);
        return builder_init{tgt, nr};
    };

    machine_builder mb;
    mb.state_count = r.state_count + s.state_count;
    mb.yield = y;
    mb.lookup = r.lookup;
    for (const auto& c : s.lookup) mb.lookup.push_back(c.prefixed(a));

    for (const auto& e : r.init) {
        if (e.target != accept_state) {
            mb.init.push_back(e);
            continue;
        }
        for (const auto& in : s.init) mb.init.push_back(into_s(e.r, in));
    }

    mb.next = r.next;
    for (auto& st : mb.next) {
        std::vector<builder_edge> row;
        row.reserve(st.size());
        for (auto& e : st) {
            if (e.target != accept_state) {
                row.push_back(std::move(e));
                continue;
            }
            for (const auto& in : s.init) {
                builder_init joined = into_s(e.r, in);
                row.push_back({e.guard, joined.target, joined.r});
            }
        }
        st = std::move(row);
    }
    for (const auto& st : s.next) {
        std::vector<builder_edge> row;
        row.reserve(st.size());
        for (const auto& e : st) {
            if (e.target == accept_state)
                row.push_back({e.guard, accept_state, e.r.append(mkpair)});
            else
                row.push_back({e.guard, e.target + off, e.r});
        }
        mb.next.push_back(std::move(row));
    }
    return mb;
}

/// The machine for a conversion: the inner machine with a Transform
/// appended to every routine that reaches accept.
inline machine_builder build_conv(machine_builder m, unary_conv fn, const shape& codomain) {
    instr_ptr t = detail::mk_instr(transform_instr{std::move(fn), m.yield, codomain});
    detail::decorate_accepting(m, t);
    m.yield = codomain;
    return m;
}

namespace detail {

inline machine_builder compile_builder(const regex& re) {
    using k = regex::kind;
    switch (re.what()) {
        case k::empty: return build_empty();
        case k::match_char: return build_pred(re.cond());
        case k::seq: return build_concat(compile_builder(re.left()), compile_builder(re.right()));
        case k::alt: return build_alt(compile_builder(re.left()), compile_builder(re.right()));
        case k::rep: return build_star(compile_builder(re.inner()));
        case k::conv: return build_conv(compile_builder(re.inner()), re.fn(), re.yields());
        case k::group: return nfa_to_machine(merge_states(build_nfa(re.inner())));
    }
    return {};
}

}  // namespace detail

/// Compiles a typed regex into its Moore machine.
inline moore_machine compile(const regex& re) { return detail::compile_builder(re).freeze(); }

}  // namespace tyre
