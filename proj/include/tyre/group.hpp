#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tyre/core.hpp"
#include "tyre/machine.hpp"

namespace tyre {

/// A routine-free NFA used for sub-regexes wrapped in a group, where only
/// the language matters. Transitions are stored per source state as
/// guard -> set of targets; the accepting state has no outgoing edges.
struct plain_nfa {
    struct arrow {
        char_cond guard;
        std::vector<int> targets;  // sorted, unique; may contain accept_state
    };

    int state_count = 0;
    std::vector<int> starts;  // may contain accept_state
    std::vector<std::vector<arrow>> edges;
};

namespace detail {

inline void sort_targets(std::vector<int>& ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

inline void dedup_starts(std::vector<int>& ss) {
    std::vector<int> out;
    for (int s : ss)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    ss = std::move(out);
}

/// Replaces every occurrence of `accept_state` in `ts` by `with`.
inline std::vector<int> splice_accept(const std::vector<int>& ts, const std::vector<int>& with) {
    std::vector<int> out;
    out.reserve(ts.size());
    for (int t : ts) {
        if (t == accept_state)
            out.insert(out.end(), with.begin(), with.end());
        else
            out.push_back(t);
    }
    sort_targets(out);
    return out;
}

}  // namespace detail

/// Thompson construction without routines; accepts the same language as the
/// routine-labelled machine for `re`.
inline plain_nfa build_nfa(const regex& re) {
    using k = regex::kind;
    switch (re.what()) {
        case k::empty: {
            plain_nfa n;
            n.starts = {accept_state};
            return n;
        }
        case k::match_char: {
            plain_nfa n;
            n.state_count = 1;
            n.starts = {0};
            n.edges = {{{re.cond(), {accept_state}}}};
            return n;
        }
        case k::conv:
        case k::group:
            return build_nfa(re.inner());
        case k::alt: {
            plain_nfa a = build_nfa(re.left());
            plain_nfa b = build_nfa(re.right());
            int off = a.state_count;
            plain_nfa n;
            n.state_count = a.state_count + b.state_count;
            n.starts = a.starts;
            for (int s : b.starts) n.starts.push_back(s == accept_state ? s : s + off);
            detail::dedup_starts(n.starts);
            n.edges = std::move(a.edges);
            for (auto& st : b.edges) {
                for (auto& e : st)
                    for (int& t : e.targets)
                        if (t != accept_state) t += off;
                n.edges.push_back(std::move(st));
            }
            return n;
        }
        case k::seq: {
            plain_nfa a = build_nfa(re.left());
            plain_nfa b = build_nfa(re.right());
            int off = a.state_count;
            std::vector<int> b_starts;
            for (int s : b.starts) b_starts.push_back(s == accept_state ? s : s + off);

            plain_nfa n;
            n.state_count = a.state_count + b.state_count;
            n.starts = detail::splice_accept(a.starts, b_starts);
            detail::dedup_starts(n.starts);
            n.edges = std::move(a.edges);
            for (auto& st : n.edges)
                for (auto& e : st) e.targets = detail::splice_accept(e.targets, b_starts);
            for (auto& st : b.edges) {
                for (auto& e : st)
                    for (int& t : e.targets)
                        if (t != accept_state) t += off;
                n.edges.push_back(std::move(st));
            }
            return n;
        }
        case k::rep: {
            plain_nfa a = build_nfa(re.inner());
            a.starts.push_back(accept_state);
            detail::dedup_starts(a.starts);
            for (auto& st : a.edges)
                for (auto& e : st)
                    if (std::binary_search(e.targets.begin(), e.targets.end(), accept_state)) {
                        e.targets.insert(e.targets.end(), a.starts.begin(), a.starts.end());
                        detail::sort_targets(e.targets);
                    }
            return a;
        }
    }
    return {};
}

namespace detail {

/// Canonical text form of a state's outgoing edges, or absent when the
/// state can never merge (any predicate guard compares unequal to all
/// guards including itself).
inline bool edge_signature(const std::vector<plain_nfa::arrow>& es, std::string& sig) {
    std::vector<std::string> parts;
    parts.reserve(es.size());
    for (const auto& e : es) {
        std::string p;
        switch (e.guard.what()) {
            case char_cond::kind::one_of:
                p = "O";
                p.append(e.guard.set().begin(), e.guard.set().end());
                break;
            case char_cond::kind::range:
                p = "R";
                p += e.guard.lo();
                p += e.guard.hi();
                break;
            case char_cond::kind::pred:
                return false;
        }
        p += "->";
        for (int t : e.targets) p += std::to_string(t) + ",";
        parts.push_back(std::move(p));
    }
    std::sort(parts.begin(), parts.end());
    sig.clear();
    for (const auto& p : parts) {
        sig += p;
        sig += ';';
    }
    return true;
}

}  // namespace detail

/// Shrinks the NFA by repeatedly merging non-accepting states with equal
/// outgoing edges (same guards to the same target sets), keeping the lowest
/// state index of each class, until no states can be merged. States whose
/// membership in the start set differs are still merged; the start set is
/// rewritten accordingly. Predicate-guarded states never merge.
inline plain_nfa merge_states(plain_nfa nfa) {
    for (;;) {
        // Group mergeable states by the canonical form of their edges.
        std::unordered_map<std::string, int> rep_of_sig;
        std::vector<int> remap(nfa.state_count);
        bool changed = false;
        std::string sig;
        for (int s = 0; s < nfa.state_count; ++s) {
            remap[s] = s;
            if (!detail::edge_signature(nfa.edges[s], sig)) continue;
            auto [it, fresh] = rep_of_sig.try_emplace(sig, s);
            if (!fresh) {
                remap[s] = it->second;
                changed = true;
            }
        }
        if (!changed) return nfa;

        // Renumber the surviving states densely, keeping ascending order.
        std::vector<int> dense(nfa.state_count, -1);
        int live = 0;
        for (int s = 0; s < nfa.state_count; ++s)
            if (remap[s] == s) dense[s] = live++;
        auto target = [&](int t) { return t == accept_state ? t : dense[remap[t]]; };

        plain_nfa out;
        out.state_count = live;
        out.edges.resize(live);
        for (int s = 0; s < nfa.state_count; ++s) {
            if (remap[s] != s) continue;
            auto& st = out.edges[dense[s]];
            st = std::move(nfa.edges[s]);
            for (auto& e : st) {
                for (int& t : e.targets) t = target(t);
                detail::sort_targets(e.targets);
            }
        }
        for (int& s : nfa.starts) s = target(s);
        detail::dedup_starts(nfa.starts);
        out.starts = std::move(nfa.starts);
        nfa = std::move(out);
    }
}

/// Wraps the NFA as a string-yielding machine: starting states are
/// initialised with [Record], transitions into the accepting state are
/// labelled [EmitString], an accepting start is initialised with
/// [Record, EmitString], and every other transition gets the empty routine.
inline machine_builder nfa_to_machine(const plain_nfa& nfa) {
    auto record_i = std::make_shared<const instruction>(record_instr{});
    auto emit_i = std::make_shared<const instruction>(emit_string_instr{});

    machine_builder mb;
    mb.state_count = nfa.state_count;
    mb.lookup.assign(nfa.state_count, shape_chain());
    mb.yield = shape::string();
    for (int s : nfa.starts) {
        if (s == accept_state)
            mb.init.push_back({accept_state, routine_chain::of({record_i, emit_i})});
        else
            mb.init.push_back({s, routine_chain::of({record_i})});
    }
    mb.next.resize(nfa.state_count);
    for (int s = 0; s < nfa.state_count; ++s)
        for (const auto& e : nfa.edges[s])
            for (int t : e.targets)
                mb.next[s].push_back({e.guard, t,
                                      t == accept_state ? routine_chain::of({emit_i})
                                                        : routine_chain()});
    return mb;
}

}  // namespace tyre
