#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "tyre/group.hpp"
#include "tyre/machine.hpp"
#include "tyre/run.hpp"
#include "tyre/value.hpp"

namespace tyre {

/// The wire encoding of parse trees: unit is null, a char is a one-character
/// string, naturals are numbers, pairs are two-element arrays, injections
/// are single-field objects, lists are arrays.
inline nlohmann::json value_to_json(const parse_value& v) {
    using vk = parse_value::kind;
    switch (v.what()) {
        case vk::unit: return nullptr;
        case vk::character: return std::string(1, v.as_char());
        case vk::string: return v.as_string();
        case vk::natural: return v.as_natural();
        case vk::boolean: return v.as_bool();
        case vk::pair:
            return nlohmann::json::array({value_to_json(v.first()), value_to_json(v.second())});
        case vk::left: return nlohmann::json{{"left", value_to_json(v.payload())}};
        case vk::right: return nlohmann::json{{"right", value_to_json(v.payload())}};
        case vk::list: {
            nlohmann::json out = nlohmann::json::array();
            for (const auto& item : v.list_items()) out.push_back(value_to_json(item));
            return out;
        }
    }
    return nullptr;
}

namespace detail {

inline nlohmann::json target_json(int t) {
    if (t == accept_state) return "accept";
    return t;
}

inline nlohmann::json routine_json(const routine& r) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& i : r) out.push_back(instruction_name(*i));
    return out;
}

}  // namespace detail

/// Machine dump: state count, yield, per-state stack shapes, init list and
/// guarded edges with their routines as instruction-name lists.
inline nlohmann::json machine_to_json(const moore_machine& m) {
    nlohmann::json states = nlohmann::json::array();
    for (int s = 0; s < m.state_count; ++s) {
        nlohmann::json sh = nlohmann::json::array();
        for (const auto& ss : m.lookup[static_cast<std::size_t>(s)]) sh.push_back(to_string(ss));
        states.push_back({{"id", s}, {"shape", sh}});
    }
    nlohmann::json init = nlohmann::json::array();
    for (const auto& e : m.init)
        init.push_back({{"to", detail::target_json(e.target)},
                        {"routine", detail::routine_json(e.r)}});
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t s = 0; s < m.next.size(); ++s)
        for (const auto& e : m.next[s])
            edges.push_back({{"from", s},
                             {"guard", to_string(e.guard)},
                             {"to", detail::target_json(e.target)},
                             {"routine", detail::routine_json(e.r)}});
    return {{"state_count", m.state_count},
            {"yield", to_string(m.yield)},
            {"states", states},
            {"init", init},
            {"edges", edges}};
}

/// NFA dump: the start set and, per state, guard -> target set.
inline nlohmann::json nfa_to_json(const plain_nfa& nfa) {
    nlohmann::json starts = nlohmann::json::array();
    for (int s : nfa.starts) starts.push_back(detail::target_json(s));
    nlohmann::json states = nlohmann::json::array();
    for (int s = 0; s < nfa.state_count; ++s) {
        nlohmann::json es = nlohmann::json::array();
        for (const auto& e : nfa.edges[static_cast<std::size_t>(s)]) {
            nlohmann::json ts = nlohmann::json::array();
            for (int t : e.targets) ts.push_back(detail::target_json(t));
            es.push_back({{"guard", to_string(e.guard)}, {"targets", ts}});
        }
        states.push_back({{"id", s}, {"edges", es}});
    }
    return {{"state_count", nfa.state_count}, {"starts", starts}, {"states", states}};
}

/// Renders an execution trace over `input`: the initial stacks, then one
/// section per character with the condition that fired and one row per
/// executed instruction showing the stack after it.
inline std::string trace_execution(const moore_machine& m, std::string_view input,
                                   bool checked = false) {
    std::string out;
    auto stack_row = [](const std::string& label, const value_stack& st) {
        std::string row = label + " | [<";
        std::vector<parse_value> items = st.items();
        for (std::size_t i = 0; i < items.size(); ++i) {
            row += i == 0 ? " " : ", ";
            row += to_string(items[i]);
        }
        row += "]\n";
        return row;
    };

    std::vector<sim_thread> threads;
    for (const auto& e : m.init) {
        thread_data td;
        for (const auto& i : e.r) {
            td = exec_instruction(*i, std::nullopt, std::move(td), checked);
            out += stack_row(instruction_name(*i), td.stack);
        }
        threads.push_back({e.target, std::move(td)});
    }
    threads = detail::dedup_by_state(std::move(threads), m.state_count);
    if (out.empty()) out += " | [< ]\n";

    for (char c : input) {
        out += "Current character: '" + std::string(1, c) + "'.\n";
        std::vector<sim_thread> next;
        for (const auto& t : threads) {
            if (t.state == accept_state) continue;
            for (const auto& e : m.next[static_cast<std::size_t>(t.state)]) {
                if (!satisfies(e.guard, c)) continue;
                out += "Condition check: " + to_string(e.guard) + "\n";
                thread_data td = t.data;
                if (td.rec) td.recorded = td.recorded.append(c);
                for (const auto& i : e.r) {
                    td = exec_instruction(*i, c, std::move(td), checked);
                    out += stack_row(instruction_name(*i), td.stack);
                }
                next.push_back({e.target, std::move(td)});
            }
        }
        threads = detail::dedup_by_state(std::move(next), m.state_count);
        if (threads.empty()) {
            out += "No live threads.\n";
            return out;
        }
    }
    if (detail::accepted(threads)) out += "Accept.\n";
    return out;
}

}  // namespace tyre
