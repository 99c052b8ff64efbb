#pragma once

#include <deque>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tyre/compile.hpp"
#include "tyre/core.hpp"
#include "tyre/error.hpp"
#include "tyre/machine.hpp"

namespace tyre {

/// One simulated NFA execution: its state and its thread-local data.
struct sim_thread {
    int state;
    thread_data data;
};

/// Execution statistics collected by the runner.
struct run_stats {
    std::size_t max_live_threads = 0;

    void note(std::size_t live) {
        if (live > max_live_threads) max_live_threads = live;
    }
};

namespace detail {

/// Keeps only the first thread per state; the pool stays bounded by the
/// state count plus the accepting state.
inline std::vector<sim_thread> dedup_by_state(std::vector<sim_thread> threads,
                                              int state_count) {
    std::vector<char> seen(static_cast<std::size_t>(state_count) + 1, 0);
    std::vector<sim_thread> out;
    out.reserve(threads.size());
    for (auto& t : threads) {
        char& mark = seen[static_cast<std::size_t>(t.state + 1)];
        if (mark) continue;
        mark = 1;
        out.push_back(std::move(t));
    }
    return out;
}

inline const sim_thread* accepted(const std::vector<sim_thread>& threads) {
    for (const auto& t : threads)
        if (t.state == accept_state) return &t;
    return nullptr;
}

}  // namespace detail

/// One thread per init entry, in order, each with fresh data run through its
/// init routine; duplicate states keep the first (highest-priority) thread.
inline std::vector<sim_thread> init_threads(const moore_machine& m, bool checked = false) {
    std::vector<sim_thread> out;
    out.reserve(m.init.size());
    for (const auto& e : m.init)
        out.push_back({e.target, exec_routine(e.r, std::nullopt, thread_data{}, checked)});
    return detail::dedup_by_state(std::move(out), m.state_count);
}

/// Advances the pool by one character: every live thread tries each of its
/// state's matching edges in order, recording the character first when its
/// record flag is set, then running the edge routine. The results are merged
/// by state, earliest first. Previously accepted threads cannot move and
/// drop out.
inline std::vector<sim_thread> step(const moore_machine& m,
                                    const std::vector<sim_thread>& threads, char c,
                                    bool checked = false) {
    std::vector<sim_thread> out;
    for (const auto& t : threads) {
        if (t.state == accept_state) continue;
        for (const auto& e : m.next[static_cast<std::size_t>(t.state)]) {
            if (!satisfies(e.guard, c)) continue;
            thread_data td = t.data;
            if (td.rec) td.recorded = td.recorded.append(c);
            out.push_back({e.target, exec_routine(e.r, c, std::move(td), checked)});
        }
    }
    return detail::dedup_by_state(std::move(out), m.state_count);
}

/// Runs the machine over the whole input; a parse tree is produced only
/// when a thread is accepting after the last character (acceptance must
/// coincide with end of input).
inline std::optional<parse_value> run_full(const moore_machine& m, std::string_view input,
                                           bool checked = false, run_stats* stats = nullptr) {
    std::vector<sim_thread> threads = init_threads(m, checked);
    if (stats) stats->note(threads.size());
    for (char c : input) {
        if (threads.empty()) return std::nullopt;
        threads = step(m, threads, c, checked);
        if (stats) stats->note(threads.size());
    }
    if (const sim_thread* t = detail::accepted(threads)) return t->data.stack.top();
    return std::nullopt;
}

inline bool match(const moore_machine& m, std::string_view input, bool checked = false,
                  run_stats* stats = nullptr) {
    return run_full(m, input, checked, stats).has_value();
}

/// Result of prefix parsing: the value and how many characters it consumed.
/// No value means nothing consumed.
struct prefix_result {
    std::optional<parse_value> value;
    std::size_t consumed = 0;
};

/// Parses the shortest (non-greedy) or longest (greedy) matching prefix.
/// The unparsed remainder is input.substr(result.consumed).
inline prefix_result parse_prefix(const moore_machine& m, std::string_view input, bool greedy,
                                  bool checked = false, run_stats* stats = nullptr) {
    std::vector<sim_thread> threads = init_threads(m, checked);
    if (stats) stats->note(threads.size());
    prefix_result best;

    auto note_accept = [&](std::size_t consumed) {
        if (const sim_thread* t = detail::accepted(threads)) {
            best = {t->data.stack.top(), consumed};
            return true;
        }
        return false;
    };

    if (note_accept(0) && !greedy) return best;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (threads.empty()) break;
        threads = step(m, threads, input[i], checked);
        if (stats) stats->note(threads.size());
        if (note_accept(i + 1) && !greedy) return best;
    }
    return best;
}

/// A disjoint-match scan: the non-overlapping left-to-right occurrences with
/// their parse trees, the gaps between them, and the unmatched tail.
struct scan_result {
    struct hit {
        std::string gap;  // unmatched text before this occurrence
        std::string text;
        parse_value value;
    };
    std::vector<hit> hits;
    std::string trailing;

    /// The (matched substring, parse tree) pairs.
    std::vector<std::pair<std::string, parse_value>> matches() const {
        std::vector<std::pair<std::string, parse_value>> out;
        out.reserve(hits.size());
        for (const auto& h : hits) out.emplace_back(h.text, h.value);
        return out;
    }
};

namespace detail {

inline scan_result scan(const moore_machine& m, std::string_view input, bool greedy,
                        bool checked = false, run_stats* stats = nullptr) {
    scan_result out;
    std::string gap;
    std::size_t pos = 0;
    while (pos < input.size()) {
        prefix_result r = parse_prefix(m, input.substr(pos), greedy, checked, stats);
        if (r.value && r.consumed > 0) {
            out.hits.push_back({std::move(gap), std::string(input.substr(pos, r.consumed)),
                                std::move(*r.value)});
            gap = {};
            pos += r.consumed;
        } else {
            gap += input[pos++];
        }
    }
    out.trailing = std::move(gap);
    return out;
}

}  // namespace detail

/// A character source that get_token can consume lazily, with enough
/// buffering to hand unconsumed lookahead back after each call.
class char_stream {
    std::function<std::optional<char>()> pull_;
    std::deque<char> pending_;
    std::size_t consumed_ = 0;
    bool exhausted_ = false;

public:
    explicit char_stream(std::function<std::optional<char>()> pull)
        : pull_(std::move(pull)) {}

    static char_stream of(std::string text) {
        struct state {
            std::string text;
            std::size_t i = 0;
        };
        auto st = std::make_shared<state>(state{std::move(text)});
        return char_stream([st]() -> std::optional<char> {
            if (st->i >= st->text.size()) return std::nullopt;
            return st->text[st->i++];
        });
    }

    static char_stream of(std::istream& in) {
        return char_stream([&in]() -> std::optional<char> {
            int c = in.get();
            if (c == std::char_traits<char>::eof()) return std::nullopt;
            return static_cast<char>(c);
        });
    }

    std::optional<char> get() {
        if (!pending_.empty()) {
            char c = pending_.front();
            pending_.pop_front();
            ++consumed_;
            return c;
        }
        if (exhausted_) return std::nullopt;
        std::optional<char> c = pull_();
        if (!c) {
            exhausted_ = true;
            return std::nullopt;
        }
        ++consumed_;
        return c;
    }

    /// Returns lookahead to the front of the stream, oldest character first.
    void putback(std::string_view chars) {
        consumed_ -= chars.size();
        pending_.insert(pending_.begin(), chars.begin(), chars.end());
    }

    /// Characters handed out and not returned.
    std::size_t consumed_count() const { return consumed_; }

    bool at_end() {
        if (!pending_.empty()) return false;
        if (exhausted_) return true;
        std::optional<char> c = pull_();
        if (!c) {
            exhausted_ = true;
            return true;
        }
        pending_.push_back(*c);
        return false;
    }
};

/// Tokenises a lazily consumed character source: like parse_prefix, but the
/// source is only pulled while the thread pool is alive, and on failure the
/// stream is left exactly as given.
inline std::optional<parse_value> get_token(const moore_machine& m, char_stream& stream,
                                            bool greedy, bool checked = false,
                                            run_stats* stats = nullptr) {
    std::vector<sim_thread> threads = init_threads(m, checked);
    if (stats) stats->note(threads.size());
    std::optional<parse_value> best;
    std::size_t best_consumed = 0;
    std::string pulled;

    auto note_accept = [&]() {
        if (const sim_thread* t = detail::accepted(threads)) {
            best = t->data.stack.top();
            best_consumed = pulled.size();
            return true;
        }
        return false;
    };

    if (!(note_accept() && !greedy)) {
        while (!threads.empty()) {
            std::optional<char> c = stream.get();
            if (!c) break;
            pulled += *c;
            threads = step(m, threads, *c, checked);
            if (stats) stats->note(threads.size());
            if (note_accept() && !greedy) break;
        }
    }
    stream.putback(std::string_view(pulled).substr(best_consumed));
    return best;
}

/// A typed regex compiled to its machine, with the operations of the
/// matching surface. Immutable and shareable; `checked` turns on per-step
/// verification of the stack-shape contracts.
class compiled {
    regex re_;
    moore_machine m_;
    bool consuming_;
    bool checked_;

    void require_consuming(const char* op) const {
        if (!consuming_)
            throw not_consuming(std::string(op) + ": regex may match the empty string");
    }

public:
    explicit compiled(const regex& re, bool checked = false)
        : re_(re), m_(compile(re)), consuming_(is_consuming(re)), checked_(checked) {}

    const moore_machine& machine() const { return m_; }
    const regex& source() const { return re_; }
    const shape& yields() const { return re_.yields(); }
    bool consuming() const { return consuming_; }

    bool match(std::string_view input, run_stats* stats = nullptr) const {
        return tyre::match(m_, input, checked_, stats);
    }
    std::optional<parse_value> parse(std::string_view input, run_stats* stats = nullptr) const {
        return run_full(m_, input, checked_, stats);
    }
    prefix_result parse_prefix(std::string_view input, bool greedy = true,
                               run_stats* stats = nullptr) const {
        return tyre::parse_prefix(m_, input, greedy, checked_, stats);
    }

    /// All non-overlapping occurrences, left to right. The regex must be
    /// consuming so the scan is guaranteed to progress.
    scan_result disjoint_matches(std::string_view input, bool greedy = true,
                                 run_stats* stats = nullptr) const {
        require_consuming("disjoint_matches");
        return detail::scan(m_, input, greedy, checked_, stats);
    }

    /// Replaces every disjoint match by replacer(parse tree), greedily.
    std::string substitute(std::string_view input,
                           const std::function<std::string(const parse_value&)>& replacer,
                           run_stats* stats = nullptr) const {
        require_consuming("substitute");
        scan_result scan = detail::scan(m_, input, true, checked_, stats);
        std::string out;
        for (const auto& h : scan.hits) {
            out += h.gap;
            out += replacer(h.value);
        }
        out += scan.trailing;
        return out;
    }

    std::optional<parse_value> get_token(char_stream& stream, bool greedy = true,
                                         run_stats* stats = nullptr) const {
        return tyre::get_token(m_, stream, greedy, checked_, stats);
    }
};

}  // namespace tyre
