// tyre: match, parse, rewrite and tokenise text with typed regex literals,
// inspect the compiled machines, and run the scaling benchmarks.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tyre/tyre.hpp"

namespace {

constexpr int exit_match = 0;
constexpr int exit_no_match = 1;
constexpr int exit_error = 2;

std::string read_source(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tyre::error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Full-match commands strip exactly one trailing newline.
std::string strip_newline(std::string s) {
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

/// Line mode splits on LF and ignores a final empty segment.
std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\n') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    if (start < s.size()) out.push_back(s.substr(start));
    return out;
}

std::string expand_template(const std::string& tmpl, const std::string& matched,
                            const tyre::parse_value& value) {
    std::string out;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl.compare(i, 5, "$json") == 0) {
            out += tyre::value_to_json(value).dump();
            i += 4;
        } else if (tmpl.compare(i, 2, "$0") == 0) {
            out += matched;
            i += 1;
        } else {
            out += tmpl[i];
        }
    }
    return out;
}

int cmd_match(const std::string& literal, const std::string& input_path, bool line_mode) {
    tyre::compiled re(tyre::compile_literal(literal).second);
    std::string text = read_source(input_path);
    if (!line_mode) return re.match(strip_newline(text)) ? exit_match : exit_no_match;
    bool any = false;
    for (const auto& line : split_lines(text)) {
        if (re.match(line)) {
            std::cout << line << "\n";
            any = true;
        }
    }
    return any ? exit_match : exit_no_match;
}

int cmd_parse(const std::string& literal, const std::string& input_path) {
    tyre::compiled re(tyre::compile_literal(literal).second);
    auto v = re.parse(strip_newline(read_source(input_path)));
    if (!v) {
        std::cout << "no match\n";
        return exit_no_match;
    }
    std::cout << tyre::value_to_json(*v).dump() << "\n";
    return exit_match;
}

int cmd_substitute(const std::string& literal, const std::string& tmpl,
                   const std::string& input_path) {
    tyre::compiled re(tyre::compile_literal(literal).second);
    std::string text = read_source(input_path);
    for (const auto& line : split_lines(text)) {
        tyre::scan_result scan = re.disjoint_matches(line, true);
        std::string out;
        for (const auto& h : scan.hits) {
            out += h.gap;
            out += expand_template(tmpl, h.text, h.value);
        }
        out += scan.trailing;
        std::cout << out << "\n";
    }
    return exit_match;
}

int cmd_tokenize(const std::string& literal, const std::string& input_path, bool greedy) {
    tyre::compiled re(tyre::compile_literal(literal).second);

    std::ifstream file;
    if (!input_path.empty() && input_path != "-") {
        file.open(input_path, std::ios::binary);
        if (!file) throw tyre::error("cannot open input file: " + input_path);
    }
    std::istream& in = file.is_open() ? static_cast<std::istream&>(file) : std::cin;
    tyre::char_stream stream = tyre::char_stream::of(in);

    while (!stream.at_end()) {
        std::size_t before = stream.consumed_count();
        auto v = re.get_token(stream, greedy);
        if (!v) break;
        std::cout << tyre::value_to_json(*v).dump() << "\n";
        if (stream.consumed_count() == before) break;  // empty match cannot progress
    }
    return exit_match;
}

int cmd_dump(const std::string& literal, bool dump_machine, bool dump_nfa,
             const std::optional<std::string>& trace_input) {
    tyre::regex re = tyre::compile_literal(literal).second;
    bool did = false;
    if (dump_nfa) {
        tyre::plain_nfa before = tyre::build_nfa(re);
        tyre::plain_nfa after = tyre::merge_states(before);
        nlohmann::json doc{{"before", tyre::nfa_to_json(before)},
                           {"after", tyre::nfa_to_json(after)}};
        std::cout << doc.dump(2) << "\n";
        did = true;
    }
    if (trace_input) {
        std::cout << tyre::trace_execution(tyre::compile(re), *trace_input) << "\n";
        did = true;
    }
    if (dump_machine || !did)
        std::cout << tyre::machine_to_json(tyre::compile(re)).dump(2) << "\n";
    return exit_match;
}

int cmd_bench(const std::string& family, const std::vector<std::size_t>& sizes, int samples,
              const std::string& out_path) {
    auto rows = tyre::run_bench(family, sizes, samples);
    if (out_path.empty()) {
        tyre::write_csv(std::cout, rows);
        return exit_match;
    }
    std::ofstream out(out_path);
    if (!out) throw tyre::error("cannot open output file: " + out_path);
    tyre::write_csv(out, rows);
    return exit_match;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"typed regex engine"};
    app.require_subcommand(1);

    std::string literal, input_path, tmpl, out_path, family;
    bool line_mode = false, greedy = true, json_output = false;
    bool dump_machine = false, dump_nfa = false;
    std::optional<std::string> trace_input;
    std::vector<std::size_t> sizes;
    int samples = 5;

    auto* match = app.add_subcommand("match", "exit 0 when the whole input matches");
    match->add_option("regex", literal, "regex literal")->required();
    match->add_option("--input", input_path, "input file (default stdin)");
    match->add_flag("--line", line_mode, "match each line, print the matching ones");

    auto* parse = app.add_subcommand("parse", "print the parse tree as JSON");
    parse->add_option("regex", literal, "regex literal")->required();
    parse->add_option("--input", input_path, "input file (default stdin)");
    parse->add_flag("--json", json_output, "JSON output (the default)");

    auto* subst = app.add_subcommand("substitute", "replace every disjoint match");
    subst->add_option("regex", literal, "regex literal")->required();
    subst->add_option("--template", tmpl, "replacement; $0 = matched text, $json = parse tree")
        ->required();
    subst->add_option("--input", input_path, "input file (default stdin)");

    auto* tok = app.add_subcommand("tokenize", "read tokens off the input stream");
    tok->add_option("regex", literal, "regex literal")->required();
    tok->add_option("--input", input_path, "input file (default stdin)");
    tok->add_flag("--greedy,!--no-greedy", greedy, "longest (default) or shortest tokens");

    auto* dump = app.add_subcommand("dump", "inspect the compiled machine");
    dump->add_option("regex", literal, "regex literal")->required();
    dump->add_flag("--dump", dump_machine, "machine as JSON (the default)");
    dump->add_flag("--dump-nfa", dump_nfa, "group NFA before and after merging");
    dump->add_option("--trace", trace_input, "execution trace over the given input");

    auto* bench = app.add_subcommand("bench", "time the scaling families, CSV output");
    bench
        ->add_option("--family", family,
                     "concat | star | star2 | alt | alt-balanced | alt-grouped | "
                     "alt-balanced-grouped")
        ->required();
    bench->add_option("--sizes", sizes, "input/regex sizes n")->required();
    bench->add_option("--samples", samples, "samples per size (default 5)");
    bench->add_option("--out", out_path, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
        if (match->parsed()) return cmd_match(literal, input_path, line_mode);
        if (parse->parsed()) return cmd_parse(literal, input_path);
        if (subst->parsed()) return cmd_substitute(literal, tmpl, input_path);
        if (tok->parsed()) return cmd_tokenize(literal, input_path, greedy);
        if (dump->parsed()) return cmd_dump(literal, dump_machine, dump_nfa, trace_input);
        if (bench->parsed()) return cmd_bench(family, sizes, samples, out_path);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    } catch (const std::exception& e) {
        std::cerr << "tyre: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
