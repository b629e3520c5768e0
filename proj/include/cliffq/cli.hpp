#pragma once

// Command layer of the `cliffq` tool. Exit codes: 0 success, 1 a check found
// a containment failure, 2 usage, parse or evaluation error.

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliffq/dsl.hpp"
#include "cliffq/qtype.hpp"
#include "cliffq/serialize.hpp"

namespace cliffq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// "p,q" -> Signature.
inline Signature parse_signature(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw domain_error("signature must look like p,q, got '" + text + "'");
    }
    try {
        std::size_t used_p = 0;
        std::size_t used_q = 0;
        const std::string ps = text.substr(0, comma);
        const std::string qs = text.substr(comma + 1);
        const int p = std::stoi(ps, &used_p);
        const int q = std::stoi(qs, &used_q);
        if (used_p != ps.size() || used_q != qs.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return Signature(p, q);
    } catch (const std::logic_error&) {
        throw domain_error("signature must look like p,q, got '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// Tables

enum class TableFormat { text, csv };

using Table = std::vector<std::vector<std::string>>;

/// Quotes a CSV cell holding a comma or quote (headers such as `{k,l,m}`).
inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
}

/// Columns padded to their widest cell and separated by two spaces.
inline std::string format_table(const Table& rows, TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::csv) {
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c == 0 ? "" : ",") << csv_cell(row[c]);
            }
            out << '\n';
        }
        return out.str();
    }
    std::vector<std::size_t> width;
    auto cell_width = [](const std::string& s) {
        // ⊥ is three bytes but one column.
        return static_cast<std::size_t>(
            std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
    };
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], cell_width(row[c]));
        }
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) {
                line += std::string(width[c] - cell_width(row[c]) + 2, ' ');
            }
        }
        out << line << '\n';
    }
    return out.str();
}

/// The 20 multisets of main types with both threefold bracket types.
inline Table triple_table_rows() {
    Table rows{{"k", "l", "m", "{k,l,m}", "[k,l,m]", "type"}};
    for (const auto& r : triple_table()) {
        rows.push_back({std::to_string(r.k), std::to_string(r.l), std::to_string(r.m),
                        QType::main(r.anticommutator).render(), QType::main(r.commutator).render(), r.both.render()});
    }
    return rows;
}

/// {k,l} and [k,l] as musical operations applied to k, per partner l.
inline Table pair_table_rows() {
    Table rows{{"l", "{k,l}", "[k,l]"}};
    for (int l : main_residues) {
        rows.push_back({std::to_string(l), op_name(infer_pair_musical(BracketKind::anticommutator, l)),
                        op_name(infer_pair_musical(BracketKind::commutator, l))});
    }
    return rows;
}

/// Composition a o b, row a, column b.
inline Table musical_table_rows() {
    Table rows{{"o"}};
    for (MusicalOp b : all_musical_ops) {
        rows[0].push_back(op_name(b));
    }
    for (MusicalOp a : all_musical_ops) {
        std::vector<std::string> row{op_name(a)};
        for (MusicalOp b : all_musical_ops) {
            row.push_back(op_name(musical_compose(a, b)));
        }
        rows.push_back(row);
    }
    return rows;
}

/// {a,b,k} and [a,b,k] as musical operations applied to k, per pair a <= b.
inline Table threefold_fixed_rows() {
    Table rows{{"a", "b", "{a,b,k}", "[a,b,k]"}};
    for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
            rows.push_back({std::to_string(a), std::to_string(b),
                            op_name(infer_triple_musical(BracketKind::anticommutator, a, b)),
                            op_name(infer_triple_musical(BracketKind::commutator, a, b))});
        }
    }
    return rows;
}

inline std::string render_table(const std::string& which, TableFormat format) {
    if (which == "triple") {
        return format_table(triple_table_rows(), format);
    }
    if (which == "pair") {
        return format_table(pair_table_rows(), format);
    }
    if (which == "musical") {
        return format_table(musical_table_rows(), format);
    }
    if (which == "threefold-fixed") {
        return format_table(threefold_fixed_rows(), format);
    }
    throw domain_error("unknown table '" + which + "'");
}

// ---------------------------------------------------------------------------
// Commands

/// Variable name -> multivector JSON. A binding without "sig" takes `sig`.
inline dsl::Bindings read_bindings(const std::string& path, const Signature& sig) {
    std::ifstream in(path);
    if (!in) {
        throw domain_error("cannot open bindings file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("bindings file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw domain_error("bindings file must hold an object of name -> multivector");
    }
    dsl::Bindings out;
    for (auto& [name, value] : doc.items()) {
        nlohmann::json mv = value;
        if (mv.is_object() && !mv.contains("sig")) {
            mv["sig"] = {sig.p(), sig.q()};
        }
        try {
            out.emplace(name, multivector_from_json(mv));
        } catch (const error& e) {
            throw domain_error("binding '" + name + "': " + e.what());
        }
    }
    return out;
}

/// Declarations in an evaluated expression must agree with the bindings.
inline void check_declared_bindings(const dsl::Expr& e, const dsl::Bindings& bindings) {
    for (const auto& v : dsl::variables(e)) {
        auto it = bindings.find(v.name);
        if (!v.declaration || it == bindings.end()) {
            continue;
        }
        const auto& d = *v.declaration;
        const bool ok = d.is_rank() ? it->second.is_zero() || grade_spectrum(it->second) == RankSpectrum{d.rank()}
                                    : qtype_of(it->second).subset_of(d.qtype());
        if (!ok) {
            throw domain_error("binding for '" + v.name + "' has type " + qtype_of(it->second).render() +
                               ", declared " + d.render());
        }
    }
}

inline int cmd_eval(const std::string& sig_text, const std::string& expr, const std::string& bindings_path,
                    std::ostream& out) {
    const Signature sig = parse_signature(sig_text);
    const auto e = dsl::parse(expr, {.require_declarations = false});
    const dsl::Bindings bindings = bindings_path.empty() ? dsl::Bindings{} : read_bindings(bindings_path, sig);
    check_declared_bindings(e, bindings);
    const dsl::Value v = dsl::evaluate(e, sig, bindings);
    out << v.render() << '\n';
    out << "qtype: " << v.qtype().render() << '\n';
    return exit_ok;
}

inline int cmd_infer(const std::string& expr, std::ostream& out) {
    out << dsl::infer(dsl::parse(expr)).render() << '\n';
    return exit_ok;
}

/// Non-blank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<int, std::string>> read_expression_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw domain_error("cannot open expression file '" + path + "'");
    }
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            // '#' also introduces rank declarations (U:#2); only a '#' at the
            // start of a token begins a comment.
            std::size_t cut = std::string::npos;
            for (std::size_t i = hash; i != std::string::npos; i = line.find('#', i + 1)) {
                if (i == 0 || line[i - 1] != ':') {
                    cut = i;
                    break;
                }
            }
            if (cut != std::string::npos) {
                line.erase(cut);
            }
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        out.emplace_back(number, line.substr(first, last - first + 1));
    }
    return out;
}

inline int cmd_check(const std::string& sig_text, int trials, std::uint64_t seed, bool json,
                     const std::string& expr, const std::string& file, std::ostream& out) {
    const Signature sig = parse_signature(sig_text);
    const dsl::CheckOptions options{trials, seed, {}};
    if (file.empty()) {
        const auto report = dsl::check(dsl::parse(expr), sig, options);
        if (json) {
            out << dsl::to_json(report).dump() << '\n';
        } else {
            out << dsl::render_text(report);
        }
        return report.passed() ? exit_ok : exit_failed;
    }
    std::vector<dsl::CheckReport> reports;
    for (const auto& [number, text] : read_expression_file(file)) {
        try {
            reports.push_back(dsl::check(dsl::parse(text), sig, options));
        } catch (const error& e) {
            throw domain_error(file + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    const auto failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.passed(); });
    if (json) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto& r : reports) {
            all.push_back(dsl::to_json(r));
        }
        out << all.dump() << '\n';
    } else {
        for (const auto& r : reports) {
            out << dsl::render_text(r) << '\n';
        }
        out << reports.size() << " expressions, " << failed << " failed\n";
    }
    return failed == 0 ? exit_ok : exit_failed;
}

/// Runs the tool on `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clifford algebra quaternion-type calculator", "cliffq"};
    app.require_subcommand(1);

    std::string sig = "3,0";
    std::string expr;
    std::string bindings;
    std::string file;
    std::string which;
    std::string format = "text";
    int trials = 100;
    std::uint64_t seed = 0;
    bool json = false;

    auto* eval = app.add_subcommand("eval", "evaluate an expression on concrete multivectors");
    eval->add_option("--sig", sig, "signature p,q")->required();
    eval->add_option("--bindings", bindings, "JSON file mapping variable names to multivectors");
    eval->add_option("expr", expr, "expression")->required();

    auto* infer = app.add_subcommand("infer", "print the inferred quaternion type");
    infer->add_option("expr", expr, "expression with typed variables")->required();

    auto* check = app.add_subcommand("check", "verify the inferred type on random instances");
    check->add_option("--sig", sig, "signature p,q")->required();
    check->add_option("--trials", trials, "number of random trials")->capture_default_str()->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "base seed; trial i uses seed + i")->capture_default_str();
    check->add_flag("--json", json, "machine-readable report");
    auto* expr_opt = check->add_option("expr", expr, "expression with typed variables");
    auto* file_opt = check->add_option("--file", file, "one expression per line, # comments");
    expr_opt->excludes(file_opt);

    auto* tables = app.add_subcommand("tables", "emit the bracket and musical-operation tables");
    tables->add_option("--which", which, "table")
        ->required()
        ->check(CLI::IsMember({"triple", "pair", "musical", "threefold-fixed"}));
    tables->add_option("--format", format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "csv"}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (eval->parsed()) {
            return cmd_eval(sig, expr, bindings, out);
        }
        if (infer->parsed()) {
            return cmd_infer(expr, out);
        }
        if (check->parsed()) {
            if (expr.empty() && file.empty()) {
                err << "error: check needs an expression or --file\n";
                return exit_usage;
            }
            return cmd_check(sig, trials, seed, json, expr, file, out);
        }
        out << render_table(which, format == "csv" ? TableFormat::csv : TableFormat::text);
        return exit_ok;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace cliffq::cli
