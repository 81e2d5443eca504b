#include "kgcert/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "kgcert/amalgam.hpp"
#include "kgcert/bt_tree.hpp"

namespace kgcert {

namespace {

struct CommandConfig {
    int genus = 2;
    bool genus_given = false;
    std::int64_t kmax = 10;
    std::string format = "text";
    std::string eps_path;
    std::optional<std::uint64_t> seed;
    std::int64_t ball_radius = 8;
    std::string lift_path;
    std::string output_path;
    std::string check_path;
    std::string operand[4];
    std::size_t operands = 0;
};

std::string slurp(const std::string& arg, std::istream& in) {
    if (arg == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return arg;
}

std::string read_file(const std::string& path, std::istream& in) {
    if (path == "-") return slurp(path, in);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string trimmed(std::string s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

EpsilonTable load_eps(const CommandConfig& cfg, std::istream& in) {
    if (!cfg.eps_path.empty()) return EpsilonTable::from_json(Json::parse(read_file(cfg.eps_path, in)));
    if (cfg.seed) {
        std::mt19937_64 rng(*cfg.seed);
        return EpsilonTable::random(cfg.genus, rng);
    }
    return {};
}

LiftClass load_lift(const std::string& source, int genus, std::istream& in) {
    if (source == "canonical-C") return LiftClass::canonical(genus);
    return LiftClass::from_json(Json::parse(read_file(source, in)));
}

const Ring& q_ring() {
    static const Ring r = Ring::univariate(CoeffDomain::Rational);
    return r;
}

TreeVertex vertex_arg(const std::string& arg, std::istream& in) {
    if (arg == "base") return base_vertex();
    if (arg == "adjacent") return adjacent_vertex();
    return canonical_vertex(RMatrix2::from(parse_matrix(trimmed(slurp(arg, in)), q_ring())));
}

Matrix2 matrix_arg(const std::string& arg, std::istream& in) {
    return parse_matrix(trimmed(slurp(arg, in)), q_ring());
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- commands

int cmd_verify(const CommandConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    EpsilonTable eps = load_eps(cfg, in);
    if (!cfg.check_path.empty()) {
        CertificateCheck check = check_certificate(Json::parse(read_file(cfg.check_path, in)), eps);
        if (cfg.format == "json") {
            print_json(out, Json{{"ok", check.ok}, {"failures", check.failures}});
        } else {
            for (const auto& f : check.failures) err << f << "\n";
            out << "verdict: " << (check.ok ? "true" : "false") << "\n";
        }
        return check.ok ? kExitOk : kExitFailed;
    }

    CertificateOptions opts;
    opts.eps = eps;
    if (!cfg.lift_path.empty()) opts.base_lift = load_lift(cfg.lift_path, cfg.genus, in);
    Certificate cert = build_certificate(cfg.kmax, cfg.genus, opts);
    Json j = cert.to_json();
    if (!cfg.output_path.empty()) {
        std::ofstream f(cfg.output_path);
        if (!f) throw std::invalid_argument("cannot write " + cfg.output_path);
        f << j.dump(2) << "\n";
    }
    if (cfg.format == "json") {
        print_json(out, j);
    } else {
        out << "genus " << cert.genus << ", kmax " << cert.kmax << "\n";
        out << "records: " << cert.records.size() << "\n";
        out << "pairwise checks: " << cert.pairwise.size() << "\n";
        out << "verdict: " << (cert.verdict ? "true" : "false") << "\n";
    }
    if (!cert.verdict) err << cert.first_failure() << "\n";
    return cert.verdict ? kExitOk : kExitFailed;
}

int cmd_eval(const CommandConfig& cfg, std::istream& in, std::ostream& out) {
    Ring ring = cfg.genus_given ? Ring::genus(cfg.genus).with_domain(CoeffDomain::Rational) : q_ring();
    LaurentPoly f = parse_poly(trimmed(slurp(cfg.operand[0], in)), ring);
    if (cfg.format == "json")
        print_json(out, Json{{"ring", to_string(ring)}, {"result", to_string(f)}, {"balanced", is_balanced(f)}});
    else
        out << to_string(f) << "\n";
    return kExitOk;
}

int cmd_rho(const CommandConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    LiftClass lift = load_lift(cfg.operand[0], cfg.genus, in);
    LiftValidation v = validate_lift(lift);
    if (!v.ok()) {
        err << "invalid lift: " << v.message << "\n";
        return kExitFailed;
    }
    Matrix2 m = rho(lift);
    HFormReport hf = h_form(m);
    bool twist_ok = rho_via_twist(lift, load_eps(cfg, in)) == m;
    const char* names[4] = {"P1", "Q1", "Q2", "P2"};
    const LaurentPoly* parts[4] = {&hf.p1, &hf.q1, &hf.q2, &hf.p2};
    if (cfg.format == "json") {
        Json h;
        for (int i = 0; i < 4; ++i) h[names[i]] = Json{{"poly", to_string(*parts[i])}, {"balanced", hf.balanced[i]}};
        print_json(out, Json{{"rho", matrix_to_json(m)}, {"h_form", h}, {"twist_route_agrees", twist_ok}});
    } else {
        out << to_string(m) << "\n";
        for (int i = 0; i < 4; ++i) out << names[i] << " = " << to_string(*parts[i]) << "\n";
        if (hf.all_balanced()) {
            out << "balanced: yes ×4\n";
        } else {
            out << "balanced: no (";
            bool first = true;
            for (int i = 0; i < 4; ++i)
                if (!hf.balanced[i]) {
                    out << (first ? "" : ", ") << names[i];
                    first = false;
                }
            out << ")\n";
        }
        out << "twist route agrees: " << (twist_ok ? "yes" : "no") << "\n";
    }
    return twist_ok ? kExitOk : kExitFailed;
}

int cmd_tree(const CommandConfig& cfg, std::istream& in, std::ostream& out) {
    const std::string& query = cfg.operand[0];
    auto need = [&](std::size_t n) {
        if (cfg.operands < n + 1) throw std::invalid_argument("tree " + query + " needs " + std::to_string(n) + " operands");
    };
    bool json = cfg.format == "json";
    if (query == "distance") {
        need(2);
        std::int64_t d = distance(vertex_arg(cfg.operand[1], in), vertex_arg(cfg.operand[2], in));
        if (json) print_json(out, Json{{"distance", d}});
        else out << d << "\n";
        return kExitOk;
    }
    if (query == "geodesic") {
        need(2);
        auto path = geodesic(vertex_arg(cfg.operand[1], in), vertex_arg(cfg.operand[2], in));
        if (cfg.format == "dot") {
            out << path_to_dot(path);
        } else if (json) {
            Json arr = Json::array();
            for (const auto& v : path) arr.push_back(to_string(v));
            print_json(out, Json{{"path", arr}});
        } else {
            for (const auto& v : path) out << to_string(v) << "\n";
        }
        return kExitOk;
    }
    if (query == "fixes") {
        need(2);
        Matrix2 g = matrix_arg(cfg.operand[1], in);
        TreeVertex v = vertex_arg(cfg.operand[2], in);
        bool fixed = cfg.operands > 3 ? fixes_edge(g, v, vertex_arg(cfg.operand[3], in)) : fixes_vertex(g, v);
        if (json) print_json(out, Json{{"fixed", fixed}});
        else out << (fixed ? "fixed" : "moved") << "\n";
        return kExitOk;
    }
    if (query == "translation") {
        need(1);
        TranslationReport r = translation_length(matrix_arg(cfg.operand[1], in), cfg.ball_radius);
        if (json) {
            print_json(out, Json{{"length", r.length}, {"witness", to_string(r.witness)}, {"truncated", r.truncated}});
        } else {
            out << r.length << (r.truncated ? " (upper bound)" : "") << "\n";
            out << "witness: " << to_string(r.witness) << "\n";
        }
        return kExitOk;
    }
    throw std::invalid_argument("unknown tree query '" + query + "' (distance, geodesic, fixes, translation)");
}

int cmd_normal_form(const CommandConfig& cfg, std::istream& in, std::ostream& out) {
    auto word = amalgam_normal_form(matrix_arg(cfg.operand[0], in));
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& l : word) arr.push_back(Json{{"side", to_string(l.side)}, {"matrix", to_string(l.matrix)}});
        print_json(out, Json{{"letters", arr}});
    } else {
        for (const auto& l : word) out << to_string(l.side) << ": " << to_string(l.matrix) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"kgcert: certificates for the Johnson kernel construction"};
    app.require_subcommand(1);
    CommandConfig cfg;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json", "dot"}));
        sub->add_option("--eps-table", cfg.eps_path, "JSON sign table for the pairing");
        sub->add_option("--seed", seed, "seed for a random sign table");
    };

    auto* verify = app.add_subcommand("verify", "build or check the infinite-generation certificate");
    verify->add_option("--genus", cfg.genus)->check(CLI::Range(2, 64));
    verify->add_option("--kmax", cfg.kmax);
    verify->add_option("--lift", cfg.lift_path, "base lift JSON (default canonical-C)");
    verify->add_option("--output,-o", cfg.output_path, "write the certificate JSON here");
    verify->add_option("--check", cfg.check_path, "re-check a stored certificate ('-' for stdin)");
    add_common(verify);

    auto* eval = app.add_subcommand("eval", "evaluate a Laurent polynomial expression");
    eval->add_option("expr", cfg.operand[0], "expression or '-'")->required();
    auto* eval_genus = eval->add_option("--genus", cfg.genus, "evaluate in L_g instead of Q[t, t^-1]")->check(CLI::Range(2, 64));
    add_common(eval);

    auto* rho_cmd = app.add_subcommand("rho", "compute rho of a lift class");
    rho_cmd->add_option("lift", cfg.operand[0], "canonical-C, a lift JSON path, or '-'")->required();
    rho_cmd->add_option("--genus", cfg.genus)->check(CLI::Range(2, 64));
    add_common(rho_cmd);

    auto* tree = app.add_subcommand("tree", "Bruhat-Tits tree queries");
    tree->add_option("query", cfg.operand[0], "distance, geodesic, fixes or translation")->required();
    tree->add_option("x", cfg.operand[1], "matrix, base, adjacent or '-'")->required();
    tree->add_option("y", cfg.operand[2]);
    tree->add_option("z", cfg.operand[3]);
    tree->add_option("--ball-radius", cfg.ball_radius, "search radius for translation")->check(CLI::NonNegativeNumber);
    add_common(tree);

    auto* nf = app.add_subcommand("normal-form", "reduced amalgam word for a matrix");
    nf->add_option("matrix", cfg.operand[0], "matrix or '-'")->required();
    add_common(nf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    for (auto* sub : {verify, eval, rho_cmd, tree, nf})
        if (sub->count("--seed") > 0) cfg.seed = seed;
    cfg.genus_given = eval_genus->count() > 0;
    while (cfg.operands < 4 && !cfg.operand[cfg.operands].empty()) ++cfg.operands;

    try {
        if (verify->parsed()) {
            if (cfg.kmax < 2) throw std::invalid_argument("--kmax must be at least 2");
            return cmd_verify(cfg, in, out, err);
        }
        if (eval->parsed()) return cmd_eval(cfg, in, out);
        if (rho_cmd->parsed()) return cmd_rho(cfg, in, out, err);
        if (tree->parsed()) return cmd_tree(cfg, in, out);
        return cmd_normal_form(cfg, in, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace kgcert
