#include "hedgehog/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace hedgehog::cli {

namespace {

struct Handled {
    Json result;
    std::string status = "ok";
    std::vector<std::string> citations;
};

Handled handle_decide(const Json& payload, const Options& opt) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Vec coeffs =
        coeffs_from_json(k, require_member(payload, "coefficients", "payload"), "coefficients");
    std::optional<Vec> point;
    if (payload.contains("point") && !payload["point"].is_null())
        point = coeffs_from_json(k, payload["point"], "point");
    QuadricProblem p(k, coeffs, point);
    Decision d = decide_section(p, EngineOptions{opt.search_bound});
    Handled h{decision_to_json(k, d), "ok", {}};
    if (d.verdict == Verdict::Unknown) h.status = "unknown";
    if (!d.criterion.empty()) h.citations.push_back(d.criterion);
    return h;
}

Handled handle_sphere(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    long n = require_int(require_member(payload, "n", "payload"), "n");
    Decision d = sphere_decision(k, n);
    Handled h{decision_to_json(k, d), "ok", {}};
    if (d.verdict == Verdict::Unknown) h.status = "unknown";
    if (!d.criterion.empty()) h.citations.push_back(d.criterion);
    return h;
}

Handled handle_section(const Json& payload, const Options& opt) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Vec coeffs =
        coeffs_from_json(k, require_member(payload, "coefficients", "payload"), "coefficients");
    QuadricProblem p(k, coeffs);
    Handled h;
    if (p.n() % 2 == 1) {
        h.result["certificate"] = certificate_to_json(section_odd(k, coeffs));
        h.citations.push_back(criteria::kOddPairing);
        return h;
    }
    if (k.kind != FieldKind::RealQuadratic && is_isotropic(p.form())) {
        try {
            h.result["certificate"] =
                certificate_to_json(section_isotropic(p, opt.search_bound));
            h.citations.push_back(criteria::kIsotropicSplitting);
            return h;
        } catch (const SearchExhausted& e) {
            h.status = "unknown";
            h.result["note"] = std::string("isotropic, but no vector within bound: ") + e.what();
            return h;
        }
    }
    h.status = "unknown";
    h.result["note"] = "no explicit construction for even n with anisotropic q";
    return h;
}

Handled handle_verify(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Vec coeffs =
        coeffs_from_json(k, require_member(payload, "coefficients", "payload"), "coefficients");
    SectionCertificate cert =
        certificate_from_json(k, require_member(payload, "certificate", "payload"), "certificate");
    QuadricProblem p(k, coeffs);
    Handled h;
    h.result["valid"] = verify_section(p, cert);
    return h;
}

Handled handle_isotropy(const Json& payload, const Options& opt) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Vec coeffs =
        coeffs_from_json(k, require_member(payload, "coefficients", "payload"), "coefficients");
    DiagonalForm q(k, coeffs);
    Handled h;
    bool iso = is_isotropic(q);
    h.result["isotropic"] = iso;
    if (iso) {
        try {
            h.result["vector"] = coeffs_to_json(k, find_isotropic_vector(q, opt.search_bound));
        } catch (const SearchExhausted& e) {
            h.result["note"] = std::string("no vector within bound: ") + e.what();
        }
    }
    return h;
}

Handled handle_represent(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Vec coeffs =
        coeffs_from_json(k, require_member(payload, "coefficients", "payload"), "coefficients");
    Field f(k);
    FieldElem value =
        f.from_string(require_string(require_member(payload, "value", "payload"), "value"));
    Handled h;
    h.result["represents"] = represents(DiagonalForm(k, coeffs), value);
    return h;
}

Handled handle_invariants(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    GWElem x = gw_from_json(k, require_member(payload, "element", "payload"), "element");
    Handled h;
    h.result = invariants_to_json(k, invariants_of(x));
    return h;
}

Handled handle_transfer(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Field f(k);
    FieldElem alpha =
        f.from_string(require_string(require_member(payload, "alpha", "payload"), "alpha"));
    std::string fn =
        require_string(require_member(payload, "functional", "payload"), "functional");
    Functional functional;
    if (fn == "trace")
        functional = Functional::FieldTrace;
    else if (fn == "s1")
        functional = Functional::SOne;
    else
        throw SchemaViolation("functional: expected 'trace' or 's1'");
    QuadExtension ext(k, alpha, functional);
    ExtGWElem x = ext_gw_from_json(ext, require_member(payload, "element", "payload"), "element");
    Handled h;
    h.result = gw_to_json(scharlau_transfer(x));
    return h;
}

Handled handle_euler(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    long n = require_int(require_member(payload, "n", "payload"), "n");
    Vec coeffs =
        coeffs_from_json(k, require_member(payload, "coefficients", "payload"), "coefficients");
    Handled h;
    h.result = gw_to_json(euler_characteristic(k, n, coeffs));
    return h;
}

Handled handle_level(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    Handled h;
    std::optional<int> s = level(k);
    if (s)
        h.result["level"] = *s;
    else
        h.result["level"] = "infinite";
    return h;
}

Handled handle_ideal(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    GWElem target = gw_from_json(k, require_member(payload, "target", "payload"), "target");
    const Json& gens = require_member(payload, "generators", "payload");
    if (!gens.is_array()) throw SchemaViolation("generators: expected an array");
    std::vector<GWElem> generators;
    for (std::size_t i = 0; i < gens.size(); ++i)
        generators.push_back(gw_from_json(k, gens[i], "generators[" + std::to_string(i) + "]"));
    IdealMembership m = ideal_membership_detail(target, generators);
    Handled h;
    h.result["member"] = m.member;
    h.result["closure_iterations"] = m.closure_iterations;
    return h;
}

Handled handle_quotient(const Json& payload, const Options&) {
    FieldDescriptor k = field_from_json(require_member(payload, "field", "payload"), "field");
    const Json& gens = require_member(payload, "generators", "payload");
    if (!gens.is_array()) throw SchemaViolation("generators: expected an array");
    std::vector<GWElem> generators;
    for (std::size_t i = 0; i < gens.size(); ++i)
        generators.push_back(gw_from_json(k, gens[i], "generators[" + std::to_string(i) + "]"));
    QuotientReport rep = quotient_by_even_ideal(k, generators);
    Handled h;
    if (rep.is_z2) {
        h.result["iso"] = "Z/2";
        h.result["detected_by"] = "mod 2 rank map";
    } else {
        h.result["iso"] = "summary";
        h.result["all_even_rank"] = rep.all_even_rank;
        h.result["failed_probes"] = rep.failed_probes;
        h.result["rank_gcd"] = rep.rank_gcd;
        h.result["reachable_witt_classes"] = rep.reachable_witt_classes;
    }
    return h;
}

using Handler = Handled (*)(const Json&, const Options&);

Handler find_handler(const std::string& command) {
    if (command == "decide") return handle_decide;
    if (command == "sphere") return handle_sphere;
    if (command == "section") return handle_section;
    if (command == "verify") return handle_verify;
    if (command == "isotropy") return handle_isotropy;
    if (command == "represent") return handle_represent;
    if (command == "invariants") return handle_invariants;
    if (command == "transfer") return handle_transfer;
    if (command == "euler") return handle_euler;
    if (command == "level") return handle_level;
    if (command == "ideal") return handle_ideal;
    if (command == "quotient") return handle_quotient;
    return nullptr;
}

} // namespace

Result run_command(const std::string& command, const Json& payload, const Options& opt) {
    Result res;
    Handler handler = find_handler(command);
    if (!handler) {
        res.response = {{"status", "error"},
                        {"error", {{"kind", "UnknownCommand"}, {"message", command}}}};
        res.exit_code = 2;
        return res;
    }
    long saved_bound = factor_bound_default();
    try {
        set_factor_bound_default(opt.factor_bound);
        Handled h = handler(payload, opt);
        res.response["status"] = h.status;
        res.response["result"] = h.result;
        res.response["citations"] = h.citations;
        res.exit_code = (h.status == "ok") ? 0 : 1;
    } catch (const Error& e) {
        res.response = {{"status", "error"},
                        {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        res.exit_code = 2;
    } catch (const std::exception& e) {
        res.response = {{"status", "error"},
                        {"error", {{"kind", "Internal"}, {"message", e.what()}}}};
        res.exit_code = 2;
    }
    set_factor_bound_default(saved_bound);
    return res;
}

int run_main(int argc, const char* const* argv) {
    CLI::App app{"exact decision procedures for tangent vector fields on affine quadrics"};
    std::string command, input_file;
    Options opt;
    app.add_option("command", command,
                   "one of: decide sphere section verify isotropy represent invariants "
                   "transfer euler level ideal quotient")
        ->required();
    app.add_option("--input", input_file, "read the JSON payload from a file instead of stdin");
    app.add_option("--search-bound", opt.search_bound, "height bound for vector searches")
        ->check(CLI::PositiveNumber);
    app.add_option("--factor-bound", opt.factor_bound, "trial-division bound for factoring")
        ->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string text;
    if (!input_file.empty()) {
        std::ifstream in(input_file);
        if (!in) {
            std::cout << Json{{"status", "error"},
                              {"error",
                               {{"kind", "InputError"},
                                {"message", "cannot open " + input_file}}}}
                             .dump(2)
                      << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }

    Json payload;
    try {
        payload = Json::parse(text);
    } catch (const std::exception& e) {
        std::cout << Json{{"status", "error"},
                          {"error", {{"kind", "SchemaViolation"},
                                     {"message", std::string("invalid JSON: ") + e.what()}}}}
                         .dump(2)
                  << "\n";
        return 2;
    }

    Result res = run_command(command, payload, opt);
    std::cout << res.response.dump(2) << "\n";
    return res.exit_code;
}

} // namespace hedgehog::cli
