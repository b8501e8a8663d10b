#include "hedgehog/json_io.hpp"

namespace hedgehog {

const Json& require_member(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaViolation(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaViolation(path + "." + key + ": missing");
    return *it;
}

std::string require_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaViolation(path + ": expected a string");
    return j.get<std::string>();
}

long require_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaViolation(path + ": expected an integer");
    return j.get<long>();
}

FieldDescriptor field_from_json(const Json& j, const std::string& path) {
    std::string kind = require_string(require_member(j, "kind", path), path + ".kind");
    try {
        if (kind == "rationals") return FieldDescriptor::rationals();
        if (kind == "reals") return FieldDescriptor::reals();
        if (kind == "qbar") return FieldDescriptor::quadratically_closed();
        if (kind == "fp")
            return FieldDescriptor::finite_prime(
                Int(require_int(require_member(j, "p", path), path + ".p")));
        if (kind == "padic")
            return FieldDescriptor::padic(
                Int(require_int(require_member(j, "p", path), path + ".p")));
        if (kind == "realquad")
            return FieldDescriptor::real_quadratic(
                Int(require_int(require_member(j, "d", path), path + ".d")));
    } catch (const UnsupportedField& e) {
        throw SchemaViolation(path + ": " + e.what());
    }
    throw SchemaViolation(path + ".kind: unknown field kind '" + kind + "'");
}

Json field_to_json(const FieldDescriptor& k) {
    Json j;
    switch (k.kind) {
    case FieldKind::Rationals: j["kind"] = "rationals"; break;
    case FieldKind::Reals: j["kind"] = "reals"; break;
    case FieldKind::QuadraticallyClosed: j["kind"] = "qbar"; break;
    case FieldKind::FinitePrime:
        j["kind"] = "fp";
        j["p"] = k.p.get_si();
        break;
    case FieldKind::PAdic:
        j["kind"] = "padic";
        j["p"] = k.p.get_si();
        break;
    case FieldKind::RealQuadratic:
        j["kind"] = "realquad";
        j["d"] = k.d.get_si();
        break;
    }
    return j;
}

namespace {

FieldElem elem_from_json(const Field& f, const Json& j, const std::string& path) {
    std::string s = require_string(j, path);
    try {
        return f.from_string(s);
    } catch (const Error& e) {
        throw SchemaViolation(path + ": " + e.what());
    }
}

} // namespace

Vec coeffs_from_json(const FieldDescriptor& k, const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaViolation(path + ": expected an array");
    Field f(k);
    Vec out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(elem_from_json(f, j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Json coeffs_to_json(const FieldDescriptor& k, const Vec& v) {
    Field f(k);
    Json j = Json::array();
    for (const auto& e : v) j.push_back(f.to_string(e));
    return j;
}

GramMatrix gram_from_json(const FieldDescriptor& k, const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaViolation(path + ": expected an array of rows");
    Matrix m;
    for (std::size_t i = 0; i < j.size(); ++i)
        m.push_back(coeffs_from_json(k, j[i], path + "[" + std::to_string(i) + "]"));
    try {
        return GramMatrix(k, m);
    } catch (const Error& e) {
        throw SchemaViolation(path + ": " + e.what());
    }
}

Json gram_to_json(const GramMatrix& g) {
    Json j = Json::array();
    for (const auto& row : g.entries) j.push_back(coeffs_to_json(g.field, row));
    return j;
}

GWElem gw_from_json(const FieldDescriptor& k, const Json& j, const std::string& path) {
    GWElem x{k, {}, {}};
    if (!j.is_object()) throw SchemaViolation(path + ": expected {\"plus\":[],\"minus\":[]}");
    if (j.contains("plus")) x.plus = coeffs_from_json(k, j["plus"], path + ".plus");
    if (j.contains("minus")) x.minus = coeffs_from_json(k, j["minus"], path + ".minus");
    return x;
}

Json gw_to_json(const GWElem& x) {
    Json j;
    j["plus"] = coeffs_to_json(x.field, x.plus);
    j["minus"] = coeffs_to_json(x.field, x.minus);
    return j;
}

ExtGWElem ext_gw_from_json(const QuadExtension& ext, const Json& j, const std::string& path) {
    Field f(ext.base);
    auto side = [&](const char* name) {
        std::vector<ExtElem> out;
        if (!j.contains(name)) return out;
        const Json& arr = j[name];
        if (!arr.is_array()) throw SchemaViolation(path + "." + name + ": expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string p = path + "." + name + "[" + std::to_string(i) + "]";
            const Json& pair = arr[i];
            if (!pair.is_array() || pair.size() != 2)
                throw SchemaViolation(p + ": expected [u, v] over the base field");
            out.push_back(ExtElem{elem_from_json(f, pair[0], p + "[0]"),
                                  elem_from_json(f, pair[1], p + "[1]")});
        }
        return out;
    };
    if (!j.is_object()) throw SchemaViolation(path + ": expected {\"plus\":[],\"minus\":[]}");
    return ExtGWElem{ext, side("plus"), side("minus")};
}

SectionCertificate certificate_from_json(const FieldDescriptor& k, const Json& j,
                                         const std::string& path) {
    SectionCertificate c{k, {}, std::nullopt};
    const Json& entries = require_member(j, "entries", path);
    if (!entries.is_array()) throw SchemaViolation(path + ".entries: expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i)
        c.entries.push_back(
            coeffs_from_json(k, entries[i], path + ".entries[" + std::to_string(i) + "]"));
    if (j.contains("basis_change")) {
        const Json& bc = j["basis_change"];
        if (!bc.is_array()) throw SchemaViolation(path + ".basis_change: expected an array");
        Matrix m;
        for (std::size_t i = 0; i < bc.size(); ++i)
            m.push_back(
                coeffs_from_json(k, bc[i], path + ".basis_change[" + std::to_string(i) + "]"));
        c.basis_change = m;
    }
    return c;
}

Json certificate_to_json(const SectionCertificate& c) {
    Json j;
    Json entries = Json::array();
    for (const auto& e : c.entries) entries.push_back(coeffs_to_json(c.field, e));
    j["entries"] = entries;
    if (c.basis_change) {
        Json bc = Json::array();
        for (const auto& row : *c.basis_change) bc.push_back(coeffs_to_json(c.field, row));
        j["basis_change"] = bc;
    }
    return j;
}

Json decision_to_json(const FieldDescriptor& /*k*/, const Decision& d) {
    Json j;
    switch (d.verdict) {
    case Verdict::SectionExists: j["verdict"] = "SectionExists"; break;
    case Verdict::NoSection: j["verdict"] = "NoSection"; break;
    case Verdict::Unknown: j["verdict"] = "Unknown"; break;
    }
    if (!d.criterion.empty()) j["criterion"] = d.criterion;
    if (d.certificate) j["certificate"] = certificate_to_json(*d.certificate);
    if (d.obstruction) {
        Json o;
        switch (d.obstruction->kind) {
        case ObstructionKind::AllEmbeddingsPositive: o["kind"] = "AllEmbeddingsPositive"; break;
        case ObstructionKind::LevelTooLarge:
            o["kind"] = "LevelTooLarge";
            if (d.obstruction->level)
                o["level"] = *d.obstruction->level;
            else
                o["level"] = "infinite";
            o["bound"] = d.obstruction->level_bound;
            break;
        case ObstructionKind::NecessaryConditionFails:
            o["kind"] = "NecessaryConditionFails";
            break;
        }
        j["obstruction"] = o;
    }
    if (!d.diagnostics.empty()) j["diagnostics"] = d.diagnostics;
    return j;
}

Json invariants_to_json(const FieldDescriptor& /*k*/, const GWInvariants& inv) {
    Json j;
    j["rank"] = inv.rank;
    if (inv.disc) j["disc"] = inv.disc->rep.get_str();
    if (inv.signed_disc) j["signed_disc"] = inv.signed_disc->rep.get_str();
    if (!inv.hasse.empty()) {
        Json h;
        for (const auto& [place, val] : inv.hasse) h[place.name()] = val;
        j["hasse"] = h;
    }
    if (inv.signature) j["signature"] = *inv.signature;
    if (inv.signatures2) {
        j["signatures"] = Json::array({inv.signatures2->first, inv.signatures2->second});
    }
    return j;
}

} // namespace hedgehog
