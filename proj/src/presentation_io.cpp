#include "pvac/presentation_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pvac {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& why) { throw ParseError(where + ": " + why); }

Scalar scalar_of(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_scalar(j.get<std::string>());
        if (j.is_number_integer()) return Scalar(j.get<long>());
    } catch (const Error& e) {
        bad(where, e.what());
    }
    bad(where, "expected a rational string \"p/q\" or an integer");
}

int int_of(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

const json& array_of(const json& j, std::size_t size, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array");
    if (j.size() != size)
        bad(where, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
    return j;
}

Vec vec_of(const json& j, int d, const std::string& where) {
    array_of(j, d, where);
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = scalar_of(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

Mat mat_of(const json& j, int d, const std::string& where) {
    array_of(j, d, where);
    Mat m(d);
    for (int i = 0; i < d; ++i) m[i] = vec_of(j[i], d, where + "[" + std::to_string(i) + "]");
    return m;
}

// table[a][b] = d-vector
std::vector<Vec> table_of(const json& j, int d, const std::string& where) {
    std::vector<Vec> t(static_cast<std::size_t>(d) * d, Vec(d, Scalar(0)));
    array_of(j, d, where);
    for (int a = 0; a < d; ++a) {
        const std::string wa = where + "[" + std::to_string(a) + "]";
        array_of(j[a], d, wa);
        for (int b = 0; b < d; ++b) t[a * d + b] = vec_of(j[a][b], d, wa + "[" + std::to_string(b) + "]");
    }
    return t;
}

json scalar_json(const Scalar& q) { return to_string(q); }

json vec_json(const Vec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(scalar_json(x));
    return a;
}

json table_json(const std::vector<Vec>& t, int d) {
    json out = json::array();
    for (int a = 0; a < d; ++a) {
        json row = json::array();
        for (int b = 0; b < d; ++b) row.push_back(vec_json(t[a * d + b]));
        out.push_back(row);
    }
    return out;
}

json mat_json(const Mat& m) {
    json out = json::array();
    for (auto& r : m) out.push_back(vec_json(r));
    return out;
}

std::vector<std::string> names_of(const json& doc, int d) {
    std::vector<std::string> names;
    if (!doc.contains("names")) {
        for (int i = 0; i < d; ++i) names.push_back("e" + std::to_string(i + 1));
        return names;
    }
    array_of(doc["names"], d, "names");
    for (auto& x : doc["names"]) {
        if (!x.is_string()) bad("names", "expected strings");
        names.push_back(x.get<std::string>());
    }
    return names;
}

HModule module_of(const json& doc, int d) {
    int N = doc.contains("N") ? int_of(doc["N"], "N") : 0;
    if (N < 0 || N > 4) bad("N", "must be between 0 and 4");
    Variant var = Variant::W;
    if (doc.contains("variant")) {
        if (!doc["variant"].is_string()) bad("variant", "expected \"W\" or \"K\"");
        try {
            var = parse_variant(doc["variant"].get<std::string>());
        } catch (const Error& e) {
            bad("variant", e.what());
        }
    }
    std::vector<Parity> par(d, 0);
    if (doc.contains("parities")) {
        array_of(doc["parities"], d, "parities");
        for (int i = 0; i < d; ++i) {
            par[i] = int_of(doc["parities"][i], "parities");
            if (par[i] != 0 && par[i] != 1) bad("parities", "entries must be 0 or 1");
        }
    }
    HModule V(N, var, par);
    V.set_names(names_of(doc, d));
    if (doc.contains("T")) V.set_T(mat_of(doc["T"], d, "T"));
    if (doc.contains("S")) {
        array_of(doc["S"], N, "S");
        for (int i = 1; i <= N; ++i) V.set_S(i, mat_of(doc["S"][i - 1], d, "S[" + std::to_string(i - 1) + "]"));
    }
    return V;
}

// one bracket entry: list of {"lambda": m, "theta": [i...], "coef": [d rationals]}
Poly bracket_poly(const json& j, const HModule& V, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a list of terms");
    Poly p(V.N(), 1, V.variant());
    for (std::size_t k = 0; k < j.size(); ++k) {
        const json& t = j[k];
        const std::string wt = where + "[" + std::to_string(k) + "]";
        if (!t.is_object()) bad(wt, "expected an object");
        Mono m(1);
        if (t.contains("lambda")) {
            m.e[0] = int_of(t["lambda"], wt + ".lambda");
            if (m.e[0] < 0) bad(wt + ".lambda", "must be non-negative");
        }
        int sg = 1;
        if (t.contains("theta")) {
            if (!t["theta"].is_array()) bad(wt + ".theta", "expected a list of indices");
            std::vector<int> idx;
            for (auto& x : t["theta"]) idx.push_back(int_of(x, wt + ".theta"));
            for (int i : idx)
                if (i < 1 || i > V.N()) bad(wt + ".theta", "index out of range 1.." + std::to_string(V.N()));
            m.th[0] = make_set(idx);
            if (popcount(m.th[0]) != static_cast<int>(idx.size())) bad(wt + ".theta", "repeated index");
            sg = sort_sign(idx);  // listed order may differ from the ascending one
        }
        if (!t.contains("coef")) bad(wt, "missing coef");
        Vec c = vec_of(t["coef"], V.dim(), wt + ".coef");
        for (int b = 0; b < V.dim(); ++b)
            if (sgn(c[b]) != 0) p.add(m, {b}, c[b] * sg);
    }
    return p;
}

json poly_json(const Poly& p, int d) {
    std::map<Mono, Vec> by;
    for (auto& [t, c] : p.terms()) {
        auto& v = by.try_emplace(t.m, Vec(d, Scalar(0))).first->second;
        v[t.t.at(0)] += c;
    }
    json out = json::array();
    for (auto& [m, v] : by) {
        json t;
        t["lambda"] = m.e[0];
        t["theta"] = members(m.th[0]);
        t["coef"] = vec_json(v);
        out.push_back(t);
    }
    return out;
}

}  // namespace

std::string kind_name(FileKind k) {
    switch (k) {
        case FileKind::HModule: return "h-module";
        case FileKind::SusyPva: return "susy-pva";
        case FileKind::Poisson: return "poisson";
        case FileKind::Lie: return "lie";
        case FileKind::Commutative: return "commutative";
    }
    return "?";
}

PresentationFile parse_presentation(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("document", "expected a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) bad("kind", "missing or not a string");
    const std::string ks = doc["kind"].get<std::string>();
    PresentationFile f;
    if (ks == "h-module") f.kind = FileKind::HModule;
    else if (ks == "susy-pva") f.kind = FileKind::SusyPva;
    else if (ks == "poisson") f.kind = FileKind::Poisson;
    else if (ks == "lie") f.kind = FileKind::Lie;
    else if (ks == "commutative") f.kind = FileKind::Commutative;
    else bad("kind", "unknown kind '" + ks + "'");
    if (!doc.contains("dim")) bad("dim", "missing");
    const int d = int_of(doc["dim"], "dim");
    if (d < 0) bad("dim", "must be non-negative");

    if (f.kind == FileKind::HModule || f.kind == FileKind::SusyPva) {
        HModule V = module_of(doc, d);
        f.module = V;
        if (f.kind == FileKind::SusyPva) {
            SusyPvaPresentation P = SusyPvaPresentation::zero(V);
            if (doc.contains("product")) P.prod = table_of(doc["product"], d, "product");
            if (doc.contains("bracket")) {
                array_of(doc["bracket"], d, "bracket");
                for (int a = 0; a < d; ++a) {
                    array_of(doc["bracket"][a], d, "bracket[" + std::to_string(a) + "]");
                    for (int b = 0; b < d; ++b)
                        P.br[a * d + b] = bracket_poly(doc["bracket"][a][b], V,
                                                       "bracket[" + std::to_string(a) + "][" + std::to_string(b) + "]");
                }
            }
            f.susy = P;
            if (doc.contains("vacuum")) f.vacuum = vec_of(doc["vacuum"], d, "vacuum");
        }
        return f;
    }
    for (const char* key : {"N", "variant", "parities", "T", "S"})
        if (doc.contains(key)) bad(key, "not allowed for kind '" + ks + "'");
    PoissonPresentation P = PoissonPresentation::zero(d);
    P.names = names_of(doc, d);
    if (doc.contains("product")) {
        if (f.kind == FileKind::Lie) bad("product", "not allowed for kind 'lie'");
        P.prod = table_of(doc["product"], d, "product");
    }
    if (doc.contains("bracket")) {
        if (f.kind == FileKind::Commutative) bad("bracket", "not allowed for kind 'commutative'");
        P.br = table_of(doc["bracket"], d, "bracket");
    }
    f.poisson = P;
    return f;
}

PresentationFile load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string poisson_to_json(const PoissonPresentation& P, FileKind kind) {
    json doc;
    doc["kind"] = kind_name(kind);
    doc["dim"] = P.d;
    if (!P.names.empty()) doc["names"] = P.names;
    if (kind != FileKind::Lie) doc["product"] = table_json(P.prod, P.d);
    if (kind != FileKind::Commutative) doc["bracket"] = table_json(P.br, P.d);
    return doc.dump(2);
}

std::string susy_to_json(const SusyPvaPresentation& P) {
    const HModule& V = P.V;
    const int d = V.dim();
    json doc;
    doc["kind"] = "susy-pva";
    doc["N"] = V.N();
    doc["variant"] = variant_name(V.variant());
    doc["dim"] = d;
    doc["parities"] = V.parities();
    doc["names"] = V.names();
    doc["T"] = mat_json(V.T());
    json S = json::array();
    for (int i = 1; i <= V.N(); ++i) S.push_back(mat_json(V.S(i)));
    doc["S"] = S;
    doc["product"] = table_json(P.prod, d);
    json br = json::array();
    for (int a = 0; a < d; ++a) {
        json row = json::array();
        for (int b = 0; b < d; ++b) row.push_back(poly_json(P.br[a * d + b], d));
        br.push_back(row);
    }
    doc["bracket"] = br;
    return doc.dump(2);
}

}  // namespace pvac
