#include "ella/json_io.hpp"

namespace ella {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw parse_error("json: " + what);
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

long long int_from(const json& j) {
    if (!j.is_number_integer()) bad("expected an integer");
    return j.get<long long>();
}

} // namespace

json rational_json(const rational& x) { return x.str(); }

rational rational_from(const json& j) {
    if (j.is_number_integer()) return rational(j.get<long long>());
    if (!j.is_string()) bad("expected a rational \"p/q\" string");
    return rational::parse(j.get<std::string>());
}

json qpair_json(const qpair& x) { return json::array({x.r.str(), x.s.str()}); }

qpair qpair_from(const json& j) {
    if (!j.is_array() || j.size() != 2) bad("expected [r, s] with rational entries");
    return qpair(rational_from(j[0]), rational_from(j[1]));
}

json epoint_json(const epoint& x) { return qpair_json(x.v); }

epoint epoint_from(const json& j) { return epoint(qpair_from(j)); }

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("expected [re, im]");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

json intmat_json(const intmat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols; ++j) r.push_back(m.at(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

intmat intmat_from(const json& j) {
    if (!j.is_array() || j.empty()) bad("expected a nonempty array of rows");
    int rows = (int)j.size();
    if (!j[0].is_array()) bad("expected rows to be arrays");
    int cols = (int)j[0].size();
    intmat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != cols) bad("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.at(i, c) = int_from(j[i][c]);
    }
    return m;
}

json arrangement_json(const earrangement& c) {
    json hps = json::array();
    for (const auto& h : c.hps) {
        json coeffs = json::array();
        for (long long x : h.c) coeffs.push_back(x);
        hps.push_back(json{{"coeffs", std::move(coeffs)}, {"z", epoint_json(h.z)}});
    }
    json w = json::array();
    for (const auto& wi : c.w) w.push_back(qpair_json(wi));
    return json{{"k", c.k},
                {"tau", cplx_json(c.mp.tau())},
                {"weights", std::move(w)},
                {"hyperplanes", std::move(hps)}};
}

earrangement arrangement_from(const json& j, int truncation_margin) {
    int k = (int)int_from(field(j, "k"));
    modular_param mp(cplx_from(field(j, "tau")), truncation_margin);
    std::vector<qpair> w;
    for (const auto& wi : field(j, "weights")) w.push_back(qpair_from(wi));
    std::vector<ehyperplane> hps;
    for (const auto& h : field(j, "hyperplanes")) {
        std::vector<long long> c;
        for (const auto& x : field(h, "coeffs")) c.push_back(int_from(x));
        hps.emplace_back(std::move(c), epoint_from(field(h, "z")));
    }
    return earrangement(k, mp, std::move(w), std::move(hps));
}

json betti_json(const betti_report& rep) {
    json verts = json::array();
    for (size_t i = 0; i < rep.vertices.size(); ++i) {
        json pt = json::array();
        for (const auto& x : rep.vertices[i].point) pt.push_back(epoint_json(x));
        verts.push_back(json{{"point", std::move(pt)},
                             {"incident", rep.vertices[i].incident},
                             {"os_dim", rep.os_dims[i]}});
    }
    return json{{"total", rep.total}, {"vertices", std::move(verts)}};
}

json solutions_json(const esolutions& sol) {
    json pts = json::array();
    for (const auto& p : sol.points) {
        json pt = json::array();
        for (const auto& x : p) pt.push_back(epoint_json(x));
        pts.push_back(std::move(pt));
    }
    return json{{"points", std::move(pts)}, {"directions", intmat_json(sol.directions)}};
}

json snf_json(const snf_result& s) {
    return json{{"u", intmat_json(s.u)}, {"d", intmat_json(s.d)}, {"v", intmat_json(s.v)}};
}

} // namespace ella
