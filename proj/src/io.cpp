#include "dlt/io.hpp"

#include "dlt/errors.hpp"

namespace dlt::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

json components(const ChainMap& f) {
    json out = json::object();
    for (int r = f.src().lo(); r <= f.src().hi(); ++r) {
        Matrix m = f[r];
        if (m.rows() && m.cols() && !m.is_zero()) out[std::to_string(r)] = to_json(m);
    }
    return out;
}

ChainMap map_with(const ChainComplex& src, const ChainComplex& tgt, int degree, const json& comps) {
    ChainMap out(src, tgt, degree);
    if (comps.is_null()) return out;
    if (!comps.is_object()) throw ParseError("map components must be an object keyed by degree");
    for (auto it = comps.begin(); it != comps.end(); ++it) {
        int r;
        try {
            r = std::stoi(it.key());
        } catch (const std::logic_error&) {
            throw ParseError("bad degree key '" + it.key() + "'");
        }
        Matrix m = matrix_from_json(it.value(), src.ring());
        if (m.rows() != tgt.dim(r + degree) || m.cols() != src.dim(r))
            throw DimensionMismatch("component " + it.key() + " has the wrong shape");
        out.set(r, m);
    }
    return out;
}

std::string kind_name(StructureKind k) { return k == StructureKind::SymmetricPhi0 ? "symmetric" : "ultraquadratic"; }

StructureKind kind_from(const json& j) {
    if (!j.contains("kind")) return StructureKind::Ultraquadratic;
    std::string s = j.at("kind").get<std::string>();
    if (s == "ultraquadratic") return StructureKind::Ultraquadratic;
    if (s == "symmetric") return StructureKind::SymmetricPhi0;
    throw ParseError("unknown structure kind '" + s + "'");
}

std::string kind_name(LagrangianKind k) {
    switch (k) {
        case LagrangianKind::MetabolicHalf: return "metabolic";
        case LagrangianKind::HyperbolicPlus: return "plus";
        case LagrangianKind::HyperbolicMinus: return "minus";
    }
    return "";
}

json entries(const std::vector<DWEntry>& es) {
    json out = json::array();
    for (const auto& e : es)
        out.push_back({{"component", e.component.str('t')},
                       {"level", e.level},
                       {"place", e.place},
                       {"place_desc", e.place_desc},
                       {"modulus", e.modulus},
                       {"value", e.value}});
    return out;
}

}  // namespace

RingSpec ring_from_json(const json& j) {
    if (!j.is_string()) throw ParseError("ring must be a string");
    std::string s = j.get<std::string>();
    bool id = false;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "/id") == 0) {
        id = true;
        s.resize(s.size() - 3);
    }
    RingSpec R = RingSpec::parse(s);
    if (id) R.involution = Involution::Identity;
    return R;
}

json to_json(const RingSpec& R) { return R.name(); }

Laurent element_from_json(const json& j, const RingSpec& R) {
    Laurent x;
    if (j.is_number_integer()) {
        x = Laurent(j.get<long>());
    } else if (j.is_string()) {
        x = Laurent::parse(j.get<std::string>());
    } else {
        throw ParseError("ring element must be an integer or a string");
    }
    if (!R.contains(x)) throw DimensionMismatch("element " + x.str() + " is not in " + R.name());
    return R.normalize(x);
}

Matrix matrix_from_json(const json& j, const RingSpec& R) {
    const json* data = &j;
    int rows = -1, cols = -1;
    if (j.is_object()) {
        rows = int_field(j, "rows");
        cols = int_field(j, "cols");
        data = j.contains("data") ? &j.at("data") : nullptr;
    }
    if (data && !data->is_array()) throw ParseError("matrix must be an array of rows");
    int dr = data ? static_cast<int>(data->size()) : 0;
    int dc = dr ? static_cast<int>((*data)[0].size()) : 0;
    if (rows < 0) rows = dr, cols = dc;
    if (dr && (dr != rows || dc != cols)) throw ParseError("matrix data does not match its shape");
    Matrix m(R, rows, cols);
    for (int i = 0; i < dr; ++i) {
        const json& row = (*data)[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) throw ParseError("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.set(i, c, element_from_json(row[c], R));
    }
    return m;
}

json to_json(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {{"rows", m.rows()}, {"cols", m.cols()}};
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            const Laurent& x = m(i, c);
            if (x.is_constant() && x.constant().get_den() == 1 && x.constant().get_num().fits_slong_p())
                row.push_back(x.constant().get_num().get_si());
            else
                row.push_back(x.str());
        }
        rows.push_back(row);
    }
    return rows;
}

ChainComplex complex_from_json(const json& j) {
    RingSpec R = ring_from_json(field(j, "ring"));
    const json& dims = field(j, "dims");
    if (!dims.is_array()) throw ParseError("dims must be an array");
    std::vector<int> d;
    for (const auto& x : dims) {
        if (!x.is_number_integer() || x.get<int>() < 0) throw ParseError("dims must be nonnegative integers");
        d.push_back(x.get<int>());
    }
    ChainComplex C(R, j.contains("lo") ? int_field(j, "lo") : 0, d);
    if (j.contains("d")) {
        const json& ds = j.at("d");
        if (!ds.is_object()) throw ParseError("d must be an object keyed by degree");
        for (auto it = ds.begin(); it != ds.end(); ++it) {
            int r = std::stoi(it.key());
            Matrix m = matrix_from_json(it.value(), R);
            if (m.rows() != C.dim(r - 1) || m.cols() != C.dim(r))
                throw DimensionMismatch("differential " + it.key() + " has the wrong shape");
            C.set_d(r, m);
        }
    }
    if (!C.is_chain()) throw CycleViolation("d o d is not zero");
    return C;
}

json to_json(const ChainComplex& C) {
    json dims = json::array();
    for (int r = C.lo(); r <= C.hi(); ++r) dims.push_back(C.dim(r));
    json d = json::object();
    for (int r = C.lo() + 1; r <= C.hi(); ++r)
        if (C.dim(r) && C.dim(r - 1) && !C.d(r).is_zero()) d[std::to_string(r)] = to_json(C.d(r));
    return {{"ring", C.ring().name()}, {"lo", C.hi() < C.lo() ? 0 : C.lo()}, {"dims", dims}, {"d", d}};
}

ChainMap map_from_json(const json& j) {
    ChainComplex src = complex_from_json(field(j, "src")), tgt = complex_from_json(field(j, "tgt"));
    return map_with(src, tgt, j.contains("degree") ? int_field(j, "degree") : 0,
                    j.contains("components") ? j.at("components") : json());
}

json to_json(const ChainMap& f) {
    return {{"degree", f.degree()}, {"src", to_json(f.src())}, {"tgt", to_json(f.tgt())}, {"components", components(f)}};
}

Structure structure_from_json(const json& j) {
    int n = int_field(j, "n"), eps = int_field(j, "eps");
    ChainComplex C = complex_from_json(field(j, "complex"));
    ChainMap psi = map_with(dualize(C, n), C, 0, j.contains("psi") ? j.at("psi") : json());
    return Structure(n, eps, kind_from(j), psi);
}

json to_json(const Structure& x) {
    return {{"n", x.n}, {"eps", x.eps}, {"kind", kind_name(x.kind)}, {"complex", to_json(x.complex())},
            {"psi", components(x.psi)}};
}

StructuredPair pair_from_json(const json& j) {
    Structure base = structure_from_json(field(j, "base"));
    ChainComplex D = complex_from_json(field(j, "target"));
    ChainMap f = map_with(base.complex(), D, 0, j.contains("f") ? j.at("f") : json());
    ChainMap delta = map_with(dualize(D, base.n), D, 1, j.contains("delta") ? j.at("delta") : json());
    return StructuredPair(f, delta, base);
}

json to_json(const StructuredPair& x) {
    return {{"base", to_json(x.base)}, {"target", to_json(x.target())}, {"f", components(x.f)},
            {"delta", components(x.delta)}};
}

DoubleCobordismCertificate certificate_from_json(const json& j) {
    return {structure_from_json(field(j, "left")), structure_from_json(field(j, "right")),
            pair_from_json(field(j, "plus")), pair_from_json(field(j, "minus"))};
}

json to_json(const DoubleCobordismCertificate& c) {
    return {{"left", to_json(c.left)}, {"right", to_json(c.right)}, {"plus", to_json(c.plus)},
            {"minus", to_json(c.minus)}};
}

SeifertForm seifert_from_json(const json& j) {
    RingSpec R = j.contains("ring") ? ring_from_json(j.at("ring")) : RingSpec::rationals();
    return seifert_new(matrix_from_json(field(j, "psi"), R), int_field(j, "eps"));
}

json to_json(const SeifertForm& F) { return {{"ring", F.ring().name()}, {"eps", F.eps}, {"psi", to_json(F.psi)}}; }

json to_json(const DWInvariantVector& v) {
    return {{"eps", v.eps}, {"entries", entries(v.entries)}, {"residues", entries(v.residues)},
            {"zero", v.is_zero()}, {"text", v.str()}};
}

json to_json(const SurgeryObstruction& o) {
    json out = {{"vanishes", o.vanishes}, {"composite", to_json(o.composite)},
                {"composite_t", to_json(o.composite_t)}};
    out["witness"] = o.witness ? to_json(*o.witness) : json();
    out["witness_t"] = o.witness_t ? to_json(*o.witness_t) : json();
    return out;
}

json to_json(const ReductionTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) {
        json st = {{"plus", to_json(s.plus)},
                   {"minus", to_json(s.minus)},
                   {"obstruction_plus", to_json(s.obstruction_plus)},
                   {"obstruction_minus", to_json(s.obstruction_minus)}};
        for (auto [key, e] : {std::pair{"effect_plus", &s.effect_plus}, std::pair{"effect_minus", &s.effect_minus}})
            st[key] = *e ? json{{"effect", to_json((*e)->effect)}, {"trace", to_json((*e)->trace)}} : json();
        steps.push_back(st);
    }
    json certs = json::array();
    for (const auto& c : t.certificates) certs.push_back(to_json(c));
    return {{"input", to_json(t.input)},
            {"steps", steps},
            {"output", t.output ? to_json(*t.output) : json()},
            {"representative", to_json(t.representative)},
            {"certificates", certs}};
}

json to_json(const LinkingForm& T) {
    return {{"pair", T.pair.name()}, {"eps", T.eps}, {"presentation", to_json(T.presentation)},
            {"numerator", to_json(T.numerator)}, {"determinant", det(T.presentation).str()}};
}

KnotRecord record_from_json(const json& j) {
    if (j.contains("schema") && j.at("schema") != 1) throw ParseError("unsupported catalog schema");
    KnotRecord rec;
    rec.name = field(j, "name").get<std::string>();
    rec.seifert = matrix_from_json(field(j, "seifert"), RingSpec::integers());
    if (rec.seifert.rows() != rec.seifert.cols()) throw ParseError("Seifert matrix of " + rec.name + " is not square");
    bool has_k = j.contains("k"), has_eps = j.contains("epsilon");
    if (!has_k && !has_eps) throw ParseError("record " + rec.name + " needs k or epsilon");
    if (has_k) rec.k = int_field(j, "k");
    if (has_eps) {
        int e = int_field(j, "epsilon");
        if (e != 1 && e != -1) throw ParseError("epsilon must be +1 or -1");
        if (has_k && e != rec.eps()) throw ParseError("record " + rec.name + ": epsilon disagrees with (-1)^(k+1)");
        if (!has_k) rec.k = e == -1 ? 0 : 1;
    }
    if (j.contains("provenance")) rec.provenance = j.at("provenance").get<std::string>();
    return rec;
}

json to_json(const KnotRecord& rec) {
    return {{"schema", 1}, {"name", rec.name}, {"seifert", to_json(rec.seifert)}, {"k", rec.k},
            {"epsilon", rec.eps()}, {"provenance", rec.provenance}};
}

json to_json(const ObstructionReport& r) {
    json samples = json::array();
    for (const auto& [a, s] : r.signature_samples) samples.push_back({{"angle", a.str()}, {"signature", s}});
    json witness = json::array();
    for (const auto& L : r.hyperbolic_witness)
        witness.push_back({{"kind", kind_name(L.kind)}, {"inclusion", to_json(L.inclusion)}});
    json verdict = {{"verdict", verdict_name(r.hyperbolic_verdict)}};
    if (r.hyperbolic_verdict == HyperbolicVerdict::Hyperbolic) {
        verdict["witness"] = witness;
        verdict["witness_ring"] = r.hyperbolic_over_z ? "Z" : "Q";
    }
    json slice = r.witt_slice_obstructed ? json{{"verdict", "Obstructed"}, {"reason", r.witt_slice_reason}}
                                         : json{{"verdict", "NotObstructed"}};
    return {{"name", r.name},
            {"alexander", r.alexander.str()},
            {"alexander_is_unit_at_1", r.alexander_is_unit_at_1},
            {"signature_samples", samples},
            {"seifert_dw", to_json(r.seifert_dw)},
            {"hyperbolic_verdict", verdict},
            {"blanchfield", to_json(r.blanchfield)},
            {"witt_slice_verdict", slice}};
}

}  // namespace dlt::io
