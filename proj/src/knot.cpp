#include "dlt/knot.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "dlt/errors.hpp"
#include "dlt/poly.hpp"

namespace dlt {

namespace {

Matrix over(const Matrix& V, const RingSpec& R) {
    Matrix out(R, V.rows(), V.cols());
    for (int i = 0; i < V.rows(); ++i)
        for (int j = 0; j < V.cols(); ++j) out.set(i, j, V(i, j));
    return out;
}

void require_square(const Matrix& V) {
    if (V.rows() != V.cols()) throw DimensionMismatch("Seifert matrix must be square");
}

// det(V + eps z V^T) over Z[z, z^-1].
Matrix seifert_presentation(const Matrix& V, int eps) {
    require_square(V);
    RingSpec R = RingSpec::int_laurent();
    Matrix M(R, V.rows(), V.cols());
    for (int i = 0; i < V.rows(); ++i)
        for (int j = 0; j < V.cols(); ++j) M.set(i, j, V(i, j) + Laurent::monomial(eps, 1) * V(j, i));
    return M;
}

Laurent reciprocal(const Laurent& q) { return poly::monic(q.involute().shifted(q.hi())); }

}  // namespace

void validate_record(const KnotRecord& rec) {
    require_square(rec.seifert);
    seifert_new(over(rec.seifert, RingSpec::integers()), rec.eps());
}

Laurent alexander_polynomial(const Matrix& V, int eps) {
    Laurent p = det(seifert_presentation(V, eps));
    if (p.is_zero()) throw NormalizationFailure("Alexander polynomial vanishes");
    mpq_class at1 = p.eval(1);
    if (at1 != 1 && at1 != -1) throw NormalizationFailure("Alexander polynomial is not a unit at 1: " + p.str());
    p = p.shifted(-p.lo());
    if (p.leading() < 0) p = -p;
    return p;
}

std::string Angle::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Angle Angle::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw ParseError("angle must look like k/m: '" + text + "'");
    Angle a;
    try {
        std::size_t used = 0;
        a.num = std::stol(text.substr(0, slash), &used);
        if (used != slash) throw ParseError("bad angle numerator in '" + text + "'");
        std::string d = text.substr(slash + 1);
        a.den = std::stol(d, &used);
        if (used != d.size()) throw ParseError("bad angle denominator in '" + text + "'");
    } catch (const std::logic_error&) {
        throw ParseError("angle must look like k/m: '" + text + "'");
    }
    if (a.den <= 0) throw ParseError("angle denominator must be positive: '" + text + "'");
    return a;
}

int levine_tristram(const Matrix& V, Angle omega) {
    require_square(V);
    long k = omega.num % omega.den;
    if (k < 0) k += omega.den;
    if (k == 0) throw OmegaIsOne("omega = 1 (angle " + omega.str() + ")");
    RingSpec QQ = RingSpec::rationals();
    Matrix Vq = over(V, QQ);
    Matrix S = Vq + Vq.transpose(), K = Vq - Vq.transpose();
    if (2 * k == omega.den) return signature(S);

    // Real form of the hermitian matrix, rescaled so every entry is a polynomial in c = cos:
    // [[(1 - c) S, (1 + c) K], [-(1 + c) K, (1 + c) S]], twice the signature.
    poly::RealNumberField F(poly::cos_root(k, omega.den));
    int n = V.rows();
    Laurent c = Laurent::z(1);
    Laurent a = Laurent(1) - c, b = Laurent(1) + c;
    std::vector<std::vector<Laurent>> m(2 * n, std::vector<Laurent>(2 * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = a * S(i, j);
            m[n + i][n + j] = b * S(i, j);
            m[i][n + j] = b * K(i, j);
            m[n + i][j] = -(b * K(i, j));
        }
    return poly::signature_over(F, m) / 2;
}

LinkingForm blanchfield_from_seifert(const Matrix& V, int eps) {
    Matrix M = seifert_presentation(V, eps);
    RingSpec R = M.ring();
    Matrix Q = Matrix::scalar(R, V.rows(), Laurent(1) - Laurent::z(1));
    return linking_new(M, LocPair::alexander(), -eps, Q);
}

std::vector<Angle> default_angles() {
    return {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {1, 6}, {1, 8}, {3, 8}, {1, 10}, {3, 10}, {1, 12}, {5, 12}};
}

bool fox_milnor_holds(const Laurent& alexander) {
    Laurent p = alexander.shifted(-alexander.lo());
    std::map<std::string, std::pair<Laurent, int>> mult;
    for (const auto& [q, e] : poly::factor(p)) mult[q.str()] = {q, e};
    for (const auto& [key, qe] : mult) {
        const auto& [q, e] = qe;
        Laurent r = reciprocal(q);
        if (r == q) {
            if (e % 2) return false;
        } else {
            auto it = mult.find(r.str());
            if (it == mult.end() || it->second.second != e) return false;
        }
    }
    return true;
}

std::string verdict_name(HyperbolicVerdict v) {
    switch (v) {
        case HyperbolicVerdict::Hyperbolic: return "Hyperbolic";
        case HyperbolicVerdict::NotHyperbolic: return "NotHyperbolic";
        case HyperbolicVerdict::BudgetExceeded: return "BudgetExceeded";
    }
    return "";
}

ObstructionReport knot_report(const KnotRecord& rec, long budget, const std::vector<Angle>& angles) {
    validate_record(rec);
    int eps = rec.eps();
    ObstructionReport out;
    out.name = rec.name;
    out.alexander = alexander_polynomial(rec.seifert, eps);
    mpq_class at1 = out.alexander.eval(1);
    out.alexander_is_unit_at_1 = at1 == 1 || at1 == -1;
    for (const Angle& a : angles) out.signature_samples.push_back({a, levine_tristram(rec.seifert, a)});

    SeifertForm Fq = seifert_new(over(rec.seifert, RingSpec::rationals()), eps);
    out.seifert_dw = dw_invariants(Fq);
    // decided over Q; a Z basis is then attempted from the same lagrangians
    SearchOptions opts;
    opts.budget = budget;
    try {
        auto r = lagrangian_search(Fq, SearchMode::Hyperbolic, opts);
        if (r) {
            out.hyperbolic_verdict = HyperbolicVerdict::Hyperbolic;
            out.hyperbolic_witness = *r;
        } else {
            out.hyperbolic_verdict = HyperbolicVerdict::NotHyperbolic;
        }
    } catch (const SearchBudgetExceeded&) {
        out.hyperbolic_verdict = HyperbolicVerdict::BudgetExceeded;
    }
    if (out.hyperbolic_verdict == HyperbolicVerdict::Hyperbolic) {
        try {
            SeifertForm Fz = seifert_new(over(rec.seifert, RingSpec::integers()), eps);
            if (auto r = lagrangian_search(Fz, SearchMode::Hyperbolic, opts)) {
                out.hyperbolic_witness = *r;
                out.hyperbolic_over_z = true;
            }
        } catch (const SearchBudgetExceeded&) {
        }
    }
    out.blanchfield = blanchfield_from_seifert(rec.seifert, eps);

    for (const auto& [a, s] : out.signature_samples)
        if (s != 0) {
            out.witt_slice_obstructed = true;
            out.witt_slice_reason = "signature " + std::to_string(s) + " at omega = exp(2 pi i " + a.str() + ")";
            return out;
        }
    if (!fox_milnor_holds(out.alexander)) {
        out.witt_slice_obstructed = true;
        out.witt_slice_reason = "Alexander polynomial is not of the form f(z) f(z^-1)";
        return out;
    }
    if (!witt_invariants(Fq).is_zero()) {
        out.witt_slice_obstructed = true;
        out.witt_slice_reason = "rational Witt class of the Seifert form is nonzero";
    }
    return out;
}

}  // namespace dlt
