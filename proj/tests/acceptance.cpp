// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dlt/correspondence.hpp"
#include "dlt/errors.hpp"
#include "dlt/io.hpp"
#include "dlt/random.hpp"

using namespace dlt;

#ifndef DLT_DATA_DIR
#define DLT_DATA_DIR "data"
#endif

namespace {

const RingSpec QQ = RingSpec::rationals();
const RingSpec F5 = RingSpec::prime_field(5);
const RingSpec ZZ = RingSpec::integers();
const RingSpec ZL = RingSpec::int_laurent();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " [" << seconds_since(t0) << " s]";
    if (!o.detail.empty()) line << " -- " << o.detail;
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failures;
}

bool witness_ok(const SurgeryObstruction& o) {
    return o.vanishes && o.witness && o.witness_t && o.witness->boundary() == o.composite &&
           o.witness_t->boundary() == o.composite_t;
}

Structure trefoil_complex() {
    return seifert_to_complex(seifert_new(Matrix::from_ints(QQ, {{-1, 1}, {0, -1}}), -1));
}

// Nonsingular random form of the given rank.
SeifertForm random_form(Rng& g, int rank, int eps) {
    for (;;) {
        try {
            return seifert_new(random_matrix(g, QQ, rank, rank), eps);
        } catch (const NotNonsingular&) {
        }
    }
}

Matrix random_invertible(Rng& g, const RingSpec& R, int n) {
    for (;;) {
        Matrix m = random_matrix(g, R, n, n);
        if (inverse(m)) return m;
    }
}

// Forms that are hyperbolic by construction: G + (-G), or a conjugated standard block.
SeifertForm hyperbolic_form(Rng& g, int half, int eps) {
    if (g() % 2 && (eps == 1 || half % 2 == 0)) {
        SeifertForm G = random_form(g, half, eps);
        return change_basis(direct_sum(G, negate(G)), random_unimodular(g, QQ, 2 * half));
    }
    return change_basis(hyperbolic_standard(half, eps, random_invertible(g, QQ, half)),
                        random_unimodular(g, QQ, 2 * half));
}

bool witnesses_verify(const SeifertForm& F, const std::vector<Lagrangian>& w) {
    if (w.size() != 2) return false;
    return is_lagrangian(F, w[0].inclusion) && is_lagrangian(F, w[1].inclusion) &&
           are_complementary(F, w[0].inclusion, w[1].inclusion);
}

std::vector<SurgeryObstruction> criterion1_obstructions;

}  // namespace

int main() {
    std::cout << "acceptance suite" << std::endl;

    run(1, "odd-dimensional complexes reduce to verified double-nullcobordism certificates", [] {
        Outcome o;
        Rng g(1001);
        auto t0 = Clock::now();
        int count = 0, valid = 0, max_rank = 0;
        for (int trial = 0; trial < 60; ++trial) {
            const RingSpec& R = trial % 2 ? QQ : F5;
            int n = trial % 4 < 2 ? 1 : 3;
            int eps = trial % 3 ? 1 : -1;
            Structure x = random_poincare(g, R, n, eps, 12);
            max_rank = std::max(max_rank, x.complex().total_rank());
            ReductionTrace t = reduce(x);
            ++count;
            for (const auto& st : t.steps) {
                criterion1_obstructions.push_back(st.obstruction_plus);
                criterion1_obstructions.push_back(st.obstruction_minus);
            }
            if (t.output) {
                o.fail("odd-dimensional reduction produced a form");
                continue;
            }
            if (t.certificates.size() != 1) {
                o.fail("expected one certificate");
                continue;
            }
            // through JSON, as the CLI would see it
            auto cert = io::certificate_from_json(io::json::parse(io::to_json(t.certificates[0]).dump()));
            Verdict v = verify_double_cobordism(cert);
            if (v.valid)
                ++valid;
            else
                o.fail("trial " + std::to_string(trial) + ": " + v.reason);
        }
        double secs = seconds_since(t0);
        if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
        if (max_rank > 12) o.fail("rank above 12");
        if (o.pass)
            o.detail = std::to_string(valid) + "/" + std::to_string(count) + " Valid, max rank " +
                       std::to_string(max_rank);
        return o;
    });

    run(2, "dl_invariants of a skew-suspension are the eps-negated invariants", [] {
        Outcome o;
        Rng g(2002);
        int count = 0, nonzero = 0;
        // dl_invariants are rational; even n included so the check is not all zeros
        for (int trial = 0; trial < 60; ++trial) {
            int n = trial % 4;
            int eps = trial % 3 ? 1 : -1;
            Structure x = random_poincare(g, QQ, n, eps, 12);
            DWInvariantVector v = dl_invariants(x);
            if (!v.is_zero()) ++nonzero;
            if (!(dl_invariants(skew_suspend(x)) == v.with_eps(-eps))) o.fail("trial " + std::to_string(trial));
            ++count;
        }
        Structure t = trefoil_complex();
        DWInvariantVector tv = dl_invariants(t);
        if (tv.is_zero()) o.fail("trefoil invariants vanish");
        if (!(dl_invariants(skew_suspend(t)) == tv.with_eps(1))) o.fail("trefoil");
        if (o.pass)
            o.detail = std::to_string(count) + " random (" + std::to_string(nonzero) + " nonzero) + trefoil";
        return o;
    });

    run(3, "stably hyperbolic forms over Q are hyperbolic", [] {
        Outcome o;
        Rng g(3003);
        int trials = 0, hyperbolic = 0;
        for (int trial = 0; trial < 120; ++trial) {
            int eps = trial % 2 ? 1 : -1;
            int half = 1 + static_cast<int>(g() % 3);
            // odd ranks only exist for eps = +1
            int rank = eps == 1 ? 2 * half - static_cast<int>(g() % 2) : 2 * half;
            SeifertForm F = trial % 3 == 0 ? random_form(g, rank, eps) : hyperbolic_form(g, half, eps);
            int m = 1 + static_cast<int>(g() % 2);
            SeifertForm H = hyperbolic_standard(m, eps, random_invertible(g, QQ, m));
            SeifertForm S = direct_sum(F, H);
            auto a = lagrangian_search(F, SearchMode::Hyperbolic);
            auto b = lagrangian_search(S, SearchMode::Hyperbolic);
            ++trials;
            if (a.has_value() != b.has_value()) o.fail("verdicts differ on trial " + std::to_string(trial));
            if (a) {
                ++hyperbolic;
                if (!witnesses_verify(F, *a)) o.fail("witness for F fails on trial " + std::to_string(trial));
            }
            if (b && !witnesses_verify(S, *b)) o.fail("witness for F + H fails on trial " + std::to_string(trial));
        }
        if (o.pass)
            o.detail = std::to_string(trials) + " trials, " + std::to_string(hyperbolic) + " hyperbolic";
        return o;
    });

    run(4, "bundled corpus: zero DW invariants exactly when hyperbolic, with valid certificates", [] {
        Outcome o;
        std::vector<std::pair<std::string, SeifertForm>> forms;
        std::ifstream in(std::string(DLT_DATA_DIR) + "/corpus.jsonl");
        if (!in) {
            o.fail("corpus not found");
            return o;
        }
        for (std::string line; std::getline(in, line);) {
            if (line.empty()) continue;
            KnotRecord r = io::record_from_json(io::json::parse(line));
            forms.emplace_back(r.name, seifert_new(r.seifert.map(QQ), r.eps()));
        }
        Rng g(4004);
        for (int i = 0; i < 10; ++i) {
            int eps = i % 2 ? 1 : -1;
            forms.emplace_back("random_" + std::to_string(i),
                               i < 5 ? random_form(g, 2 + 2 * (i % 2), eps) : hyperbolic_form(g, 1 + i % 2, eps));
        }
        int hyp = 0;
        for (const auto& [name, F] : forms) {
            bool zero = dw_invariants(F).is_zero();
            auto w = lagrangian_search(F, SearchMode::Hyperbolic);
            if (zero != w.has_value()) o.fail(name + ": dw zero = " + (zero ? "yes" : "no") + " but search disagrees");
            if (!w) continue;
            ++hyp;
            auto cert = certificate_from_lagrangians(F, (*w)[0].inclusion, (*w)[1].inclusion);
            if (!is_poincare_pair(cert.plus) || !is_poincare_pair(cert.minus)) o.fail(name + ": pair not Poincare");
            Verdict v = verify_double_cobordism(cert);
            if (!v.valid) o.fail(name + ": " + v.reason);
        }
        if (o.pass)
            o.detail = std::to_string(forms.size()) + " forms, " + std::to_string(hyp) + " hyperbolic certificates Valid";
        return o;
    });

    run(5, "certificates from homotopy equivalences, block inverse identities", [] {
        Outcome o;
        Rng g(5005);
        int valid = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const RingSpec& R = trial % 2 ? QQ : F5;
            Structure x = random_poincare(g, R, trial % 4, trial % 3 ? 1 : -1, 8);
            auto eq = random_equivalence(g, x);
            auto cert = cobordisms_from_homotopy_equivalence(eq.h, eq.g, x, eq.y);
            Verdict v = verify_double_cobordism(cert);
            if (v.valid)
                ++valid;
            else
                o.fail("trial " + std::to_string(trial) + ": " + v.reason);
            if (trial % 5) continue;
            const ChainComplex& C = x.complex();
            ChainMap e = compose(x.psi, homotopy_inverse(duality_map(x)));
            ChainMap ome = ChainMap::identity(C) - e;
            ChainMap one = ChainMap::identity(eq.y.complex());
            ChainMap A = vstack(hstack(eq.h, one), hstack(compose(eq.h, ome), -compose(eq.h, compose(e, eq.g))));
            ChainMap B = vstack(hstack(compose(e, eq.g), eq.g), hstack(compose(eq.h, compose(ome, eq.g)), -one));
            if (!nullhomotopy_solve(compose(B, A) - ChainMap::identity(A.src())) ||
                !nullhomotopy_solve(compose(A, B) - ChainMap::identity(A.tgt())))
                o.fail("block inverse identity fails on trial " + std::to_string(trial));
        }
        if (o.pass) o.detail = std::to_string(valid) + "/100 Valid, block identities on 20";
        return o;
    });

    run(6, "every reduction step has vanishing surgery obstructions with exact witnesses", [] {
        Outcome o;
        int ok = 0;
        for (const auto& ob : criterion1_obstructions) {
            if (witness_ok(ob))
                ++ok;
            else
                o.fail("a step in criterion 1 has no exact nullhomotopy");
        }
        if (criterion1_obstructions.empty()) o.fail("no steps recorded");
        if (o.pass) o.detail = std::to_string(ok) + " obstructions checked";
        return o;
    });

    run(7, "trefoil golden numbers", [] {
        Outcome o;
        auto t0 = Clock::now();
        KnotRecord r;
        r.name = "3_1";
        r.seifert = Matrix::from_ints(ZZ, {{-1, 1}, {0, -1}});
        ObstructionReport rep = knot_report(r);
        Laurent golden = Laurent::parse("z^2 - z + 1");
        if (rep.alexander != golden) o.fail("alexander " + rep.alexander.str());
        int lt = levine_tristram(r.seifert, {1, 2});
        if (lt != -2) o.fail("signature " + std::to_string(lt));
        if (rep.hyperbolic_verdict != HyperbolicVerdict::NotHyperbolic) o.fail(verdict_name(rep.hyperbolic_verdict));
        Laurent d = det(rep.blanchfield.presentation);
        d = d.shifted(-d.lo());
        if (d.leading() < 0) d = -d;
        if (d != golden) o.fail("blanchfield determinant " + d.str());
        double secs = seconds_since(t0);
        if (secs >= 1) o.fail("took " + std::to_string(secs) + " s");
        if (o.pass) o.detail = "alexander " + rep.alexander.str() + ", signature -2, NotHyperbolic";
        return o;
    });

    run(8, "P-acyclicity of multiplication by p exactly when p(1) = +-1", [] {
        Outcome o;
        const char* polys[] = {"1 - z",         "z^2 - z + 1",   "1",           "z",
                               "-1",            "2",             "1 + z",       "z^2 - 3z + 1",
                               "2z - 1",        "3 - 2z",        "z^2 + z + 1", "1 - 2z + z^2",
                               "z^3 - z + 1",   "2z^2 - 3z + 2", "z^-1 + z - 1", "3",
                               "z^2 - 2z + 2",  "5z - 4",        "z^2 + 1",     "z^4 - z^3 + z^2 - z + 1"};
        int pass = 0, fail = 0;
        for (const char* p : polys) {
            Laurent q = Laurent::parse(p);
            ChainComplex C(ZL, 0, {1, 1});
            C.set_d(1, Matrix::from_rows(ZL, {{q}}));
            mpq_class at1 = q.eval(1);
            bool expect = at1 == 1 || at1 == -1;
            bool got = p_acyclic_test(C);
            (got ? pass : fail)++;
            if (got != expect) o.fail(std::string(p) + ": test says " + (got ? "acyclic" : "not acyclic"));
        }
        if (o.pass) o.detail = "20 polynomials, " + std::to_string(pass) + " acyclic, " + std::to_string(fail) + " not";
        return o;
    });

    run(9, "linking form round trip through 1-dimensional complexes", [] {
        Outcome o;
        std::vector<std::pair<std::string, LinkingForm>> forms;
        forms.emplace_back("Z/5", linking_new(Matrix::from_ints(ZZ, {{5}}), LocPair::integers(), 1,
                                               Matrix::from_ints(ZZ, {{2}})));
        forms.emplace_back("trefoil", blanchfield_from_seifert(Matrix::from_ints(ZZ, {{-1, 1}, {0, -1}})));
        forms.emplace_back("figure-eight", blanchfield_from_seifert(Matrix::from_ints(ZZ, {{1, 1}, {0, -1}})));
        Rng g(9009);
        for (int i = 0; i < 8; ++i) {
            Matrix M(ZZ, 2, 2);
            int eps = i % 2 ? 1 : -1;
            for (;;) {
                M = random_matrix(g, ZZ, 2, 2, 4);
                if (eps == 1) {
                    M = M + M.transpose();
                } else {
                    M = M - M.transpose();
                }
                if (!det(M).is_zero()) break;
            }
            forms.emplace_back("random_" + std::to_string(i),
                               linking_new(M, LocPair::integers(), eps, Matrix::identity(ZZ, 2)));
        }
        for (const auto& [name, T] : forms) {
            Structure x = complex_of_linking_form(T);
            LinkingForm back = linking_form_of_complex(x, T.pair);
            if (presentation_invariants(back) != presentation_invariants(T)) o.fail(name + ": modules differ");
            if (!linking_symmetric(back) || back.eps != T.eps) o.fail(name + ": extracted form not eps-symmetric");
            for (int i = 0; i < T.generators(); ++i)
                for (int j = 0; j < T.generators(); ++j)
                    if (linking_value(back, i, j) != linking_value(T, i, j)) o.fail(name + ": values differ");
        }
        if (o.pass) o.detail = std::to_string(forms.size()) + " forms recovered";
        return o;
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
