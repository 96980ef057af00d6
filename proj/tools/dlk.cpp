#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dlt/correspondence.hpp"
#include "dlt/errors.hpp"
#include "dlt/io.hpp"

using namespace dlt;
using io::json;

namespace {

enum Exit { Ok = 0, Invalid = 1, InputError = 2, BudgetExceeded = 3 };

struct InputFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string ring;
    int epsilon = 0;
    unsigned long seed = 0;
    int jobs = 0;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputFailure("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputFailure(path + ": " + e.what());
    }
}

// Supply --ring and --epsilon where a file leaves them out; a file value that disagrees is an error.
void apply_defaults(json& j, const Globals& g) {
    if (j.is_object()) {
        if (j.contains("dims") && !g.ring.empty()) {
            if (!j.contains("ring")) {
                j["ring"] = g.ring;
            } else if (io::ring_from_json(j["ring"]) != io::ring_from_json(json(g.ring))) {
                throw InputFailure("ring " + j["ring"].dump() + " in file disagrees with --ring " + g.ring);
            }
        }
        if (j.contains("complex") && g.epsilon) {
            if (!j.contains("eps")) {
                j["eps"] = g.epsilon;
            } else if (j["eps"] != g.epsilon) {
                throw InputFailure("eps in file disagrees with --epsilon");
            }
        }
        for (auto& [k, v] : j.items()) apply_defaults(v, g);
    } else if (j.is_array()) {
        for (auto& v : j) apply_defaults(v, g);
    }
}

std::vector<KnotRecord> read_catalog(const std::string& path, const Globals& g) {
    std::ifstream in(path);
    if (!in) throw InputFailure("cannot open " + path);
    std::vector<KnotRecord> out;
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(line);
            if (g.epsilon && j.is_object() && !j.contains("k") && !j.contains("epsilon")) j["epsilon"] = g.epsilon;
            KnotRecord rec = io::record_from_json(j);
            validate_record(rec);
            out.push_back(std::move(rec));
        } catch (const json::exception& e) {
            throw InputFailure(path + ":" + std::to_string(no) + ": " + e.what());
        } catch (const Error& e) {
            throw InputFailure(path + ":" + std::to_string(no) + ": " + e.what());
        }
    }
    return out;
}

// Runs f over items on a few threads; results keep input order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, int jobs, F f) {
    using R = decltype(f(items[0]));
    std::vector<std::optional<R>> out(items.size());
    std::vector<std::exception_ptr> errs(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < items.size();) {
            try {
                out[i] = f(items[i]);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    int n = jobs > 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<int>(n, std::max<std::size_t>(items.size(), 1));
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::vector<R> res;
    for (auto& r : out) res.push_back(std::move(*r));
    return res;
}

std::vector<Angle> parse_angles(const std::string& list) {
    std::vector<Angle> out;
    std::stringstream ss(list);
    for (std::string a; std::getline(ss, a, ',');) {
        a.erase(std::remove(a.begin(), a.end(), ' '), a.end());
        if (!a.empty()) out.push_back(Angle::parse(a));
    }
    if (out.empty()) throw ParseError("no angles given");
    return out;
}

int cmd_report(const Globals& g, const std::string& catalog, long budget, const std::string& out_path, bool check) {
    auto records = read_catalog(catalog, g);
    auto reports = parallel_map(records, g.jobs, [&](const KnotRecord& r) { return knot_report(r, budget); });
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw InputFailure("cannot write " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    bool budget_hit = false, obstructed = false;
    for (const auto& r : reports) {
        out << io::to_json(r).dump() << '\n';
        budget_hit |= r.hyperbolic_verdict == HyperbolicVerdict::BudgetExceeded;
        obstructed |= r.witt_slice_obstructed;
        if (r.hyperbolic_verdict == HyperbolicVerdict::BudgetExceeded)
            std::cerr << r.name << ": hyperbolic search ran out of budget (" << budget << ")\n";
    }
    if (budget_hit) return BudgetExceeded;
    return check && obstructed ? Invalid : Ok;
}

int cmd_signatures(const Globals& g, const std::string& catalog, const std::string& angles, const std::string& csv) {
    auto records = read_catalog(catalog, g);
    auto as = parse_angles(angles);
    auto rows = parallel_map(records, g.jobs, [&](const KnotRecord& r) {
        std::vector<int> s;
        for (const Angle& a : as) s.push_back(levine_tristram(r.seifert, a));
        return s;
    });
    std::ofstream file;
    if (!csv.empty()) {
        file.open(csv);
        if (!file) throw InputFailure("cannot write " + csv);
    }
    std::ostream& out = csv.empty() ? std::cout : file;
    out << "name,angle,signature\n";
    for (std::size_t i = 0; i < records.size(); ++i)
        for (std::size_t a = 0; a < as.size(); ++a) {
            std::string name = records[i].name;
            if (name.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char c : name) q += c == '"' ? std::string("\"\"") : std::string(1, c);
                name = q + "\"";
            }
            out << name << ',' << as[a].str() << ',' << rows[i][a] << '\n';
        }
    return Ok;
}

int cmd_reduce(const Globals& g, const std::string& path, const std::string& trace_path, bool effects) {
    json j = read_json(path);
    apply_defaults(j, g);
    Structure x = io::structure_from_json(j.contains("structure") ? j["structure"] : j);
    ReductionTrace t = reduce(x, {effects});
    json summary = {{"n", x.n}, {"eps", x.eps}, {"rank", x.complex().total_rank()}, {"steps", t.steps.size()}};
    summary["output"] = t.output ? io::to_json(*t.output) : json();
    bool all_valid = true;
    json verdicts = json::array();
    for (const auto& c : t.certificates) {
        Verdict v = verify_double_cobordism(c);
        all_valid &= v.valid;
        verdicts.push_back(v.valid ? "Valid" : "Invalid: " + v.reason);
    }
    summary["certificates"] = verdicts;
    bool vanish = true;
    for (const auto& st : t.steps) vanish &= st.obstruction_plus.vanishes && st.obstruction_minus.vanishes;
    summary["obstructions_vanish"] = vanish;
    if (x.ring().kind == RingKind::Rationals) summary["dl_invariants"] = io::to_json(dl_invariants(x));
    std::cout << summary.dump(2) << '\n';
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw InputFailure("cannot write " + trace_path);
        out << io::to_json(t).dump(1) << '\n';
    }
    return all_valid && vanish ? Ok : Invalid;
}

int cmd_verify(const Globals& g, const std::string& path) {
    json j = read_json(path);
    apply_defaults(j, g);
    Verdict v;
    try {
        v = verify_double_cobordism(io::certificate_from_json(j));
    } catch (const ParseError&) {
        throw;
    } catch (const DimensionMismatch&) {
        throw;
    } catch (const UnsupportedRing&) {
        throw;
    } catch (const Error& e) {
        // well-formed JSON whose data fails a structural law
        v = Verdict::invalid(e.what());
    }
    if (v.valid) {
        std::cout << "Valid\n";
        return Ok;
    }
    std::cout << "Invalid\n";
    std::cerr << v.reason << '\n';
    return Invalid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dlk: double L-theory certificates and doubly-slice knot obstructions"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--ring", g.ring, "ring for inputs that do not name one (Z, Q, F5, Z[z,z^-1], Q[z,z^-1])");
    app.add_option("--epsilon", g.epsilon, "sign for inputs that do not give one")->check(CLI::IsMember({-1, 1}));
    app.add_option("--seed", g.seed, "seed for randomized steps; logged to stderr");
    app.add_option("-j,--jobs", g.jobs, "worker threads for catalog commands (0 = all cores)");

    std::string catalog, out_path, angles = "1/2", csv, complex_path, trace_path, cert_path;
    long budget = 20000;
    bool check = false, no_effects = false;

    auto* report = app.add_subcommand("report", "obstruction report per catalog record, as JSON lines");
    report->add_option("catalog", catalog, "catalog.jsonl")->required();
    report->add_option("--budget", budget, "hyperbolic search budget per record")->check(CLI::PositiveNumber);
    report->add_option("--out", out_path, "write report lines here instead of stdout");
    report->add_flag("--check", check, "exit 1 if any record's slice verdict is Obstructed");

    auto* sigs = app.add_subcommand("signatures", "Levine-Tristram signature samples as CSV");
    sigs->add_option("catalog", catalog, "catalog.jsonl")->required();
    sigs->add_option("--angles", angles, "comma separated k/m list");
    sigs->add_option("--csv", csv, "output file (stdout if omitted)");

    auto* red = app.add_subcommand("reduce", "reduce a structured complex to a Seifert form with certificates");
    red->add_option("complex", complex_path, "complex.json")->required();
    red->add_option("--emit-trace", trace_path, "write the full reduction trace as JSON");
    red->add_flag("--no-effects", no_effects, "skip the surgery effects in the trace");

    auto* ver = app.add_subcommand("verify", "check a double-cobordism certificate");
    ver->add_option("certificate", cert_path, "certificate.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : InputError;
    }
    std::cerr << "dlk: seed " << g.seed << '\n';

    try {
        if (!g.ring.empty()) io::ring_from_json(json(g.ring));
        if (*report) return cmd_report(g, catalog, budget, out_path, check);
        if (*sigs) return cmd_signatures(g, catalog, angles, csv);
        if (*red) return cmd_reduce(g, complex_path, trace_path, !no_effects);
        if (*ver) return cmd_verify(g, cert_path);
    } catch (const InputFailure& e) {
        std::cerr << "dlk: " << e.what() << '\n';
        return InputError;
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << "dlk: " << e.what() << '\n';
        return BudgetExceeded;
    } catch (const json::exception& e) {
        std::cerr << "dlk: bad input: " << e.what() << '\n';
        return InputError;
    } catch (const Error& e) {
        std::cerr << "dlk: " << e.what() << '\n';
        return InputError;
    }
    return Ok;
}
