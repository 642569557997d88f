// kummerlab command-line front end: every operation takes JSON (inline or
// from a file) and emits a JSON (or TSV) report on stdout.
//
// Exit codes: 0 success, 1 mathematical rejection (a check failed, a point
// does not exist), 2 input error, 3 undecided / search exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "kummerlab/json_io.hpp"

using nlohmann::json;
using namespace kummerlab;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;
constexpr int kUndecided = 3;

json load_input(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
        std::ifstream in(arg);
        if (!in) throw input_error("cannot open input file: " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON input");
    return j;
}

void emit(const json& j, bool tsv_mode, const std::vector<std::string>& tsv_fields) {
    if (!tsv_mode) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < tsv_fields.size(); ++i) {
        const json* v = j.contains(tsv_fields[i]) ? &j[tsv_fields[i]] : nullptr;
        if (i) std::cout << '\t';
        if (!v)
            std::cout << "-";
        else if (v->is_string())
            std::cout << v->get<std::string>();
        else
            std::cout << v->dump();
    }
    std::cout << "\n";
}

int thread_budget() {
    if (const char* env = std::getenv("KUMMERLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::vector<Integer> squarefree_twists(const Integer& from, const Integer& to) {
    std::vector<Integer> out;
    for (Integer d = from; d <= to; ++d) {
        if (d == 0) continue;
        if (SquareClass(d).rep() == d) out.push_back(d);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 2-descent and Kummer-surface toolkit"};
    app.require_subcommand(1);
    bool tsv = false;
    int verbosity = 0;
    app.add_flag("--tsv", tsv, "emit scalar TSV summaries instead of JSON");
    app.add_flag("-v,--verbose", verbosity, "report timing on stderr");

    // hilbert
    auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
    std::string h_a, h_b, h_v;
    hilbert_cmd->add_option("-a", h_a, "first argument (rational)")->required();
    hilbert_cmd->add_option("-b", h_b, "second argument (rational)")->required();
    hilbert_cmd->add_option("-v", h_v, "place: a prime or 'inf'")->required();

    // selmer
    auto* selmer_cmd = app.add_subcommand("selmer", "2-Selmer group of a twisted curve");
    std::string selmer_input;
    selmer_cmd->add_option("input", selmer_input, "curve JSON {\"c\":[...],\"d\":n}")
        ->required();

    // mazur-rubin
    auto* mr_cmd = app.add_subcommand("mazur-rubin", "twist comparison report");
    std::string mr_input;
    mr_cmd->add_option("input", mr_input,
                       "JSON {\"curve\": {...}, \"d\": n, \"T\": [odd primes]}")
        ->required();

    // twist-scan
    auto* scan_cmd = app.add_subcommand("twist-scan", "scan squarefree twists");
    std::string scan_input;
    scan_cmd->add_option("input", scan_input,
                         "JSON {\"curve\": {...}, \"from\": n, \"to\": n}")
        ->required();

    // two-structure
    auto* ts_cmd = app.add_subcommand("two-structure", "certify a (extended) 2-structure");
    std::string ts_input;
    ts_cmd->add_option("input", ts_input,
                       "JSON {\"curves\": [...], \"M\": [...], \"extended\": bool}")
        ->required();

    // admissible
    auto* adm_cmd = app.add_subcommand("admissible", "admissibility of (A, alpha)");
    std::string adm_input;
    adm_cmd->add_option("input", adm_input,
                        "JSON {\"curves\": [...], \"M\": [...], \"alpha\": [[...], ...]}")
        ->required();

    // find-prime
    auto* fp_cmd = app.add_subcommand("find-prime", "least prime with prescribed symbols");
    std::string fp_input;
    fp_cmd->add_option("input", fp_input,
                       "JSON {\"conditions\": [[class, sym], ...], \"bound\": n}")
        ->required();

    // kummer-build
    auto* kb_cmd = app.add_subcommand("kummer-build", "quadric forms of a Kummer spec");
    std::string kb_input;
    kb_cmd->add_option("input", kb_input, "spec JSON {\"a\":[...],\"b\":[...]}")->required();

    // kummer-check
    auto* kc_cmd = app.add_subcommand("kummer-check", "verify the descent hypotheses of a Kummer spec");
    std::string kc_input;
    kc_cmd->add_option("input", kc_input, "spec JSON with M")->required();

    // kummer-els
    auto* ke_cmd = app.add_subcommand("kummer-els", "everywhere-local-solubility certificate");
    std::string ke_input;
    ke_cmd->add_option("input", ke_input, "spec JSON")->required();

    // search-point
    auto* sp_cmd = app.add_subcommand("search-point", "exhaustive rational point search");
    std::string sp_input;
    long sp_height = 10;
    sp_cmd->add_option("input", sp_input, "spec JSON")->required();
    sp_cmd->add_option("--height", sp_height, "max-norm bound (default 10)");

    CLI11_PARSE(app, argc, argv);

    struct Timing {
        bool enabled;
        std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
        ~Timing() {
            if (enabled)
                std::cerr << "elapsed: "
                          << std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count()
                          << "s\n";
        }
    } timing{verbosity > 0};

    try {
        if (hilbert_cmd->parsed()) {
            Rational a(h_a), b(h_b);
            a.canonicalize();
            b.canonicalize();
            Place v = h_v == "inf" ? Place::infinity() : Place::finite(Integer(h_v));
            json out;
            out["schema"] = kSchema;
            out["symbol"] = hilbert(a, b, v);
            emit(out, tsv, {"symbol"});
            return kOk;
        }
        if (selmer_cmd->parsed()) {
            EllipticCurveFull2 E = curve_from_json(load_input(selmer_input));
            emit(to_json(selmer_group(E, E.d)), tsv, {"dim"});
            return kOk;
        }
        if (mr_cmd->parsed()) {
            json in = load_input(mr_input);
            if (!in.contains("curve") || !in.contains("d"))
                throw input_error("mazur-rubin: need fields 'curve' and 'd'");
            EllipticCurveFull2 E = curve_from_json(in["curve"]);
            Integer d = integer_from_json(in["d"], "d");
            std::vector<Integer> T;
            if (in.contains("T"))
                for (const auto& w : in["T"]) T.push_back(integer_from_json(w, "T"));
            emit(to_json(twist_report(E, d, T)), tsv,
                 {"d", "r", "dim_VT", "dim_VT_twist", "gap"});
            return kOk;
        }
        if (scan_cmd->parsed()) {
            json in = load_input(scan_input);
            if (!in.contains("curve"))
                throw input_error("twist-scan: need field 'curve'");
            EllipticCurveFull2 E = curve_from_json(in["curve"]);
            Integer from = in.contains("from") ? integer_from_json(in["from"], "from")
                                               : Integer(1);
            Integer to = in.contains("to") ? integer_from_json(in["to"], "to") : Integer(50);
            auto twists = squarefree_twists(from, to);
            // Embarrassingly parallel over d; output ordered by twist value.
            int nthreads = std::min<int>(thread_budget(), static_cast<int>(twists.size()));
            std::vector<json> rows(twists.size());
            std::vector<std::string> errors(twists.size());
            auto work = [&](int tid) {
                for (std::size_t i = tid; i < twists.size(); i += nthreads) {
                    try {
                        SelmerGroup sel = selmer_group(E, twists[i]);
                        json row;
                        row["d"] = to_json(twists[i]);
                        row["dim"] = sel.dim();
                        rows[i] = row;
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 1; t < nthreads; ++t) pool.emplace_back(work, t);
            work(0);
            for (auto& th : pool) th.join();
            for (const auto& err : errors)
                if (!err.empty()) throw std::runtime_error(err);
            if (tsv) {
                for (const auto& row : rows)
                    std::cout << row["d"].dump() << '\t' << row["dim"].dump() << "\n";
            } else {
                json out;
                out["schema"] = kSchema;
                out["twists"] = rows;
                std::cout << out.dump(2) << "\n";
            }
            return kOk;
        }
        if (ts_cmd->parsed()) {
            json in = load_input(ts_input);
            if (in.contains("a")) {
                // genus-2 Jacobian data: {"a": [6 roots], "M": [5 primes]}
                if (!in["a"].is_array() || in["a"].size() != 6 || !in.contains("M"))
                    throw input_error("two-structure: need 6 roots in 'a' and 'M'");
                std::array<Integer, 6> a;
                for (int i = 0; i < 6; ++i) a[i] = integer_from_json(in["a"][i], "a");
                std::vector<Integer> M;
                for (const auto& w : in["M"]) M.push_back(integer_from_json(w, "M"));
                TwoStructureResult res =
                    check_two_structure(RootConfig::genus2(a), M);
                emit(to_json(res), tsv, {"accept", "violated_condition"});
                return res.accepted() ? kOk : kRejected;
            }
            if (!in.contains("curves") || !in["curves"].is_array())
                throw input_error("two-structure: need field 'curves'");
            std::vector<EllipticCurveFull2> curves;
            for (const auto& cj : in["curves"]) curves.push_back(curve_from_json(cj));
            std::vector<Integer> M;
            if (in.contains("M"))
                for (const auto& w : in["M"]) M.push_back(integer_from_json(w, "M"));
            bool extended = in.value("extended", false);
            TwoStructureResult res = check_two_structure(curves, M, extended);
            emit(to_json(res), tsv, {"accept", "violated_condition"});
            return res.accepted() ? kOk : kRejected;
        }
        if (adm_cmd->parsed()) {
            json in = load_input(adm_input);
            if (!in.contains("curves") || !in.contains("M") || !in.contains("alpha"))
                throw input_error("admissible: need fields 'curves', 'M', 'alpha'");
            std::vector<EllipticCurveFull2> curves;
            for (const auto& cj : in["curves"]) curves.push_back(curve_from_json(cj));
            std::vector<Integer> M;
            for (const auto& w : in["M"]) M.push_back(integer_from_json(w, "M"));
            TwoStructureResult ts = check_two_structure(curves, M, false);
            if (!ts.accepted()) {
                json out = to_json(ts);
                emit(out, tsv, {"accept", "violated_condition"});
                return kRejected;
            }
            std::vector<CohClass> alpha;
            if (!in["alpha"].is_array() || in["alpha"].size() != curves.size())
                throw input_error("admissible: alpha needs one coordinate array per curve");
            for (std::size_t i = 0; i < curves.size(); ++i) {
                std::vector<SquareClass> coords;
                for (const auto& cj : in["alpha"][i])
                    coords.push_back(SquareClass(integer_from_json(cj, "alpha")));
                alpha.push_back(CohClass::from_coords(curves[i].roots(), coords));
            }
            AdmissibilityReport rep = is_admissible(*ts.certificate, alpha);
            emit(to_json(rep, *ts.certificate), tsv, {"admissible"});
            return rep.admissible ? kOk : kRejected;
        }
        if (fp_cmd->parsed()) {
            json in = load_input(fp_input);
            if (!in.contains("conditions"))
                throw input_error("find-prime: need field 'conditions'");
            std::vector<SymbolCondition> conds;
            for (const auto& cj : in["conditions"]) {
                if (!cj.is_array() || cj.size() != 2)
                    throw input_error("find-prime: conditions are [class, symbol] pairs");
                conds.push_back({SquareClass(integer_from_json(cj[0], "conditions")),
                                 static_cast<int>(cj[1].get<long long>())});
            }
            Integer bound = in.contains("bound") ? integer_from_json(in["bound"], "bound")
                                                 : Integer(100000);
            json out;
            out["schema"] = kSchema;
            out["prime"] = to_json(find_prime(conds, bound));
            emit(out, tsv, {"prime"});
            return kOk;
        }
        if (kb_cmd->parsed()) {
            KummerSpec spec = kummer_spec_from_json(load_input(kb_input));
            emit(to_json(build_equations(spec)), tsv, {"forms"});
            return kOk;
        }
        if (kc_cmd->parsed()) {
            KummerSpec spec = kummer_spec_from_json(load_input(kc_input));
            HypothesisReport rep = check_hypotheses(spec);
            emit(to_json(rep), tsv, {"accept", "violated_condition"});
            return rep.accepted() ? kOk : kRejected;
        }
        if (ke_cmd->parsed()) {
            KummerSpec spec = kummer_spec_from_json(load_input(ke_input));
            SolubilityCertificate cert = is_els(spec);
            emit(to_json(cert), tsv, {"els", "failing_place"});
            if (cert.undecided) return kUndecided;
            return cert.els ? kOk : kRejected;
        }
        if (sp_cmd->parsed()) {
            KummerSpec spec = kummer_spec_from_json(load_input(sp_input));
            auto pt = search_point(build_equations(spec), sp_height);
            json out;
            out["schema"] = kSchema;
            out["found"] = pt.has_value();
            out["height"] = sp_height;
            if (pt) {
                json pj = json::array();
                for (const auto& c : *pt) pj.push_back(to_json(c));
                out["point"] = pj;
            }
            emit(out, tsv, {"found", "point"});
            return pt ? kOk : kRejected;
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const inconsistent_conditions_error& e) {
        std::cerr << e.what() << "\n";
        return kRejected;
    } catch (const search_exhausted_error& e) {
        std::cerr << e.what() << "\n";
        return kUndecided;
    } catch (const undecided_error& e) {
        std::cerr << e.what() << "\n";
        return kUndecided;
    } catch (const unfactored_residue_error& e) {
        std::cerr << e.what() << "\n";
        return kUndecided;
    } catch (const domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
