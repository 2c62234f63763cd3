// Command-line front end: load .pwa.json instances, run the coordinate
// solvers and the exact oracles, emit reports and CSV traces.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwamin/coordinate.hpp"
#include "pwamin/errors.hpp"
#include "pwamin/generate.hpp"
#include "pwamin/instance_io.hpp"
#include "pwamin/oracle.hpp"
#include "pwamin/signs.hpp"
#include "pwamin/summax.hpp"

namespace {

using namespace pwamin;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitDivergence = 3;

int status_exit_code(RunStatus s) {
    switch (s) {
        case RunStatus::FixedPoint: return kExitOk;
        case RunStatus::CycleBudgetExhausted: return kExitBudget;
        case RunStatus::DivergenceSuspected: return kExitDivergence;
    }
    return kExitError;
}

std::string resolve_numeric(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("PWAMIN_NUMERIC")) {
        std::string v = env;
        if (v == "exact" || v == "float") return v;
        throw Error("PWAMIN_NUMERIC must be \"exact\" or \"float\", got \"" + v + "\"");
    }
    return "exact";
}

template <class S>
Vec<S> parse_scalar_list(const std::string& text, const char* what) {
    Vec<S> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // trim blanks
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw Error(std::string(what) + ": empty component");
        auto v = ScalarTraits<S>::parse(item.substr(a, b - a + 1));
        if (!v) throw Error(std::string(what) + ": cannot parse \"" + item + "\"");
        out.push_back(*v);
    }
    if (out.empty()) throw Error(std::string(what) + ": empty list");
    return out;
}

SignSet parse_sign_set(const std::string& text) {
    std::vector<SignVector> elems;
    std::stringstream ss(text);
    std::string chunk;
    std::size_t n = 0;
    while (std::getline(ss, chunk, ';')) {
        auto nums = parse_scalar_list<Rational>(chunk, "--signs");
        SignVector s;
        for (const auto& v : nums) {
            if (v != Rational(-1) && v != Rational(0) && v != Rational(1))
                throw Error("--signs: entries must be -1, 0 or 1");
            s.push_back(static_cast<Sign>(v.to_double()));
        }
        if (n == 0) n = s.size();
        elems.push_back(std::move(s));
    }
    if (elems.empty()) throw Error("--signs: empty set");
    return SignSet(n, std::move(elems));
}

std::string format_sign_vector(const SignVector& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(static_cast<int>(s[i]));
    }
    return out + ")";
}

std::string format_sign_set(const SignSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.elements().size(); ++i) {
        if (i) out += ", ";
        out += format_sign_vector(s.elements()[i]);
    }
    return out + "}";
}

std::string format_index_set(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

template <class S>
std::string format_vec(const Vec<S>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += ScalarTraits<S>::format(v[i]);
    }
    return out;
}

template <class S>
json vec_to_json(const Vec<S>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(ScalarTraits<S>::format(e));
    return out;
}

// --- solve ----------------------------------------------------------------

struct SolveOptions {
    std::string rule = "unique";
    long cycles = 1000;
    std::string tol;
    std::string numeric;
    std::string x0;
    std::string trace_path;
    bool as_json = false;
    unsigned jobs = 1;
};

struct SolveReport {
    int exit_code = kExitError;
    std::string text;
};

template <class S>
SolveReport solve_instance(const std::string& path, const Instance& inst, const SolveOptions& opt) {
    S tol = opt.tol.empty() ? ScalarTraits<S>::default_tol() : [&] {
        auto v = ScalarTraits<S>::parse(opt.tol);
        if (!v) throw Error("--tol: cannot parse \"" + opt.tol + "\"");
        return *v;
    }();

    Point<S> x0;
    if (!opt.x0.empty()) {
        x0 = parse_scalar_list<S>(opt.x0, "--x0");
    } else if (inst.x0) {
        for (const auto& v : *inst.x0) x0.push_back(ScalarTraits<S>::from_rational(v));
    } else {
        x0.assign(inst.var_count(), S(0));
    }
    if (x0.size() != inst.var_count()) throw Error("--x0 has wrong dimension");

    UpdateRule rule;
    if (opt.rule == "unique") rule = UpdateRule::Unique;
    else if (opt.rule == "proximal") rule = UpdateRule::Proximal;
    else throw Error("--rule must be \"unique\" or \"proximal\"");

    RunOutcome<S> out = [&] {
        if (inst.kind == Instance::Kind::Pwa) {
            std::vector<Vec<S>> rows;
            for (const auto& r : inst.pwa->rows()) {
                Vec<S> row;
                for (const auto& v : r) row.push_back(ScalarTraits<S>::from_rational(v));
                rows.push_back(std::move(row));
            }
            Vec<S> b;
            for (const auto& v : inst.pwa->offsets()) b.push_back(ScalarTraits<S>::from_rational(v));
            PwaFunction<S> f(std::move(rows), std::move(b));
            return run(f, x0, rule, opt.cycles, tol);
        }
        if (rule != UpdateRule::Unique)
            throw Error("summax instances are minimized by the interlaced scheme, which uses the unique rule");
        std::vector<std::vector<AffineTerm<S>>> groups;
        for (const auto& g : inst.summax->groups()) {
            std::vector<AffineTerm<S>> terms;
            for (const auto& t : g) {
                Vec<S> a;
                for (const auto& v : t.a) a.push_back(ScalarTraits<S>::from_rational(v));
                terms.push_back({std::move(a), ScalarTraits<S>::from_rational(t.b)});
            }
            groups.push_back(std::move(terms));
        }
        SumMaxFunction<S> s(inst.var_count(), std::move(groups));
        return interlaced_minimize(s, x0, opt.cycles, tol);
    }();

    if (!opt.trace_path.empty()) {
        std::ofstream tf(opt.trace_path, std::ios::binary | std::ios::trunc);
        if (!tf) throw Error("cannot write trace file: " + opt.trace_path);
        tf << trace_to_csv(out.trace);
    }

    const Point<S>& x = [&]() -> const Point<S>& { return out.state.x(); }();
    Point<S> x_original(x.begin(), x.begin() + static_cast<long>(inst.var_count()));

    std::ostringstream text;
    if (opt.as_json) {
        json j;
        j["instance"] = path;
        j["numeric"] = ScalarTraits<S>::mode_name();
        j["rule"] = to_string(rule);
        j["max_cycles"] = opt.cycles;
        j["tol"] = ScalarTraits<S>::format(tol);
        j["outcome"] = to_string(out.status);
        j["cycles_used"] = out.cycles_used;
        j["value"] = ScalarTraits<S>::format(out.value);
        j["e"] = out.violation ? json(ScalarTraits<S>::format(*out.violation)) : json("inf");
        j["x"] = vec_to_json(x_original);
        j["y"] = vec_to_json(out.state.y());
        j["max_abs_y"] = ScalarTraits<S>::format(out.max_abs_y);
        text << j.dump() << "\n";
    } else {
        text << "instance: " << path << "\n"
             << "numeric: " << ScalarTraits<S>::mode_name() << "  rule: " << to_string(rule)
             << "  max-cycles: " << opt.cycles << "  tol: " << ScalarTraits<S>::format(tol) << "\n"
             << "outcome: " << to_string(out.status) << "\n"
             << "cycles-used: " << out.cycles_used << "\n"
             << "f(x): " << ScalarTraits<S>::format(out.value) << "\n"
             << "e(y): " << (out.violation ? ScalarTraits<S>::format(*out.violation) : "inf") << "\n"
             << "x: " << format_vec(x_original) << "\n"
             << "y: " << format_vec(out.state.y()) << "\n"
             << "max|y| over run: " << ScalarTraits<S>::format(out.max_abs_y) << "\n";
    }
    return {status_exit_code(out.status), text.str()};
}

SolveReport solve_path(const std::string& path, const SolveOptions& opt) {
    try {
        Instance inst = load_instance(path);
        if (resolve_numeric(opt.numeric) == "float")
            return solve_instance<double>(path, inst, opt);
        return solve_instance<Rational>(path, inst, opt);
    } catch (const std::exception& e) {
        return {kExitError, std::string("error: ") + path + ": " + e.what() + "\n"};
    }
}

int cmd_solve(const std::vector<std::string>& paths, const SolveOptions& opt) {
    if (!opt.trace_path.empty() && paths.size() > 1)
        throw Error("--trace needs a single instance");
    std::vector<SolveReport> reports(paths.size());
    unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1 || paths.size() <= 1) {
        for (std::size_t i = 0; i < paths.size(); ++i) reports[i] = solve_path(paths[i], opt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, paths.size()); ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= paths.size()) return;
                    reports[i] = solve_path(paths[i], opt);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    int code = kExitOk;
    bool any_error = false;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i && !opt.as_json) std::cout << "\n";
        std::cout << reports[i].text;
        if (reports[i].exit_code == kExitError) any_error = true;
        code = std::max(code, reports[i].exit_code);
    }
    return any_error ? kExitError : code;
}

// --- consistency ------------------------------------------------------------

int cmd_consistency(const std::string& path, const std::string& signs, const std::string& at_point,
                    const std::string& at_eps, const std::string& numeric, bool as_json) {
    SignSet set;
    json j;
    std::ostringstream text;
    std::optional<Rational> e_value;
    if (!signs.empty()) {
        set = parse_sign_set(signs);
        text << "sign set (given): " << format_sign_set(set) << "\n";
        j["signs"] = format_sign_set(set);
    } else {
        if (path.empty()) throw Error("need an instance path or --signs");
        Instance inst = load_instance(path);
        if (inst.kind != Instance::Kind::Pwa)
            throw Error("consistency works on pwa instances; transform summax instances first");
        const auto& f = *inst.pwa;
        text << "instance: " << path << "\n";
        j["instance"] = path;
        if (!at_point.empty()) {
            auto x = parse_scalar_list<Rational>(at_point, "--at-point");
            auto y = values(f, x);
            Rational eps(0);
            if (!at_eps.empty()) {
                auto v = Rational::parse(at_eps);
                if (!v) throw Error("--at-eps: cannot parse \"" + at_eps + "\"");
                eps = *v;
            }
            IndexSet active = eps_argmax_set(y, eps);
            set = row_sign_set(f, active);
            e_value = violation_measure_opt(f, y) ? violation_measure_opt(f, y) : std::nullopt;
            text << "at-point: " << format_vec(x) << "\n";
            if (!at_eps.empty()) text << "eps: " << eps.str() << "\n";
            text << "active rows: " << format_index_set(active) << "\n"
                 << "sign set: " << format_sign_set(set) << "\n";
            j["at_point"] = vec_to_json(x);
            if (!at_eps.empty()) j["eps"] = eps.str();
            j["active_rows"] = active;
            j["signs"] = format_sign_set(set);
        } else {
            if (!at_eps.empty()) throw Error("--at-eps needs --at-point");
            set = row_sign_set(f);
            text << "sign set (all rows): " << format_sign_set(set) << "\n";
            j["signs"] = format_sign_set(set);
        }
    }
    SignSet closure = consistency_closure(set);
    text << "consistent: " << (is_consistent(set) ? "yes" : "no") << "\n"
         << "closure: " << format_sign_set(closure) << "\n"
         << "verdict: " << (closure.empty() ? "empty" : "nonempty") << "\n";
    j["consistent"] = is_consistent(set);
    j["closure"] = format_sign_set(closure);
    j["closure_empty"] = closure.empty();
    if (e_value) {
        text << "e(y): " << e_value->str() << "\n";
        j["e"] = e_value->str();
    }
    (void)numeric;
    std::cout << (as_json ? j.dump() + "\n" : text.str());
    return kExitOk;
}

// --- oracle -----------------------------------------------------------------

int cmd_oracle(const std::string& path, const std::string& check, const std::string& at_point,
               bool as_json) {
    Instance inst = load_instance(path);
    if (inst.kind != Instance::Kind::Pwa)
        throw Error("oracle works on pwa instances; transform summax instances first");
    const auto& f = *inst.pwa;

    json j;
    j["instance"] = path;
    j["check"] = check;
    std::ostringstream text;
    text << "instance: " << path << "\ncheck: " << check << "\n";

    bool result = false;
    std::optional<DualCertificate> cert;
    if (check == "bounded-below") {
        auto r = contains_origin_conv(f.rows());
        result = r.contains;
        cert = r.certificate;
    } else if (check == "rint") {
        auto r = contains_origin_rint_conv(f.rows());
        result = r.contains;
        cert = r.certificate;
    } else if (check == "global-min") {
        if (at_point.empty()) throw Error("--check global-min needs --at-point");
        auto x = parse_scalar_list<Rational>(at_point, "--at-point");
        auto active = argmax_set(values(f, x));
        std::vector<Vec<Rational>> rows;
        for (int i : active) rows.push_back(f.row(static_cast<std::size_t>(i - 1)));
        auto r = contains_origin_conv(rows);
        result = r.contains;
        cert = r.certificate;
        text << "at-point: " << format_vec(x) << "\nactive rows: " << format_index_set(active)
             << "\n";
        j["at_point"] = vec_to_json(x);
        j["active_rows"] = active;
    } else if (check == "y-bounded") {
        result = y_set_is_bounded(f); // throws on empty feasible set
    } else {
        throw Error("--check must be bounded-below, global-min, rint or y-bounded");
    }

    text << "result: " << (result ? "true" : "false") << "\n";
    j["result"] = result;
    if (cert) {
        text << "lambda: " << format_vec(cert->lambda) << "\n";
        j["lambda"] = vec_to_json(cert->lambda);
    }
    std::cout << (as_json ? j.dump() + "\n" : text.str());
    return kExitOk;
}

// --- transform / generate ----------------------------------------------------

int cmd_transform(const std::string& in_path, const std::string& out_path) {
    Instance inst = load_instance(in_path);
    if (inst.kind != Instance::Kind::SumMax)
        throw Error("transform expects a summax instance");
    LiftedFunction<Rational> lf = lift(*inst.summax);
    Instance out;
    out.kind = Instance::Kind::Pwa;
    out.pwa = lf.fn;
    if (inst.x0) {
        Point<Rational> z = *inst.x0;
        z.resize(lf.fn.var_count(), Rational(0));
        out.x0 = std::move(z);
    }
    save_instance(out, out_path);
    std::cout << "wrote " << out_path << " (" << lf.fn.row_count() << " rows, "
              << lf.fn.var_count() << " variables)\n";
    return kExitOk;
}

int cmd_generate(std::size_t n, std::size_t m, std::uint64_t seed, const std::string& profile,
                 const std::string& out_path) {
    GenProfile p;
    if (profile == "rint") p = GenProfile::RintConsistent;
    else if (profile == "signcons") p = GenProfile::SignConsistentOnly;
    else if (profile == "any") p = GenProfile::Unrestricted;
    else throw Error("--profile must be rint, signcons or any");
    Instance inst;
    inst.kind = Instance::Kind::Pwa;
    inst.pwa = generate_random(n, m, seed, p);
    save_instance(inst, out_path);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pwamin: coordinate minimization of max-of-affine functions, sign-consistency "
                 "diagnostics, and exact LP oracles"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "minimize an instance by coordinate descent");
    std::vector<std::string> solve_paths;
    SolveOptions sopt;
    solve->add_option("instance", solve_paths, "instance file(s)")->required();
    solve->add_option("--rule", sopt.rule, "unique|proximal (default unique)");
    solve->add_option("--cycles", sopt.cycles, "cycle budget (default 1000)");
    solve->add_option("--tol", sopt.tol, "fixed-point tolerance (default: 0 exact, 1e-9 float)");
    solve->add_option("--numeric", sopt.numeric, "exact|float (default: $PWAMIN_NUMERIC or exact)");
    solve->add_option("--x0", sopt.x0, "starting point, e.g. \"2,1,0\"");
    solve->add_option("--trace", sopt.trace_path, "write per-iteration CSV trace");
    solve->add_flag("--json", sopt.as_json, "machine-readable report");
    solve->add_option("--jobs", sopt.jobs, "solve multiple instances in parallel");

    // consistency
    auto* cons = app.add_subcommand("consistency", "sign sets, closures and verdicts");
    std::string cons_path, cons_signs, cons_point, cons_eps, cons_numeric;
    bool cons_json = false;
    cons->add_option("instance", cons_path, "instance file");
    cons->add_option("--signs", cons_signs, "explicit sign set, e.g. \"0,1,-1;1,-1,0\"");
    cons->add_option("--at-point", cons_point, "use the rows active at this point");
    cons->add_option("--at-eps", cons_eps, "use eps-active rows (with --at-point)");
    cons->add_option("--numeric", cons_numeric, "ignored; consistency is always exact");
    cons->add_flag("--json", cons_json, "machine-readable report");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact LP-based geometry checks");
    std::string oracle_path, oracle_check, oracle_point;
    bool oracle_json = false;
    oracle->add_option("instance", oracle_path, "instance file")->required();
    oracle->add_option("--check", oracle_check, "bounded-below|global-min|rint|y-bounded")->required();
    oracle->add_option("--at-point", oracle_point, "point for global-min");
    oracle->add_flag("--json", oracle_json, "machine-readable report");

    // transform
    auto* transform = app.add_subcommand("transform", "lift a summax instance to a single max");
    std::string tr_in, tr_out;
    transform->add_option("instance", tr_in, "summax instance file")->required();
    transform->add_option("-o,--output", tr_out, "output file")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "write a seeded random instance");
    std::size_t gen_n = 3, gen_m = 6;
    std::uint64_t gen_seed = 1;
    std::string gen_profile = "any", gen_out;
    generate->add_option("-n", gen_n, "variable count")->required();
    generate->add_option("-m", gen_m, "row count")->required();
    generate->add_option("--seed", gen_seed, "PRNG seed (pcg32)")->required();
    generate->add_option("--profile", gen_profile, "rint|signcons|any (default any)");
    generate->add_option("-o,--output", gen_out, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_paths, sopt);
        if (cons->parsed())
            return cmd_consistency(cons_path, cons_signs, cons_point, cons_eps, cons_numeric,
                                   cons_json);
        if (oracle->parsed()) return cmd_oracle(oracle_path, oracle_check, oracle_point, oracle_json);
        if (transform->parsed()) return cmd_transform(tr_in, tr_out);
        if (generate->parsed())
            return cmd_generate(gen_n, gen_m, gen_seed, gen_profile, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
