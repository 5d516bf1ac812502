// Command-line front end: builds the pipeline from a run config, runs the
// verification suites and writes machine-readable results.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <biorth/biorth.hpp>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace {

using namespace biorth;
using namespace biorth::cli;

enum Exit { exit_pass = 0, exit_residual = 1, exit_config = 2, exit_degenerate = 3 };

// ------------------------------------------------------------ JSON helpers

template <class R>
json real_json(const R& x) {
    return {{"value", to_decimal(x)}, {"approx", to_double(x)}};
}

template <class C>
json complex_json(const C& z) {
    return {{"re", to_decimal(re(z))}, {"im", to_decimal(im(z))}, {"approx", {to_double(re(z)), to_double(im(z))}}};
}

template <class C>
json complex_list(const std::vector<C>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(complex_json(x));
    return a;
}

template <class C>
json mat2_json(const Mat2<C>& m) {
    return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                        json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

json exact_json(const crat& q) { return json::array({to_string(q.re), to_string(q.im)}); }

json weight_json(const ExactWeight& x) {
    json z = json::array(), rho = json::array();
    for (const auto& v : x.spec.z) z.push_back(exact_json(v));
    for (const auto& v : x.spec.rho) rho.push_back(exact_json(v));
    return {{"placement", x.spec.placement == Placement::canonical ? "canonical" : "general"}, {"z", z}, {"rho", rho}};
}

json residual_json(const Residual& r, double tol) {
    json j{{"label", r.label}, {"value", r.value}, {"informational", r.informational}};
    if (r.n >= 0) j["n"] = r.n;
    if (!r.where.empty()) j["where"] = r.where;
    if (!r.informational) j["pass"] = Report::nan_as_inf(r.value) < tol;
    return j;
}

json report_json(const Report& rep, double tol) {
    json a = json::array();
    for (const auto& r : rep.items) a.push_back(residual_json(r, tol));
    return a;
}

json report_json_at(const Report& rep, double tol, int n) {
    json a = json::array();
    for (const auto& r : rep.items)
        if (r.n == n) a.push_back(residual_json(r, tol));
    return a;
}

json flow_json(const FlowReport& fr, double min_order) {
    json a = json::array();
    for (const auto& c : fr.items) {
        json j{{"label", c.label}, {"where", c.where}, {"e_h", c.e_h}, {"e_h2", c.e_h2}, {"exact", c.exact},
               {"pass", c.exact || c.order >= min_order}};
        j["order"] = c.exact ? json(nullptr) : json(c.order);
        a.push_back(j);
    }
    return a;
}

json summary_json(const Report& rep, double tol) {
    double worst = 0;
    std::string label;
    for (const auto& r : rep.items)
        if (!r.informational && Report::nan_as_inf(r.value) >= worst) {
            worst = Report::nan_as_inf(r.value);
            label = r.label;
        }
    std::size_t failed = 0, counted = 0;
    for (const auto& r : rep.items)
        if (!r.informational) {
            ++counted;
            if (!(Report::nan_as_inf(r.value) < tol)) ++failed;
        }
    return {{"checks", counted}, {"failed", failed}, {"max_residual", worst}, {"max_label", label}};
}

std::string short_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string complex_text(const crat& q) {
    const double a = q.re.convert_to<double>(), b = q.im.convert_to<double>();
    std::string s = short_double(a);
    s += b < 0 ? "-" : "+";
    s += short_double(std::abs(b)) + "i";
    return s;
}

// ------------------------------------------------------------ run context

struct Options {
    std::string config_path, out;
    std::optional<int> precision;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> nmax;
    std::string range = "-4:12";
    std::string spectral_checks = "all";
    bool flow_check = false, compare_oracle = false, tau = false;
};

void write_output(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + opt.out + "'");
    f << text;
}

template <class R>
struct Pipeline {
    const RunConfig& cfg;
    ExactWeight exact;
    WeightData<R> w;

    explicit Pipeline(const RunConfig& c) : cfg(c), exact(build_weight(c.weight)), w(WeightData<R>::from_exact(exact)) {}

    R radius() const { return from_rational<R>(cfg.radius); }

    MomentSequence<R> moments(int kmin, int kmax) const {
        if (cfg.mode == MomentMode::formal) {
            auto seeds = to_complex_all<R>(cfg.seeds);
            const int lo = std::min(kmin, cfg.seed_lo);
            const int hi = std::max(kmax, cfg.seed_lo + int(seeds.size()) - 1);
            return propagate(w, seeds, cfg.seed_lo, lo, hi);
        }
        CircleWeight<R> cw(w.z, w.rho, radius());
        using std::sqrt;
        if (cw.defect() > sqrt(eps_of<R>()))
            throw NotSingleValued("residues inside the contour do not sum to an integer");
        return quadrature_moments(cw, kmin, kmax, R(1024) * eps_of<R>());
    }

    Lattice<R> lattice(int nmax) const {
        if (cfg.mode == MomentMode::formal) return formal_lattice(w, to_complex_all<R>(cfg.seeds), cfg.seed_lo, nmax);
        return quadrature_lattice(w, radius(), nmax);
    }
};

json header(const RunConfig& cfg, const ExactWeight& x, const std::string& command, int bits) {
    json h{{"command", command},
           {"precision_bits", bits},
           {"tolerance", cfg.tolerance},
           {"seed", cfg.seed},
           {"n_max", cfg.n_max},
           {"mode", cfg.mode == MomentMode::formal ? "formal" : "quadrature"},
           {"weight", weight_json(x)}};
    if (cfg.mode == MomentMode::formal) {
        json s = json::array();
        for (const auto& v : cfg.seeds) s.push_back(exact_json(v));
        h["seeds"] = s;
        h["seed_lo"] = cfg.seed_lo;
    } else {
        h["radius"] = to_string(cfg.radius);
    }
    if (!cfg.random_from.empty()) h["random_weight"] = cfg.random_from;
    return h;
}

// ------------------------------------------------------------ flow checks

template <class R>
FlowReport run_flow(const RunConfig& cfg) {
    using C = cplx<R>;
    if (cfg.flow.levels.empty()) throw ConfigError("flow.levels is empty");
    const int top = *std::max_element(cfg.flow.levels.begin(), cfg.flow.levels.end());
    for (int n : cfg.flow.levels)
        if (n < 1) throw ConfigError("flow levels start at 1");
    std::vector<ContourFamily<R>> fams;
    if (cfg.flow.use_config_weight) {
        auto x = build_weight(cfg.weight);
        ContourFamily<R> f;
        for (const auto& v : x.spec.z) f.z.push_back(to_complex<R>(v));
        for (const auto& v : x.spec.rho) f.rho.push_back(to_complex<R>(v));
        f.placement = x.spec.placement;
        f.radius = from_rational<R>(cfg.radius);
        f.nmax = top;
        fams.push_back(f);
    } else {
        fams.push_back(standard_family<R>(1, top));
        fams.push_back(standard_family<R>(2, top));
    }
    FlowReport out;
    for (const auto& fam : fams) {
        const int M = int(fam.z.size());
        const bool canonical = fam.placement == Placement::canonical;
        const int free_lo = canonical ? 1 : 0, free_hi = canonical ? M - 2 : M - 1;
        for (int n : cfg.flow.levels) {
            // the deformation suite moves one singularity per family
            std::vector<C> zdot(std::size_t(M), C(0));
            zdot[std::size_t(free_lo)] = C(1);
            // the two-point standard family is used for the Hamiltonian flow only
            if (cfg.flow.use_config_weight || M == 3) {
                auto d = deformation_check(fam, n, zdot);
                for (auto& c : d.items) c.where = "M=" + std::to_string(M) + ",n=" + std::to_string(n) + (c.where.empty() ? "" : "," + c.where);
                out.append(d);
            }
            if (canonical)
                for (int j = free_lo; j <= free_hi; ++j) {
                    auto h = hamilton_flow_check(fam, n, j);
                    for (auto& c : h.items) c.where = "M=" + std::to_string(M) + ",n=" + std::to_string(n) + "," + c.where;
                    out.append(h);
                }
        }
    }
    return out;
}

FlowReport run_flow_any(const RunConfig& cfg) {
    if (cfg.flow.precision_bits <= 128) return run_flow<real128>(cfg);
    return run_flow<real256>(cfg);
}

// ------------------------------------------------------------ commands

template <class R>
int cmd_verify(const RunConfig& cfg, json& doc, int bits) {
    Pipeline<R> pl(cfg);
    const auto lat = pl.lattice(cfg.n_max);
    const int nmax = cfg.n_max;
    const bool canonical = pl.w.canonical();
    Report rep;
    json skipped = json::array();
    const auto& ch = cfg.checks;
    if (ch.count("identities")) {
        rep.append(check_oracle(lat.ms, lat.L, nmax));
        rep.append(check_eps_determinants(lat.ms, lat.L, nmax));
        rep.append(check_degree_bounds(lat));
        rep.append(check_initial_members(lat));
        for (int n = 0; n <= nmax; ++n) {
            if (n >= 1) {
                rep.append(check_linear(lat, n));
                rep.append(check_endpoints(lat, n));
            }
            rep.append(check_transition_forms(lat, n));
            rep.append(check_residues(lat, n));
            rep.append(check_scalar_ode(lat, n));
        }
    }
    if (ch.count("bilinear"))
        for (int n = 1; n <= nmax; ++n) rep.append(check_bilinear(lat, n));
    if (ch.count("summation")) {
        if (canonical) {
            for (int n = 0; n <= nmax; ++n) {
                rep.append(check_sums(lat, n));
                if (n >= 1) rep.append(check_garnier_sums(lat, n));
                rep.append(garnier_report(lat, n));
            }
        } else {
            skipped.push_back("summation (needs the canonical placement)");
        }
    }
    if (ch.count("oracle") || ch.count("tau")) {
        if (canonical) {
            auto dg = dg_report(lat, nmax, cfg.seed);
            for (const auto& r : dg.items) {
                const bool is_tau = r.label.rfind("tau", 0) == 0;
                if (is_tau ? ch.count("tau") : ch.count("oracle")) rep.items.push_back(r);
            }
        } else {
            skipped.push_back("oracle and tau (need the canonical placement)");
        }
    }
    FlowReport flow;
    if (ch.count("flow")) flow = run_flow_any(cfg);
    rep.append(flow.info);

    const bool flow_ok = flow.passes(cfg.flow.min_order);
    const bool ok = rep.passes(cfg.tolerance) && flow_ok;
    doc = header(cfg, pl.exact, "verify", bits);
    json checks = json::array();
    for (const auto& c : ch) checks.push_back(c);
    doc["checks"] = checks;
    doc["skipped"] = skipped;
    doc["residuals"] = report_json(rep, cfg.tolerance);
    doc["summary"] = summary_json(rep, cfg.tolerance);
    if (ch.count("flow")) {
        doc["flow"] = {{"precision_bits", cfg.flow.precision_bits <= 128 ? 128 : 256},
                       {"min_order", cfg.flow.min_order},
                       {"family", cfg.flow.use_config_weight ? "config" : "standard"},
                       {"items", flow_json(flow, cfg.flow.min_order)},
                       {"pass", flow_ok}};
    }
    doc["pass"] = ok;
    return ok ? exit_pass : exit_residual;
}

std::pair<int, int> parse_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("range must look like kmin:kmax");
    try {
        int a = std::stoi(s.substr(0, colon)), b = std::stoi(s.substr(colon + 1));
        if (a > b) throw ConfigError("empty moment range");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ConfigError("range must look like kmin:kmax");
    }
}

template <class R>
int cmd_moments(const RunConfig& cfg, const Options& opt, json& doc, int bits) {
    Pipeline<R> pl(cfg);
    auto [kmin, kmax] = parse_range(opt.range);
    const auto ms = pl.moments(kmin, kmax);
    const auto& w = pl.w;
    doc = header(cfg, pl.exact, "moments", bits);
    json list = json::array();
    Report rep;
    for (int k = kmin; k <= kmax; ++k) {
        json e = complex_json(ms[k]);
        e["k"] = k;
        // the moment equation with top index k, when all of its terms are available
        if (ms.contains(k - w.M)) {
            const double r = moment_equation_residual(w, ms, k);
            e["residual"] = r;
            rep.add("moment-eq", -1, "k=" + std::to_string(k), r);
        } else {
            e["residual"] = nullptr;
        }
        list.push_back(e);
    }
    doc["moments"] = list;
    doc["summary"] = summary_json(rep, cfg.tolerance);
    // quadrature moments satisfy the equation only to quadrature accuracy
    return rep.passes(cfg.tolerance) ? exit_pass : exit_residual;
}

template <class R>
int cmd_bops(const RunConfig& cfg, const Options& opt, json& doc, int bits) {
    Pipeline<R> pl(cfg);
    const int nmax = opt.nmax.value_or(cfg.n_max);
    const auto lat = pl.lattice(nmax);
    Report rep = check_oracle(lat.ms, lat.L, nmax);
    rep.append(check_eps_determinants(lat.ms, lat.L, nmax));
    doc = header(cfg, pl.exact, "bops", bits);
    json levels = json::array();
    for (int n = 0; n <= nmax; ++n) {
        const auto& L = lat.L[std::size_t(n)];
        levels.push_back({{"n", n},
                          {"I", complex_json(L.I)},
                          {"I_next", complex_json(L.I1)},
                          {"kappa", complex_json(L.kappa)},
                          {"r", complex_json(L.r)},
                          {"rbar", complex_json(L.rbar)},
                          {"lambda", complex_json(L.lam)},
                          {"lambdabar", complex_json(L.lambar)},
                          {"mu", complex_json(L.mu)},
                          {"mubar", complex_json(L.mubar)},
                          {"nu", complex_json(L.nu)},
                          {"nubar", complex_json(L.nubar)},
                          {"phi", complex_list(L.phi)},
                          {"phibar", complex_list(L.phibar)},
                          {"phistar", complex_list(L.phistar)},
                          {"eps", complex_list(L.eps)},
                          {"epsstar", complex_list(L.epss)},
                          {"residuals", report_json_at(rep, cfg.tolerance, n)}});
    }
    doc["levels"] = levels;
    doc["summary"] = summary_json(rep, cfg.tolerance);
    return rep.passes(cfg.tolerance) ? exit_pass : exit_residual;
}

template <class R>
int cmd_spectral(const RunConfig& cfg, const Options& opt, json& doc, int bits) {
    Pipeline<R> pl(cfg);
    const int nmax = opt.nmax.value_or(cfg.n_max);
    const auto lat = pl.lattice(nmax);
    std::set<std::string> suites;
    const std::set<std::string> known{"degree", "linear", "bilinear", "endpoints", "transition", "residues", "sums", "ode"};
    if (opt.spectral_checks == "all") {
        suites = known;
    } else if (opt.spectral_checks != "none") {
        std::stringstream ss(opt.spectral_checks);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!known.count(item)) throw ConfigError("unknown spectral check '" + item + "'");
            else suites.insert(item);
    }
    const bool canonical = pl.w.canonical();
    Report rep;
    if (suites.count("degree")) {
        rep.append(check_degree_bounds(lat));
        rep.append(check_initial_members(lat));
    }
    for (int n = 0; n <= nmax; ++n) {
        if (n >= 1 && suites.count("linear")) rep.append(check_linear(lat, n));
        if (n >= 1 && suites.count("bilinear")) rep.append(check_bilinear(lat, n));
        if (n >= 1 && suites.count("endpoints")) rep.append(check_endpoints(lat, n));
        if (suites.count("transition")) rep.append(check_transition_forms(lat, n));
        if (suites.count("residues")) rep.append(check_residues(lat, n));
        if (canonical && suites.count("sums")) {
            rep.append(check_sums(lat, n));
            if (n >= 1) rep.append(check_garnier_sums(lat, n));
        }
        if (suites.count("ode")) rep.append(check_scalar_ode(lat, n));
    }
    doc = header(cfg, pl.exact, "spectral", bits);
    json levels = json::array();
    for (int n = 0; n <= nmax; ++n) {
        const auto& s = lat.S[std::size_t(n)];
        json res = json::array();
        for (const auto& a : s.residues) res.push_back(mat2_json(a));
        levels.push_back({{"n", n},
                          {"zTheta", complex_list(s.zth)},
                          {"zOmega", complex_list(s.zom)},
                          {"zThetaStar", complex_list(s.zths)},
                          {"zOmegaStar", complex_list(s.zoms)},
                          {"residues", res},
                          {"residue_inf", mat2_json(s.residue_inf)},
                          {"residuals", report_json_at(rep, cfg.tolerance, n)}});
    }
    doc["levels"] = levels;
    json global = json::array();
    for (const auto& r : rep.items)
        if (r.n < 0) global.push_back(residual_json(r, cfg.tolerance));
    doc["global_residuals"] = global;
    doc["summary"] = summary_json(rep, cfg.tolerance);
    return rep.passes(cfg.tolerance) ? exit_pass : exit_residual;
}

template <class R>
int cmd_garnier(const RunConfig& cfg, const Options& opt, json& doc, int bits) {
    Pipeline<R> pl(cfg);
    if (!pl.w.canonical()) throw ConfigError("garnier needs the canonical placement");
    const int nmax = opt.nmax.value_or(cfg.n_max);
    const auto lat = pl.lattice(nmax);
    Report rep;
    doc = header(cfg, pl.exact, "garnier", bits);
    json levels = json::array();
    for (int n = 0; n <= nmax; ++n) {
        const auto g = garnier_point(lat, n);
        const auto ex = exponent_table(lat.w, n);
        Report r = garnier_report(lat, n);
        rep.append(r);
        levels.push_back({{"n", n},
                          {"q", complex_list(g.q)},
                          {"p", complex_list(g.p)},
                          {"K", complex_list(g.K)},
                          {"theta_inf", complex_json(g.theta_inf)},
                          {"exponents",
                           {{"theta", complex_list(ex.theta)},
                            {"alpha_inf", complex_json(ex.alpha_inf)},
                            {"theta_inf", complex_json(ex.theta_inf)},
                            {"accessory", complex_json(ex.accessory)}}},
                          {"residuals", report_json(r, cfg.tolerance)}});
    }
    doc["levels"] = levels;
    bool flow_ok = true;
    if (opt.flow_check) {
        auto flow = run_flow_any(cfg);
        flow_ok = flow.passes(cfg.flow.min_order);
        rep.append(flow.info);
        doc["flow"] = {{"precision_bits", cfg.flow.precision_bits <= 128 ? 128 : 256},
                       {"min_order", cfg.flow.min_order},
                       {"family", cfg.flow.use_config_weight ? "config" : "standard"},
                       {"items", flow_json(flow, cfg.flow.min_order)},
                       {"info", report_json(flow.info, cfg.tolerance)},
                       {"pass", flow_ok}};
    }
    doc["summary"] = summary_json(rep, cfg.tolerance);
    return rep.passes(cfg.tolerance) && flow_ok ? exit_pass : exit_residual;
}

template <class R>
int cmd_dgarnier(const RunConfig& cfg, const Options& opt, json& doc, int bits) {
    Pipeline<R> pl(cfg);
    if (!pl.w.canonical()) throw ConfigError("dgarnier needs the canonical placement");
    const int nmax = opt.nmax.value_or(cfg.n_max);
    const auto lat = pl.lattice(nmax);
    const auto& ms = lat.ms;
    DGFrame<R> fr(lat.w);
    doc = header(cfg, pl.exact, "dgarnier", bits);

    std::vector<DGState<R>> traj;
    json singular = nullptr;
    try {
        traj.push_back(dg_initial(fr, build_U(lat.w, ms), ms[0], ms[-1]));
        for (int n = 0; n < nmax; ++n) traj.push_back(dg_step(fr, traj.back()));
    } catch (const SingularStep& e) {
        singular = {{"n", e.index}, {"where", e.where}, {"message", e.what()}};
    }
    Report rep;
    json levels = json::array();
    for (const auto& s : traj) {
        json lv{{"n", s.n}, {"f", complex_list(s.f)}, {"omega", complex_list(s.omega)}};
        if (opt.compare_oracle) {
            const auto o = dg_from_spectral(lat, s.n);
            double df = 0, dw = 0;
            for (std::size_t i = 0; i < s.f.size(); ++i) {
                df = std::max(df, rel_err(s.f[i], o.f[i]));
                dw = std::max(dw, rel_err(s.omega[i], o.omega[i]));
            }
            lv["oracle_delta"] = {{"f", df}, {"omega", dw}, {"max", std::max(df, dw)}};
            rep.add("dGarnier:iter", s.n, "", std::max(df, dw));
        }
        levels.push_back(lv);
    }
    doc["levels"] = levels;
    doc["singularity"] = singular;
    if (opt.tau && singular.is_null()) {
        auto t = tau_recovery(fr, traj, ms[0], nmax);
        json I = json::array();
        for (int n = 0; n <= nmax; ++n) {
            const double e = rel_err(t.I[std::size_t(n)], lat.L[std::size_t(n)].I);
            rep.add("tau:I", n, "", e);
            I.push_back({{"n", n}, {"I", complex_json(t.I[std::size_t(n)])}, {"oracle_delta", e}});
        }
        rep.add("tau:lambda", -1, "", t.lambda_mismatch);
        doc["tau"] = {{"I", I}, {"lambda_path_mismatch", t.lambda_mismatch}};
    }
    if (opt.compare_oracle && singular.is_null()) rep.append(dg_report(lat, nmax, cfg.seed));
    doc["residuals"] = report_json(rep, cfg.tolerance);
    doc["summary"] = summary_json(rep, cfg.tolerance);
    if (!singular.is_null()) return exit_degenerate;
    return rep.passes(cfg.tolerance) ? exit_pass : exit_residual;
}

// One grid point of a sweep: first step at which the iteration breaks down.
template <class R>
std::string sweep_point(const RunConfig& base, const WeightSpec& spec, int nmax) {
    RunConfig cfg = base;
    cfg.weight = spec;
    try {
        Pipeline<R> pl(cfg);
        const int order = moment_order(pl.w);
        const auto ms = pl.moments(std::min(-1, cfg.seed_lo), std::max(order, 2));
        const auto r = first_singular_step(pl.w, ms, nmax);
        return std::to_string(r.first_singular_n);
    } catch (const SingularStep& e) {
        return "0";  // the moments themselves cannot be built
    } catch (const ConfigError&) {
        return "invalid";
    } catch (const Degenerate&) {
        return "0";
    }
}

template <class R>
std::string cmd_sweep(const RunConfig& cfg, const Options& opt) {
    const int nmax = opt.nmax.value_or(cfg.n_max);
    WeightSpec spec = build_weight(cfg.weight).spec;  // canonical order
    const auto& sw = cfg.sweep;
    const int M = int(spec.z.size());
    if (sw.index < 0 || sw.index >= M) throw ConfigError("sweep.index out of range");
    if (sw.parameter == "t" && spec.placement == Placement::canonical && (sw.index == 0 || sw.index == M - 1))
        throw ConfigError("the canonical points 0 and 1 cannot be swept");
    std::vector<crat> grid;
    for (int i = 0; i < sw.points; ++i) {
        if (sw.points == 1) {
            grid.push_back(sw.from);
            break;
        }
        const crat a(rational(i, sw.points - 1));
        grid.push_back(sw.from + (sw.to - sw.from) * a);
    }
    std::vector<std::string> result(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            WeightSpec s = spec;
            (sw.parameter == "t" ? s.z : s.rho)[std::size_t(sw.index)] = grid[i];
            result[i] = sweep_point<R>(cfg, s, nmax);
        }
    };
    unsigned threads = sw.threads > 0 ? unsigned(sw.threads) : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(grid.size()));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    std::string csv = sw.parameter + ", first_singular_n\n";
    for (std::size_t i = 0; i < grid.size(); ++i) csv += complex_text(grid[i]) + ", " + result[i] + "\n";
    return csv;
}

template <class R>
int dispatch(const std::string& cmd, const RunConfig& cfg, const Options& opt, int bits, json& doc, std::string& text) {
    if (cmd == "verify") return cmd_verify<R>(cfg, doc, bits);
    if (cmd == "moments") return cmd_moments<R>(cfg, opt, doc, bits);
    if (cmd == "bops") return cmd_bops<R>(cfg, opt, doc, bits);
    if (cmd == "spectral") return cmd_spectral<R>(cfg, opt, doc, bits);
    if (cmd == "garnier") return cmd_garnier<R>(cfg, opt, doc, bits);
    if (cmd == "dgarnier") return cmd_dgarnier<R>(cfg, opt, doc, bits);
    if (cmd == "sweep") {
        text = cmd_sweep<R>(cfg, opt);
        return exit_pass;
    }
    throw ConfigError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bi-orthogonal polynomials on the unit circle for semi-classical weights"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "run configuration (JSON)")->required();
    app.add_option("--precision", opt.precision, "working precision in bits (53, 128 or 256)");
    app.add_option("--tol", opt.tol, "relative residual tolerance");
    app.add_option("--seed", opt.seed, "RNG seed for random weights and sample points");
    app.add_option("--out", opt.out, "output file (default: standard output)");

    auto* verify = app.add_subcommand("verify", "run the configured check suites");
    auto* moments = app.add_subcommand("moments", "moment sequence with difference-equation residuals");
    moments->add_option("--range", opt.range, "kmin:kmax");
    auto* bops = app.add_subcommand("bops", "Toeplitz levels and their identities");
    auto* spectral = app.add_subcommand("spectral", "spectral coefficients, residue matrices and identities");
    spectral->add_option("--checks", opt.spectral_checks,
                         "all, none, or a comma list of degree,linear,bilinear,endpoints,transition,residues,sums,ode");
    auto* garnier = app.add_subcommand("garnier", "Garnier coordinates, exponents and flow checks");
    garnier->add_flag("--flow-check", opt.flow_check, "run the finite-difference flow checks");
    auto* dgarnier = app.add_subcommand("dgarnier", "discrete Garnier iteration");
    dgarnier->add_flag("--compare-oracle", opt.compare_oracle, "compare every level with the spectral data");
    dgarnier->add_flag("--tau", opt.tau, "recover the Toeplitz determinants from the iteration");
    auto* sweep = app.add_subcommand("sweep", "first singular step over a parameter grid (CSV)");
    for (auto* sc : {bops, spectral, garnier, dgarnier, sweep}) sc->add_option("--nmax", opt.nmax, "highest level");
    (void)verify;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_config;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunConfig cfg = parse_config(read_json_file(opt.config_path), opt.seed);
        if (opt.precision) cfg.precision_bits = *opt.precision;
        if (opt.tol) cfg.tolerance = *opt.tol;
        if (opt.nmax) {
            if (*opt.nmax < 1) throw ConfigError("n_max must be at least 1");
            cfg.n_max = *opt.nmax;
        }
        validate(cfg);
        if (cmd == "verify" && cfg.checks.empty()) throw ConfigError("verify needs at least one check");
        const int bits = cfg.precision_bits <= 53 ? 53 : cfg.precision_bits <= 128 ? 128 : 256;

        json doc;
        std::string text;
        int code = exit_pass;
        if (bits == 53)
            code = dispatch<real53>(cmd, cfg, opt, bits, doc, text);
        else if (bits == 128)
            code = dispatch<real128>(cmd, cfg, opt, bits, doc, text);
        else
            code = dispatch<real256>(cmd, cfg, opt, bits, doc, text);
        if (text.empty()) {
            // timing is the only field that differs between identical runs
            doc["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
            text = doc.dump(1) + "\n";
        }
        write_output(opt, text);
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const Degenerate& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_degenerate;
    }
}
