#include "ffhyp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>

namespace ffh {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

FieldPtr field_of(const RunConfig& cfg) {
    if (cfg.p == 0) throw std::invalid_argument("field characteristic not set (use --q or --p/--f)");
    return FqField::make(cfg.p, cfg.f, cfg.field_bound);
}

CountRoute route_of(const std::string& s) {
    if (s == "fixed") return CountRoute::FixedPoint;
    if (s == "charsum") return CountRoute::CharSum;
    if (s == "formula") return CountRoute::Formula;
    throw std::invalid_argument("unknown route: " + s);
}

Json field_json(const FqField& k) {
    Json j;
    j["p"] = k.p();
    j["f"] = k.f();
    j["modulus"] = k.modulus();
    j["generator"] = k.generator();
    return j;
}

Json value_json(const CycloNumber& x) {
    Json j;
    j["value"] = cyclo_to_json(x);
    j["complex"] = complex_string(x);
    return j;
}

VarietySpec variety_of(const RunConfig& cfg) {
    VarietySpec V;
    V.family = family_from_string(cfg.family);
    V.d = cfg.d;
    V.exps = cfg.exponents;
    V.lambda = cfg.lambda;
    V.field = field_of(cfg);
    V.validate();
    return V;
}

CountBudget budget_of(const RunConfig& cfg) {
    CountBudget b;
    b.field_bound = cfg.field_bound;
    b.point_budget = cfg.point_budget;
    return b;
}

int cmd_gauss(const RunConfig& cfg, std::ostream& out) {
    FieldPtr k = field_of(cfg);
    if (cfg.chars.size() != 1) throw std::invalid_argument("gauss takes one character");
    MultChar eta{k, parse_char_exponent(cfg.chars[0], k->q())};
    const GaussTable& t = gauss_table(k, cfg.twist);
    Json j;
    j["config"] = cfg.to_json();
    j["field"] = field_json(*k);
    j["eta"] = eta.exponent;
    j.update(value_json(gauss(t, eta)));
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_jacobi(const RunConfig& cfg, std::ostream& out) {
    FieldPtr k = field_of(cfg);
    if (cfg.chars.size() < 2) throw std::invalid_argument("jacobi takes at least two characters");
    std::vector<MultChar> etas;
    for (const std::string& c : cfg.chars) etas.push_back({k, parse_char_exponent(c, k->q())});
    CycloNumber direct = jacobi_direct(etas);
    CycloNumber via = jacobi_via_gauss(gauss_table(k, cfg.twist), etas);
    Json j;
    j["config"] = cfg.to_json();
    j["field"] = field_json(*k);
    j["direct"] = value_json(direct);
    j["via_gauss"] = value_json(via);
    j["routes_agree"] = (direct == via);
    out << j.dump(2) << "\n";
    return direct == via ? 0 : 1;
}

int cmd_hgf(const RunConfig& cfg, std::ostream& out) {
    FieldPtr k = field_of(cfg);
    const GaussTable& t = gauss_table(k, cfg.twist);
    auto to_chars = [&](const std::vector<std::string>& v) {
        std::vector<MultChar> cs;
        for (const std::string& s : v) cs.push_back({k, parse_char_exponent(s, k->q())});
        return cs;
    };
    std::vector<MultChar> up = to_chars(cfg.upper), low = to_chars(cfg.lower);
    CycloNumber value;
    if (cfg.kind == "nFn") {
        if (cfg.lambda.size() != 1) throw std::invalid_argument("nFn takes one lambda");
        value = hgf(t, HgfParams{up, low}, cfg.lambda[0]);
    } else if (cfg.kind == "F1" || cfg.kind == "F2" || cfg.kind == "F3" || cfg.kind == "F4") {
        if (cfg.lambda.size() != 2) throw std::invalid_argument("appell takes two lambdas");
        std::vector<MultChar> all = up;
        all.insert(all.end(), low.begin(), low.end());
        value = appell(t, cfg.kind[1] - '0', all, cfg.lambda[0], cfg.lambda[1]);
    } else {
        LauricellaParams p;
        p.n = static_cast<unsigned>(cfg.lambda.size());
        if (cfg.kind == "A") {
            p.kind = LauricellaKind::A;
            p.a = {up.at(0)};
            p.b = {up.begin() + 1, up.end()};
            p.c = low;
        } else if (cfg.kind == "B") {
            p.kind = LauricellaKind::B;
            p.a = {up.begin(), up.begin() + p.n};
            p.b = {up.begin() + p.n, up.end()};
            p.c = low;
        } else if (cfg.kind == "C") {
            p.kind = LauricellaKind::C;
            p.a = {up.at(0)};
            p.b = {up.at(1)};
            p.c = low;
        } else if (cfg.kind == "D") {
            p.kind = LauricellaKind::D;
            p.a = {up.at(0)};
            p.b = {up.begin() + 1, up.end()};
            p.c = low;
        } else {
            throw std::invalid_argument("unknown hgf kind: " + cfg.kind);
        }
        value = lauricella(t, p, cfg.lambda);
    }
    Json j;
    j["config"] = cfg.to_json();
    j["field"] = field_json(*k);
    j.update(value_json(value));
    j["in_q_zeta_qm1"] = value.lies_in(static_cast<unsigned>(k->q() - 1));
    out << j.dump(2) << "\n";
    return 0;
}

Json verdict_json(const IdentityVerdict& v) {
    Json j;
    j["id"] = v.id;
    j["witness"] = v.witness;
    j["hypotheses_met"] = v.hypotheses_met;
    j["equal"] = v.equal;
    j["lhs"] = cyclo_to_json(v.lhs);
    j["rhs"] = cyclo_to_json(v.rhs);
    return j;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    FieldPtr k = field_of(cfg);
    SweepOptions opt;
    opt.aux = cfg.aux;
    opt.seed = cfg.seed;
    opt.workers = cfg.workers;
    if (cfg.exhaustive) {
        opt.exhaustive_cap = ~0ull;
    } else {
        opt.exhaustive_cap = cfg.cap;
        opt.sample = cfg.sample;
    }
    auto verdicts = sweep(cfg.identity, k, opt);
    long failures = 0, met = 0;
    for (const IdentityVerdict& v : verdicts) {
        if (v.hypotheses_met) {
            ++met;
            if (!v.equal) ++failures;
        }
        out << verdict_json(v).dump() << "\n";
    }
    Json summary;
    summary["id"] = cfg.identity;
    summary["instances"] = verdicts.size();
    summary["hypotheses_met"] = met;
    summary["failures"] = failures;
    out << summary.dump() << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    FieldPtr k = field_of(cfg);
    SweepOptions opt;
    opt.seed = cfg.seed;
    opt.exhaustive_cap = cfg.cap;
    opt.sample = cfg.sample;
    opt.workers = cfg.workers;
    long total_failures = 0;
    for (const std::string& id : identity_ids()) {
        auto verdicts = sweep(id, k, opt);
        long failures = 0, met = 0;
        for (const IdentityVerdict& v : verdicts)
            if (v.hypotheses_met) {
                ++met;
                if (!v.equal) ++failures;
            }
        total_failures += failures;
        Json j;
        j["id"] = id;
        j["instances"] = verdicts.size();
        j["hypotheses_met"] = met;
        j["failures"] = failures;
        out << j.dump() << "\n";
    }
    return total_failures == 0 ? 0 : 1;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
    VarietySpec V = variety_of(cfg);
    CountBudget budget = budget_of(cfg);
    std::vector<unsigned> ms;
    if (cfg.m < 0)
        for (unsigned m = 0; m < V.d; ++m) ms.push_back(m);
    else
        ms.push_back(static_cast<unsigned>(cfg.m) % V.d);
    std::vector<std::string> routes;
    if (cfg.route == "all")
        routes = {"fixed", "charsum", "formula"};
    else
        routes = {cfg.route};

    bool agree = true;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "r,m,route,value_coeffs,complex_approx\n";
    for (unsigned m : ms) {
        CycloNumber first;
        bool have_first = false;
        for (const std::string& rt : routes) {
            ChiCount c;
            switch (route_of(rt)) {
                case CountRoute::FixedPoint: c = chi_fixed_point(V, m, cfg.r, budget); break;
                case CountRoute::CharSum: c = chi_char_sum(V, m, cfg.r, budget); break;
                case CountRoute::Formula: c = chi_formula(V, m, cfg.r, budget); break;
            }
            if (!have_first) {
                first = c.value;
                have_first = true;
            } else if (!(c.value == first)) {
                agree = false;
            }
            Json row;
            row["m"] = m;
            row["r"] = cfg.r;
            row["route"] = rt;
            row.update(value_json(c.value));
            rows.push_back(row);
            csv << cfg.r << "," << m << "," << rt << ","
                << "\"" << cyclo_to_json(c.value)["coeffs"].dump() << "\","
                << complex_string(c.value) << "\n";
        }
    }
    if (cfg.format == "csv") {
        out << csv.str();
    } else {
        Json j;
        j["config"] = cfg.to_json();
        j["counts"] = rows;
        j["routes_agree"] = agree;
        j["brute_total"] = brute_count(V, cfg.r, budget);
        out << j.dump(2) << "\n";
    }
    return agree ? 0 : 1;
}

int cmd_lpoly(const RunConfig& cfg, std::ostream& out) {
    VarietySpec V = variety_of(cfg);
    CountBudget budget = budget_of(cfg);
    unsigned R = cfg.R ? cfg.R : 2 * (V.n() + 1) + 2;
    unsigned m = cfg.m < 0 ? 1 : static_cast<unsigned>(cfg.m) % V.d;
    CountRoute route = cfg.route == "all" ? CountRoute::CharSum : route_of(cfg.route);

    std::vector<CycloNumber> ns;
    for (unsigned r = 1; r <= R; ++r) {
        switch (route) {
            case CountRoute::FixedPoint: ns.push_back(chi_fixed_point(V, m, r, budget).value); break;
            case CountRoute::CharSum: ns.push_back(chi_char_sum(V, m, r, budget).value); break;
            case CountRoute::Formula: ns.push_back(chi_formula(V, m, r, budget).value); break;
        }
    }
    TruncSeries l = exp_series(ns);

    if (cfg.format == "csv") {
        out << "r,m,route,value_coeffs,complex_approx\n";
        for (unsigned r = 1; r <= R; ++r)
            out << r << "," << m << "," << cfg.route << ","
                << "\"" << cyclo_to_json(ns[r - 1])["coeffs"].dump() << "\","
                << complex_string(ns[r - 1]) << "\n";
        return 0;
    }

    Json j;
    j["config"] = cfg.to_json();
    j["m"] = m;
    j["R"] = R;
    Json nrow = Json::array();
    for (const CycloNumber& n : ns) nrow.push_back(cyclo_to_json(n));
    j["N_r"] = nrow;
    Json series = Json::array();
    for (const CycloNumber& c : l.coeffs) series.push_back(cyclo_to_json(c));
    j["series"] = series;

    int code = 0;
    unsigned max_deg = V.n() + 1;
    if (m % V.d == 0) {
        j["polynomial"] = nullptr;
        j["note"] = "m = 0 component is the rational factor of the zeta function";
    } else if (auto p = detect_polynomial(l, max_deg)) {
        Json pc = Json::array();
        for (const CycloNumber& c : p->coeffs) pc.push_back(cyclo_to_json(c));
        j["polynomial"] = pc;
        j["degree"] = p->degree();
        WeilReport rep = weil_check(*p, V.field->q(), cfg.weight, cfg.tol);
        Json roots = Json::array();
        for (const auto& a : rep.reciprocal_roots)
            roots.push_back({format_double(a.real()), format_double(a.imag())});
        j["reciprocal_roots"] = roots;
        j["weil_pass"] = rep.pass;
        j["weil_worst_deviation"] = format_double(rep.worst_deviation);
        if (!rep.pass) code = 1;
    } else {
        j["polynomial"] = nullptr;
        j["note"] = "no vanishing tail through the guard coefficients";
        code = 1;
    }
    out << j.dump(2) << "\n";
    return code;
}

}  // namespace

uint64_t parse_char_exponent(const std::string& text, uint64_t q) {
    const uint64_t m = q - 1;
    if (text.rfind("phi_", 0) == 0) {
        size_t caret = text.find('^');
        uint64_t d = std::stoull(text.substr(4, caret - 4));
        long mm = caret == std::string::npos ? 1 : std::stol(text.substr(caret + 1));
        if (d == 0 || m % d != 0) throw std::invalid_argument("phi_d needs d | q-1: " + text);
        long e = static_cast<long>(m / d) * mm % static_cast<long>(m);
        if (e < 0) e += static_cast<long>(m);
        return static_cast<uint64_t>(e);
    }
    long v = std::stol(text);
    v %= static_cast<long>(m);
    if (v < 0) v += static_cast<long>(m);
    return static_cast<uint64_t>(v);
}

Json cyclo_to_json(const CycloNumber& x) {
    Json j;
    j["order"] = x.order();
    Json coeffs = Json::array();
    for (const Rational& c : x.coeffs())
        coeffs.push_back(c.get_num().get_str() + "/" + c.get_den().get_str());
    j["coeffs"] = coeffs;
    return j;
}

CycloNumber cyclo_from_json(const Json& j) {
    unsigned order = j.at("order").get<unsigned>();
    CycloNumber out;
    unsigned i = 0;
    for (const auto& entry : j.at("coeffs")) {
        std::string s = entry.get<std::string>();
        Rational r(s);
        r.canonicalize();
        out += CycloNumber(r) * CycloNumber::root_of_unity(order, static_cast<long>(i));
        ++i;
    }
    return out.embedded(static_cast<unsigned>(lcm_u(order, out.order())));
}

std::string complex_string(const CycloNumber& x) {
    auto v = x.complex_value(16);
    return format_double(v.real()) + (v.imag() < 0 ? "" : "+") + format_double(v.imag()) + "i";
}

Json RunConfig::to_json() const {
    Json j;
    j["command"] = command;
    j["p"] = p;
    j["f"] = f;
    j["chars"] = chars;
    j["twist"] = twist;
    j["kind"] = kind;
    j["upper"] = upper;
    j["lower"] = lower;
    j["lambda"] = lambda;
    j["identity"] = identity;
    j["exhaustive"] = exhaustive;
    j["sample"] = sample;
    j["seed"] = seed;
    j["aux"] = aux;
    j["cap"] = cap;
    j["family"] = family;
    j["d"] = d;
    j["exponents"] = exponents;
    j["m"] = m;
    j["r"] = r;
    j["R"] = R;
    j["weight"] = weight;
    j["tol"] = tol;
    j["route"] = route;
    j["format"] = format;
    j["workers"] = workers;
    j["field_bound"] = field_bound;
    j["point_budget"] = point_budget;
    return j;
}

RunConfig RunConfig::from_json(const Json& j) {
    RunConfig c;
    c.command = j.value("command", "");
    c.p = j.value("p", 0u);
    c.f = j.value("f", 1u);
    c.chars = j.value("chars", std::vector<std::string>{});
    c.twist = j.value("twist", 1ull);
    c.kind = j.value("kind", "");
    c.upper = j.value("upper", std::vector<std::string>{});
    c.lower = j.value("lower", std::vector<std::string>{});
    c.lambda = j.value("lambda", std::vector<uint64_t>{});
    c.identity = j.value("identity", "");
    c.exhaustive = j.value("exhaustive", false);
    c.sample = j.value("sample", 500ull);
    c.seed = j.value("seed", 0ull);
    c.aux = j.value("aux", 0ull);
    c.cap = j.value("cap", 20000ull);
    c.family = j.value("family", "");
    c.d = j.value("d", 0u);
    c.exponents = j.value("exponents", std::vector<long>{});
    c.m = j.value("m", -1L);
    c.r = j.value("r", 1u);
    c.R = j.value("R", 0u);
    c.weight = j.value("weight", 1);
    c.tol = j.value("tol", 1e-9);
    c.route = j.value("route", "all");
    c.format = j.value("format", "json");
    c.workers = j.value("workers", 1u);
    c.field_bound = j.value("field_bound", FqField::kDefaultBound);
    c.point_budget = j.value("point_budget", 200'000'000ull);
    return c;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "gauss") return cmd_gauss(cfg, out);
        if (cfg.command == "jacobi") return cmd_jacobi(cfg, out);
        if (cfg.command == "hgf") return cmd_hgf(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "sweep") return cmd_sweep(cfg, out);
        if (cfg.command == "count") return cmd_count(cfg, out);
        if (cfg.command == "lpoly") return cmd_lpoly(cfg, out);
        err << "unknown command: " << cfg.command << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact finite-field hypergeometric sums, identities, and L-functions"};
    app.set_config("--config");
    RunConfig cfg;
    uint64_t q = 0;

    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--q", q, "field size p^f (prime power)");
        sub->add_option("--p", cfg.p, "characteristic");
        sub->add_option("--f", cfg.f, "extension degree");
        sub->add_option("--field-bound", cfg.field_bound, "largest table size");
        sub->add_option("--workers", cfg.workers, "worker threads (default 1)");
    };

    CLI::App* gauss_cmd = app.add_subcommand("gauss", "Gauss sum of one character");
    add_field(gauss_cmd);
    gauss_cmd->add_option("--eta", cfg.chars, "character (exponent or phi_d^m)");
    gauss_cmd->add_option("--twist", cfg.twist, "additive character twist");

    CLI::App* jacobi_cmd = app.add_subcommand("jacobi", "Jacobi sum, both routes");
    add_field(jacobi_cmd);
    jacobi_cmd->add_option("--etas", cfg.chars, "characters")->delimiter(',');
    jacobi_cmd->add_option("--twist", cfg.twist, "additive character twist");

    CLI::App* hgf_cmd = app.add_subcommand("hgf", "hypergeometric value");
    add_field(hgf_cmd);
    hgf_cmd->add_option("--kind", cfg.kind, "nFn | A | B | C | D | F1..F4");
    hgf_cmd->add_option("--upper", cfg.upper, "upper characters")->delimiter(',');
    hgf_cmd->add_option("--lower", cfg.lower, "lower characters")->delimiter(',');
    hgf_cmd->add_option("--lambda", cfg.lambda, "arguments (element codes)")->delimiter(',');
    hgf_cmd->add_option("--twist", cfg.twist, "additive character twist");

    CLI::App* verify_cmd = app.add_subcommand("verify", "machine-verify one identity");
    add_field(verify_cmd);
    verify_cmd->add_option("--id", cfg.identity, "identity name");
    verify_cmd->add_flag("--exhaustive", cfg.exhaustive, "enumerate every instance");
    verify_cmd->add_option("--sample", cfg.sample, "sample size above the cap");
    verify_cmd->add_option("--seed", cfg.seed, "sample seed");
    verify_cmd->add_option("--aux", cfg.aux, "n (variable-arity ids) or d (KARLSSON)");
    verify_cmd->add_option("--cap", cfg.cap, "exhaustive cap");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "verify every identity");
    add_field(sweep_cmd);
    sweep_cmd->add_option("--sample", cfg.sample, "sample size above the cap");
    sweep_cmd->add_option("--seed", cfg.seed, "sample seed");
    sweep_cmd->add_option("--cap", cfg.cap, "exhaustive cap");

    CLI::App* count_cmd = app.add_subcommand("count", "chi-decomposed point counts");
    add_field(count_cmd);
    count_cmd->add_option("--family", cfg.family, "CD SD SA SB SC S4 XD");
    count_cmd->add_option("--d", cfg.d, "mu_d order");
    count_cmd->add_option("--exponents", cfg.exponents, "family exponents")->delimiter(',');
    count_cmd->add_option("--lambda", cfg.lambda, "arguments")->delimiter(',');
    count_cmd->add_option("--m", cfg.m, "character index (-1 = all)");
    count_cmd->add_option("--r", cfg.r, "extension degree");
    count_cmd->add_option("--route", cfg.route, "fixed charsum formula all");
    count_cmd->add_option("--format", cfg.format, "json | csv");
    count_cmd->add_option("--point-budget", cfg.point_budget, "enumeration budget");

    CLI::App* lpoly_cmd = app.add_subcommand("lpoly", "Artin L-function and polynomial detection");
    add_field(lpoly_cmd);
    lpoly_cmd->add_option("--family", cfg.family, "CD SD SA SB SC S4 XD");
    lpoly_cmd->add_option("--d", cfg.d, "mu_d order");
    lpoly_cmd->add_option("--exponents", cfg.exponents, "family exponents")->delimiter(',');
    lpoly_cmd->add_option("--lambda", cfg.lambda, "arguments")->delimiter(',');
    lpoly_cmd->add_option("--m", cfg.m, "character index");
    lpoly_cmd->add_option("--R", cfg.R, "truncation order (default 2(n+1)+2)");
    lpoly_cmd->add_option("--route", cfg.route, "count backend");
    lpoly_cmd->add_option("--weight", cfg.weight, "weil weight");
    lpoly_cmd->add_option("--tol", cfg.tol, "weil tolerance");
    lpoly_cmd->add_option("--format", cfg.format, "json | csv");
    lpoly_cmd->add_option("--point-budget", cfg.point_budget, "enumeration budget");

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 2;
    }
    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (q != 0) {
        // resolve q = p^f
        uint32_t p = 0, f = 0;
        for (uint32_t cand = 2; cand <= q; ++cand) {
            uint64_t acc = 1;
            uint32_t e = 0;
            while (acc < q) {
                acc *= cand;
                ++e;
            }
            if (acc == q) {
                bool prime = cand >= 2;
                for (uint32_t t = 2; static_cast<uint64_t>(t) * t <= cand; ++t)
                    if (cand % t == 0) prime = false;
                if (prime) {
                    p = cand;
                    f = e;
                    break;
                }
            }
        }
        if (p == 0) {
            err << "error: q is not a prime power\n";
            return 2;
        }
        cfg.p = p;
        cfg.f = f;
    }
    return run(cfg, out, err);
}

}  // namespace ffh
