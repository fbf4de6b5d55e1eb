/*
   Copyright 2026 The dmf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// dmf: command-line front end. Exit codes: 0 pass, 1 identity failure,
// 2 usage or precision error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dmf/nearly.hpp"
#include "dmf/numerics.hpp"
#include "dmf/operators.hpp"
#include "dmf/verify.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace dmf;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Config {
    unsigned q = 3;
    long prec = 300;
    long vdigits = 30;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string suite = "all";
};

// ---- printing ----

std::string poly_str(const Poly& p)
{
    if (p.is_zero()) return "0";
    const FiniteField& F = p.field();
    std::string s;
    for (int e = p.degree(); e >= 0; --e) {
        Fe c = p[std::size_t(e)];
        if (!c) continue;
        std::string cs = fe_to_string(F, c), t;
        if (e == 0) t = cs;
        else {
            t = (c == 1 ? "" : cs + "*") + std::string("θ");
            if (e > 1) t += "^" + std::to_string(e);
        }
        s += (s.empty() ? "" : " + ") + t;
    }
    return s;
}

std::string ratf_str(const RatF& r)
{
    if (r.is_poly()) return poly_str(r.num());
    return "(" + poly_str(r.num()) + ")/(" + poly_str(r.den()) + ")";
}

json series_json(const USeries& f)
{
    json a = json::array();
    for (long e = 0; e < f.prec(); ++e) a.push_back(ratf_str(f.coeff(e)));
    return a;
}

json rational_json(const mpq_class& v)
{
    if (v.get_den() == 1) return v.get_num().get_si();
    return v.get_str();
}

json puiseux_json(const PuiseuxNum& x)
{
    json d = json::array();
    for (auto& [n, c] : x.digits()) {
        mpq_class ex(-n, long(x.e()));
        ex.canonicalize();
        d.push_back({ex.get_num().get_si(), ex.get_den().get_si(), c});
    }
    json j;
    j["e"] = x.e();
    j["m"] = x.ambient().m;
    j["digits"] = d;
    j["prec"] = x.exact() ? json(nullptr) : rational_json(x.precision());
    return j;
}

PuiseuxNum puiseux_from_json(const Ambient& A, const json& j)
{
    try {
        unsigned e = j.at("e").get<unsigned>();
        if (j.at("m").get<unsigned>() != A.m) throw UsageError("PuiseuxNum: m must be " + std::to_string(A.m));
        if (e != 1 && e != 2 && e != A.q - 1 && e != 2 * (A.q - 1)) throw UsageError("PuiseuxNum: unsupported e");
        std::map<long, Fe> d;
        for (auto& t : j.at("digits")) {
            long num = t.at(0).get<long>(), den = t.at(1).get<long>();
            unsigned long c = t.at(2).get<unsigned long>();
            if (den <= 0 || long(e) % den) throw UsageError("PuiseuxNum: exponent denominator must divide e");
            if (c >= A.F->size()) throw UsageError("PuiseuxNum: coefficient out of range");
            d[-num * (long(e) / den)] = Fe(c);
        }
        long prec_t = PuiseuxNum::kExact;
        if (j.contains("prec") && !j["prec"].is_null()) {
            mpq_class V;
            if (j["prec"].is_string()) V = mpq_class(j["prec"].get<std::string>());
            else V = j["prec"].get<long>();
            V.canonicalize();
            mpq_class t = V * long(e);
            if (t.get_den() != 1) throw UsageError("PuiseuxNum: prec must be a multiple of 1/e");
            prec_t = t.get_num().get_si();
        }
        return PuiseuxNum::from_digits(A, e, d, prec_t);
    } catch (const json::exception& ex) {
        throw UsageError(std::string("PuiseuxNum JSON: ") + ex.what());
    }
}

// a polynomial in θ over F_q or a PuiseuxNum JSON object
PuiseuxNum read_num(const Ambient& A, const std::string& s)
{
    std::size_t i = s.find_first_not_of(" \t");
    if (i != std::string::npos && s[i] == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::exception& ex) {
            throw UsageError(std::string("bad JSON: ") + ex.what());
        }
        return puiseux_from_json(A, j);
    }
    return PuiseuxNum::from_poly(A, parse_poly(*A.Fq, s));
}

void emit(const Config& c, const json& j)
{
    if (c.format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
        std::cout << j.dump() << "\n";
    }
}

// ---- forms ----

struct Form {
    FormPoly f;
    long k = 0, m = 0;
};

Form read_form(const FiniteField& F, const std::string& s)
{
    Form r{parse_form(F, s)};
    if (!r.f.is_zero()) {
        const Exps& e = r.f.terms().begin()->first;
        r.k = monomial_weight(F.size(), e);
        r.m = monomial_type(F.size(), e);
        for (auto& [ex, cf] : r.f.terms())
            if (monomial_weight(F.size(), ex) != r.k || monomial_type(F.size(), ex) != r.m)
                throw UsageError("form is not homogeneous in weight and type");
    }
    return r;
}

bool series_free(const FormPoly& f)
{
    return f.degree(VY) == 0 && f.degree(VX) == 0;
}

// "d2,delta1,iota,slash"
Form apply_chain(Form x, const std::string& chain)
{
    std::stringstream ss(chain);
    std::string op;
    const unsigned q = x.f.field().size();
    while (std::getline(ss, op, ',')) {
        auto num = [&](std::size_t at) -> unsigned {
            std::string t = op.substr(at);
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 4)
                throw UsageError("bad operator \"" + op + "\"");
            return unsigned(std::stoul(t));
        };
        if (op.rfind("delta", 0) == 0) {
            unsigned r = num(5);
            x.f = maass_shimura(x.f, x.k, r);
            x.k += 2 * long(r);
            x.m += long(r);
        } else if (op.rfind("d", 0) == 0) {
            unsigned n = num(1);
            if (x.f.degree(VY)) throw UsageError("∂ applies to Y-free forms; use delta");
            x.f = symbolic_hyper(n, x.f);
            x.k += 2 * long(n);
            x.m += long(n);
        } else if (op == "iota") {
            x.f = x.f.part(VY, 0);
        } else if (op == "slash") {
            x.f = formal_slash(x.f);
        } else {
            throw UsageError("unknown operator \"" + op + "\" (use dN, deltaN, iota, slash)");
        }
        x.m = norm_type(q, x.m);
    }
    return x;
}

json form_json(const Form& x, long prec)
{
    json j;
    j["form"] = form_to_string(x.f);
    j["weight"] = x.k;
    j["type"] = x.m;
    j["depth"] = std::max(x.f.degree(VY), x.f.degree(VE));
    if (series_free(x.f)) j["expansion"] = series_json(expand(x.f, prec));
    return j;
}

json membership_json(const Membership& mb)
{
    json j;
    j["status"] = mb.status == Membership::member ? "member" : mb.status == Membership::not_member ? "not_member" : "inconsistent_truncation";
    if (mb.status == Membership::member) j["certificate"] = form_to_string(mb.poly);
    else j["first_bad"] = mb.first_bad;
    j["dim"] = mb.dim;
    return j;
}

USeries named_series(const FiniteField& F, const std::string& name, long prec)
{
    if (name == "Delta" || name == "Δ") return generator_delta(F, prec);
    if (name == "j") return j_invariant(F, prec);
    if (name == "u") return USeries::u(F, prec);
    Form x = read_form(F, name);
    if (!series_free(x.f)) throw UsageError("Y and X have no u-expansion");
    return expand(x.f, prec);
}

PsiSpec make_spec(const Ambient& A, const std::string& variant, const std::string& B)
{
    if (variant == "even") return PsiSpec::make_even(A, read_num(A, B));
    if (variant == "odd-I") return PsiSpec::make_odd_I(A);
    if (variant == "odd-II") return PsiSpec::make_odd_II(A);
    throw UsageError("variant must be even, odd-I or odd-II");
}

json quad_json(const QuadExtElem& z)
{
    return json{{"a", puiseux_json(z.a())}, {"b", puiseux_json(z.b())}};
}

// ---- config plumbing ----

void apply_config_file(const std::string& path, CLI::App& app, Config& c)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw UsageError(std::string("config file: ") + ex.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    // flags and environment win over the file
    auto unset = [&](const char* flag, const char* env) { return app.count(flag) == 0 && std::getenv(env) == nullptr; };
    try {
        for (auto& [k, v] : j.items()) {
            if (k == "q") {
                if (unset("--q", "DMF_Q")) c.q = v.get<unsigned>();
            } else if (k == "prec") {
                if (unset("--prec", "DMF_PREC")) c.prec = v.get<long>();
            } else if (k == "vdigits") {
                if (unset("--vdigits", "DMF_VDIGITS")) c.vdigits = v.get<long>();
            } else if (k == "seed") {
                if (unset("--seed", "DMF_SEED")) c.seed = v.get<std::uint64_t>();
            } else if (k == "format") {
                if (unset("--format", "DMF_FORMAT")) c.format = v.get<std::string>();
            } else if (k == "suite") {
                if (unset("--suite", "DMF_SUITE")) c.suite = v.get<std::string>();
            } else {
                throw UsageError("config file: unknown key \"" + k + "\"");
            }
        }
    } catch (const json::exception& ex) {
        throw UsageError(std::string("config file: ") + ex.what());
    }
}

void check_config(const Config& c)
{
    if (c.q > 256) throw UsageError("--q must be a prime power ≤ 256");
    FiniteField::of_order(c.q);
    if (c.prec < 1) throw UsageError("--prec must be positive");
    if (c.format != "json" && c.format != "table") throw UsageError("--format must be json or table");
}

int run(int argc, char** argv)
{
    CLI::App app{"Drinfeld modular forms: expansions, operators and verification suites"};
    app.require_subcommand(1);
    Config c;
    std::string config_path;
    app.add_option("--q", c.q, "field size, a prime power ≤ 256")->envname("DMF_Q");
    app.add_option("--prec", c.prec, "u-precision N (number of coefficients)")->envname("DMF_PREC");
    app.add_option("--vdigits", c.vdigits, "numeric truncation V in valuation digits")->envname("DMF_VDIGITS");
    app.add_option("--seed", c.seed, "seed for randomized batteries")->envname("DMF_SEED");
    app.add_option("--format", c.format, "json or table")->envname("DMF_FORMAT");
    app.add_option("--suite", c.suite, "suite for verify")->envname("DMF_SUITE");
    app.add_option("--config", config_path, "JSON file with the same keys as the flags")->envname("DMF_CONFIG");
    app.fallthrough();

    std::string form, form2, chain, variant, a_s = "0", b_s = "0", B_s = "θ", shift = "0";
    long weight = -1, type = -1, k_opt = -1;
    unsigned r = 1;

    auto* expand_c = app.add_subcommand("expand", "u-expansion of a generator (g, h, E, Delta, j, u) or a form");
    expand_c->add_option("form", form, "generator name or form")->required();

    auto* apply_c = app.add_subcommand("apply", "apply an operator chain (dN, deltaN, iota, slash) to a form");
    apply_c->add_option("chain", chain, "comma-separated operators, applied left to right")->required();
    apply_c->add_option("form", form, "form in g, h, E, Y")->required();

    auto* bracket_c = app.add_subcommand("bracket", "Rankin-Cohen bracket [f, g]_r with a membership certificate");
    bracket_c->add_option("f", form, "first form")->required();
    bracket_c->add_option("g", form2, "second form")->required();
    bracket_c->add_option("--r", r, "order");

    auto* uop_c = app.add_subcommand("uop", "U-operator U_k^r(f)");
    uop_c->add_option("f", form, "form")->required();
    uop_c->add_option("--r", r, "order, at least 2");
    uop_c->add_option("--k", k_opt, "weight parameter (default: the weight of f)");

    auto* dec_c = app.add_subcommand("decompose", "write a nearly holomorphic form as sum g_j E₂^j");
    dec_c->add_option("form", form, "form in g, h, E, Y")->required();
    dec_c->add_option("--apply", chain, "operator chain applied first");

    auto* mem_c = app.add_subcommand("membership", "decide membership of a form's expansion in M_k^m");
    mem_c->add_option("form", form, "form in g, h, E")->required();
    mem_c->add_option("--weight", weight, "k (default: inferred)");
    mem_c->add_option("--type", type, "m (default: inferred)");

    auto* ver_c = app.add_subcommand("verify", "run a verification suite");
    ver_c->add_option("suite", c.suite, "suite name (same as --suite)");

    auto* eval_c = app.add_subcommand("eval", "evaluate a form at z = ξ + a in F_{q²}((1/θ))");
    eval_c->add_option("form", form, "generator name or form (default E)");
    eval_c->add_option("--shift", shift, "a ∈ F_q[θ]");

    auto* psi_c = app.add_subcommand("psi", "apply ψ to a + b·gen in a quadratic extension of K_∞");
    psi_c->add_option("variant", variant, "even, odd-I or odd-II")->required();
    psi_c->add_option("--a", a_s, "polynomial in θ or PuiseuxNum JSON");
    psi_c->add_option("--b", b_s, "polynomial in θ or PuiseuxNum JSON");
    psi_c->add_option("--B", B_s, "even case: 𝔠² + 𝔠 + B = 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!config_path.empty()) apply_config_file(config_path, app, c);
    check_config(c);
    const FiniteField& F = FiniteField::of_order(c.q);
    if (!*psi_c && c.prec < long(c.q) * long(c.q)) throw PrecisionError("--prec must be at least q² = " + std::to_string(c.q * c.q));

    if (*expand_c) {
        json j;
        j["q"] = c.q;
        j["prec"] = c.prec;
        j["form"] = form;
        j["coefficients"] = series_json(named_series(F, form, c.prec));
        emit(c, j);
        return 0;
    }
    if (*apply_c) {
        Form x = apply_chain(read_form(F, form), chain);
        emit(c, form_json(x, c.prec));
        return 0;
    }
    if (*bracket_c) {
        Form a = read_form(F, form), b = read_form(F, form2);
        if (!series_free(a.f) || !series_free(b.f)) throw UsageError("bracket inputs must be free of Y and X");
        USeries br = rc_bracket(expand(a.f, c.prec), a.k, expand(b.f, c.prec), b.k, r);
        long k = a.k + b.k + 2 * long(r), m = norm_type(c.q, a.m + b.m + long(r));
        json j;
        j["weight"] = k;
        j["type"] = m;
        j["membership"] = membership_json(membership(br, k, m));
        j["expansion"] = series_json(br);
        emit(c, j);
        return 0;
    }
    if (*uop_c) {
        Form a = read_form(F, form);
        if (!series_free(a.f)) throw UsageError("U-operator input must be free of Y and X");
        if (r < 2) throw UsageError("--r must be at least 2");
        long k = k_opt >= 0 ? k_opt : a.k;
        USeries U = u_operator(expand(a.f, c.prec), k, r);
        long kw = k * long(r) + 2 * long(r), m = norm_type(c.q, a.m * long(r) + long(r));
        json j;
        j["k"] = k;
        j["r"] = r;
        j["is_zero"] = U.is_zero();
        j["membership"] = membership_json(membership(U, kw, m));
        j["expansion"] = series_json(U);
        emit(c, j);
        return 0;
    }
    if (*dec_c) {
        Form x = read_form(F, form);
        if (!chain.empty()) x = apply_chain(x, chain);
        if (x.f.degree(VX)) throw UsageError("decompose does not accept X");
        Decomposition d = decompose(NHForm(x.f, x.k, x.m), c.prec);
        if (!d.ok) {
            std::cerr << "not a nearly holomorphic modular form: " << d.detail << "\n";
            return 1;
        }
        json j = json::array();
        for (auto& g : d.g) j.push_back(form_to_string(g));
        emit(c, j);
        return 0;
    }
    if (*mem_c) {
        Form x = read_form(F, form);
        if (!series_free(x.f)) throw UsageError("membership needs a form free of Y and X");
        long k = weight >= 0 ? weight : x.k, m = type >= 0 ? type : x.m;
        json j;
        j["weight"] = k;
        j["type"] = norm_type(c.q, m);
        j["membership"] = membership_json(membership(expand(x.f, c.prec), k, m));
        emit(c, j);
        return 0;
    }
    if (*ver_c) {
        VerifyConfig vc{c.q, c.prec, c.vdigits, c.seed};
        std::vector<Check> rep = run_suite(c.suite, vc);
        bool all = true;
        for (auto& x : rep) all = all && x.pass;
        if (c.format == "json") {
            json j = json::array();
            for (auto& x : rep) j.push_back({{"id", x.id}, {"anchor", x.anchor}, {"status", x.pass ? "pass" : "fail"}, {"detail", x.detail}});
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "# suite " << c.suite << ", q=" << c.q << ", prec " << c.prec << ", vdigits " << c.vdigits << ", seed " << c.seed << "\n";
            for (auto& x : rep)
                std::cout << (x.pass ? "PASS  " : "FAIL  ") << x.id << "  [" << x.anchor << "]  " << x.detail << "\n";
        }
        return all ? 0 : 1;
    }
    if (*eval_c) {
        const Ambient& A = Ambient::get(c.q, 2);
        PuiseuxNum z = PuiseuxNum::constant(A, xi_point(A)) + PuiseuxNum::from_poly(A, parse_poly(F, shift));
        PuiseuxNum u0 = u_eval(z, c.vdigits);
        std::string name = form.empty() ? "E" : form;
        SeriesValue v = eval_useries(named_series(F, name, c.prec), u0, c.vdigits);
        json j;
        j["form"] = name;
        j["xi"] = xi_point(A);
        j["u"] = puiseux_json(u0);
        j["value"] = puiseux_json(v.value);
        j["order"] = rational_json(v.order);
        emit(c, j);
        return 0;
    }
    if (*psi_c) {
        const Ambient& A = Ambient::get(c.q, 2);
        PsiSpec s = make_spec(A, variant, B_s);
        PuiseuxNum a = read_num(A, a_s), b = read_num(A, b_s);
        QuadExtElem z = s.variant == PsiSpec::even ? QuadExtElem(a, b, s.B) : QuadExtElem(a, b);
        QuadExtElem p = psi_apply(s, z);
        json j;
        j["variant"] = s.name();
        j["generator"] = s.variant == PsiSpec::even ? "𝔠" : "1/√θ";
        j["input"] = quad_json(z);
        j["psi"] = quad_json(p);
        j["fixed"] = p == z;
        j["fixed_by_criterion"] = fixed_field_test(s, z);
        emit(c, j);
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
