// Acceptance criteria 1-9, one PASS/FAIL line each. Failing checks are listed
// under the line. The exit status is 0 when every failure is one of the
// known U-operator cases below and 1 otherwise.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dmf/verify.hpp"

using namespace dmf;

namespace {

const unsigned kQs[] = {2, 3, 4, 5};

struct Criterion {
    int no;
    std::string title, suite;
    std::function<bool(const Check&)> keep;
};

bool hyper_check(const Check& c)
{
    return c.id.rfind("∂", 0) == 0 || c.id.rfind("𝒢", 0) == 0;
}

std::string strip_prec(const std::string& id)
{
    auto i = id.find(" (prec ");
    return i == std::string::npos ? id : id.substr(0, i);
}

// U_k^r(g) does not vanish for these (k, r): see the project notes
std::set<std::string> known_failures()
{
    std::set<std::string> s;
    auto add = [&](unsigned q, long k, unsigned r) {
        s.insert("q=" + std::to_string(q) + ": U_{" + std::to_string(k) + "}^{" + std::to_string(r) + "}(g) = 0");
    };
    for (unsigned q : kQs) add(q, long(q) - 1, q);
    add(2, 3, 2);
    for (unsigned r : {2u, 3u}) add(3, 4, r);
    for (unsigned r : {2u, 4u}) add(4, 5, r);
    for (unsigned r = 2; r <= 5; ++r) add(5, 6, r);
    return s;
}

}  // namespace

int main()
{
    const std::vector<Criterion> crits{
        {1, "U-operator values", "u-operators", nullptr},
        {2, "generator ledger at prec 300 and 600", "generators", nullptr},
        {3, "Maass-Shimura and structure", "structure", nullptr},
        {4, "formal equivariance", "equivariance", nullptr},
        {5, "Rankin-Cohen brackets", "rankin-cohen", nullptr},
        {6, "combinatorics", "combinatorics", [](const Check& c) { return !hyper_check(c); }},
        {7, "hyperderivative engine", "combinatorics", hyper_check},
        {8, "ψ on quadratic extensions", "appendix-a", nullptr},
        {9, "numerics", "numerics", nullptr},
    };
    const std::set<std::string> known = known_failures();
    std::set<std::string> seen_known;
    bool unexpected = false;
    std::map<std::pair<std::string, unsigned>, std::vector<Check>> memo;
    for (const Criterion& cr : crits) {
        auto t0 = std::chrono::steady_clock::now();
        long n = 0;
        bool shared = true;
        std::vector<std::string> fails;
        for (unsigned q : kQs) {
            VerifyConfig c;
            c.q = q;
            c.prec = 300;
            c.vdigits = 30;
            auto key0 = std::make_pair(cr.suite, q);
            if (!memo.count(key0)) {
                memo[key0] = run_suite(cr.suite, c);
                shared = false;
            }
            for (const Check& x : memo[key0]) {
                if (cr.keep && !cr.keep(x)) continue;
                ++n;
                if (x.pass) continue;
                std::string key = "q=" + std::to_string(q) + ": " + strip_prec(x.id);
                if (cr.no == 1 && known.count(key)) seen_known.insert(key);
                else unexpected = true;
                fails.push_back(key + " -- " + x.detail);
            }
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string when = shared ? "timed with the suite's first use" : std::to_string(secs).substr(0, std::to_string(secs).find('.') + 2) + " s";
        std::printf("%s criterion %d: %s (%ld checks, %zu failed, %s)\n", fails.empty() ? "PASS" : "FAIL", cr.no, cr.title.c_str(), n,
                    fails.size(), when.c_str());
        for (auto& f : fails) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
    }
    if (seen_known.size() != known.size()) {
        std::printf("note: some known U-operator failures no longer occur\n");
        unexpected = true;
    }
    return unexpected ? 1 : 0;
}
