#include "dendro/harness.hpp"
#include "dendro/obstruction.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace dendro;

namespace {

constexpr double exact_residual = 0.0;
constexpr double float_tol = 1e-9;
constexpr double floor_bound = 0.4;
constexpr double floor_slack = 1e-12;

struct Verdict {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

std::int64_t count(const CheckReport& r, const std::string& key) {
    auto it = r.counts.find(key);
    return it == r.counts.end() ? 0 : it->second;
}

CheckReport suite(Verdict& v, const std::string& name, std::optional<Mode> mode, std::size_t min_cases,
                  double max_residual) {
    SuiteOptions opts;
    opts.mode = mode;
    opts.tol = float_tol;
    CheckReport r = run_suite(name, opts);
    v.require(r.passed(), name + ": " + std::to_string(r.failures) + " failures");
    v.require(r.cases >= min_cases, name + ": only " + std::to_string(r.cases) + " cases");
    v.require(r.max_residual <= max_residual, name + ": residual " + std::to_string(r.max_residual));
    if (!r.passed() && !r.witnesses.empty()) v.notes.push_back(r.witnesses.front());
    return r;
}

Verdict operad_axioms() {
    Verdict v;
    suite(v, "operad_axioms", Mode::rational, 1000, exact_residual);
    return v;
}

Verdict shift_laws() {
    Verdict v;
    suite(v, "shifts", Mode::rational, 1000, exact_residual);
    suite(v, "eq2", Mode::rational, 1000, exact_residual);
    return v;
}

Verdict retraction() {
    Verdict v;
    suite(v, "retraction_homotopy", Mode::floating, 500, float_tol);
    return v;
}

Verdict well_defined() {
    Verdict v;
    suite(v, "well_defined", Mode::rational, 1000, exact_residual);
    return v;
}

Verdict lemma() {
    Verdict v;
    auto r = suite(v, "lemma_hat", Mode::rational, 1000, exact_residual);
    v.require(count(r, "leaf_bijective_alpha") >= 500, "fewer than 500 leaf-bijective cases");
    v.require(count(r, "isomorphism_beta") >= 500, "fewer than 500 isomorphism cases");
    return v;
}

Verdict theorem() {
    Verdict v;
    auto r = suite(v, "theorem_squares", Mode::rational, 1, exact_residual);
    for (const char* tag : {"case1_root", "case2_leaf_vertex", "case3_inner"})
        v.require(count(r, tag) > 0, std::string("no squares tagged ") + tag);
    v.require(count(r, "trees") > 0, "no trees enumerated");
    return v;
}

Verdict segal() {
    Verdict v;
    auto r = suite(v, "segal", Mode::rational, 500, exact_residual);
    v.require(count(r, "corolla_identity") >= 500, "corolla identity not checked on every case");
    v.require(count(r, "corollary_in_X") > 0 && count(r, "corollary_not_in_X") > 0,
              "corollary check lacks positive or negative instances");
    return v;
}

Verdict simplicial() {
    Verdict v;
    auto r = suite(v, "simplicial", Mode::rational, 500, exact_residual);
    for (int k = 1; k <= 4; ++k)
        v.require(count(r, "hat_agreement_k" + std::to_string(k)) > 0,
                  "no hat agreement checks at k = " + std::to_string(k));
    return v;
}

struct Family {
    const char* radius;
    Vec<double> c1;
    Vec<double> p;
};

Verdict obstruction() {
    Verdict v;
    // Default scan: r = 1/2, c1 = 0, t in [0.001, 0.1]; also the degeneracy identities.
    auto r = suite(v, "obstruction", Mode::floating, 200, float_tol);
    v.require(r.metrics.at("floor") >= floor_bound - floor_slack,
              "floor " + std::to_string(r.metrics.at("floor")) + " below 0.4");
    v.require(r.metrics.at("tmax") <= 0.1, "scan exceeds t = 0.1");

    const std::vector<Family> families = {
        {"const:0.5", {0, 0}, {0.2, 0}},
        {"const:0.05", {0.3, 0.1}, {0, -0.5}},
        {"radial:0.5,-0.5", {0, 0}, {0.2, 0}},
        {"radial:0.5,-0.5", {0.6, 0}, {0.9, 0}},
        {"radial:0.3,0.2,-0.4", {-0.2, 0.5}, {0.1, 0.1}},
        {"radial:0.1,0,1", {0, 0.7}, {0, -0.9}},
        {"radial:0.02,1", {0, 0}, {0.5, 0.5}},
    };
    auto grid = t_grid(1e-6, 0.01, 200);
    for (const auto& f : families) {
        auto cand = RadiusCandidate::parse(f.radius);
        auto scan = obstruction_scan(cand, f.c1, f.p, grid);
        std::string name = cand.describe();
        v.require(scan.certified(), name + ": bound not positive on the whole grid");
        v.require(scan.floor > 0, name + ": floor not positive");
        // As t -> 0 the bound tends to r(c1) > 0.
        v.require(std::abs(scan.rows.front().bound - cand(f.c1)) <= 1e-4, name + ": bound does not tend to r(c1)");
    }
    return v;
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Verdict golden() {
    Verdict v;
    const std::string dir = DENDRO_GOLDEN_DIR;
    std::ifstream cases(dir + "/cases.txt");
    if (!cases) {
        v.require(false, "cannot open " + dir + "/cases.txt");
        return v;
    }
    const std::regex token(R"(\bdendro\b)");
    std::string line;
    std::size_t run = 0;
    while (std::getline(cases, line)) {
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        auto bar1 = line.find('|');
        auto bar2 = line.find('|', bar1 + 1);
        if (bar1 == std::string::npos || bar2 == std::string::npos) {
            v.require(false, "malformed case line: " + line);
            continue;
        }
        std::string name = trim(line.substr(0, bar1));
        int want = std::stoi(trim(line.substr(bar1 + 1, bar2 - bar1 - 1)));
        std::string cmd = std::regex_replace(trim(line.substr(bar2 + 1)), token, "'" DENDRO_CLI "'");
        std::string shell = "cd '" + dir + "/inputs' && " + cmd + " 2>/dev/null";

        std::string out;
        FILE* pipe = popen(shell.c_str(), "r");
        if (!pipe) {
            v.require(false, name + ": popen failed");
            continue;
        }
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
        int status = pclose(pipe);
        int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

        std::ifstream expected_file(dir + "/expected/" + name + ".out", std::ios::binary);
        std::stringstream expected;
        expected << expected_file.rdbuf();
        v.require(static_cast<bool>(expected_file), name + ": missing expected output");
        v.require(code == want, name + ": exit " + std::to_string(code) + ", expected " + std::to_string(want));
        v.require(out == expected.str(), name + ": output differs");
        ++run;
    }
    v.require(run > 0, "no golden cases");
    v.notes.insert(v.notes.begin(), std::to_string(run) + " cases");
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        Verdict (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "operad axioms, exact, >= 1000 cases, n in {1,2,3}", operad_axioms},
        {2, "shift laws and compatibility with composition, exact, >= 1000 cases each", shift_laws},
        {3, "retraction and homotopy, residual <= 1e-9, >= 500 cases", retraction},
        {4, "hat lands in X, trees <= 6 vertices, >= 1000 cases", well_defined},
        {5, "hat anti-functoriality under both lemma hypotheses, >= 500 cases each", lemma},
        {6, "commuting face squares over all trees <= 5 vertices, cases 1-3 tagged", theorem},
        {7, "Segal factorization, corolla identity, corollary check", segal},
        {8, "semi-simplicial identities k <= 5, agreement with hat k <= 4", simplicial},
        {9, "degeneracy identities and obstruction floors", obstruction},
        {10, "CLI golden outputs", golden},
    };
    auto start = std::chrono::steady_clock::now();
    bool all = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all &= v.pass;
        std::printf("criterion %d: %s  %s  (%.1f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.title, secs);
        for (const auto& note : v.notes) std::printf("    %s\n", note.c_str());
        std::fflush(stdout);
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("total: %.1f s\n", total);
    return all ? 0 : 1;
}
