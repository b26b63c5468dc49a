// Acceptance suite: runs each criterion and prints one PASS/FAIL line.
// Everything is exact rational arithmetic; time limits are wall-clock.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "riesz/checks.hpp"
#include "riesz/fls.hpp"
#include "riesz/io.hpp"

using namespace riesz;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << what << "\n";
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1: full lemma suite, 500 trials each, under 120 s ----------

void criterion_lemma_suite() {
    auto start = Clock::now();
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    bool all_ok = true;
    std::string detail;
    for (const auto& check : checks::registry()) {
        auto result = checks::run_lemma(check, 20250810, 500, threads);
        if (!result.ok()) {
            all_ok = false;
            detail += std::string(" [") + check.name + ": " +
                      std::to_string(result.failed) + " failed" +
                      (result.regression_ok ? "" : ", regression failed") + "]";
            if (result.first_failure)
                detail += " first: " + result.first_failure->assertion;
        }
    }
    double elapsed = seconds_since(start);
    bool in_time = elapsed < 120.0;
    std::ostringstream what;
    what << "lemma suite, 25 names x 500 seeded trials, exact (" << elapsed << " s)" << detail;
    report(1, all_ok && in_time, what.str());
}

// --- criterion 2: paper counterexample regressions -------------------------

void criterion_regressions() {
    bool ok = true;
    std::string detail;

    // Pairwise disjointness does not give sup additivity on two atoms.
    try {
        Rng rng(1);
        checks::yy2a_once(rng);
    } catch (const checks::CheckFailed& f) {
        ok = false;
        detail += " [disjointness: " + f.assertion + "]";
    }
    // Finite parts are not monotone: (1,1) <= (1,inf).
    try {
        Rng rng(1);
        checks::yy2h_once(rng);
    } catch (const checks::CheckFailed& f) {
        ok = false;
        detail += " [finite part: " + f.assertion + "]";
    }
    // inf(u x_n) can differ from u inf x_n without the band condition.
    try {
        Rng rng(1);
        checks::yy2e_once(rng);
    } catch (const checks::CheckFailed& f) {
        ok = false;
        detail += " [band condition: " + f.assertion + "]";
    }
    report(2, ok, "paper counterexample regressions hold exactly" + detail);
}

// --- criterion 3: dependent-case reproduction ------------------------------

void criterion_dependent_case() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;

    CondExp T = CondExp::trivial(ProbSpace::uniform(4));
    PeriodicSeq<BandProjection> qs({}, {BandProjection(4, {0, 1}), BandProjection(4, {0, 2})});
    PeriodicSeq<Element> vs({}, {Element::unit(4)});
    BoundReport r = theorem_m7(WeightedEventSeq(T, vs, qs), {1, 3, 7, 25, 99, 199, 200});

    if (r.lhs != Element::constant(4, ExtValue(Rational(3, 4)))) {
        ok = false;
        detail += " [lhs != 3/4 e]";
    }
    const Rational two_thirds(2, 3);
    Rational prev(-1);
    for (const auto& [n, value] : r.rhs_samples) {
        Rational v = value[0].rational();
        if (value != Element::constant(4, ExtValue(v)) || !(prev < v) || v > two_thirds) {
            ok = false;
            detail += " [samples must increase strictly toward 2/3]";
            break;
        }
        prev = v;
    }
    Rational at200 = r.rhs_samples.back().second[0].rational();
    Rational err = two_thirds - at200;
    if (err < 0) err = -err;
    if (!(err <= Rational(1, 100))) {
        ok = false;
        detail += " [n=200 sample not within 1/100 of 2/3]";
    }
    for (const auto& c : r.certificates)
        if (!c.holds) {
            ok = false;
            detail += " [certificate q=" + std::to_string(c.q) + " n=" + std::to_string(c.n) +
                      " failed]";
        }
    double elapsed = seconds_since(start);
    if (elapsed >= 10.0) {
        ok = false;
        detail += " [too slow]";
    }
    std::ostringstream what;
    what << "dependent Feng-Li-Shen case: lhs = 3/4 e, samples rise to 2/3 e ("
         << elapsed << " s)" << detail;
    report(3, ok, what.str());
}

// --- criterion 4: Borel-Cantelli truncated product -------------------------

void criterion_borel_cantelli() {
    auto start = Clock::now();
    bool ok = true;
    std::string detail;

    BCReport r = borel_cantelli({Rational(1, 2)}, 12);
    if (r.fls_ratio != Rational(12, 13)) {
        ok = false;
        detail += " [ratio != 12/13]";
    }
    if (r.union_value != 1 - Rational(1, 4096)) {
        ok = false;
        detail += " [union != 1 - 2^-12]";
    }
    if (!r.certificate_holds) {
        ok = false;
        detail += " [certificate failed]";
    }
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        const auto& level = r.levels[i];
        if (level.fls_ratio != Rational(BigInt(level.depth), BigInt(level.depth + 1))) {
            ok = false;
            detail += " [level ratio != N/(N+1)]";
        }
        if (i > 0 && !(r.levels[i - 1].fls_ratio <= level.fls_ratio)) {
            ok = false;
            detail += " [ratio not nondecreasing]";
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed >= 30.0) {
        ok = false;
        detail += " [too slow]";
    }
    std::ostringstream what;
    what << "Borel-Cantelli product, p = 1/2, N = 12, 4096 atoms (" << elapsed << " s)"
         << detail;
    report(4, ok, what.str());
}

// --- criterion 5: nontrivial conditional case -------------------------------

void criterion_conditional_case() {
    bool ok = true;
    std::string detail;

    ProbSpace space({Rational(1, 6), Rational(1, 3), Rational(1, 4), Rational(1, 4)});
    std::vector<std::vector<std::size_t>> partition = {{0, 1}, {2, 3}};

    for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
        Rng rng(mix_seed(0xC04D1710, seed));
        CondExp T(space, partition);
        WeightedEventSeq seq = gen::weighted_event_seq(rng, T);
        BoundReport r = theorem_m7(seq, {2, 5, 8});
        if (!T.is_block_constant(r.lhs)) {
            ok = false;
            detail = " [lhs not block-constant at seed " + std::to_string(seed) + "]";
        }
        for (const auto& c : r.certificates) {
            if (!c.holds) {
                ok = false;
                detail = " [certificate failed at seed " + std::to_string(seed) + "]";
            }
            if (!T.is_block_constant(c.lhs) || !T.is_block_constant(c.rhs)) {
                ok = false;
                detail = " [certificate not block-constant at seed " + std::to_string(seed) + "]";
            }
        }
    }
    report(5, ok,
           "conditional case, weights (1/6,1/3,1/4,1/4), partition {{0,1},{2,3}}, 100 seeds" +
               detail);
}

// --- criterion 6: sequence oracles ------------------------------------------

void criterion_sequence_oracles() {
    bool ok = true;
    std::string detail;

    for (std::uint64_t seed = 0; seed < 1000 && ok; ++seed) {
        Rng rng(mix_seed(0x5E90E4CE, seed));
        std::size_t d = 1 + rng.uniform(6);
        auto s = gen::cone_seq(rng, d);
        std::size_t window_end = s.prefix_len() + 3 * s.cycle_len();

        auto fail = [&](const char* what) {
            ok = false;
            detail = std::string(" [") + what + " at seed " + std::to_string(seed) + "]";
        };

        for (std::size_t beta = 0; beta < s.prefix_len() + s.cycle_len() && ok; ++beta) {
            Element bsup = s.term(beta), binf = s.term(beta);
            for (std::size_t n = beta + 1; n < std::max(window_end, beta + 1); ++n) {
                bsup = join(bsup, s.term(n));
                binf = meet(binf, s.term(n));
            }
            if (tail_sup(s, beta) != bsup) fail("tail_sup");
            if (tail_inf(s, beta) != binf) fail("tail_inf");
        }
        if (!ok) break;

        Element wsup = s.term(s.prefix_len()), winf = s.term(s.prefix_len());
        for (std::size_t n = s.prefix_len(); n < window_end; ++n) {
            wsup = join(wsup, s.term(n));
            winf = meet(winf, s.term(n));
        }
        if (limsup(s) != wsup) fail("limsup");
        if (liminf(s) != winf) fail("liminf");

        std::size_t from = rng.uniform(s.prefix_len() + s.cycle_len() + 1);
        Element total = series_sum(s, from);
        for (std::size_t i = 0; i < d && ok; ++i) {
            bool diverges = false;
            Rational finite(0);
            for (std::size_t n = from; n < window_end; ++n) {
                const ExtValue& v = s.term(n)[i];
                if (n >= s.prefix_len() && v.is_positive()) diverges = true;
                if (n < s.prefix_len()) {
                    if (v.is_infinite())
                        diverges = true;
                    else if (n >= from)
                        finite += v.rational();
                }
            }
            if (diverges ? !total[i].is_infinite() : total[i] != ExtValue(finite))
                fail("series_sum");
        }
    }
    report(6, ok, "sequence operations match brute-force window oracles, 1000 seeds" + detail);
}

// --- criterion 7: CLI determinism -------------------------------------------

std::string run_command(const std::string& command) {
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return "<popen failed>";
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
    pclose(pipe);
    return output;
}

void criterion_determinism() {
    std::string base = std::string("\"") + RIESZ_CLI_PATH +
                       "\" --format structured check --lemma all --trials 30 --seed 99";
    std::string a = run_command("RIESZ_THREADS=1 " + base);
    std::string b = run_command("RIESZ_THREADS=1 " + base);
    std::string c = run_command("RIESZ_THREADS=4 " + base);
    bool ok = !a.empty() && a == b && a == c;
    report(7, ok, "two runs of 'check' with one seed are byte-identical (and thread-count"
                  " independent)");
}

}  // namespace

int main() {
    criterion_lemma_suite();
    criterion_regressions();
    criterion_dependent_case();
    criterion_borel_cantelli();
    criterion_conditional_case();
    criterion_sequence_oracles();
    criterion_determinism();

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
    return 1;
}
