// Command-line front end: element-level operations, the lower-bound report,
// the truncated Borel-Cantelli experiment, and the seeded lemma-check
// harness. Identical inputs and seeds produce byte-identical structured
// output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "riesz/checks.hpp"
#include "riesz/fls.hpp"
#include "riesz/io.hpp"

namespace {

using riesz::io::Json;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw riesz::ParseError("cannot open input file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw riesz::ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

std::vector<riesz::Element> load_elements(const std::string& path) {
    Json j = load_json(path);
    if (!j.is_array() || j.empty())
        throw riesz::ParseError("expected a nonempty array of elements");
    std::vector<riesz::Element> out;
    for (const auto& item : j) out.push_back(riesz::io::element_from_json(item));
    return out;
}

void emit(const Json& structured, const std::string& text, const std::string& format) {
    if (format == "structured")
        std::cout << structured.dump(2) << "\n";
    else
        std::cout << text;
}

std::size_t thread_count() {
    if (const char* env = std::getenv("RIESZ_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return 1;
}

int run_decompose(const std::string& path, const std::string& format) {
    Json results = Json::array();
    std::ostringstream text;
    for (const auto& x : load_elements(path)) {
        auto parts = riesz::decompose(x);
        results.push_back(Json{{"input", riesz::io::to_json(x)},
                               {"finite_part", riesz::io::to_json(parts.finite_part)},
                               {"infinite_part", riesz::io::to_json(parts.infinite_part)}});
        text << riesz::io::to_json(x).dump() << " -> finite "
             << riesz::io::to_json(parts.finite_part).dump() << ", infinite "
             << riesz::io::to_json(parts.infinite_part).dump() << "\n";
    }
    emit(Json{{"command", "decompose"}, {"results", results}}, text.str(), format);
    return 0;
}

int run_star(const std::string& path, const std::string& format) {
    Json results = Json::array();
    std::ostringstream text;
    for (const auto& x : load_elements(path)) {
        riesz::Element s = riesz::star(x);
        results.push_back(
            Json{{"input", riesz::io::to_json(x)}, {"star", riesz::io::to_json(s)}});
        text << riesz::io::to_json(x).dump() << " -> " << riesz::io::to_json(s).dump() << "\n";
    }
    emit(Json{{"command", "star"}, {"results", results}}, text.str(), format);
    return 0;
}

std::string bound_text(const riesz::BoundReport& r) {
    std::ostringstream out;
    out << "dimension: " << r.dimension << "\n";
    out << "band B (support of (sum v_i T Q_i e)^inf): "
        << riesz::io::to_json(r.band).dump() << "\n";
    out << "finite part of the series zero: " << (r.finite_part_zero ? "yes" : "no") << "\n";
    out << "lhs  T P limsup Q_{v_n} e = " << riesz::io::to_json(r.lhs).dump() << "\n";
    out << "rhs samples P(S*_{1,n} K^2_{1,n}):\n";
    for (const auto& [n, value] : r.rhs_samples)
        out << "  n=" << n << ": " << riesz::io::to_json(value).dump() << "\n";
    out << "certificates T(Pc) >= P(S*_{q,n} K^2_{q,n}):\n";
    for (const auto& c : r.certificates)
        out << "  q=" << c.q << " n=" << c.n << ": " << (c.holds ? "holds" : "FAILED")
            << "  lhs=" << riesz::io::to_json(c.lhs).dump()
            << " rhs=" << riesz::io::to_json(c.rhs).dump() << "\n";
    out << "verdict: " << (r.verdict ? "PASS" : "FAIL") << "\n";
    return out.str();
}

int run_bound(const std::string& path, bool corollary, const std::string& format) {
    Json j = load_json(path);
    auto doc = riesz::io::bound_document_from_json(j, /*require_weights=*/!corollary);
    riesz::BoundReport report =
        corollary ? riesz::corollary_m10(doc.T, doc.events_seq, doc.checkpoints)
                  : riesz::theorem_m7(
                        riesz::WeightedEventSeq(doc.T, *doc.weights_seq, doc.events_seq),
                        doc.checkpoints);
    Json body = riesz::io::to_json(report);
    Json out;
    out["command"] = corollary ? "bound/corollary-m10" : "bound";
    for (auto& [key, value] : body.items()) out[key] = value;
    emit(out, bound_text(report), format);
    return report.verdict ? 0 : 1;
}

int run_borel_cantelli(const std::string& path, const std::string& format) {
    Json j = load_json(path);
    if (!j.is_object() || !j.contains("p") || !j.contains("depth"))
        throw riesz::ParseError("borel-cantelli input needs 'p' and 'depth'");
    std::size_t depth = riesz::io::detail::index_from_json(j.at("depth"), "'depth'");
    std::vector<riesz::Rational> ps;
    for (const auto& p : j.at("p")) {
        if (!p.is_string()) throw riesz::ParseError("'p' must be rational strings");
        ps.push_back(riesz::parse_rational(p.get<std::string>()));
    }
    riesz::BCReport report = riesz::borel_cantelli(ps, depth);

    std::ostringstream text;
    text << "depth: " << report.depth << "\n";
    text << "union value T(v P_n e): " << riesz::format_rational(report.union_value) << "\n";
    text << "FLS ratio S*_{1,N} K^2_{1,N}: " << riesz::format_rational(report.fls_ratio) << "\n";
    text << "certificate ratio <= union: " << (report.certificate_holds ? "holds" : "FAILED")
         << "\n";
    text << "gap to one: " << riesz::format_rational(report.gap_to_one) << "\n";
    text << "pairwise T-independent: " << (report.pairwise_independent ? "yes" : "NO") << "\n";
    text << "levels:\n";
    for (const auto& l : report.levels)
        text << "  N=" << l.depth << " ratio=" << riesz::format_rational(l.fls_ratio)
             << " union=" << riesz::format_rational(l.union_value) << "\n";

    Json body = riesz::io::to_json(report);
    Json out;
    out["command"] = "borel-cantelli";
    for (auto& [key, value] : body.items()) out[key] = value;
    emit(out, text.str(), format);
    return report.certificate_holds && report.k2_leq_s && report.pairwise_independent ? 0 : 1;
}

int run_check(const std::string& lemma, std::uint64_t seed, std::size_t trials,
              const std::string& format) {
    std::vector<std::string> names;
    if (lemma.empty() || lemma == "all")
        names = riesz::checks::lemma_names();
    else
        names.push_back(lemma);

    std::size_t threads = thread_count();
    bool all_passed = true;
    Json results = Json::array();
    std::ostringstream text;
    for (const auto& name : names) {
        auto r = riesz::checks::run_named(name, seed, trials, threads);
        all_passed = all_passed && r.ok();
        Json entry{{"lemma", r.lemma},
                   {"trials", r.trials},
                   {"passed", r.passed},
                   {"failed", r.failed},
                   {"regression_ok", r.regression_ok}};
        if (r.first_failure)
            entry["first_counterexample"] = Json{{"assertion", r.first_failure->assertion},
                                                 {"instance", r.first_failure->instance}};
        else
            entry["first_counterexample"] = nullptr;
        results.push_back(entry);

        text << r.lemma << ": " << r.passed << "/" << r.trials << " pass";
        if (!r.regression_ok) text << " [regression FAILED]";
        if (r.first_failure)
            text << "\n  first counterexample: " << r.first_failure->assertion << "\n  instance: "
                 << r.first_failure->instance.dump();
        text << "\n";
    }
    text << (all_passed ? "all checks passed" : "CHECKS FAILED") << "\n";

    emit(Json{{"command", "check"},
              {"seed", seed},
              {"trials", trials},
              {"results", results},
              {"all_passed", all_passed}},
         text.str(), format);
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice calculus on the atomic sup-completion model"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    std::string input;
    auto* dec = app.add_subcommand("decompose", "Split elements into finite + infinite parts");
    dec->add_option("input", input, "JSON array of elements")->required();
    auto* sta = app.add_subcommand("star", "Partial inverses of elements");
    sta->add_option("input", input, "JSON array of elements")->required();

    bool corollary = false;
    auto* bnd = app.add_subcommand("bound", "Lower-bound report for a weighted event sequence");
    bnd->add_option("input", input, "Bound document")->required();
    bnd->add_flag("--corollary-m10", corollary,
                  "Use the specialized weights v_n = (T Q_n e)*");

    auto* bc = app.add_subcommand("borel-cantelli", "Truncated product-space experiment");
    bc->add_option("input", input, "Document with 'p' and 'depth'")->required();

    std::string lemma;
    std::uint64_t seed = 0;
    std::size_t trials = 500;
    auto* chk = app.add_subcommand("check", "Run named lemma property suites");
    chk->add_option("--lemma", lemma, "Lemma name (default: all)");
    chk->add_option("--seed", seed, "Random seed")->capture_default_str();
    chk->add_option("--trials", trials, "Trials per lemma")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) return run_decompose(input, format);
        if (sta->parsed()) return run_star(input, format);
        if (bnd->parsed()) return run_bound(input, corollary, format);
        if (bc->parsed()) return run_borel_cantelli(input, format);
        if (chk->parsed()) return run_check(lemma, seed, trials, format);
    } catch (const riesz::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const riesz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
