// Command-line driver.  `check` runs the directives of a .kz file; `corpus`
// runs the built-in case bank.  The JSON document is the contract; the table
// is for eyes.  Exit codes: 0 all checks pass, 2 some check failed, 3 budget
// exhausted before a verdict, 4 unreadable or ill-formed input.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kunz/deform.hpp"
#include "kunz/differentials.hpp"
#include "kunz/dsl.hpp"
#include "kunz/frobenius.hpp"
#include "kunz/verdict.hpp"

using namespace kunz;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kAllPass = 0;
constexpr int kCheckFailed = 2;
constexpr int kBudgetExhausted = 3;
constexpr int kBadInput = 4;

struct Flags {
    bool json = false;
    std::uint64_t budget = Budget::kDefaultLimit;
    unsigned emax = 2;
    std::string filter;
    std::uint64_t seed = 0;
    std::string out;
    bool timings = false;
};

// One executed directive.  bad_input marks a semantic error discovered at run
// time (an option naming something that does not exist); it dominates the
// exit code.
struct CheckOutcome {
    std::string kind;
    std::string target;
    std::vector<std::pair<std::string, std::string>> options;
    std::string status; // pass | fail | not-decided
    std::string detail;
    std::vector<std::string> witnesses;
    ordered_json verdict = nullptr; // filled for kunz and classify
    bool bad_input = false;
    std::uint64_t millis = 0;
};

std::string option_of(const CheckDirective& d, const std::string& key, const std::string& dflt) {
    for (const auto& [k, v] : d.options)
        if (k == key) return v;
    return dflt;
}

void run_omega(const AlgebraMap& alpha, CheckOutcome& out, Budget& budget) {
    bool zero = omega_is_zero(alpha, budget);
    out.status = zero ? "pass" : "fail";
    out.detail = zero ? "omega vanishes: formally unramified"
                      : "omega is nonzero: not formally unramified";
}

void run_frobenius(const AlgebraMap& alpha, const CheckDirective& d, CheckOutcome& out,
                   Budget& budget) {
    unsigned e = static_cast<unsigned>(std::stoul(option_of(d, "e", "1")));
    std::string mode = option_of(d, "mode", "iso");
    FrobeniusData fd = build_frobenius(alpha, e, budget);
    std::string head = "relative frobenius e=" + std::to_string(e);
    if (mode == "surjective") {
        SurjectivityReport sr = frobenius_surjective(fd, budget);
        out.status = sr.surjective ? "pass" : "fail";
        out.detail = head + (sr.surjective ? " is surjective" : " is not surjective");
        const auto& names = alpha.target->ambient().var_names();
        for (std::size_t i = 0; i < sr.certs.size() && !sr.surjective; ++i)
            if (!sr.certs[i].member) {
                out.witnesses.push_back("variable " + names[i] + " lies outside alpha(R)[A^q]");
                break;
            }
    } else if (mode == "injective") {
        InjectivityReport ir = frobenius_injective(fd, budget);
        out.status = ir.injective ? "pass" : "fail";
        out.detail = head + (ir.injective ? " is injective" : " is not injective");
        if (!ir.injective && !ir.kernel.gens.empty())
            out.witnesses.push_back("frobenius kernel contains " +
                                    ir.kernel.ring->ambient().to_string(ir.kernel.gens.front()));
    } else {
        bool iso = frobenius_iso(fd, budget);
        out.status = iso ? "pass" : "fail";
        out.detail = head + (iso ? " is an isomorphism" : " is not an isomorphism");
    }
}

void run_kunz(const AlgebraMap& alpha, CheckOutcome& out, const Flags& flags) {
    Budget budget(flags.budget);
    Verdict v = classify(alpha, flags.emax, budget);
    out.verdict = verdict_to_json(v);
    out.witnesses = v.witnesses;
    if (v.omega_zero.has_value() && v.frob_surjective.has_value()) {
        // classify would have thrown KunzViolation on disagreement.
        out.status = "pass";
        out.detail = std::string("omega_zero == frob_surjective == ") +
                     (*v.omega_zero ? "true" : "false") + "; " + v.classification;
    } else {
        out.status = "not-decided";
        out.detail = "budget exhausted before both sides were decided";
    }
}

void run_classify(const AlgebraMap& alpha, CheckOutcome& out, const Flags& flags) {
    Budget budget(flags.budget);
    Verdict v = classify(alpha, flags.emax, budget);
    out.verdict = verdict_to_json(v);
    out.witnesses = v.witnesses;
    out.status = v.complete ? "pass" : "not-decided";
    out.detail = v.classification;
}

void run_lifts(const AlgebraMap& alpha, const CheckDirective& d, CheckOutcome& out,
               Budget& budget) {
    std::string ext = option_of(d, "ext", "");
    if (!ext.empty()) {
        std::vector<BankCase> bank = deformation_bank(alpha, budget);
        const BankCase* bc = nullptr;
        for (const auto& c : bank)
            if (c.name == ext) bc = &c;
        if (!bc) {
            out.status = "fail";
            out.bad_input = true;
            out.detail = "no deformation bank case named '" + ext + "' for this map";
            for (const auto& c : bank) out.witnesses.push_back("available: " + c.name);
            return;
        }
        XiReport xi = xi_uniqueness_check(alpha, bc->ext, bc->theta, budget);
        out.witnesses.push_back("ext " + bc->name + ": " + std::to_string(xi.lift_count) +
                                " lifts");
        if (xi.applicable) {
            out.status = xi.pass ? "pass" : "fail";
            out.detail = "frobenius surjective: at most one lift required, found " +
                         std::to_string(xi.lift_count);
        } else {
            out.status = "pass";
            out.detail = "frobenius not surjective: control run, found " +
                         std::to_string(xi.lift_count) + " lifts";
        }
        return;
    }
    bool surjective = frobenius_surjective(build_frobenius(alpha, 1, budget), budget).surjective;
    LiftSurvey sv = lift_survey(alpha, budget);
    for (const auto& entry : sv.entries)
        out.witnesses.push_back("ext " + entry.name + ": " +
                                (entry.attempted ? std::to_string(entry.lifts) + " lifts"
                                                 : std::string("skipped (budget)")));
    if (sv.attempted == 0) {
        out.status = "not-decided";
        out.detail = "no deformation bank case could be attempted";
    } else if (surjective) {
        out.status = sv.all_at_most_one ? "pass" : "fail";
        out.detail = "frobenius surjective: at most one lift on every attempted bank case (" +
                     std::to_string(sv.attempted) + " attempted)";
        if (!sv.all_at_most_one) out.detail = "frobenius surjective but some bank case has >= 2 lifts";
    } else {
        out.status = sv.any_multi ? "pass" : "fail";
        out.detail = sv.any_multi
                         ? "frobenius not surjective: multi-lift witness found in the bank"
                         : "frobenius not surjective but no bank case produced >= 2 lifts";
    }
}

CheckOutcome run_directive(const Elaboration& el, const CheckDirective& d, const Flags& flags) {
    CheckOutcome out;
    out.kind = d.kind;
    out.target = d.target;
    out.options = d.options;
    const AlgebraMap& alpha = el.maps.at(d.target);
    auto start = std::chrono::steady_clock::now();
    try {
        Budget budget(flags.budget);
        if (d.kind == "omega")
            run_omega(alpha, out, budget);
        else if (d.kind == "frobenius")
            run_frobenius(alpha, d, out, budget);
        else if (d.kind == "kunz")
            run_kunz(alpha, out, flags); // classify manages budget stages itself
        else if (d.kind == "classify")
            run_classify(alpha, out, flags);
        else
            run_lifts(alpha, d, out, budget);
    } catch (const BudgetExceeded& e) {
        out.status = "not-decided";
        out.detail = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    out.millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count());
    return out;
}

std::string render_directive(const CheckOutcome& out) {
    std::string line = "check " + out.kind + " " + out.target;
    for (const auto& [k, v] : out.options) line += " " + k + "=" + v;
    return line;
}

ordered_json check_report(const std::string& path, const std::string& map_name,
                          const std::vector<CheckOutcome>& outcomes, const Flags& flags) {
    ordered_json doc;
    doc["schema_version"] = "1";
    doc["engine_version"] = kEngineVersion;
    doc["seed"] = flags.seed;
    doc["file"] = path;
    if (!map_name.empty()) doc["map"] = map_name;
    doc["checks"] = ordered_json::array();
    for (const auto& out : outcomes) {
        ordered_json entry;
        entry["kind"] = out.kind;
        entry["target"] = out.target;
        ordered_json opts = ordered_json::object();
        for (const auto& [k, v] : out.options) opts[k] = v;
        entry["options"] = opts;
        entry["status"] = out.status;
        entry["detail"] = out.detail;
        entry["witnesses"] = out.witnesses;
        entry["verdict"] = out.verdict;
        if (flags.timings) entry["millis"] = out.millis;
        doc["checks"].push_back(entry);
    }
    return doc;
}

std::string pad(std::string s, std::size_t width) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
}

void write_out(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

int aggregate_exit(bool bad_input, std::size_t fails, std::size_t undecided) {
    if (bad_input) return kBadInput;
    if (fails) return kCheckFailed;
    if (undecided) return kBudgetExhausted;
    return kAllPass;
}

int cmd_check(const std::string& path, const std::string& map_name, const Flags& flags) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kBadInput;
    }
    std::stringstream text;
    text << in.rdbuf();

    Elaboration el;
    try {
        Budget load_budget(flags.budget);
        el = load_source(text.str(), load_budget);
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return kBadInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << path << ": " << e.what() << " (during elaboration)\n";
        return kBudgetExhausted;
    }

    if (!map_name.empty() && !el.maps.count(map_name)) {
        std::cerr << "error: no map named '" << map_name << "' in " << path << "\n";
        return kBadInput;
    }

    std::vector<CheckOutcome> outcomes;
    for (const auto& d : el.checks)
        if (map_name.empty() || d.target == map_name) outcomes.push_back(run_directive(el, d, flags));

    ordered_json doc = check_report(path, map_name, outcomes, flags);
    if (flags.json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::size_t w = 0;
        for (const auto& o : outcomes) w = std::max(w, render_directive(o).size());
        for (const auto& o : outcomes) {
            std::cout << pad(o.status, 11) << "  " << pad(render_directive(o), w) << "  "
                      << o.detail << "\n";
            for (const auto& wit : o.witnesses) std::cout << pad("", 13) << "- " << wit << "\n";
        }
    }
    if (!flags.out.empty()) write_out(flags.out, doc.dump(2) + "\n");

    bool bad = false;
    std::size_t fails = 0, undecided = 0;
    for (const auto& o : outcomes) {
        bad = bad || o.bad_input;
        if (o.status == "fail") ++fails;
        if (o.status == "not-decided") ++undecided;
    }
    if (!flags.json) {
        std::cout << outcomes.size() << " checks: " << (outcomes.size() - fails - undecided)
                  << " passed, " << fails << " failed, " << undecided << " not decided\n";
    }
    return aggregate_exit(bad, fails, undecided);
}

int cmd_corpus(const Flags& flags) {
    CorpusReport report = corpus_run(flags.filter, flags.emax, flags.budget);
    std::string json = report_to_json(report, flags.seed, flags.timings);
    if (flags.json) {
        std::cout << json;
    } else {
        std::cout << kunz_crosscheck_table(report) << "\n";
        std::size_t w = 0;
        for (const auto& r : report.results) w = std::max(w, r.name.size());
        for (const auto& r : report.results) {
            std::cout << pad(r.status, 11) << "  " << pad(r.name, w) << "  "
                      << r.verdict.classification << "\n";
            for (const auto& m : r.mismatches) std::cout << pad("", 13) << "- " << m << "\n";
        }
    }
    if (!flags.out.empty()) write_out(flags.out, json);

    std::size_t fails = 0, undecided = 0;
    for (const auto& r : report.results) {
        if (r.status == "fail") ++fails;
        if (r.status == "not-decided") ++undecided;
    }
    if (!flags.json) {
        std::cout << report.results.size() << " cases: "
                  << (report.results.size() - fails - undecided) << " passed, " << fails
                  << " failed, " << undecided << " not decided\n";
    }
    return aggregate_exit(false, fails, undecided);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for finitely presented algebras over prime fields"};
    app.require_subcommand(1);

    Flags flags;
    std::string file, map_name;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", flags.json, "emit the JSON report on stdout instead of the table");
        cmd->add_option("--budget", flags.budget, "step budget per computation")
            ->envname("KUNZ_BUDGET")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--emax", flags.emax, "largest Frobenius iterate for classify/kunz")
            ->check(CLI::Range(1u, 6u));
        cmd->add_option("--seed", flags.seed, "seed recorded in the report");
        cmd->add_option("--out", flags.out, "also write the JSON report to this path");
        cmd->add_flag("--timings", flags.timings, "include milliseconds in the JSON report");
    };

    CLI::App* check = app.add_subcommand("check", "run the check directives of a .kz file");
    check->add_option("file", file, "input .kz file")->required();
    check->add_option("map", map_name, "restrict to directives targeting this map");
    add_common(check);

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "run the built-in corpus");
    corpus_cmd->add_option("--filter", flags.filter, "substring filter on case names");
    add_common(corpus_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(file, map_name, flags);
        return cmd_corpus(flags);
    } catch (const KunzViolation& e) {
        std::cerr << "KUNZ VIOLATION (engine bug): " << e.what() << "\n";
        return kCheckFailed;
    } catch (const InternalError& e) {
        std::cerr << "INTERNAL ERROR (engine bug): " << e.what() << "\n";
        return kCheckFailed;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudgetExhausted;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}
