#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "lambda0/driver.hpp"

using namespace lambda0;

namespace {

void add_engine_flags(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--level-max", cfg.level_max, "deepest tower level to try");
    cmd->add_option("--exp-start", cfg.exp_start, "starting coefficient exponent (0 = auto)");
    cmd->add_option("--primes", cfg.primes, "auxiliary prime budget per level");
    cmd->add_option("--stable-window", cfg.window, "consecutive no-change window for saturation");
    cmd->add_option("--bits", cfg.bits, "starting precision for embedding verification");
    cmd->add_option("--verify-lower", cfg.verify_lower, "lower-bound route: auto|gras|none")
        ->check(CLI::IsMember({"auto", "gras", "none"}));
    cmd->add_option("--orientation", cfg.orientation, "group generator labeling: auto|gamma|gamma-inv")
        ->check(CLI::IsMember({"auto", "gamma", "gamma-inv"}));
}

int exit_code_for(const std::vector<FieldResult>& rs)
{
    for (const auto& r : rs)
        if (!r.resolved || !r.cert.certified) return 2;
    return 0;
}

std::string describe(const FieldResult& r)
{
    std::string s = "f=" + std::to_string(r.f) + " n=" + std::to_string(r.n_stab) +
                    " k=" + std::to_string(r.tk) + " order=3^" + std::to_string(r.order_log3) +
                    " J=";
    if (r.j_generators.empty()) s += "(1)";
    for (size_t gi = 0; gi < r.j_generators.size(); ++gi) {
        s += gi == 0 ? "(" : ", ";
        const auto& g = r.j_generators[gi];
        bool lead = true;
        for (size_t d = g.size(); d-- > 0;) {
            int64_t c = g[d];
            if (c == 0) continue;
            if (!lead) s += c > 0 ? "+" : "-";
            else if (c < 0) s += "-";
            int64_t ac = c < 0 ? -c : c;
            if (ac != 1 || d == 0) s += std::to_string(ac);
            if (d >= 1) s += "T";
            if (d >= 2) s += "^" + std::to_string(d);
            lead = false;
        }
        if (lead) s += "0";
        if (gi + 1 == r.j_generators.size()) s += ")";
    }
    s += " [" + r.status + (r.cert.exact ? ", exact" : "") +
         (r.cert.lemma_applied
              ? ", lemma(" + std::to_string(r.cert.witness.m) + "," +
                    std::to_string(r.cert.witness.n) + "," + std::to_string(r.cert.witness.a) +
                    "," + std::to_string(r.cert.witness.b) + ")"
              : "") +
         ", lower=" + r.cert.lower + "]";
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"verification engine for vanishing Iwasawa lambda invariants "
                 "of real quadratic fields at p = 3"};
    app.require_subcommand(1);

    RunConfig cfg;
    uint64_t single_f = 0;
    std::string in_path, golden_path;

    CLI::App* scan = app.add_subcommand("scan", "process a discriminant range");
    scan->add_option("--min", cfg.f_min, "range lower bound (inclusive)")->required();
    scan->add_option("--max", cfg.f_max, "range upper bound (exclusive)")->required();
    scan->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");
    scan->add_option("--out", cfg.out, "journal output path");
    scan->add_flag("--resume", cfg.resume, "reuse records from an existing journal");
    add_engine_flags(scan, cfg);

    CLI::App* table = app.add_subcommand("table", "aggregate a journal into count tables");
    table->add_option("--in", in_path, "journal path")->required();

    CLI::App* check = app.add_subcommand("check", "compare a journal against expectations");
    check->add_option("--in", in_path, "journal path")->required();
    check->add_option("--golden", golden_path, "expectations file")->required();

    CLI::App* field = app.add_subcommand("field", "verbose single-discriminant run");
    field->add_option("--f", single_f, "fundamental discriminant")->required();
    add_engine_flags(field, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) {
            auto rs = scan_range(cfg, [](const FieldResult& r) {
                if (r.order_log3 > 0 || !r.resolved) std::cout << describe(r) << "\n";
            });
            unsigned nonzero = 0, unresolved = 0;
            for (const auto& r : rs) {
                if (!r.resolved) ++unresolved;
                else if (r.order_log3 > 0) ++nonzero;
            }
            std::cout << rs.size() << " fields, " << nonzero << " nonzero, " << unresolved
                      << " unresolved\n";
            return exit_code_for(rs);
        }
        if (table->parsed()) {
            std::ifstream in(in_path);
            if (!in) throw std::runtime_error("cannot open " + in_path);
            auto rs = read_journal(in);
            print_tables(std::cout, aggregate_tables(rs));
            return exit_code_for(rs);
        }
        if (check->parsed()) {
            std::ifstream in(in_path);
            if (!in) throw std::runtime_error("cannot open " + in_path);
            std::ifstream gf(golden_path);
            if (!gf) throw std::runtime_error("cannot open " + golden_path);
            auto verdicts = golden_check(read_journal(in), parse_golden(gf));
            bool all = true;
            for (const auto& v : verdicts) {
                std::cout << "f=" << v.f << (v.pass() ? " PASS" : " FAIL")
                          << (v.involuted ? " (involuted orientation)" : "")
                          << (v.note.empty() ? "" : " " + v.note) << "\n";
                all = all && v.pass();
            }
            return all ? 0 : 2;
        }
        if (field->parsed()) {
            auto r = compute_field(validate_discriminant(single_f), cfg);
            std::cout << describe(r) << "\n";
            std::cout << result_to_json(r) << "\n";
            return r.resolved && r.cert.certified ? 0 : 2;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
