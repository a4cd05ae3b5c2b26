// Command-line front end: homology tables, census, and the verification
// suites, with table/json/csv output.
//
// Exit codes: 0 success, 1 usage error, 2 mathematical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "grasshom/reports.hpp"
#include "grasshom/verify.hpp"

namespace {

using namespace grasshom;

constexpr int kExitUsage = 1;
constexpr int kExitMathFailure = 2;

struct Options {
    int n = 0;
    int m = 0;
    std::string convention = "corrected";
    std::vector<double> lambdas;
    std::string format = "table";
    std::string out;
    std::uint64_t seed = 12345;
    int max_n = 0;
};

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitUsage;
    }
    os << text;
    return 0;
}

Spectrum spectrum_for(const Options& opt) {
    if (opt.lambdas.empty()) return Spectrum::default_for(opt.n);
    return Spectrum(opt.lambdas);
}

bool check_size(const Options& opt, int default_limit, std::string* err) {
    const int limit = opt.max_n > 0 ? opt.max_n : default_limit;
    if (opt.n < 1 || opt.m < 1 || opt.m > opt.n) {
        *err = "need 1 <= m <= n";
        return false;
    }
    if (opt.n > limit) {
        *err = "n exceeds the configured maximum " + std::to_string(limit) +
               " (raise with --max-n)";
        return false;
    }
    return true;
}

std::string report_to_text(const VerifyReport& rep, const std::string& format) {
    if (format == "json") {
        Json arr = Json::array();
        for (const CheckLine& l : rep.lines)
            arr.push_back(Json{{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        return Json{{"checks", arr}}.dump(2) + "\n";
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "name,pass,detail\n";
        for (const CheckLine& l : rep.lines)
            os << '"' << l.name << "\"," << (l.pass ? 1 : 0) << ",\"" << l.detail << "\"\n";
        return os.str();
    }
    return rep.to_string();
}

int run_homology(const Options& opt) {
    std::string err;
    if (!check_size(opt, 12, &err)) {
        std::cerr << err << "\n";
        return kExitUsage;
    }
    const auto conv = parse_convention(opt.convention);
    if (!conv) {
        std::cerr << "unknown convention: " << opt.convention << "\n";
        return kExitUsage;
    }
    const HomologyRun run = run_homology_pipeline(opt.n, opt.m, *conv);
    std::string text;
    if (opt.format == "json") text = homology_to_json(run).dump(2) + "\n";
    else if (opt.format == "csv") text = homology_to_csv(run);
    else text = homology_to_table(run);
    const int rc = emit(text, opt.out);
    if (rc != 0) return rc;
    if (run.residual.max_abs_entry != 0) {
        std::cerr << "warning: boundary operator does not square to zero under convention '"
                  << opt.convention << "'; homology suppressed\n";
        return kExitMathFailure;
    }
    return 0;
}

int run_census(const Options& opt) {
    std::string err;
    if (!check_size(opt, 12, &err)) {
        std::cerr << err << "\n";
        return kExitUsage;
    }
    const std::vector<long long> census = index_census(opt.n, opt.m);
    std::string text;
    if (opt.format == "json") text = census_to_json(opt.n, opt.m, census).dump(2) + "\n";
    else if (opt.format == "csv") text = census_to_csv(opt.n, opt.m, census);
    else text = census_to_table(opt.n, opt.m, census);
    return emit(text, opt.out);
}

int run_verify_boundary(const Options& opt) {
    const int limit = opt.max_n > 0 ? opt.max_n : 10;
    if (limit < 1 || limit > 12) {
        std::cerr << "--max-n must be in [1, 12]\n";
        return kExitUsage;
    }
    const auto conv = parse_convention(opt.convention);
    if (!conv) {
        std::cerr << "unknown convention: " << opt.convention << "\n";
        return kExitUsage;
    }
    const VerifyReport rep = verify_boundary_grid(limit, *conv);
    const int rc = emit(report_to_text(rep, opt.format), opt.out);
    if (rc != 0) return rc;
    return rep.all_pass() ? 0 : kExitMathFailure;
}

int run_verify_geometry(const Options& opt) {
    std::string err;
    if (!check_size(opt, 12, &err)) {
        std::cerr << err << "\n";
        return kExitUsage;
    }
    const VerifyReport rep = verify_geometry(opt.n, opt.m, spectrum_for(opt), opt.seed);
    const int rc = emit(report_to_text(rep, opt.format), opt.out);
    if (rc != 0) return rc;
    return rep.all_pass() ? 0 : kExitMathFailure;
}

int run_verify_flow(const Options& opt) {
    std::string err;
    if (!check_size(opt, 6, &err)) {
        std::cerr << err << "\n";
        return kExitUsage;
    }
    const Spectrum s = spectrum_for(opt);
    const FlowVerification v = verify_flow(opt.n, opt.m, s);
    std::string text;
    if (opt.format == "json") {
        Json j = flow_report_to_json(opt.n, opt.m, s, v.pairs);
        Json checks = Json::array();
        for (const CheckLine& l : v.report.lines)
            checks.push_back(Json{{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        j["checks"] = checks;
        text = j.dump(2) + "\n";
    } else {
        text = report_to_text(v.report, opt.format);
    }
    const int rc = emit(text, opt.out);
    if (rc != 0) return rc;
    return v.report.all_pass() ? 0 : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral homology of real Grassmannians via the critical-point complex"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool needs_nm) {
        if (needs_nm) {
            cmd->add_option("--n", opt.n, "ambient dimension")->required();
            cmd->add_option("--m", opt.m, "plane dimension")->required();
        }
        cmd->add_option("--format", opt.format, "table|json|csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        cmd->add_option("--out", opt.out, "write output to file instead of stdout");
        cmd->add_option("--max-n", opt.max_n, "override the size guard");
    };

    CLI::App* homology = app.add_subcommand("homology", "homology table for G_{n,m}(R)");
    add_common(homology, true);
    homology->add_option("--convention", opt.convention, "paper|corrected|mod2");

    CLI::App* census = app.add_subcommand("census", "Morse-index census of G_{n,m}(R)");
    add_common(census, true);

    CLI::App* vb = app.add_subcommand(
        "verify-boundary",
        "squared-boundary residuals over an (n,m) grid; with --convention paper only "
        "m=1 rows must vanish, larger m is reported informationally");
    add_common(vb, false);
    vb->add_option("--convention", opt.convention, "paper|corrected|mod2");

    CLI::App* vg = app.add_subcommand("verify-geometry",
                                      "gradient/Hessian/metric checks for G_{n,m}(R)");
    add_common(vg, true);
    vg->add_option("--lambdas", opt.lambdas, "comma-separated spectrum")->delimiter(',');
    vg->add_option("--seed", opt.seed, "seed for sampled checks");

    CLI::App* vf = app.add_subcommand("verify-flow",
                                      "trajectory counts, signs and confinement for G_{n,m}(R)");
    add_common(vf, true);
    vf->add_option("--lambdas", opt.lambdas, "comma-separated spectrum")->delimiter(',');
    vf->add_option("--seed", opt.seed, "seed (accepted for interface stability; flow is deterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(homology)) return run_homology(opt);
        if (app.got_subcommand(census)) return run_census(opt);
        if (app.got_subcommand(vb)) return run_verify_boundary(opt);
        if (app.got_subcommand(vg)) return run_verify_geometry(opt);
        if (app.got_subcommand(vf)) return run_verify_flow(opt);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
