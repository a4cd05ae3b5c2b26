#include "grasshom/reports.hpp"

#include <iomanip>
#include <sstream>

namespace grasshom {

namespace {

Json subset_json(const CriticalPoint& p) {
    Json a = Json::array();
    for (int v : p.subset) a.push_back(v);
    return a;
}

Json group_json(const HomologyGroup& g) {
    Json t = Json::array();
    for (const Integer& d : g.torsion) t.push_back(d.get_si());
    return Json{{"free_rank", g.free_rank}, {"torsion", t}};
}

}  // namespace

Json complex_to_json(const ChainComplex& c) {
    Json degrees = Json::array();
    for (int r = 0; r <= c.top_degree(); ++r) {
        Json gens = Json::array();
        for (const CriticalPoint& p : c.generators[r]) gens.push_back(subset_json(p));
        Json boundary = Json::array();
        for (const SparseEntry& e : c.boundaries[r].entries)
            boundary.push_back(Json::array({e.row, e.col, e.value}));
        degrees.push_back(Json{{"r", r}, {"generators", gens}, {"boundary", boundary}});
    }
    return Json{{"n", c.n}, {"m", c.m}, {"convention", to_string(c.convention)}, {"degrees", degrees}};
}

HomologyRun run_homology_pipeline(int n, int m, SignConvention convention) {
    HomologyRun run;
    run.n = n;
    run.m = m;
    run.convention = convention;
    run.census = index_census(n, m);

    const ChainComplex c = build_complex(n, m, convention);
    run.residual = boundary_square_residual(c);
    if (run.residual.max_abs_entry != 0) return run;

    run.groups = homology_table(c);
    long long chi = 0;
    for (size_t r = 0; r < run.groups.size(); ++r)
        chi += (r % 2 == 0 ? 1 : -1) * run.groups[r].free_rank;
    run.euler = chi;
    return run;
}

std::vector<Theorem4Row> theorem4_comparison(const HomologyRun& run) {
    std::vector<Theorem4Row> rows;
    for (int r = 0; r < static_cast<int>(run.groups.size()); ++r) {
        Theorem4Row row;
        row.r = r;
        row.computed = run.groups[r];
        row.raw_sum = theorem4_prediction(run.n, run.m, r, Theorem4Reading::RawSum);
        row.index_shift = theorem4_prediction(run.n, run.m, r, Theorem4Reading::MorseIndexShift);
        row.raw_sum_agrees = (row.raw_sum == row.computed);
        row.index_shift_agrees = (row.index_shift == row.computed);
        rows.push_back(std::move(row));
    }
    return rows;
}

Json homology_to_json(const HomologyRun& run) {
    Json out{{"n", run.n}, {"m", run.m}, {"convention", to_string(run.convention)}};
    if (run.residual.max_abs_entry != 0) {
        out["residual"] = run.residual.max_abs_entry.get_si();
        if (run.residual.witness) {
            out["witness"] = Json::array({subset_json(run.residual.witness->row_generator),
                                          subset_json(run.residual.witness->col_generator)});
        }
        return out;
    }
    Json groups = Json::array();
    for (int r = 0; r < static_cast<int>(run.groups.size()); ++r) {
        Json g = group_json(run.groups[r]);
        Json entry{{"r", r}};
        entry.update(g);
        groups.push_back(entry);
    }
    out["groups"] = groups;
    out["euler"] = run.euler;
    out["residual"] = 0;
    return out;
}

std::string homology_to_table(const HomologyRun& run) {
    std::ostringstream os;
    os << "Integral homology of G_{" << run.n << "," << run.m << "}(R), convention "
       << to_string(run.convention) << "\n";
    if (run.residual.max_abs_entry != 0) {
        os << "d^2 != 0: max |entry| = " << run.residual.max_abs_entry.get_str();
        if (run.residual.witness)
            os << " at (" << run.residual.witness->row_generator.label() << ", "
               << run.residual.witness->col_generator.label() << ")";
        os << "\nhomology not defined; residual shown\n";
        return os.str();
    }
    os << std::left << std::setw(5) << "r" << std::setw(7) << "c_r" << std::setw(28) << "H_r"
       << "mod2_dim\n";
    for (int r = 0; r < static_cast<int>(run.groups.size()); ++r)
        os << std::left << std::setw(5) << r << std::setw(7) << run.census[r] << std::setw(28)
           << render_group(run.groups[r]) << run.census[r] << "\n";
    os << "Euler characteristic: " << run.euler << "\n";

    os << "\nClosed-form prediction comparison (raw-sum / index-shift readings):\n";
    for (const Theorem4Row& row : theorem4_comparison(run)) {
        os << "  r=" << std::left << std::setw(4) << row.r << "computed " << std::setw(24)
           << render_group(row.computed) << "raw-sum " << std::setw(24) << render_group(row.raw_sum)
           << (row.raw_sum_agrees ? "[agree]   " : "[disagree]") << " index-shift " << std::setw(24)
           << render_group(row.index_shift) << (row.index_shift_agrees ? "[agree]" : "[disagree]")
           << "\n";
    }
    return os.str();
}

std::string homology_to_csv(const HomologyRun& run) {
    std::ostringstream os;
    os << "r,c_r,free_rank,torsion,mod2_dim\n";
    if (run.residual.max_abs_entry != 0) return os.str();
    for (int r = 0; r < static_cast<int>(run.groups.size()); ++r) {
        os << r << ',' << run.census[r] << ',' << run.groups[r].free_rank << ',';
        for (size_t t = 0; t < run.groups[r].torsion.size(); ++t) {
            if (t) os << ';';
            os << run.groups[r].torsion[t].get_str();
        }
        os << ',' << run.census[r] << "\n";
    }
    return os.str();
}

std::string census_to_table(int n, int m, const std::vector<long long>& census) {
    std::ostringstream os;
    os << "Morse-index census of G_{" << n << "," << m << "}(R)\n";
    os << std::left << std::setw(5) << "r" << "c_r\n";
    long long total = 0;
    for (int r = 0; r < static_cast<int>(census.size()); ++r) {
        os << std::left << std::setw(5) << r << census[r] << "\n";
        total += census[r];
    }
    os << "total: " << total << " = C(" << n << "," << m << ")\n";
    return os.str();
}

Json census_to_json(int n, int m, const std::vector<long long>& census) {
    Json counts = Json::array();
    for (long long c : census) counts.push_back(c);
    return Json{{"n", n}, {"m", m}, {"counts", counts}};
}

std::string census_to_csv(int n, int m, const std::vector<long long>& census) {
    (void)n;
    (void)m;
    std::ostringstream os;
    os << "r,c_r\n";
    for (int r = 0; r < static_cast<int>(census.size()); ++r) os << r << ',' << census[r] << "\n";
    return os.str();
}

Json flow_report_to_json(int n, int m, const Spectrum& s,
                         const std::vector<FlowPairRecord>& pairs) {
    Json lam = Json::array();
    for (double v : s.values()) lam.push_back(v);
    Json out{{"n", n}, {"m", m}, {"lambdas", lam}};
    Json arr = Json::array();
    for (const FlowPairRecord& rec : pairs) {
        const FlowResult& fr = rec.result;
        Json entry{{"source", subset_json(fr.source)},
                   {"sink", fr.sink ? subset_json(*fr.sink) : Json(nullptr)},
                   {"slot", fr.slot},
                   {"sign", fr.direction_sign},
                   {"steps", fr.steps},
                   {"transitions", fr.transition_count},
                   {"f_start", fr.f_start},
                   {"f_end", fr.f_end},
                   {"confinement_max", fr.confinement_max}};
        if (rec.computed_sign != 0) entry["trajectory_sign"] = rec.computed_sign;
        if (rec.frame_det_sign != 0) entry["frame_det_sign"] = rec.frame_det_sign;
        arr.push_back(entry);
    }
    out["pairs"] = arr;
    return out;
}

}  // namespace grasshom
