#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "grasshom/flow.hpp"
#include "grasshom/smith.hpp"

namespace grasshom {

using Json = nlohmann::ordered_json;

// {"n","m","convention","degrees":[{"r","generators":[[i1,...]],"boundary":[[row,col,val]]}]}
Json complex_to_json(const ChainComplex& c);

// Homology pipeline output for one (n, m, convention).  When the squared
// boundary is nonzero, `groups` stays empty and the residual carries the
// witness.
struct HomologyRun {
    int n = 0;
    int m = 0;
    SignConvention convention = SignConvention::CorrectedAlternating;
    std::vector<long long> census;
    BoundaryResidual residual;
    std::vector<HomologyGroup> groups;  // empty when residual != 0
    long long euler = 0;
};

HomologyRun run_homology_pipeline(int n, int m, SignConvention convention);

// Closed-form prediction vs. computed group, per degree and reading.
struct Theorem4Row {
    int r = 0;
    HomologyGroup computed;
    HomologyGroup raw_sum;
    HomologyGroup index_shift;
    bool raw_sum_agrees = false;
    bool index_shift_agrees = false;
};

std::vector<Theorem4Row> theorem4_comparison(const HomologyRun& run);

// {"n","m","convention","groups":[{"r","free_rank","torsion"}],"euler","residual"}
Json homology_to_json(const HomologyRun& run);
std::string homology_to_table(const HomologyRun& run);  // includes the comparison block
std::string homology_to_csv(const HomologyRun& run);

std::string census_to_table(int n, int m, const std::vector<long long>& census);
Json census_to_json(int n, int m, const std::vector<long long>& census);
std::string census_to_csv(int n, int m, const std::vector<long long>& census);

// Per-pair trajectory record for the flow report.
struct FlowPairRecord {
    FlowResult result;
    int computed_sign = 0;        // 0 when not applicable
    int frame_det_sign = 0;
};

Json flow_report_to_json(int n, int m, const Spectrum& s,
                         const std::vector<FlowPairRecord>& pairs);

}  // namespace grasshom
