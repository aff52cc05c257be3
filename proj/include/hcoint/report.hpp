#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hcoint/equivalences.hpp"
#include "hcoint/model_io.hpp"

namespace hcoint {

struct AnalyzeOptions {
    /// Contour radius; defaults to min(0.1, root distance / 3).
    std::optional<double> radius;
    /// Highest Laurent coefficient index; defaults to d + 4.
    std::optional<Index> laurent_count;
    unsigned jobs = 1;
};

/// Everything the analysis pipeline computed; later stages are empty on a FAIL verdict.
struct Analysis {
    RootDiagnostics diagnostics;
    FiniteTypeVerdict verdict;
    RankPolicy policy;
    std::optional<TaylorPencil> pencil;
    std::optional<Decomposition> dec;
    std::optional<LaurentSeries> series;
    PoleEquivalenceReport equivalences;
    std::vector<ChainResidual> chain;
    BssReport bss;
    std::optional<Index> jordan_d;
};

/**
 * validate -> expand at 1 -> root diagnostics -> recursion -> Laurent
 * coefficients -> cross-checks. Numerical failures propagate as Error.
 */
[[nodiscard]] Analysis run_analysis(const ModelSpec& spec, const AnalyzeOptions& options = {});

struct RelationReport {
    Index h = 0;
    /// Canonical basis of tau_h, one column per direction.
    Matrix basis;
    /// S_h^+ A_{h+1,n}, n = 1..d-h-1.
    std::vector<Matrix> coefficients;
    /// rows[i][n-1] = basis column i times coefficients[n-1], as a row.
    std::vector<std::vector<Vector>> rows;
};

struct AnalysisReport {
    int schema = 1;
    bool pass = false;
    std::string reason;
    std::string detail;
    double rel_tol = 0.0;
    double abs_floor = 0.0;

    Index p = 0;
    Index k = 0;
    std::vector<Complex> eigenvalues;
    Index unit_cluster_size = 0;
    double cluster_center_error = 0.0;
    double max_other_modulus = 0.0;
    /// Absent when there is no other characteristic root.
    std::optional<double> root_distance;
    Index dim_ker_a0 = 0;
    Index dim_coker_a0 = 0;
    bool a0_vanishes = false;

    std::optional<Index> d;
    std::vector<Index> dims;
    std::vector<Matrix> tau_bases;
    std::vector<Matrix> zeta_bases;
    Matrix attractor;
    Matrix coint_space;
    std::vector<RelationReport> relations;

    std::vector<EquivalenceCheck> pole_equivalences;
    std::vector<ChainResidual> chain_identities;
    std::string bss;
    std::optional<Index> jordan_d;

    double laurent_radius = 0.0;
    Index laurent_nodes = 0;
    double laurent_residual = 0.0;
    double laurent_max_imag = 0.0;
    double laurent_pointwise = 0.0;
    std::vector<Matrix> laurent_coeffs;
};

[[nodiscard]] AnalysisReport make_report(const Analysis& analysis, const ModelSpec& spec);

[[nodiscard]] nlohmann::ordered_json to_json(const AnalysisReport& r);
[[nodiscard]] AnalysisReport report_from_json(const nlohmann::json& j);

/// Human-readable summary for --pretty.
void print_pretty(std::ostream& os, const AnalysisReport& r);

}  // namespace hcoint
