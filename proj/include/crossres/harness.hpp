#ifndef CROSSRES_HARNESS_HPP
#define CROSSRES_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "crossres/model.hpp"
#include "crossres/spectral.hpp"

namespace crossres {

// Greedy minimal-distance injective pairing between two energy lists.
struct Pairing {
    struct Pair {
        int i = 0, j = 0;
        double dist = 0.0;
    };
    std::vector<Pair> pairs;
    std::vector<int> unmatched_a, unmatched_b;

    double max_dist() const;
};

Pairing match_sets(const std::vector<cplx>& A, const std::vector<cplx>& B, double cap);

struct SweepConfig {
    std::string problem_path;
    std::vector<double> h_list;         // strictly decreasing, in (0,1)
    double r = 2.0;
    double M = 0.0;                     // 0 -> 2/T(E0)
    SpectralOptions spectral;
    std::vector<std::string> methods;   // subset of pseudo/spectral/shooting
    std::string outdir = ".";

    static SweepConfig parse_file(const std::string& path);
    static SweepConfig parse(const nlohmann::json& j);
};

// One (h, method) cell of the sweep. `indices` holds the quantization index n
// for the pseudo method and the ordinal otherwise.
struct MethodCell {
    std::string method;
    bool ok = false;
    std::string error;
    std::vector<cplx> energies;
    std::vector<long> indices;
    std::vector<double> residuals;
    std::vector<int> stability;
};

struct SweepCell {
    double h = 0.0;
    std::vector<MethodCell> methods;
    Pairing pseudo_spectral, pseudo_shooting;
    bool has_ps = false, has_psh = false;
    // per pseudo-resonance: Im E * T0 / (-h log(1/h)) and the full-target ratio
    std::vector<double> width_ratio_crude, width_ratio_full;
};

struct MatchReport {
    double E0 = 0.0, r = 0.0, M = 0.0, T0 = 0.0, K = 0.0;
    std::vector<SweepCell> cells;
};

MatchReport run_sweep(const ProblemSetup& setup, const SweepConfig& cfg);

const MethodCell* find_method(const SweepCell& cell, const std::string& method);

// CSV schema: method,h,n,re_E,im_E,residual,stability (floats %.17g)
void write_csv(const MatchReport& report, std::ostream& os);
nlohmann::json report_to_json(const MatchReport& report);
// scatter_h*.csv, maxdist.csv, width_ratio.csv from a JSON report
void write_plotdata(const nlohmann::json& report, const std::string& outdir);

std::string fmt17(double v);

} // namespace crossres

#endif
