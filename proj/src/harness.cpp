#include "crossres/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "crossres/action.hpp"
#include "crossres/errors.hpp"
#include "crossres/quantization.hpp"
#include "crossres/shooting.hpp"

namespace crossres {

double Pairing::max_dist() const {
    double m = 0.0;
    for (const auto& p : pairs) m = std::max(m, p.dist);
    return m;
}

Pairing match_sets(const std::vector<cplx>& A, const std::vector<cplx>& B, double cap) {
    struct Cand {
        double d;
        int i, j;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < (int)A.size(); ++i)
        for (int j = 0; j < (int)B.size(); ++j) {
            double d = std::abs(A[i] - B[j]);
            if (d <= cap) cands.push_back({d, i, j});
        }
    // tie-break on indices so the pairing is deterministic and symmetric
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<char> ua(A.size(), 0), ub(B.size(), 0);
    Pairing out;
    for (const auto& c : cands) {
        if (ua[c.i] || ub[c.j]) continue;
        ua[c.i] = ub[c.j] = 1;
        out.pairs.push_back({c.i, c.j, c.d});
    }
    for (int i = 0; i < (int)A.size(); ++i)
        if (!ua[i]) out.unmatched_a.push_back(i);
    for (int j = 0; j < (int)B.size(); ++j)
        if (!ub[j]) out.unmatched_b.push_back(j);
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const Pairing::Pair& a, const Pairing::Pair& b) { return a.i < b.i; });
    return out;
}

SweepConfig SweepConfig::parse(const nlohmann::json& j) {
    SweepConfig cfg;
    cfg.problem_path = j.at("problem").get<std::string>();
    cfg.h_list = j.at("h_list").get<std::vector<double>>();
    if (cfg.h_list.empty()) throw Error("h_list is empty");
    for (size_t i = 0; i < cfg.h_list.size(); ++i) {
        double h = cfg.h_list[i];
        if (!(h > 0.0 && h < 1.0)) throw Error("h_list entries must lie in (0,1)");
        if (i > 0 && !(h < cfg.h_list[i - 1]))
            throw Error("h_list must be strictly decreasing");
    }
    cfg.r = j.value("r", 2.0);
    cfg.M = j.value("M", 0.0);
    if (!(cfg.r > 0.0) || cfg.M < 0.0) throw Error("require r > 0 and M >= 0");
    if (j.contains("spectral")) {
        const auto& s = j["spectral"];
        cfg.spectral.N = s.value("N", 0);
        cfg.spectral.L = s.value("L", 0.0);
        cfg.spectral.M_prime = s.value("M_prime", 0.0);
        cfg.spectral.oversample = s.value("oversample", 2.5);
        cfg.spectral.max_N = s.value("max_N", 2600);
    }
    cfg.methods = j.value("methods",
                          std::vector<std::string>{"pseudo", "spectral", "shooting"});
    for (const auto& m : cfg.methods)
        if (m != "pseudo" && m != "spectral" && m != "shooting")
            throw Error("unknown method '" + m + "'");
    cfg.outdir = j.value("outdir", std::string("."));
    return cfg;
}

SweepConfig SweepConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open sweep config: " + path);
    nlohmann::json j;
    in >> j;
    return parse(j);
}

const MethodCell* find_method(const SweepCell& cell, const std::string& method) {
    for (const auto& m : cell.methods)
        if (m.method == method && m.ok) return &m;
    return nullptr;
}

namespace {

MethodCell run_method(const ProblemSetup& setup, const EnergyRectangle& rect,
                      const std::string& method, const SpectralOptions& sopts) {
    MethodCell cell;
    cell.method = method;
    try {
        if (method == "pseudo") {
            for (const auto& pr : pseudo_resonances(setup, rect)) {
                cell.energies.push_back(pr.E);
                cell.indices.push_back(pr.n);
                cell.residuals.push_back(pr.residual);
                cell.stability.push_back(1);
            }
        } else if (method == "spectral") {
            auto res = resonances_spectral(setup, rect, sopts);
            long ord = 0;
            for (const auto& e : res.eigenvalues) {
                cell.energies.push_back(e.E);
                cell.indices.push_back(ord++);
                cell.residuals.push_back(e.grid_shift);
                cell.stability.push_back(e.stable ? 1 : 0);
            }
        } else if (method == "shooting") {
            long ord = 0;
            for (const auto& s : find_resonances_shooting(setup, rect)) {
                cell.energies.push_back(s.E);
                cell.indices.push_back(ord++);
                cell.residuals.push_back(std::abs(s.det_value));
                cell.stability.push_back(s.converged ? 1 : 0);
            }
        } else {
            throw Error("unknown method '" + method + "'");
        }
        cell.ok = true;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
    }
    return cell;
}

std::vector<cplx> stable_energies(const MethodCell& m) {
    std::vector<cplx> out;
    for (size_t i = 0; i < m.energies.size(); ++i)
        if (m.stability[i]) out.push_back(m.energies[i]);
    return out;
}

} // namespace

MatchReport run_sweep(const ProblemSetup& setup, const SweepConfig& cfg) {
    MatchReport rep;
    rep.E0 = setup.E0;
    rep.T0 = period_T(setup, setup.E0).real();
    rep.K = coupling_constant_K(setup);
    rep.r = cfg.r;
    rep.M = cfg.M > 0.0 ? cfg.M : 2.0 / rep.T0;

    for (double h : cfg.h_list) {
        SweepCell cell;
        cell.h = h;
        EnergyRectangle rect{setup.E0, cfg.r, rep.M, h};
        for (const auto& m : cfg.methods)
            cell.methods.push_back(run_method(setup, rect, m, cfg.spectral));

        const MethodCell* ps = find_method(cell, "pseudo");
        const MethodCell* sp = find_method(cell, "spectral");
        const MethodCell* sh = find_method(cell, "shooting");
        if (ps && sp) {
            cell.pseudo_spectral = match_sets(ps->energies, stable_energies(*sp), 0.5 * h);
            cell.has_ps = true;
        }
        if (ps && sh) {
            cell.pseudo_shooting = match_sets(ps->energies, stable_energies(*sh), 0.5 * h);
            cell.has_psh = true;
        }
        if (ps) {
            double lg = std::log(1.0 / h);
            for (cplx E : ps->energies) {
                cell.width_ratio_crude.push_back(E.imag() * rep.T0 / (-h * lg));
                cell.width_ratio_full.push_back(E.imag() * rep.T0 /
                                                (-h * (lg - std::log(rep.K))));
            }
        }
        rep.cells.push_back(std::move(cell));
    }
    return rep;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const MatchReport& report, std::ostream& os) {
    os << "method,h,n,re_E,im_E,residual,stability\n";
    for (const auto& cell : report.cells)
        for (const auto& m : cell.methods) {
            if (!m.ok) continue;
            for (size_t i = 0; i < m.energies.size(); ++i)
                os << m.method << ',' << fmt17(cell.h) << ',' << m.indices[i] << ','
                   << fmt17(m.energies[i].real()) << ',' << fmt17(m.energies[i].imag())
                   << ',' << fmt17(m.residuals[i]) << ',' << m.stability[i] << '\n';
        }
}

nlohmann::json report_to_json(const MatchReport& report) {
    nlohmann::json j;
    j["E0"] = report.E0;
    j["r"] = report.r;
    j["M"] = report.M;
    j["T0"] = report.T0;
    j["K"] = report.K;
    j["cells"] = nlohmann::json::array();
    auto pairing_json = [](const Pairing& p) {
        nlohmann::json out;
        out["pairs"] = nlohmann::json::array();
        for (const auto& pr : p.pairs)
            out["pairs"].push_back({{"i", pr.i}, {"j", pr.j}, {"dist", pr.dist}});
        out["unmatched_a"] = p.unmatched_a;
        out["unmatched_b"] = p.unmatched_b;
        out["max_dist"] = p.max_dist();
        return out;
    };
    for (const auto& cell : report.cells) {
        nlohmann::json jc;
        jc["h"] = cell.h;
        jc["methods"] = nlohmann::json::array();
        for (const auto& m : cell.methods) {
            nlohmann::json jm;
            jm["method"] = m.method;
            jm["ok"] = m.ok;
            if (!m.ok) jm["error"] = m.error;
            jm["n"] = m.indices;
            nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
            for (cplx e : m.energies) {
                re.push_back(e.real());
                im.push_back(e.imag());
            }
            jm["re_E"] = re;
            jm["im_E"] = im;
            jm["residual"] = m.residuals;
            jm["stability"] = m.stability;
            jc["methods"].push_back(jm);
        }
        if (cell.has_ps) jc["pseudo_spectral"] = pairing_json(cell.pseudo_spectral);
        if (cell.has_psh) jc["pseudo_shooting"] = pairing_json(cell.pseudo_shooting);
        jc["width_ratio_crude"] = cell.width_ratio_crude;
        jc["width_ratio_full"] = cell.width_ratio_full;
        j["cells"].push_back(jc);
    }
    return j;
}

void write_plotdata(const nlohmann::json& report, const std::string& outdir) {
    std::ofstream maxd(outdir + "/maxdist.csv");
    maxd << "h,maxdist_pseudo_spectral_over_h,maxdist_pseudo_shooting_over_h\n";
    std::ofstream wr(outdir + "/width_ratio.csv");
    wr << "h,n,ratio_crude,ratio_full\n";
    for (const auto& jc : report.at("cells")) {
        double h = jc.at("h").get<double>();
        std::string tag = fmt17(h);
        char short_tag[32];
        std::snprintf(short_tag, sizeof short_tag, "%g", h);
        std::ofstream sc(outdir + "/scatter_h" + short_tag + ".csv");
        sc << "method,re_E,im_E,stability\n";
        for (const auto& jm : jc.at("methods")) {
            if (!jm.at("ok").get<bool>()) continue;
            const auto& re = jm.at("re_E");
            const auto& im = jm.at("im_E");
            const auto& st = jm.at("stability");
            for (size_t i = 0; i < re.size(); ++i)
                sc << jm.at("method").get<std::string>() << ','
                   << fmt17(re[i].get<double>()) << ',' << fmt17(im[i].get<double>())
                   << ',' << st[i].get<int>() << '\n';
        }
        maxd << tag << ',';
        if (jc.contains("pseudo_spectral"))
            maxd << fmt17(jc["pseudo_spectral"]["max_dist"].get<double>() / h);
        maxd << ',';
        if (jc.contains("pseudo_shooting"))
            maxd << fmt17(jc["pseudo_shooting"]["max_dist"].get<double>() / h);
        maxd << '\n';
        const auto& wc = jc.at("width_ratio_crude");
        const auto& wf = jc.at("width_ratio_full");
        for (size_t i = 0; i < wc.size(); ++i)
            wr << tag << ',' << i << ',' << fmt17(wc[i].get<double>()) << ','
               << fmt17(wf[i].get<double>()) << '\n';
    }
}

} // namespace crossres
