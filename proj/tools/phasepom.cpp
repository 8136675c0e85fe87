// Command-line front end: windowed phase-space observables, their invariant
// checks, and state reconstruction from measured outcome fields.

#include "phasepom/io.hpp"
#include "phasepom/tomo.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace phasepom;
using nlohmann::ordered_json;

namespace {

struct Config {
    double L = 7.0;
    int M = 141;
    int N = 60;
    int nphys = 12;
    int d = 5;
    uint64_t seed = 1;
};

CMat vacuum(int dim) {
    CMat m = CMat::Zero(dim, dim);
    m(0, 0) = 1.0;
    return m;
}

CVec seeded_vec(int dim, uint64_t seed) {
    Rng rng(seed);
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.cnormal();
    return v;
}

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

std::string grid_label(const PhaseGrid& g) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%g,%d)", g.extent, g.points);
    return buf;
}

ordered_json config_json(const Config& c) {
    ordered_json j;
    j["L"] = c.L;
    j["M"] = c.M;
    j["N"] = c.N;
    j["nphys"] = c.nphys;
    j["d"] = c.d;
    j["seed"] = c.seed;
    return j;
}

struct CheckRow {
    std::string name;
    std::string where;
    double defect;
    double tolerance;
};

int run_checks(const Config& cfg, double tol_override, const std::string& out_path) {
    const PhaseGrid grid(cfg.L, cfg.M);
    const FockSpace space(cfg.N, cfg.nphys);
    std::vector<CheckRow> rows;

    rows.push_back({"formal_degree", grid_label(grid),
                    check_orthogonality(0, grid, space).defect, 1e-6});
    rows.push_back({"orthogonality_block_2", grid_label(grid),
                    check_orthogonality(2, grid, space).defect, 1e-5});
    {
        PhaseGrid fine(8.0, 161);
        rows.push_back({"orthogonality_block_4", grid_label(fine),
                        check_orthogonality(4, fine, space).defect, 1e-5});
        DensityOperator tv(vacuum(cfg.N));
        rows.push_back({"normalization_vacuum", grid_label(fine),
                        max_abs(qt_effect(tv, Region::full_plane(), fine)
                                    .entries.topLeftCorner(cfg.nphys, cfg.nphys) -
                                CMat::Identity(cfg.nphys, cfg.nphys)),
                        1e-5});
        DensityOperator t40(vacuum(40));
        rows.push_back({"covariance_disk", grid_label(fine),
                        covariance_defect(t40, Region::disk(0.0, 0.0, 2.0),
                                          GroupElementCont{0.0, 0.7, -0.3}, fine,
                                          cfg.nphys)
                            .defect,
                        1e-5});
    }
    {
        CVec u = CVec::Zero(cfg.nphys);
        u[0] = 1.0;
        const Region regions[4] = {
            Region::disk(0.5, -1.0, 1.5), Region::rectangle(-2.0, 1.0, -1.0, 2.0),
            Region::disk(-1.0, 0.5, 2.0), Region::rectangle(0.0, 2.5, -2.0, 0.5)};
        double worst = 0.0;
        for (uint64_t trial = 0; trial < 10; ++trial) {
            CVec v = CVec::Zero(cfg.nphys), w = CVec::Zero(cfg.nphys);
            const int sup = std::min(8, cfg.nphys);
            v.head(sup) = seeded_vec(sup, 300 + trial);
            w.head(sup) = seeded_vec(sup, 400 + trial);
            worst = std::max(worst, neumark_defect(u, regions[trial % 4], v, w, grid));
        }
        rows.push_back({"neumark_identity", grid_label(grid), worst, 1e-10});
    }
    {
        CVec e0 = CVec::Zero(31);
        e0[0] = 1.0;
        CVec coh(31);
        for (int n = 0; n < 31; ++n)
            coh[n] = std::exp(Complex(-0.5 - 0.5 * std::lgamma(n + 1.0), 0.3 * n));
        rows.push_back({"parseval_coherent", grid_label(grid),
                        resolution_defect(30, coeff_field(e0, coh, grid), grid), 1e-4});
    }

    FiniteHeisenberg grp(cfg.d);
    const int d = cfg.d;
    const std::string dl = "d=" + std::to_string(d);
    rows.push_back({"finite_resolution", dl, resolution_identity(grp), 1e-12});
    {
        CMat f(d * d, d * d);
        for (int i = 0; i < d; ++i) {
            CVec ei = CVec::Zero(d);
            ei[i] = 1.0;
            const CMat w = intertwiner(grp, ei);
            for (int j = 0; j < d; ++j) f.col(i * d + j) = w.col(j);
        }
        rows.push_back({"finite_gram", dl,
                        max_abs((f.adjoint() * f) / double(d) -
                                CMat::Identity(d * d, d * d)),
                        1e-12});
    }
    {
        double worst = 0.0;
        for (uint64_t s = 0; s < 5; ++s) {
            const CMat w = intertwiner(grp, seeded_vec(d, 500 + s));
            for (const FiniteGroupElement& a : all_elements(grp))
                worst = std::max(worst, max_abs(induced_rep(grp, a) * w -
                                                w * schrodinger_rep(grp, a)));
        }
        rows.push_back({"finite_intertwining", dl, worst, 1e-13});
    }
    {
        IsotypicReport rep = isotypic_decompose(grp);
        rows.push_back({"finite_multiplicity", dl,
                        std::max(std::abs(rep.multiplicity - double(d)), rep.range_overlap),
                        1e-9});
    }
    rows.push_back({"finite_imprimitivity", dl, imprimitivity_check(grp), 1e-13});
    {
        DensityOperator t(seeded_vec(d, 9).normalized() *
                          seeded_vec(d, 9).normalized().adjoint());
        CMat w = 0.6 * (seeded_vec(d, 10).normalized() *
                        seeded_vec(d, 10).normalized().adjoint()) +
                 0.4 * (seeded_vec(d, 11).normalized() *
                        seeded_vec(d, 11).normalized().adjoint());
        MeasurementData data = forward_model_finite(grp, w, t);
        rows.push_back({"finite_round_trip", dl,
                        (reconstruct_finite(grp, data, t).estimate - w).norm(), 1e-10});
    }

    ordered_json report;
    report["generated_at"] = timestamp_utc();
    report["config"] = config_json(cfg);
    report["checks"] = ordered_json::array();
    bool all_pass = true;
    for (const CheckRow& r : rows) {
        const double tol = tol_override > 0.0 ? tol_override : r.tolerance;
        const bool pass = r.defect <= tol;
        all_pass = all_pass && pass;
        ordered_json row;
        row["name"] = r.name;
        row["where"] = r.where;
        row["defect"] = r.defect;
        row["tolerance"] = tol;
        row["pass"] = pass;
        report["checks"].push_back(row);
        std::printf("%-24s %-10s defect=%.3e tol=%.0e %s\n", r.name.c_str(),
                    r.where.c_str(), r.defect, tol, pass ? "PASS" : "FAIL");
    }
    report["all_pass"] = all_pass;
    if (!out_path.empty()) write_json_file(out_path, report);
    return all_pass ? 0 : 1;
}

int run_husimi(const Config& cfg, const std::string& state_path, const std::string& out_path) {
    const PhaseGrid grid(cfg.L, cfg.M);
    CMat w = vacuum(cfg.N);
    if (!state_path.empty()) {
        CMat raw = read_matrix_json(state_path);
        if (raw.rows() > cfg.N)
            throw std::invalid_argument("state larger than the model space");
        DensityOperator check(raw);  // validates before embedding
        w = embed_block(check.entries(), cfg.N);
    }
    DensityOperator t(vacuum(cfg.N));
    MeasurementData data = forward_model(w, t, grid);
    write_field_csv(out_path, grid, data.samples);
    double total = 0.0;
    for (int x = 0; x < data.samples.size(); ++x) total += data.samples[x].real();
    std::printf("wrote %s; window mass %.8f (target 1)\n", out_path.c_str(),
                total * grid.w);
    return 0;
}

int run_finite_demo(const Config& cfg, const std::string& out_path) {
    FiniteHeisenberg grp(cfg.d);
    const int d = cfg.d;
    ordered_json j;
    j["generated_at"] = timestamp_utc();
    j["d"] = d;
    j["resolution_defect"] = resolution_identity(grp);
    IsotypicReport rep = isotypic_decompose(grp);
    j["multiplicity"] = rep.multiplicity;
    j["range_overlap"] = rep.range_overlap;
    j["imprimitivity_defect"] = imprimitivity_check(grp);
    {
        double worst = 0.0;
        for (uint64_t s = 0; s < 3; ++s) {
            const CMat w = intertwiner(grp, seeded_vec(d, 600 + s));
            for (const FiniteGroupElement& a : all_elements(grp))
                worst = std::max(worst, max_abs(induced_rep(grp, a) * w -
                                                w * schrodinger_rep(grp, a)));
        }
        j["intertwining_defect"] = worst;
    }
    {
        CVec e0 = CVec::Zero(d);
        e0[0] = 1.0;
        j["minimality_rank_e0"] = minimality_rank(grp, e0);
        j["minimality_rank_random"] = minimality_rank(grp, seeded_vec(d, 700));
    }
    const std::string text = dump_json(j);
    if (!out_path.empty())
        write_json_file(out_path, j);
    else
        std::fputs(text.c_str(), stdout);
    return 0;
}

int run_reconstruct(const Config& cfg, bool finite, const std::string& data_path,
                    const std::string& ref_path, int cutoff, double noise,
                    const std::string& out_path, const std::string& truth_path) {
    CsvField field = read_field_csv(data_path);
    MeasurementData data;
    data.samples = field.values;
    if (noise > 0.0) {
        Rng rng(cfg.seed);
        for (int x = 0; x < data.samples.size(); ++x)
            data.samples[x] += noise * rng.normal();
    }
    DensityOperator t(read_matrix_json(ref_path));

    ReconstructionResult rec;
    if (finite) {
        FiniteHeisenberg grp(cfg.d);
        if (data.samples.size() != cfg.d * cfg.d)
            throw std::invalid_argument("data length does not match d^2");
        if (t.entries().rows() != cfg.d)
            throw std::invalid_argument("reference dimension does not match d");
        rec = reconstruct_finite(grp, data, t);
    } else {
        const PhaseGrid grid(cfg.L, cfg.M);
        if (t.entries().rows() != cfg.N)
            throw std::invalid_argument("reference dimension does not match N");
        rec = reconstruct(data, t, grid, cutoff);
    }

    ordered_json report;
    report["generated_at"] = timestamp_utc();
    report["config"] = config_json(cfg);
    report["damped_modes"] = rec.damped_modes;
    report["ic_min_abs"] = rec.ic.min_abs;
    report["ic_zero_fraction"] = rec.ic.zero_fraction;
    report["verdict"] = rec.damped_modes == 0 ? "clean" : "damped";
    if (!truth_path.empty()) {
        const CMat truth = read_matrix_json(truth_path);
        const int k = int(rec.estimate.rows());
        if (truth.rows() < k)
            throw std::invalid_argument("truth matrix smaller than the estimate");
        const CMat block = truth.topLeftCorner(k, k);
        report["defect"] = (rec.estimate - block).norm();
        report["fidelity"] = fidelity(rec.estimate, block);
        std::printf("fidelity vs truth: %.8f\n", double(report["fidelity"]));
    }
    if (!out_path.empty()) write_matrix_json(out_path, rec.estimate);
    std::fputs(dump_json(report).c_str(), stdout);
    return 0;
}

int run_orthogonality(const Config& cfg, int index) {
    const PhaseGrid grid(cfg.L, cfg.M);
    DefectReport r = check_orthogonality(index, grid, FockSpace(cfg.N, cfg.nphys));
    std::printf("%s %s defect=%.6e tol=%.0e %s\n", r.name.c_str(),
                grid_label(grid).c_str(), r.defect, r.tolerance,
                r.pass ? "PASS" : "FAIL");
    return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"windowed phase-space observables and state reconstruction"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string config_path;
    auto* oL = app.add_option("--L", cfg.L, "window half-extent");
    auto* oM = app.add_option("--M", cfg.M, "nodes per axis (odd)");
    auto* oN = app.add_option("--N", cfg.N, "model-space dimension");
    auto* oP = app.add_option("--nphys", cfg.nphys, "trusted physical block");
    auto* oD = app.add_option("--d", cfg.d, "finite modulus (odd, >= 3)");
    auto* oS = app.add_option("--seed", cfg.seed, "seed for generated probe states");
    app.add_option("--config", config_path, "JSON config file (flags win)");

    auto* c_checks = app.add_subcommand("checks", "run the invariant checks");
    double tol_override = 0.0;
    std::string checks_out;
    c_checks->add_option("--tolerance", tol_override, "override every tolerance");
    c_checks->add_option("--out", checks_out, "write the JSON report here");

    auto* c_husimi = app.add_subcommand("husimi", "outcome density of a state file");
    std::string husimi_state, husimi_out = "husimi.csv";
    c_husimi->add_option("--state", husimi_state, "JSON density matrix (default: vacuum)");
    c_husimi->add_option("--out", husimi_out, "output CSV path");

    auto* c_demo = app.add_subcommand("finite-demo", "finite-regime defect summary");
    std::string demo_out;
    c_demo->add_option("--out", demo_out, "write the JSON summary here");

    auto* c_rec = app.add_subcommand("reconstruct", "invert measured outcome data");
    std::string rec_data, rec_ref, rec_out, rec_truth;
    int rec_cutoff = 16;
    double rec_noise = 0.0;
    bool rec_finite = false;
    c_rec->add_option("--data", rec_data, "CSV outcome field")->required();
    c_rec->add_option("--ref-state", rec_ref, "JSON reference density matrix")->required();
    c_rec->add_option("--cutoff", rec_cutoff, "estimate block size (continuous)");
    c_rec->add_option("--noise", rec_noise, "additive gaussian noise level");
    c_rec->add_option("--out", rec_out, "write the estimate matrix here");
    c_rec->add_option("--truth", rec_truth, "JSON matrix to compare against");
    c_rec->add_flag("--finite", rec_finite, "finite regime (uses --d)");

    auto* c_orth = app.add_subcommand("orthogonality", "matrix-coefficient gram defect");
    int orth_index = 2;
    c_orth->add_option("--index", orth_index, "largest basis index in the gram");

    try {
        app.parse(argc, argv);

        if (!config_path.empty()) {
            const ordered_json j = read_json_file(config_path);
            if (!oL->count() && j.contains("L")) cfg.L = j["L"];
            if (!oM->count() && j.contains("M")) cfg.M = j["M"];
            if (!oN->count() && j.contains("N")) cfg.N = j["N"];
            if (!oP->count() && j.contains("nphys")) cfg.nphys = j["nphys"];
            if (!oD->count() && j.contains("d")) cfg.d = j["d"];
            if (!oS->count() && j.contains("seed")) cfg.seed = j["seed"];
        }

        if (*c_checks) return run_checks(cfg, tol_override, checks_out);
        if (*c_husimi) return run_husimi(cfg, husimi_state, husimi_out);
        if (*c_demo) return run_finite_demo(cfg, demo_out);
        if (*c_rec)
            return run_reconstruct(cfg, rec_finite, rec_data, rec_ref, rec_cutoff,
                                   rec_noise, rec_out, rec_truth);
        if (*c_orth) return run_orthogonality(cfg, orth_index);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const NotInformationallyComplete& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const InvalidStateError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const IOError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
