// Acceptance suite: one check per published claim the toolkit commits to,
// each printing a single PASS/FAIL line (plus indented detail).  Run with
// --criterion N for one check or with no arguments for all eleven.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dami/core/analysis.hpp"
#include "dami/core/enumerate.hpp"
#include "dami/core/eval.hpp"
#include "dami/core/invariant.hpp"
#include "dami/core/oracle.hpp"
#include "dami/core/random.hpp"
#include "dami/core/synth.hpp"
#include "dami/core/transform.hpp"
#include "golden.hpp"

using namespace dami;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void fail(const std::string& note) {
        pass = false;
        notes.push_back("FAIL: " + note);
    }
    void note(const std::string& n) { notes.push_back(n); }
};

ObjectMN mirrored_cloud(std::uint64_t seed, std::size_t half_points) {
    auto base = synth_object(3, 3, half_points, seed);
    std::vector<double> coords, channels;
    for (std::size_t i = 0; i < base.point_count(); ++i) {
        for (int s = 0; s < 2; ++s) {
            coords.push_back(s ? -base.coords(i)[0] : base.coords(i)[0]);
            coords.push_back(base.coords(i)[1]);
            coords.push_back(base.coords(i)[2]);
            for (int a = 0; a < 3; ++a)
                channels.push_back(base.channels(i)[static_cast<std::size_t>(a)]);
        }
    }
    return ObjectMN(3, 3, std::move(coords), std::move(channels));
}

std::vector<std::pair<int, InvariantExpr>> nonzero_table_exprs(NormalizationMode mode) {
    std::vector<std::pair<int, InvariantExpr>> out;
    for (const auto& row : golden::table33()) {
        auto expr = build_invariant(golden::parse33(row.combination), mode);
        if (expr) out.emplace_back(row.id, *std::move(expr));
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// ---- criteria -------------------------------------------------------------

Outcome criterion_1() {
    Outcome out;
    auto poly = expand_kernel(golden::parse33("S(1,2,3)*C(1,2,3)"));
    if (poly != golden::expansion_id1()) out.fail("expansion differs from the printed six terms");
    out.note("6 terms, coefficients +-6, exact rational equality");
    return out;
}

Outcome criterion_2() {
    Outcome out;
    auto poly = expand_kernel(golden::parse33("S(1,2,3)*C(1,2,4)").canonicalize());
    if (poly != golden::expansion_id7()) out.fail("expansion differs from the printed 18 terms");
    out.note("18 terms, coefficients +-2, exact rational equality");
    return out;
}

Outcome criterion_3() {
    Outcome out;
    if (channel_norm_polynomial(3, 3) != golden::channel_norm3())
        out.fail("3-channel normalizer differs from the printed 5-term bracket");
    auto expr = golden::build33("S(1,2,3)*C(1,2,3)", NormalizationMode::PaperDensity);
    if (expr.normalization.factors.size() != 2 ||
        expr.normalization.factors[0].kind != NormalizerKind::Mass ||
        expr.normalization.factors[0].exponent != Rational(5, 2) ||
        expr.normalization.factors[1].kind != NormalizerKind::ChannelNorm ||
        expr.normalization.factors[1].exponent != Rational(1, 2))
        out.fail("density-mode exponents for entry 1 are not mass^(5/2) * channel^(1/2)");
    out.note("normalizer bracket and exponents match");
    return out;
}

Outcome criterion_4() {
    Outcome out;
    for (int id : golden::zero_ids()) {
        const auto& row = golden::table33()[static_cast<std::size_t>(id - 1)];
        auto spec = golden::parse33(row.combination).canonicalize();
        if (!expand_kernel(spec).empty()) {
            out.fail("entry " + std::to_string(id) + " did not expand to the empty polynomial");
            continue;
        }
        for (std::uint64_t seed : {11ull, 22ull, 33ull}) {
            auto obj = synth_object(3, 3, 10, seed);
            auto oracle = brute_covariant(obj, spec);
            if (std::abs(oracle.value) > 1e-9 * oracle.magnitude_scale)
                out.fail("entry " + std::to_string(id) + " oracle " + fmt(oracle.value) +
                         " vs scale " + fmt(oracle.magnitude_scale) + " (seed " +
                         std::to_string(seed) + ")");
        }
    }
    out.note("entries {2,3,8,9,13,17,21,24} vanish symbolically and on 3 random 10-point objects");
    return out;
}

Outcome criterion_5() {
    Outcome out;
    EnumerateOptions opt;  // (4,4), dual
    auto list = enumerate_kernels(3, 3, opt);
    std::set<KernelSpec> enumerated(list.begin(), list.end());
    std::set<KernelSpec> table;
    for (const auto& row : golden::table33()) {
        auto canon = golden::parse33(row.combination).canonicalize();
        table.insert(canon);
        if (!enumerated.count(canon)) {
            out.fail("row " + std::to_string(row.id) + " (" + row.combination +
                     ") missing from the enumeration");
            continue;
        }
        auto params = canon.params();
        if (params.space_points != row.P || params.channel_points != row.Q ||
            params.space_order != row.O_S || params.channel_order != row.O_C)
            out.fail("row " + std::to_string(row.id) + " derived (P,Q,O_S,O_C) mismatch");
    }
    std::vector<std::string> extras;
    for (const auto& k : list)
        if (!table.count(k)) extras.push_back(k.str());
    out.note("all 29 published rows found with matching derived (P,Q,O_S,O_C)");
    out.note("rows 28/29 use (P,Q) derived from their combination strings; the printed column in "
             "the source table is internally inconsistent there");
    out.note(std::to_string(extras.size()) + " classes beyond the published table:");
    for (const auto& e : extras) out.note("  extra: " + e);
    return out;
}

Outcome criterion_6() {
    Outcome out;
    struct Case {
        const char* kernel;
        int index;
    };
    for (Case c : {Case{"S(1,2)*C(1,2)", 1}, Case{"S(1,2)^3*C(1,2)", 2}, Case{"S(1,2)^5*C(1,2)", 3}}) {
        auto poly = expand_kernel(KernelSpec::parse(c.kernel, 2, 2));
        Rational ratio;
        if (!poly.proportional_to(golden::case22(c.index), ratio))
            out.fail(std::string(c.kernel) + " is not a scalar multiple of published invariant (" +
                     std::to_string(c.index) + ")");
        else
            out.note(std::string(c.kernel) + " = " + ratio.str() + " * invariant(" +
                     std::to_string(c.index) + ")");
    }

    // Automated search for the fourth published invariant.
    auto search = [&](int max_order) {
        EnumerateOptions opt;
        opt.max_degree = 4;
        opt.max_order = max_order;
        std::vector<std::pair<std::string, Rational>> found;
        for (const auto& spec : enumerate_kernels(2, 2, opt)) {
            auto poly = expand_kernel(spec);
            if (poly.empty()) continue;
            Rational ratio;
            if (poly.proportional_to(golden::case22(4), ratio)) found.emplace_back(spec.str(), ratio);
        }
        return found;
    };
    auto at_order4 = search(4);
    if (!at_order4.empty()) {
        out.note("match already at order <= 4: " + at_order4.front().first);
    } else {
        out.note("no match at order <= 4 — expected: every term of invariant (4) multiplies four "
                 "moments of spatial order 2 and channel order 1, which forces O_S=4, O_C=2, K=6");
        auto at_order6 = search(6);
        if (at_order6.empty()) {
            out.fail("no degree-4 kernel matches published invariant (4) even at order <= 6");
        } else {
            for (const auto& [kernel, ratio] : at_order6)
                out.note("found at order <= 6: " + kernel + " = " + ratio.str() + " * invariant(4)");
        }
    }
    return out;
}

Outcome criterion_7() {
    Outcome out;
    int checked = 0;
    double worst = 0.0;
    auto run = [&](int M, int N) {
        EnumerateOptions opt;
        auto obj = synth_object(M, N, 12, 1234);
        for (const auto& spec : enumerate_kernels(M, N, opt)) {
            auto expr = build_invariant(spec, NormalizationMode::CountingFull);
            if (!expr) continue;
            auto table = central_moments(obj, required_keys(*expr));
            double symbolic = evaluate_numerator(*expr, table);
            auto oracle = brute_covariant(obj, spec);
            double err = std::abs(oracle.value - symbolic) /
                         std::max(oracle.magnitude_scale, 1e-300);
            worst = std::max(worst, err);
            ++checked;
            if (err > 1e-9)
                out.fail("(" + std::to_string(M) + "," + std::to_string(N) + ") kernel " +
                         spec.str() + ": relative error " + fmt(err));
        }
    };
    run(3, 3);
    run(2, 2);
    out.note(std::to_string(checked) + " non-zero kernels checked; worst relative error " +
             fmt(worst));
    return out;
}

Outcome criterion_8() {
    Outcome out;
    auto exprs_by_id = nonzero_table_exprs(NormalizationMode::CountingFull);
    std::vector<InvariantExpr> exprs;
    for (auto& [id, e] : exprs_by_id) exprs.push_back(e);

    double worst_dev = 0.0, worst_cv = 0.0;
    for (int cloud = 0; cloud < 5; ++cloud) {
        auto obj = synth_object(3, 3, 100, 500 + static_cast<std::uint64_t>(cloud));
        std::vector<ObjectMN> objects{obj};
        for (int t = 0; t < 30; ++t) {
            std::uint64_t seed = Rng::derive(777, static_cast<std::uint64_t>(cloud), static_cast<std::uint64_t>(t));
            auto sp = sample_affine(3, seed, AffineFamily::GeneralAffine);
            auto ch = sample_affine(3, seed + 1, AffineFamily::GeneralAffine);
            objects.push_back(apply_dual(obj, sp, ch));
        }
        auto matrix = evaluate_batch(exprs, objects);
        for (std::size_t e = 0; e < exprs.size(); ++e) {
            std::vector<double> values;
            for (std::size_t r = 0; r < matrix.rows; ++r) {
                if (matrix.status_at(r, e) != CellStatus::Ok) {
                    out.fail("entry " + std::to_string(exprs_by_id[e].first) +
                             " failed to evaluate on cloud " + std::to_string(cloud));
                    continue;
                }
                values.push_back(matrix.at(r, e));
            }
            double v0 = values.front();
            for (double v : values) {
                double dev = std::abs(v - v0) / std::max(std::abs(v0), 1e-9);
                worst_dev = std::max(worst_dev, dev);
                if (dev > 1e-6)
                    out.fail("entry " + std::to_string(exprs_by_id[e].first) + " deviates " +
                             fmt(dev) + " on cloud " + std::to_string(cloud));
            }
            double cv = coefficient_of_variation(values);
            worst_cv = std::max(worst_cv, cv);
            if (!(cv <= 1e-6))
                out.fail("entry " + std::to_string(exprs_by_id[e].first) + " CV " + fmt(cv) +
                         " on cloud " + std::to_string(cloud));
        }
    }
    out.note("5 clouds x 30 admissible dual maps x " + std::to_string(exprs.size()) +
             " invariants; worst deviation " + fmt(worst_dev) + ", worst CV " + fmt(worst_cv));
    return out;
}

Outcome criterion_9() {
    Outcome out;
    auto exprs_by_id = nonzero_table_exprs(NormalizationMode::CountingFull);

    // 9a: the classifier's stable set
    std::set<int> stable;
    bool flag20 = false;
    for (auto& [id, expr] : exprs_by_id) {
        auto report = stability_classify(expr);
        if (report.cls == StabilityClass::Stable) stable.insert(id);
        if (id == 20)
            flag20 = report.cls == StabilityClass::ConditionallyStable &&
                     report.channel_side_violation;
    }
    std::set<int> expected(golden::stable_ids().begin(), golden::stable_ids().end());
    if (stable == expected) {
        out.note("9a PASS: stable set is exactly {6,12,16,23,26,27}");
    } else {
        std::ostringstream os;
        for (int id : stable) os << id << " ";
        out.fail("9a: stable set is {" + os.str() + "}");
    }
    if (flag20)
        out.note("9b PASS: entry 20 conditionally stable with its channel-side violation flagged");
    else
        out.fail("9b: entry 20 flags not as expected");

    // 9c: mirror-symmetry mechanism, measured directly
    auto generic = synth_object(3, 3, 160, 4242);
    auto symmetric = mirrored_cloud(4242, 80);
    bool mech_ok = true;
    for (auto& [id, expr] : exprs_by_id) {
        double v_gen = evaluate(expr, generic);
        double v_sym = evaluate(expr, symmetric);
        bool degenerate = std::abs(v_gen) <= 1e-9;
        bool collapsed = degenerate || std::abs(v_sym) <= 1e-6 * std::abs(v_gen);
        bool is_stable = expected.count(id) > 0;
        if (is_stable && collapsed) {
            mech_ok = false;
            out.fail("9c: entry " + std::to_string(id) + " is classified stable but collapses (" +
                     "generic " + fmt(v_gen) + ", symmetric " + fmt(v_sym) + ")");
            if (id == 16)
                out.note("     entry 16's combination S(1,2,3)*S(1,2,4)*C(1,2,3)^2 gives point 4 a "
                         "single participation, so every addend carries a first-order central "
                         "moment and the numerator is identically zero; no classifier consistent "
                         "with the published stable set can make this sub-check pass");
        }
        if (!is_stable && !collapsed) {
            mech_ok = false;
            out.fail("9c: entry " + std::to_string(id) +
                     " is conditionally stable but survives the mirror (generic " + fmt(v_gen) +
                     ", symmetric " + fmt(v_sym) + ")");
        }
    }
    if (mech_ok) out.note("9c PASS: mirror-symmetry collapse matches the classification");
    return out;
}

Outcome criterion_10() {
    Outcome out;
    auto exprs_by_id = nonzero_table_exprs(NormalizationMode::CountingFull);
    std::vector<InvariantExpr> features;
    for (auto& [id, expr] : exprs_by_id)
        if (std::count(golden::stable_ids().begin(), golden::stable_ids().end(), id))
            features.push_back(expr);

    std::vector<ObjectMN> objects;
    std::vector<int> labels;
    for (int cls = 0; cls < 10; ++cls) {
        auto base = synth_object(3, 3, 100, 9000 + static_cast<std::uint64_t>(cls));
        objects.push_back(base);
        labels.push_back(cls);
        for (int v = 0; v < 13; ++v) {
            std::uint64_t seed = Rng::derive(31337, static_cast<std::uint64_t>(cls), static_cast<std::uint64_t>(v));
            auto sp = sample_affine(3, seed, AffineFamily::GeneralAffine);
            auto ch = sample_affine(3, seed + 7, AffineFamily::GeneralAffine);
            objects.push_back(apply_dual(base, sp, ch));
            labels.push_back(cls);
        }
    }
    auto matrix = evaluate_batch(features, objects);
    KnnOptions opt;
    opt.neighbors = 1;
    opt.folds = 10;
    opt.seed = 5;
    auto report = knn_crossval(matrix, labels, opt);
    if (report.mean_accuracy != 1.0)
        out.fail("mean accuracy " + fmt(report.mean_accuracy) + " != 1.0");
    if (!report.stratified) out.fail("folds were not stratified");
    out.note("10 classes x 14 objects, stable-six features, 1-NN, 10-fold: accuracy " +
             fmt(report.mean_accuracy));
    return out;
}

Outcome criterion_11() {
    Outcome out;
    // planar cloud: third axis constant
    auto flat = synth_object(2, 3, 90, 61);
    std::vector<double> coords;
    for (std::size_t i = 0; i < flat.point_count(); ++i) {
        coords.push_back(flat.coords(i)[0]);
        coords.push_back(flat.coords(i)[1]);
        coords.push_back(1.25);
    }
    ObjectMN planar(3, 3, std::move(coords), flat.channel_data());
    auto reduced = rank_reduce(planar);
    if (reduced.report.spatial_rank != 2)
        out.fail("planar cloud reduced to spatial rank " +
                 std::to_string(reduced.report.spatial_rank));
    EnumerateOptions opt23;
    opt23.max_degree = 3;
    opt23.max_order = 4;
    bool evaluated = false;
    for (const auto& spec : enumerate_kernels(2, 3, opt23)) {
        auto expr = build_invariant(spec, NormalizationMode::CountingFull);
        if (!expr) continue;
        double v = evaluate(*expr, reduced.object);
        if (!std::isfinite(v)) out.fail("reduced-space invariant evaluation is not finite");
        evaluated = true;
        break;
    }
    if (!evaluated) out.fail("no reduced-space invariant available to evaluate");
    out.note("planar cloud: spatial rank 2, reduced (2,3) invariant evaluates finitely");

    // single color: the channel normalizer must vanish, by name
    auto base = synth_object(3, 3, 50, 63);
    std::vector<double> flat_channels(base.point_count() * 3);
    for (std::size_t i = 0; i < base.point_count(); ++i) {
        flat_channels[i * 3 + 0] = 0.3;
        flat_channels[i * 3 + 1] = 0.6;
        flat_channels[i * 3 + 2] = 0.9;
    }
    ObjectMN single(3, 3, base.coord_data(), flat_channels);
    auto expr = golden::build33("S(1,2,3)*C(1,2,3)");
    try {
        evaluate(expr, single);
        out.fail("single-color object evaluated without a null-space error");
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NullSpace || std::string(e.what()).find("channel") == std::string::npos)
            out.fail(std::string("unexpected error: ") + e.what());
        else
            out.note(std::string("single color: ") + e.what());
    }
    return out;
}

struct Criterion {
    int number;
    const char* title;
    double time_limit_s;  // 0 = none
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "golden expansion of entry 1", 1.0, criterion_1},
        {2, "golden expansion of entry 7", 1.0, criterion_2},
        {3, "golden 3-channel normalizer and density exponents", 0, criterion_3},
        {4, "zero set vanishes symbolically and under the oracle", 0, criterion_4},
        {5, "enumeration covers the published 29-row table", 10.0, criterion_5},
        {6, "(2,2) expansions match the published vector-field invariants", 0, criterion_6},
        {7, "oracle equals the symbolic numerator on both enumerations", 120.0, criterion_7},
        {8, "counting-mode invariance under admissible dual maps", 60.0, criterion_8},
        {9, "stability classification and mirror-symmetry mechanism", 0, criterion_9},
        {10, "stable-six 1-NN classification reaches 100%", 60.0, criterion_10},
        {11, "null-space handling: planar cloud and single color", 0, criterion_11},
    };
    return list;
}

bool run_one(const Criterion& c) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = c.run();
    } catch (const std::exception& e) {
        outcome.fail(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s)
        outcome.fail("runtime " + fmt(seconds) + "s exceeds the " + fmt(c.time_limit_s) +
                     "s limit");
    std::ostringstream head;
    head << "[" << (c.number < 10 ? " " : "") << c.number << "] "
         << (outcome.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << fmt(seconds) << "s)";
    std::cout << head.str() << "\n";
    for (const auto& note : outcome.notes) std::cout << "      " << note << "\n";
    return outcome.pass;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    int failures = 0;
    for (const auto& c : criteria()) {
        if (only != 0 && c.number != only) continue;
        if (!run_one(c)) ++failures;
    }
    if (only == 0)
        std::cout << (failures == 0 ? "all criteria passed"
                                    : std::to_string(failures) + " criterion(s) failed")
                  << "\n";
    return failures == 0 ? 0 : 1;
}
