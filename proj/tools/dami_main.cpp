// dami — dual-affine moment invariants for M-dimensional, N-channel point
// clouds.  The tool is a thin shell over the shared C library: every
// computation goes through dami.h.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dami/dami.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNullSpace = 3;

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void die(dami_status status) {
    std::string msg = std::string(dami_status_name(status)) + ": " + dami_last_error();
    throw CliError{status == DAMI_ERR_NULLSPACE ? kExitNullSpace : kExitValidation, msg};
}

void check(dami_status status) {
    if (status != DAMI_OK) die(status);
}

struct String {
    char* p = nullptr;
    ~String() { dami_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

using ObjectPtr = std::unique_ptr<dami_object, decltype(&dami_object_free)>;
using KernelPtr = std::unique_ptr<dami_kernel, decltype(&dami_kernel_free)>;
using ExprPtr = std::unique_ptr<dami_expr, decltype(&dami_expr_free)>;

ObjectPtr load_object(const std::string& path, int space_dim, int channel_dim) {
    dami_object* obj = nullptr;
    check(dami_object_read_csv(path.c_str(), space_dim, channel_dim, &obj));
    return {obj, &dami_object_free};
}

KernelPtr parse_kernel(const std::string& text, int space_dim, int channel_dim) {
    dami_kernel* kernel = nullptr;
    check(dami_kernel_parse(text.c_str(), space_dim, channel_dim, &kernel));
    return {kernel, &dami_kernel_free};
}

std::string artifact_header(std::uint64_t seed, const std::string& mode) {
    std::ostringstream os;
    os << "dami v" << dami_version() << " seed=" << seed << " mode=" << mode;
    return os.str();
}

dami_norm_mode mode_from(const std::string& mode) {
    if (mode == "counting") return DAMI_NORM_COUNTING;
    if (mode == "paper") return DAMI_NORM_PAPER;
    throw CliError{kExitValidation, "unknown mode '" + mode + "' (use counting or paper)"};
}

std::vector<fs::path> sorted_files(const std::string& dir, const std::string& extension) {
    if (!fs::is_directory(dir)) throw CliError{kExitValidation, "'" + dir + "' is not a directory"};
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == extension)
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<ExprPtr> load_expressions(const std::string& dir) {
    std::vector<ExprPtr> exprs;
    for (const auto& path : sorted_files(dir, ".json")) {
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        dami_expr* expr = nullptr;
        if (dami_expr_from_json(buffer.str().c_str(), &expr) != DAMI_OK)
            throw CliError{kExitValidation, path.string() + ": " + dami_last_error()};
        exprs.emplace_back(expr, &dami_expr_free);
    }
    if (exprs.empty()) throw CliError{kExitValidation, "no .json expressions in '" + dir + "'"};
    return exprs;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitValidation, "cannot write '" + path + "'"};
    out << content;
}

// RFC-4180 quoting for CSV fields that carry commas (kernel strings do).
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

dami_affine_family family_code(const std::string& name) {
    if (name == "translation") return DAMI_FAMILY_TRANSLATION;
    if (name == "rotation") return DAMI_FAMILY_ROTATION;
    if (name == "scaling") return DAMI_FAMILY_SCALING;
    if (name == "affine") return DAMI_FAMILY_GENERAL;
    throw CliError{kExitValidation, "unknown family '" + name + "'"};
}

// ---- subcommands -----------------------------------------------------------

int cmd_expand(const std::string& kernel_text, int M, int N, const std::string& mode,
               const std::string& out) {
    auto kernel = parse_kernel(kernel_text, M, N);
    dami_expr* raw = nullptr;
    dami_status status = dami_kernel_expand(kernel.get(), mode_from(mode), &raw);
    if (status == DAMI_ERR_ZERO_INVARIANT) {
        String canon;
        check(dami_kernel_canonical_string(kernel.get(), &canon.p));
        std::cout << "kernel: " << canon.str() << "\nnumerator: 0 (zero invariant)\n";
        return 0;
    }
    check(status);
    ExprPtr expr{raw, &dami_expr_free};
    String text;
    check(dami_expr_format(expr.get(), &text.p));
    std::cout << text.str();
    if (!out.empty()) {
        String js;
        check(dami_expr_to_json(expr.get(), &js.p));
        write_file(out, js.str() + "\n");
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_enumerate(int M, int N, int max_degree, int max_order, bool dual, const std::string& mode,
                  std::uint64_t seed, const std::string& out_dir) {
    dami_kernel_list* raw_list = nullptr;
    check(dami_enumerate(M, N, max_degree, max_order, dual ? 1 : 0, &raw_list));
    std::unique_ptr<dami_kernel_list, decltype(&dami_kernel_list_free)> list{raw_list,
                                                                             &dami_kernel_list_free};
    fs::create_directories(out_dir);

    std::ostringstream manifest;
    manifest << "# " << artifact_header(seed, mode) << "\n";
    manifest << "index,kernel,P,Q,O_S,O_C,L,K,zero,stability,expr_file\n";
    int64_t count = dami_kernel_list_count(list.get());
    for (int64_t i = 0; i < count; ++i) {
        dami_kernel* raw_kernel = nullptr;
        check(dami_kernel_list_get(list.get(), i, &raw_kernel));
        KernelPtr kernel{raw_kernel, &dami_kernel_free};
        String canon;
        check(dami_kernel_canonical_string(kernel.get(), &canon.p));
        int P, Q, OS, OC, L, K;
        check(dami_kernel_params(kernel.get(), &P, &Q, &OS, &OC, &L, &K));

        dami_expr* raw_expr = nullptr;
        dami_status status = dami_kernel_expand(kernel.get(), mode_from(mode), &raw_expr);
        bool zero = status == DAMI_ERR_ZERO_INVARIANT;
        std::string stability = "zero";
        std::string expr_file = "-";
        if (!zero) {
            check(status);
            ExprPtr expr{raw_expr, &dami_expr_free};
            int stable = 0;
            check(dami_expr_stability(expr.get(), &stable, nullptr));
            stability = stable ? "stable" : "conditionally-stable";
            std::ostringstream name;
            name << "expr_" << (i + 1 < 10 ? "00" : (i + 1 < 100 ? "0" : "")) << (i + 1) << ".json";
            expr_file = name.str();
            String js;
            check(dami_expr_to_json(expr.get(), &js.p));
            write_file((fs::path(out_dir) / expr_file).string(), js.str() + "\n");
        }
        manifest << (i + 1) << "," << csv_field(canon.str()) << "," << P << "," << Q << "," << OS << "," << OC
                 << "," << L << "," << K << "," << (zero ? 1 : 0) << "," << stability << ","
                 << expr_file << "\n";
    }
    write_file((fs::path(out_dir) / "manifest.csv").string(), manifest.str());
    std::cout << "enumerated " << count << " kernel classes into " << out_dir << "\n";
    return 0;
}

int cmd_eval(const std::string& expr_dir, const std::string& object_path, const std::string& mode,
             std::uint64_t seed, const std::string& out, bool include_zero_unused) {
    (void)include_zero_unused;
    auto exprs = load_expressions(expr_dir);
    int M = 0, N = 0;
    check(dami_expr_dims(exprs.front().get(), &M, &N));

    // honor --mode by renormalizing loaded expressions when they differ
    std::vector<ExprPtr> prepared;
    for (auto& e : exprs) {
        dami_expr* re = nullptr;
        check(dami_expr_renormalize(e.get(), mode_from(mode), &re));
        prepared.emplace_back(re, &dami_expr_free);
    }

    auto obj = load_object(object_path, M, N);
    std::vector<const dami_expr*> raw;
    for (auto& e : prepared) raw.push_back(e.get());
    std::vector<double> features(prepared.size());
    std::vector<int> status(prepared.size());
    const dami_object* objs[] = {obj.get()};
    check(dami_evaluate_batch(raw.data(), static_cast<int64_t>(raw.size()), objs, 1,
                              features.data(), status.data()));

    std::ostringstream csv;
    csv << "# " << artifact_header(seed, mode) << "\n";
    csv << "object";
    for (auto& e : prepared) {
        String name;
        check(dami_expr_kernel_string(e.get(), &name.p));
        csv << "," << csv_field(name.str());
    }
    csv << "\n" << object_path;
    csv.precision(15);
    std::size_t failed = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        csv << ",";
        if (status[i] == 0)
            csv << features[i];
        else {
            csv << "missing";
            ++failed;
        }
    }
    csv << "\n";
    if (out.empty())
        std::cout << csv.str();
    else {
        write_file(out, csv.str());
        std::cout << "wrote " << out << "\n";
    }
    if (failed == features.size())
        throw CliError{kExitNullSpace, "every expression failed on this object (null space)"};
    return 0;
}

int cmd_transform(const std::string& object_path, const std::string& family, std::uint64_t seed,
                  int M, int N, const std::string& out) {
    auto obj = load_object(object_path, M, N);
    std::vector<double> sp_lin(static_cast<std::size_t>(M) * M), sp_off(static_cast<std::size_t>(M));
    std::vector<double> ch_lin(static_cast<std::size_t>(N) * N), ch_off(static_cast<std::size_t>(N));
    // identity defaults
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) sp_lin[static_cast<std::size_t>(i * M + j)] = i == j ? 1.0 : 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) ch_lin[static_cast<std::size_t>(i * N + j)] = i == j ? 1.0 : 0.0;

    if (family == "dual") {
        check(dami_affine_sample(M, DAMI_FAMILY_GENERAL, seed, 0, sp_lin.data(), sp_off.data()));
        check(dami_affine_sample(N, DAMI_FAMILY_GENERAL, seed + 1, 0, ch_lin.data(), ch_off.data()));
    } else if (family == "channel") {
        check(dami_affine_sample(N, DAMI_FAMILY_GENERAL, seed, 0, ch_lin.data(), ch_off.data()));
    } else {
        check(dami_affine_sample(M, family_code(family), seed, 0, sp_lin.data(), sp_off.data()));
    }

    dami_object* moved = nullptr;
    check(dami_object_transform(obj.get(), sp_lin.data(), sp_off.data(), ch_lin.data(),
                                ch_off.data(), &moved));
    ObjectPtr result{moved, &dami_object_free};
    std::string header = artifact_header(seed, "n/a") + " family=" + family;
    check(dami_object_write_csv(result.get(), out.c_str(), header.c_str()));

    json sidecar{{"tool", std::string("dami v") + dami_version()},
                 {"seed", seed},
                 {"family", family},
                 {"input", object_path},
                 {"spatial", {{"linear", sp_lin}, {"offset", sp_off}}},
                 {"channel", {{"linear", ch_lin}, {"offset", ch_off}}}};
    write_file(out + ".transform.json", sidecar.dump(2) + "\n");
    std::cout << "wrote " << out << " and " << out << ".transform.json\n";
    return 0;
}

int cmd_invariance(const std::string& object_path, const std::string& expr_dir, int trials,
                   std::uint64_t seed, const std::string& mode, const std::string& out) {
    auto exprs = load_expressions(expr_dir);
    int M = 0, N = 0;
    check(dami_expr_dims(exprs.front().get(), &M, &N));
    std::vector<ExprPtr> prepared;
    for (auto& e : exprs) {
        dami_expr* re = nullptr;
        check(dami_expr_renormalize(e.get(), mode_from(mode), &re));
        prepared.emplace_back(re, &dami_expr_free);
    }
    auto obj = load_object(object_path, M, N);

    std::vector<const dami_expr*> raw;
    std::vector<String> name_guards(prepared.size());
    std::vector<const char*> names;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
        raw.push_back(prepared[i].get());
        check(dami_expr_kernel_string(prepared[i].get(), &name_guards[i].p));
        names.push_back(name_guards[i].p);
    }
    String csv;
    check(dami_invariance_report(obj.get(), raw.data(), names.data(),
                                 static_cast<int64_t>(raw.size()), trials, seed, &csv.p));
    std::string content = "# " + artifact_header(seed, mode) + "\n" + csv.str();
    if (out.empty())
        std::cout << content;
    else {
        write_file(out, content);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_classify(const std::string& dataset_dir, const std::string& expr_dir, int k, int folds,
                 std::uint64_t seed, const std::string& mode, const std::string& out) {
    auto exprs = load_expressions(expr_dir);
    int M = 0, N = 0;
    check(dami_expr_dims(exprs.front().get(), &M, &N));
    std::vector<ExprPtr> prepared;
    for (auto& e : exprs) {
        dami_expr* re = nullptr;
        check(dami_expr_renormalize(e.get(), mode_from(mode), &re));
        prepared.emplace_back(re, &dami_expr_free);
    }

    auto files = sorted_files(dataset_dir, ".csv");
    if (files.empty()) throw CliError{kExitValidation, "no .csv objects in '" + dataset_dir + "'"};
    std::vector<ObjectPtr> objects;
    std::vector<std::string> label_names;
    for (const auto& path : files) {
        objects.push_back(load_object(path.string(), M, N));
        std::string stem = path.stem().string();
        label_names.push_back(stem.substr(0, stem.find('_')));
    }
    std::map<std::string, int> label_ids;
    for (const auto& name : label_names) label_ids.emplace(name, 0);
    int next = 0;
    for (auto& [name, id] : label_ids) id = next++;
    std::vector<int> labels;
    for (const auto& name : label_names) labels.push_back(label_ids[name]);

    std::vector<const dami_expr*> raw_exprs;
    for (auto& e : prepared) raw_exprs.push_back(e.get());
    std::vector<const dami_object*> raw_objects;
    for (auto& o : objects) raw_objects.push_back(o.get());
    std::vector<double> features(objects.size() * prepared.size());
    check(dami_evaluate_batch(raw_exprs.data(), static_cast<int64_t>(raw_exprs.size()),
                              raw_objects.data(), static_cast<int64_t>(raw_objects.size()),
                              features.data(), nullptr));

    String report;
    check(dami_knn_crossval(features.data(), static_cast<int64_t>(objects.size()),
                            static_cast<int64_t>(prepared.size()), labels.data(), k, folds, seed,
                            &report.p));
    json j = json::parse(report.str());
    j["classes"] = label_ids.size();
    j["objects"] = objects.size();
    j["seed"] = seed;
    j["mode"] = mode;
    std::string content = j.dump(2) + "\n";
    if (out.empty())
        std::cout << content;
    else {
        write_file(out, content);
        std::cout << "wrote " << out << "\n";
    }
    std::cout << "mean accuracy: " << j["mean_accuracy"] << "\n";
    return 0;
}

int cmd_verify(const std::string& object_path, const std::string& kernel_text, double budget,
               bool sample, std::uint64_t seed, int M, int N) {
    auto obj = load_object(object_path, M, N);
    auto kernel = parse_kernel(kernel_text, M, N);
    double oracle = 0.0, scale = 0.0, symbolic = 0.0;
    int approx = 0;
    check(dami_oracle_covariant(kernel.get(), obj.get(), budget, sample ? 1 : 0, seed, &oracle,
                                &scale, &approx));
    check(dami_covariant_value(kernel.get(), obj.get(), &symbolic));
    double rel = std::abs(oracle - symbolic) / std::max(scale, 1e-300);
    std::cout.precision(15);
    std::cout << "oracle:    " << oracle << (approx ? "  (sampled estimate)" : "") << "\n"
              << "symbolic:  " << symbolic << "\n"
              << "rel.error: " << rel << "  (relative to summed |contribution| " << scale << ")\n";
    return 0;
}

int cmd_synth(int classes, int points, std::uint64_t seed, int M, int N, int variants,
              const std::string& out_dir) {
    fs::create_directories(out_dir);
    for (int c = 0; c < classes; ++c) {
        dami_object* raw = nullptr;
        check(dami_object_synth(M, N, points, seed + static_cast<std::uint64_t>(c) * 1000, &raw));
        ObjectPtr base{raw, &dami_object_free};
        auto name = [&](int v) {
            std::ostringstream os;
            os << c << "_v" << (v < 10 ? "0" : "") << v << ".csv";
            return (fs::path(out_dir) / os.str()).string();
        };
        std::string header = artifact_header(seed, "n/a") + " class=" + std::to_string(c);
        check(dami_object_write_csv(base.get(), name(0).c_str(), header.c_str()));
        for (int v = 1; v <= variants; ++v) {
            std::vector<double> sp_lin(static_cast<std::size_t>(M) * M), sp_off(static_cast<std::size_t>(M));
            std::vector<double> ch_lin(static_cast<std::size_t>(N) * N), ch_off(static_cast<std::size_t>(N));
            std::uint64_t vseed = seed + static_cast<std::uint64_t>(c) * 1000 + static_cast<std::uint64_t>(v);
            check(dami_affine_sample(M, DAMI_FAMILY_GENERAL, vseed * 2, 0, sp_lin.data(), sp_off.data()));
            check(dami_affine_sample(N, DAMI_FAMILY_GENERAL, vseed * 2 + 1, 0, ch_lin.data(), ch_off.data()));
            dami_object* moved = nullptr;
            check(dami_object_transform(base.get(), sp_lin.data(), sp_off.data(), ch_lin.data(),
                                        ch_off.data(), &moved));
            ObjectPtr variant{moved, &dami_object_free};
            check(dami_object_write_csv(variant.get(), name(v).c_str(), header.c_str()));
        }
    }
    std::cout << "wrote " << classes * (variants + 1) << " objects to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("dami v") + dami_version() +
                 " — dual-affine moment invariants for colored point clouds.\n"
                 "Kernel grammar: S(i,j,k)^t*C(l,m,n)^t — determinant primitives over point ids,"
                 " '*'-joined, optional integer exponents."};
    app.require_subcommand(1);

    // shared option storage
    std::string kernel_text, object_path, expr_dir, dataset_dir, out, family = "dual";
    std::string mode = "counting";
    int M = 3, N = 3, max_degree = 4, max_order = 4, trials = 10, k = 1, folds = 10;
    int classes = 10, points = 500, variants = 13;
    bool dual = true, sample = false;
    double budget = 1e7;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Seed for all randomness in this command");
        cmd->add_option("--mode", mode, "Normalization mode: counting|paper")
            ->check(CLI::IsMember({"counting", "paper"}));
        cmd->add_option("--out", out, "Output file or directory");
    };

    auto* expand = app.add_subcommand(
        "expand", "Expand a kernel (grammar: S(1,2,3)^2*C(1,2,3)) into its invariant expression");
    expand->add_option("--kernel", kernel_text, "Kernel expression")->required();
    expand->add_option("--space-dim", M, "Spatial dimension M");
    expand->add_option("--channel-dim", N, "Channel dimension N");
    add_common(expand);

    auto* enumerate = app.add_subcommand("enumerate",
                                         "Write every kernel class within the bounds plus a manifest");
    enumerate->add_option("--space-dim", M, "Spatial dimension M");
    enumerate->add_option("--channel-dim", N, "Channel dimension N");
    enumerate->add_option("--max-degree", max_degree, "Maximum distinct points L");
    enumerate->add_option("--max-order", max_order, "Maximum total exponent K");
    enumerate->add_flag("--dual,!--no-dual", dual, "Require both space and channel primitives");
    add_common(enumerate);

    auto* eval = app.add_subcommand("eval", "Evaluate a directory of expressions on one object");
    eval->add_option("--expr-dir", expr_dir, "Directory of expression .json files")->required();
    eval->add_option("--object", object_path, "Object CSV")->required();
    add_common(eval);

    auto* transform = app.add_subcommand("transform", "Apply a sampled transform; records matrices");
    transform->add_option("--object", object_path, "Object CSV")->required();
    transform->add_option("--family", family,
                          "translation|rotation|scaling|affine|channel|dual");
    transform->add_option("--space-dim", M, "Spatial dimension M");
    transform->add_option("--channel-dim", N, "Channel dimension N");
    add_common(transform);

    auto* invariance = app.add_subcommand(
        "invariance", "Coefficient-of-variation table across transform families");
    invariance->add_option("--object", object_path, "Object CSV")->required();
    invariance->add_option("--expr-dir", expr_dir, "Directory of expression .json files")->required();
    invariance->add_option("--trials", trials, "Transformed variants per family");
    add_common(invariance);

    auto* classify = app.add_subcommand(
        "classify", "k-NN cross-validation over a dataset (CSV per object, label = filename prefix)");
    classify->add_option("--dataset", dataset_dir, "Dataset directory")->required();
    classify->add_option("--expr-dir", expr_dir, "Directory of expression .json files")->required();
    classify->add_option("--k", k, "Neighbors");
    classify->add_option("--folds", folds, "Cross-validation folds");
    add_common(classify);

    auto* verify = app.add_subcommand("verify",
                                      "Compare the brute-force covariant against the symbolic value");
    verify->add_option("--object", object_path, "Object CSV")->required();
    verify->add_option("--kernel", kernel_text, "Kernel expression")->required();
    verify->add_option("--budget", budget, "Maximum ordered tuples before sampling is needed");
    verify->add_flag("--sample", sample, "Allow a seeded tuple sample when over budget");
    verify->add_option("--space-dim", M, "Spatial dimension M");
    verify->add_option("--channel-dim", N, "Channel dimension N");
    add_common(verify);

    auto* synth = app.add_subcommand("synth", "Generate seeded synthetic colored clouds");
    synth->add_option("--classes", classes, "Number of base clouds");
    synth->add_option("--points", points, "Points per cloud");
    synth->add_option("--variants", variants, "Dual-affine variants per base cloud");
    synth->add_option("--space-dim", M, "Spatial dimension M");
    synth->add_option("--channel-dim", N, "Channel dimension N");
    add_common(synth);

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand->parsed()) return cmd_expand(kernel_text, M, N, mode, out);
        if (enumerate->parsed()) {
            if (out.empty()) throw CliError{kExitValidation, "enumerate requires --out DIR"};
            return cmd_enumerate(M, N, max_degree, max_order, dual, mode, seed, out);
        }
        if (eval->parsed()) return cmd_eval(expr_dir, object_path, mode, seed, out, false);
        if (transform->parsed()) {
            if (out.empty()) throw CliError{kExitValidation, "transform requires --out FILE"};
            return cmd_transform(object_path, family, seed, M, N, out);
        }
        if (invariance->parsed())
            return cmd_invariance(object_path, expr_dir, trials, seed, mode, out);
        if (classify->parsed())
            return cmd_classify(dataset_dir, expr_dir, k, folds, seed, mode, out);
        if (verify->parsed()) return cmd_verify(object_path, kernel_text, budget, sample, seed, M, N);
        if (synth->parsed()) {
            if (out.empty()) throw CliError{kExitValidation, "synth requires --out DIR"};
            return cmd_synth(classes, points, seed, M, N, variants, out);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
