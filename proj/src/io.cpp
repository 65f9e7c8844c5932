#include "dami/core/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dami {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        // trim
        std::size_t b = cell.find_first_not_of(" \t\r");
        std::size_t e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string column_name(int space_dim, int channel_dim, int index) {
    static const char* spatial[] = {"x", "y", "z"};
    static const char* channel[] = {"r", "g", "b"};
    if (index < space_dim)
        return index < 3 ? spatial[index] : "s" + std::to_string(index + 1);
    int c = index - space_dim;
    if (c < channel_dim) return c < 3 ? channel[c] : "c" + std::to_string(c + 1);
    return "w";
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

ObjectMN parse_object_csv(const std::string& text, int space_dim, int channel_dim,
                          const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool has_weight = false;
    std::size_t columns = 0;
    std::vector<double> coords, channels, weights;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            columns = cells.size();
            std::size_t base = static_cast<std::size_t>(space_dim + channel_dim);
            if (columns == base + 1 && (cells.back() == "w" || cells.back() == "weight"))
                has_weight = true;
            else if (columns != base)
                fail(ErrorCode::Parse, origin + ":" + std::to_string(line_no) + ": expected " +
                                           std::to_string(base) + " columns (or +1 trailing 'w'), found " +
                                           std::to_string(columns));
            continue;
        }
        if (cells.size() != columns)
            fail(ErrorCode::Parse, origin + ":" + std::to_string(line_no) + ": expected " +
                                       std::to_string(columns) + " cells, found " +
                                       std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                std::size_t used = 0;
                row[c] = std::stod(cells[c], &used);
                if (used != cells[c].size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                fail(ErrorCode::Parse, origin + ":" + std::to_string(line_no) + ": column " +
                                           std::to_string(c + 1) + " ('" +
                                           column_name(space_dim, channel_dim, static_cast<int>(c)) +
                                           "') is not numeric: '" + cells[c] + "'");
            }
        }
        for (int a = 0; a < space_dim; ++a) coords.push_back(row[static_cast<std::size_t>(a)]);
        for (int a = 0; a < channel_dim; ++a)
            channels.push_back(row[static_cast<std::size_t>(space_dim + a)]);
        if (has_weight) weights.push_back(row.back());
    }
    if (coords.empty()) fail(ErrorCode::Parse, origin + ": no data rows");
    return ObjectMN(space_dim, channel_dim, std::move(coords), std::move(channels), std::move(weights));
}

ObjectMN read_object_csv(const std::string& path, int space_dim, int channel_dim) {
    return parse_object_csv(read_text_file(path), space_dim, channel_dim, path);
}

std::string object_csv_string(const ObjectMN& obj, const std::string& header_comment) {
    std::ostringstream os;
    os.precision(17);
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string line;
        while (std::getline(lines, line)) os << "# " << line << "\n";
    }
    bool unit_weights = true;
    for (std::size_t i = 0; i < obj.point_count(); ++i)
        if (obj.weight(i) != 1.0) {
            unit_weights = false;
            break;
        }
    int total = obj.space_dim() + obj.channel_dim();
    for (int c = 0; c < total; ++c) os << (c ? "," : "") << column_name(obj.space_dim(), obj.channel_dim(), c);
    if (!unit_weights) os << ",w";
    os << "\n";
    for (std::size_t i = 0; i < obj.point_count(); ++i) {
        for (int a = 0; a < obj.space_dim(); ++a) os << (a ? "," : "") << obj.coords(i)[static_cast<std::size_t>(a)];
        for (int a = 0; a < obj.channel_dim(); ++a) os << "," << obj.channels(i)[static_cast<std::size_t>(a)];
        if (!unit_weights) os << "," << obj.weight(i);
        os << "\n";
    }
    return os.str();
}

void write_object_csv(const ObjectMN& obj, const std::string& path,
                      const std::string& header_comment) {
    write_text_file(path, object_csv_string(obj, header_comment));
}

namespace {

using nlohmann::json;

json poly_to_json(const MomentPolynomial& poly) {
    json terms = json::array();
    for (const auto& t : poly.terms()) {
        json moments = json::array();
        for (const auto& k : t.factors) moments.push_back(k.flat());
        terms.push_back(json{{"coeff", {t.coeff.num(), t.coeff.den()}}, {"moments", moments}});
    }
    return terms;
}

MomentPolynomial poly_from_json(const json& terms, int space_dim, int channel_dim,
                                const std::string& where) {
    if (!terms.is_array()) fail(ErrorCode::Parse, where + ": expected an array of terms");
    MomentPolynomial poly(space_dim, channel_dim);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const json& t = terms[i];
        std::string at = where + "[" + std::to_string(i) + "]";
        if (!t.contains("coeff") || !t["coeff"].is_array() || t["coeff"].size() != 2)
            fail(ErrorCode::Parse, at + ": 'coeff' must be [numerator, denominator]");
        Rational coeff(t["coeff"][0].get<std::int64_t>(), t["coeff"][1].get<std::int64_t>());
        if (!t.contains("moments") || !t["moments"].is_array())
            fail(ErrorCode::Parse, at + ": missing 'moments' array");
        std::vector<MomentKey> factors;
        for (const auto& mk : t["moments"]) {
            if (!mk.is_array() || static_cast<int>(mk.size()) != space_dim + channel_dim)
                fail(ErrorCode::Parse, at + ": moment index length must be M+N");
            MomentKey key;
            for (int a = 0; a < space_dim; ++a) key.spatial.push_back(mk[static_cast<std::size_t>(a)].get<std::uint8_t>());
            for (int a = 0; a < channel_dim; ++a)
                key.channel.push_back(mk[static_cast<std::size_t>(space_dim + a)].get<std::uint8_t>());
            factors.push_back(std::move(key));
        }
        poly.add_term(coeff, std::move(factors));
    }
    poly.normalize();
    return poly;
}

NormalizerKind normalizer_kind_from(const std::string& name, const std::string& where) {
    if (name == "mass") return NormalizerKind::Mass;
    if (name == "spatial_norm") return NormalizerKind::SpatialNorm;
    if (name == "channel_norm") return NormalizerKind::ChannelNorm;
    fail(ErrorCode::Parse, where + ": unknown normalizer kind '" + name + "'");
}

const char* normalizer_kind_tag(NormalizerKind kind) {
    switch (kind) {
        case NormalizerKind::Mass: return "mass";
        case NormalizerKind::SpatialNorm: return "spatial_norm";
        case NormalizerKind::ChannelNorm: return "channel_norm";
    }
    return "?";
}

}  // namespace

std::string expr_to_json(const InvariantExpr& expr, int indent) {
    json j;
    j["M"] = expr.kernel.space_dim();
    j["N"] = expr.kernel.channel_dim();
    json kernel = json::array();
    for (const auto& p : expr.kernel.primitives())
        kernel.push_back(json{{"kind", p.kind == PrimitiveKind::Space ? "S" : "C"},
                              {"points", p.points},
                              {"exp", p.exponent}});
    j["kernel"] = kernel;
    j["numerator"] = poly_to_json(expr.numerator);
    json factors = json::array();
    for (const auto& f : expr.normalization.factors)
        factors.push_back(json{{"kind", normalizer_kind_tag(f.kind)},
                               {"base", poly_to_json(f.base)},
                               {"exp", {f.exponent.num(), f.exponent.den()}}});
    j["normalization"] = json{
        {"mode", expr.normalization.mode == NormalizationMode::PaperDensity ? "paper" : "counting"},
        {"factors", factors}};
    return j.dump(indent);
}

InvariantExpr expr_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Parse, std::string("expression JSON: ") + e.what());
    }
    try {
        int M = j.at("M").get<int>();
        int N = j.at("N").get<int>();
        std::vector<Primitive> prims;
        for (const auto& p : j.at("kernel")) {
            Primitive prim;
            std::string kind = p.at("kind").get<std::string>();
            if (kind == "S")
                prim.kind = PrimitiveKind::Space;
            else if (kind == "C")
                prim.kind = PrimitiveKind::Channel;
            else
                fail(ErrorCode::Parse, "kernel: 'kind' must be \"S\" or \"C\"");
            prim.points = p.at("points").get<std::vector<int>>();
            prim.exponent = p.value("exp", 1);
            prims.push_back(std::move(prim));
        }
        InvariantExpr expr;
        expr.kernel = KernelSpec(M, N, std::move(prims));
        expr.numerator = poly_from_json(j.at("numerator"), M, N, "numerator");
        const json& norm = j.at("normalization");
        std::string mode = norm.at("mode").get<std::string>();
        if (mode == "paper")
            expr.normalization.mode = NormalizationMode::PaperDensity;
        else if (mode == "counting")
            expr.normalization.mode = NormalizationMode::CountingFull;
        else
            fail(ErrorCode::Parse, "normalization: unknown mode '" + mode + "'");
        const json& factors = norm.at("factors");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const json& f = factors[i];
            std::string where = "normalization.factors[" + std::to_string(i) + "]";
            NormalizationFactor out;
            out.kind = normalizer_kind_from(f.at("kind").get<std::string>(), where);
            out.base = poly_from_json(f.at("base"), M, N, where + ".base");
            if (!f.contains("exp") || !f["exp"].is_array() || f["exp"].size() != 2)
                fail(ErrorCode::Parse, where + ": 'exp' must be [numerator, denominator]");
            out.exponent = Rational(f["exp"][0].get<std::int64_t>(), f["exp"][1].get<std::int64_t>());
            expr.normalization.factors.push_back(std::move(out));
        }
        return expr;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("expression JSON: ") + e.what());
    }
}

InvariantExpr read_expr_json(const std::string& path) {
    try {
        return expr_from_json(read_text_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse)
            fail(ErrorCode::Parse, path + ": " + e.what());
        throw;
    }
}

void write_expr_json(const InvariantExpr& expr, const std::string& path) {
    write_text_file(path, expr_to_json(expr) + "\n");
}

}  // namespace dami
