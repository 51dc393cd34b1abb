#pragma once

// Canonical serialization: certificates and specs as JSON, grid sets and
// bases as blank-line-separated grid-text blocks, representation counts as
// CSV. All emitters are deterministic (sorted keys, sorted members, no
// timestamps) so equal inputs serialize to equal bytes.

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qdhj/extremal.hpp"
#include "qdhj/grid.hpp"
#include "qdhj/identities.hpp"
#include "qdhj/mdqhj.hpp"
#include "qdhj/pair_search.hpp"
#include "qdhj/subspace.hpp"

namespace qdhj {

using nlohmann::json;

inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

// ---- grid-text blocks ----

inline std::string format_grid_blocks(const std::vector<GridVector>& grids) {
    std::string out;
    for (std::size_t i = 0; i < grids.size(); ++i) {
        if (i) out.push_back('\n');
        out += format_grid(grids[i]);
    }
    return out;
}

/// Inverse of format_grid_blocks; every block must share one grid size.
inline std::vector<GridVector> parse_grid_blocks(const std::string& text) {
    std::vector<GridVector> out;
    std::string block;
    std::size_t line_base = 0, lines_seen = 0;
    auto flush = [&](std::size_t at_line) {
        if (block.empty()) return;
        try {
            out.push_back(parse_grid(block));
        } catch (const ParseError& e) {
            throw ParseError(static_cast<int>(line_base) + e.line(), e.column(), e.message());
        }
        if (out.size() > 1 && out.back().side() != out.front().side())
            throw ParseError(static_cast<int>(at_line), 1, "mixed grid sizes between blocks");
        block.clear();
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++lines_seen;
        if (line.empty()) {
            flush(lines_seen);
            line_base = lines_seen;
        } else {
            block += line;
            block.push_back('\n');
        }
    }
    flush(lines_seen + 1);
    return out;
}

inline std::string basis_to_text(const Basis& basis) {
    return format_grid_blocks(basis.elements);
}

// ---- IndexSet helpers ----

inline json index_set_to_json(const IndexSet& s) {
    json arr = json::array();
    for (int m : s.members()) arr.push_back(m);
    return arr;
}

inline IndexSet index_set_from_json(const json& arr, int n, const char* field) {
    if (!arr.is_array())
        throw std::runtime_error(std::string(field) + ": expected an array of indices");
    IndexSet s(n, {});
    for (const json& v : arr) {
        if (!v.is_number_integer())
            throw std::runtime_error(std::string(field) + ": indices must be integers");
        const int i = v.get<int>();
        if (i < 1 || i > n)
            throw std::runtime_error(std::string(field) + ": index out of range");
        s.add(i);
    }
    return s;
}

// ---- certificates ----

inline json certificate_to_json(const Certificate& cert) {
    json j;
    j["kind"] = to_string(cert.kind);
    j["n"] = cert.a.side();
    j["a"] = format_grid(cert.a);
    j["b"] = format_grid(cert.b);
    j["gamma1"] = index_set_to_json(cert.shape.gamma1);
    j["gamma2"] = index_set_to_json(cert.shape.gamma2);
    j["oriented"] = cert.oriented;
    j["search"] = json{{"mode", cert.search_mode}, {"seed", cert.search_seed}};
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    for (const char* key : {"kind", "n", "a", "b", "gamma1", "gamma2", "oriented", "search"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("certificate: missing field '") + key + "'");
    Certificate cert;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rect_pair")
        cert.kind = CertKind::RectPair;
    else if (kind == "square_pair")
        cert.kind = CertKind::SquarePair;
    else if (kind == "line")
        cert.kind = CertKind::Line;
    else
        throw std::runtime_error("certificate: unknown kind '" + kind + "'");
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::runtime_error("certificate: n must be positive");
    cert.a = parse_grid(j.at("a").get<std::string>());
    cert.b = parse_grid(j.at("b").get<std::string>());
    if (cert.a.side() != n || cert.b.side() != n)
        throw std::runtime_error("certificate: grid text size disagrees with n");
    const IndexSet g1 = index_set_from_json(j.at("gamma1"), n, "gamma1");
    const IndexSet g2 = index_set_from_json(j.at("gamma2"), n, "gamma2");
    if (g1.empty() && g2.empty())
        cert.shape = Shape{ShapeKind::Zero, g1, g2};
    else if (g1 == g2)
        cert.shape = Shape{ShapeKind::Square, g1, g2};
    else if (!g1.empty() && !g2.empty())
        cert.shape = Shape{ShapeKind::Rect, g1, g2};
    else
        throw std::runtime_error("certificate: exactly one of gamma1/gamma2 is empty");
    cert.oriented = j.at("oriented").get<bool>();
    const json& search = j.at("search");
    if (!search.contains("mode") || !search.contains("seed"))
        throw std::runtime_error("certificate: search needs mode and seed");
    cert.search_mode = search.at("mode").get<std::string>();
    cert.search_seed = search.at("seed").get<std::uint64_t>();
    return cert;
}

// ---- combinatorial subspace specs ----

inline json subspace_spec_to_json(const CombSubspaceSpec& spec) {
    json j;
    j["k"] = spec.k;
    j["N"] = spec.N;
    j["base"] = format_kstring(spec.base);
    json alphas = json::array();
    for (const IndexSet& a : spec.alphas) alphas.push_back(index_set_to_json(a));
    j["alphas"] = alphas;
    return j;
}

inline CombSubspaceSpec subspace_spec_from_json(const json& j) {
    for (const char* key : {"k", "N", "base", "alphas"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("subspace spec: missing field '") + key + "'");
    CombSubspaceSpec spec;
    spec.k = j.at("k").get<int>();
    spec.N = j.at("N").get<int>();
    if (spec.k < 2 || spec.N < 1)
        throw std::runtime_error("subspace spec: need k >= 2 and N >= 1");
    spec.base = parse_kstring(spec.k, j.at("base").get<std::string>());
    if (spec.base.size() != static_cast<std::size_t>(spec.N) * spec.N)
        throw std::runtime_error("subspace spec: base text size disagrees with N");
    if (!j.at("alphas").is_array())
        throw std::runtime_error("subspace spec: alphas must be an array");
    for (const json& a : j.at("alphas"))
        spec.alphas.push_back(index_set_from_json(a, spec.N, "alphas"));
    if (!validate_spec(spec))
        throw std::runtime_error("subspace spec: invariants violated (wildcards must be "
                                 "disjoint nonempty squares with zero base letters)");
    return spec;
}

// ---- slice tables ----

inline std::string flat_kstring(const KString& s) {
    if (s.alphabet() > 10)
        throw std::invalid_argument("flat_kstring: alphabet too large for digit format");
    std::string out;
    out.reserve(s.size());
    for (std::uint8_t c : s.letters()) out.push_back(static_cast<char>('0' + c));
    return out;
}

inline KString parse_flat_kstring(int k, const std::string& digits) {
    if (k < 2 || k > 10) throw std::invalid_argument("parse_flat_kstring: k must be in [2,10]");
    std::vector<std::uint8_t> letters;
    letters.reserve(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        if (c < '0' || c >= '0' + k) throw ParseError(1, i + 1, "letter outside alphabet");
        letters.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return KString(k, std::move(letters));
}

inline json slice_table_to_json(const SliceTable& table) {
    json j;
    j["k"] = table.k;
    j["domain_size"] = table.domain_size;
    j["p_cells"] = table.p_coords;
    j["q_cells"] = table.q_coords;
    j["total"] = table.total;
    json rows = json::array();
    for (const auto& [zq, count] : table.rows) {
        json row;
        row["zq"] = flat_kstring(zq);
        row["count"] = count;
        row["density"] = table.slice_density(count);
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

// ---- representation counts ----

/// CSV: one `<fnv1a64 of grid text>,<r>` row per difference in canonical
/// order, then key,value summary rows carrying the counting checks.
inline std::string repcounts_to_csv(const RepCountTable& table) {
    std::string out = "gamma,r\n";
    for (const auto& [gamma, r] : table.counts) {
        out += fnv1a64_hex(format_grid(gamma));
        out.push_back(',');
        out += std::to_string(r);
        out.push_back('\n');
    }
    out += "elements," + std::to_string(table.M) + "\n";
    out += "pair_total," + std::to_string(table.pair_total) + "\n";
    out += "max_count," + std::to_string(table.max_count) + "\n";
    out += "sum_matches," + std::to_string(table.sum_matches ? 1 : 0) + "\n";
    out += "max_bound_holds," + std::to_string(table.max_bound_holds ? 1 : 0) + "\n";
    out += "triple_bound_holds," + std::to_string(table.triple_bound_holds ? 1 : 0) + "\n";
    return out;
}

// ---- extremal results ----

inline json extremal_result_to_json(const ExtremalResult& result) {
    json j;
    j["n"] = result.n;
    j["family"] = to_string(result.family);
    j["best_size"] = result.best_size;
    j["exact"] = result.exact;
    j["bound_method"] = result.bound_method;
    j["trace_length"] = result.trace_length;
    json witness = json::array();
    for (const GridVector& w : result.witness.members()) witness.push_back(format_grid(w));
    j["witness"] = witness;
    return j;
}

}  // namespace qdhj
