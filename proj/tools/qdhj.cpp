// Command-line front end. Every command prints deterministic JSON (CSV for
// repcounts) to stdout or --out. Exit codes: 0 success/verified, 1 nothing
// found / verification failed, 2 usage or input errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdhj/io.hpp"

namespace {

using namespace qdhj;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

void emit_json(const json& j, const std::string& out_path) {
    emit(j.dump(2) + "\n", out_path);
}

IndexSet parse_index_list(const std::string& text, int n, const char* flag) {
    IndexSet s(n, {});
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(flag) + ": expected comma-separated integers");
        }
        if (used != item.size())
            throw std::runtime_error(std::string(flag) + ": expected comma-separated integers");
        if (v < 1 || v > n)
            throw std::runtime_error(std::string(flag) + ": index out of [1," +
                                     std::to_string(n) + "]");
        s.add(v);
    }
    return s;
}

std::pair<int, int> parse_size_range(const std::string& text, int n) {
    const auto dots = text.find("..");
    int lo = 0, hi = 0;
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::runtime_error("--gamma-size: expected SIZE or LO..HI");
    }
    if (lo < 1 || hi > n || lo > hi)
        throw std::runtime_error("--gamma-size: range must satisfy 1 <= lo <= hi <= n");
    return {lo, hi};
}

struct SetSource {
    std::string kind = "spiral";  // spiral | even | full | random | file
    std::uint64_t size = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::string path;
};

void add_set_flags(CLI::App* cmd, SetSource& src) {
    cmd->add_option("--set", src.kind, "point-set source: spiral|even|full|random|file")
        ->check(CLI::IsMember({"spiral", "even", "full", "random", "file"}));
    cmd->add_option("--size", src.size, "member count for --set random");
    cmd->add_option("--delta", src.delta, "density for --set random (alternative to --size)");
    cmd->add_option("--seed", src.seed, "seed for --set random and sampled searches");
    cmd->add_option("--in", src.path, "grid-block file for --set file");
}

PointSet load_set(const SetSource& src, int& n) {
    if (src.kind == "file") {
        if (src.path.empty()) throw std::runtime_error("--set file requires --in");
        std::vector<GridVector> members = parse_grid_blocks(read_file(src.path));
        if (members.empty()) throw std::runtime_error("set file holds no grids");
        const int file_n = members.front().side();
        if (n != 0 && n != file_n)
            throw std::runtime_error("--n disagrees with the grid size in the set file");
        n = file_n;
        return PointSet(n, std::move(members));
    }
    if (n <= 0) throw std::runtime_error("--n is required for built-in set sources");
    if (src.kind == "spiral") {
        if (n > 4) throw std::runtime_error("--set spiral enumerates the span; needs n <= 4");
        return PointSet(n, span_vector(spiral_basis(n)));
    }
    if (src.kind == "even") {
        if (n > 4) throw std::runtime_error("--set even enumerates the universe; needs n <= 4");
        std::vector<GridVector> members;
        const std::uint64_t total = std::uint64_t{1} << (n * n);
        for (std::uint64_t v = 0; v < total; ++v) {
            GridVector g = GridVector::from_value64(n, v);
            if (even_weight_membership(g)) members.push_back(std::move(g));
        }
        return PointSet(n, std::move(members));
    }
    if (src.kind == "full") return PointSet::universe(n);
    // random
    std::uint64_t count = src.size;
    if (count == 0 && src.delta > 0.0) {
        const long double universe = std::pow(2.0L, static_cast<long double>(n) * n);
        count = static_cast<std::uint64_t>(std::ceil(src.delta * double(universe)));
    }
    if (count == 0) throw std::runtime_error("--set random requires --size or --delta");
    return random_point_set(n, count, src.seed);
}

std::vector<KString> load_kstrings(int k, const std::string& path) {
    const std::string text = read_file(path);
    std::vector<KString> out;
    std::string block;
    std::istringstream in(text);
    std::string line;
    auto flush = [&] {
        if (block.empty()) return;
        out.push_back(parse_kstring(k, block));
        if (out.size() > 1 && out.back().size() != out.front().size())
            throw std::runtime_error("mixed string sizes in " + path);
        block.clear();
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            flush();
        } else {
            block += line;
            block.push_back('\n');
        }
    }
    flush();
    if (out.empty()) throw std::runtime_error("no strings in " + path);
    return out;
}

CellSet resolve_cells(int block_m, const std::string& cells_csv, int N) {
    if (block_m >= 0 && !cells_csv.empty())
        throw std::runtime_error("--block and --cells are mutually exclusive");
    if (block_m >= 0) return block_cells(N, block_m);
    CellSet cells;
    std::stringstream in(cells_csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const long v = std::stol(item);
        if (v < 0 || v >= long(N) * N) throw std::runtime_error("--cells: index out of domain");
        cells.push_back(static_cast<std::size_t>(v));
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

int side_of(const std::vector<KString>& strings) {
    const auto side =
        static_cast<int>(std::llround(std::sqrt(double(strings.front().size()))));
    if (std::size_t(side) * side != strings.front().size())
        throw std::runtime_error("string domain is not a square grid");
    return side;
}

// ---- commands ----

int run_subspace(int n, const std::string& out, const std::string& basis_out) {
    SubspaceHandle handle = spiral_basis(n);
    bool parity_ok = true;
    for (const GridVector& e : handle.basis().elements)
        for (const GridVector& f : handle.parity_functionals())
            if ((e & f).popcount() % 2 != 0) parity_ok = false;
    // dual-route spot check: both membership routes must agree on the basis
    for (const GridVector& e : handle.basis().elements)
        if (!handle.contains(e) || !handle.contains_by_row_reduce(e)) parity_ok = false;

    mpz_class cardinality;
    mpz_ui_pow_ui(cardinality.get_mpz_t(), 2, static_cast<unsigned long>(handle.rank()));

    json j;
    j["n"] = n;
    j["rank"] = handle.rank();
    j["cells"] = n * n;
    j["corank"] = n * n - handle.rank();
    j["cardinality"] = cardinality.get_str();
    j["membership_mode"] = to_string(handle.membership_mode());
    j["parity_ok"] = parity_ok;
    j["basis_text"] = basis_to_text(handle.basis());
    emit_json(j, out);
    if (!basis_out.empty()) emit(basis_to_text(handle.basis()), basis_out);
    return parity_ok ? 0 : 1;
}

int run_classify(const std::string& in, const std::string& out) {
    if (in.empty()) throw std::runtime_error("classify requires --in");
    const GridVector v = parse_grid(read_file(in));
    const Shape shape = classify_shape(v);
    json j;
    j["n"] = v.side();
    j["kind"] = to_string(shape.kind);
    j["gamma1"] = index_set_to_json(shape.gamma1);
    j["gamma2"] = index_set_to_json(shape.gamma2);
    j["popcount"] = v.popcount();
    emit_json(j, out);
    return 0;
}

int run_rect_pair(int n, const SetSource& src, const std::string& gamma_csv,
                  const std::string& out) {
    PointSet S = load_set(src, n);
    const IndexSet gamma1 = parse_index_list(gamma_csv, n, "--gamma");
    const std::optional<Certificate> cert = find_rect_pair(S, gamma1);
    if (!cert) {
        std::cerr << "no rectangular pair for the given set and gamma\n";
        return 1;
    }
    if (!verify_certificate(*cert, S)) throw std::runtime_error("internal: certificate failed");
    emit_json(certificate_to_json(*cert), out);
    return 0;
}

int run_pair_scan(bool lines_only, int n, const SetSource& src, std::size_t limit,
                  const std::string& mode, std::uint64_t budget, int threads,
                  const std::string& out) {
    PointSet S = load_set(src, n);
    SearchOptions opts;
    opts.seed = src.seed;
    opts.budget = budget;
    opts.threads = threads;
    if (mode == "exhaustive")
        opts.mode = SearchMode::Exhaustive;
    else if (mode == "sampled")
        opts.mode = SearchMode::Sampled;
    else
        opts.mode = SearchMode::Auto;
    const SearchResult result =
        lines_only ? find_line(S, limit, opts) : find_square_pairs(S, limit, opts);
    json j;
    j["n"] = n;
    j["count"] = result.certificates.size();
    j["complete"] = result.complete;
    j["mode"] = result.mode;
    j["seed"] = result.seed;
    json certs = json::array();
    for (const Certificate& c : result.certificates) certs.push_back(certificate_to_json(c));
    j["certificates"] = certs;
    emit_json(j, out);
    return result.certificates.empty() ? 1 : 0;
}

int run_identities(int n, const std::string& size_range, const std::string& out) {
    const auto [lo, hi] = parse_size_range(size_range, n);
    json sizes = json::array();
    bool all_ok = true;
    for (int s = lo; s <= hi; ++s) {
        std::uint64_t checked = 0, zero = 0, residue_ok = 0;
        // every gamma of size s
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
            if (std::popcount(bits) != s) continue;
            const IndexSet gamma = IndexSet::from_mask(n, bits);
            const GridVector sum = powerset_square_sum(gamma, n);
            ++checked;
            if (sum.is_zero()) ++zero;
            GridVector expect(n);
            if (s == 1) {
                const int i = gamma.members()[0];
                expect.set(i, i, true);
            } else if (s == 2) {
                const int i = gamma.members()[0];
                const int j = gamma.members()[1];
                expect.set(i, j, true);
                expect.set(j, i, true);
            }
            if (sum == expect) ++residue_ok;
        }
        const CellMultiplicities mult = cell_multiplicities(IndexSet::from_mask(
            n, (std::uint64_t{1} << s) - 1));
        json row;
        row["size"] = s;
        row["checked"] = checked;
        row["zero"] = zero;
        row["residue_ok"] = residue_ok;
        row["diag_multiplicity"] = mult.diagonal;
        row["offdiag_multiplicity"] = mult.off_diagonal;
        sizes.push_back(row);
        if (residue_ok != checked) all_ok = false;
        if (s >= 3 && zero != checked) all_ok = false;
    }

    // shifted sums: every gamma1 of an in-range size, every disjoint gamma2
    std::uint64_t shifted_checked = 0, shifted_zero = 0;
    for (std::uint64_t g1 = 1; g1 < (std::uint64_t{1} << n); ++g1) {
        const int s = std::popcount(g1);
        if (s < lo || s > hi || s < 3) continue;
        const std::uint64_t rest = ((std::uint64_t{1} << n) - 1) & ~g1;
        for (std::uint64_t g2 = rest;; g2 = (g2 - 1) & rest) {
            const ShiftedSum sum = shifted_powerset_sum(IndexSet::from_mask(n, g1),
                                                        IndexSet::from_mask(n, g2), n);
            ++shifted_checked;
            if (sum.sum.is_zero()) ++shifted_zero;
            if (g2 == 0) break;
        }
    }
    if (shifted_zero != shifted_checked) all_ok = false;

    json j;
    j["n"] = n;
    j["gamma_sizes"] = size_range;
    j["sizes"] = sizes;
    j["shifted_checked"] = shifted_checked;
    j["shifted_zero"] = shifted_zero;
    j["all_ok"] = all_ok;
    emit_json(j, out);
    return all_ok ? 0 : 1;
}

int run_repcounts(int n, const std::string& in, int dim, std::uint64_t seed, int threads,
                  const std::string& out) {
    std::vector<GridVector> elements;
    if (!in.empty()) {
        elements = parse_grid_blocks(read_file(in));
    } else {
        if (n <= 0 || dim <= 0)
            throw std::runtime_error("repcounts needs --in, or --n with --dim");
        if (n > 7) throw std::runtime_error("repcounts random subspace needs n <= 7");
        if (dim > kSpanEnumerationMaxRank || dim > n * n)
            throw std::runtime_error("repcounts: --dim too large");
        std::mt19937_64 rng(seed);
        std::vector<GridVector> chosen;
        const std::uint64_t universe = std::uint64_t{1} << (n * n);
        while (static_cast<int>(chosen.size()) < dim) {
            GridVector cand = GridVector::from_value64(n, detail::bounded(rng, universe));
            if (cand.is_zero()) continue;
            chosen.push_back(cand);
            if (row_reduce(chosen).rank() != static_cast<int>(chosen.size()))
                chosen.pop_back();
        }
        for (const GridVector& v : span_vector(row_reduce(chosen)))
            if (!v.is_zero()) elements.push_back(v);
    }
    const RepCountTable table = representation_counts(elements, threads);
    emit(repcounts_to_csv(table), out);
    return table.all_checks() ? 0 : 1;
}

int run_mdqhj_decompose(int k, const std::string& in, int block_m, const std::string& cells_csv,
                        int threads, const std::string& out) {
    const std::vector<KString> E = load_kstrings(k, in);
    const int N = side_of(E);
    const CellSet P = resolve_cells(block_m, cells_csv, N);
    const SliceTable table = slice_decompose(E, P, E.front().size(), k, threads);
    emit_json(slice_table_to_json(table), out);
    return 0;
}

int run_mdqhj_good(int k, const std::string& in, int block_m, const std::string& cells_csv,
                   double eps, int threads, const std::string& out) {
    const std::vector<KString> E = load_kstrings(k, in);
    const int N = side_of(E);
    const CellSet P = resolve_cells(block_m, cells_csv, N);
    const SliceTable table = slice_decompose(E, P, E.front().size(), k, threads);
    const std::vector<KString> good = good_strings(table, eps);
    const long double q_total =
        std::pow(static_cast<long double>(k), static_cast<long double>(table.q_coords.size()));
    const long double set_density =
        static_cast<long double>(table.total) /
        std::pow(static_cast<long double>(k), static_cast<long double>(table.domain_size));

    json j;
    j["k"] = k;
    j["eps"] = eps;
    j["set_density"] = static_cast<double>(set_density);
    j["good_count"] = good.size();
    j["q_strings"] = static_cast<std::uint64_t>(q_total + 0.5L);
    j["good_fraction"] = static_cast<double>(good.size() / q_total);
    j["lemma_applicable"] = set_density >= static_cast<long double>(eps);
    j["lemma_holds"] =
        static_cast<long double>(good.size()) >= static_cast<long double>(eps) / 2.0L * q_total;
    json arr = json::array();
    for (const KString& zq : good) arr.push_back(flat_kstring(zq));
    j["good"] = arr;
    emit_json(j, out);
    return 0;
}

int run_mdqhj_compose(const std::string& sigma_path, const std::string& lambda_path,
                      int block_m, const std::string& cells_csv, const std::string& out) {
    const CombSubspaceSpec sigma =
        subspace_spec_from_json(json::parse(read_file(sigma_path)));
    const CombSubspaceSpec lambda =
        subspace_spec_from_json(json::parse(read_file(lambda_path)));
    const CellSet P = resolve_cells(block_m, cells_csv, sigma.N);
    const CombSubspaceSpec product = subspace_product(sigma, lambda, P);
    emit_json(subspace_spec_to_json(product), out);
    return 0;
}

int run_mdqhj_verify(const std::string& spec_path, int k, const std::string& in, int threads,
                     const std::string& out) {
    const CombSubspaceSpec spec = subspace_spec_from_json(json::parse(read_file(spec_path)));
    if (spec.k != k)
        throw std::runtime_error("--k disagrees with the alphabet in the spec file");
    const std::vector<KString> E = load_kstrings(k, in);
    const bool ok = verify_subspace_in_set(E, spec, threads);
    json j;
    j["verified"] = ok;
    j["dimension"] = spec.dimension();
    j["instantiations"] = static_cast<std::uint64_t>(
        std::pow(static_cast<long double>(spec.k), static_cast<long double>(spec.dimension())) +
        0.5L);
    emit_json(j, out);
    return ok ? 0 : 1;
}

int run_extremal(int n, const std::string& family, const std::string& mode, std::uint64_t seed,
                 const std::string& warm, std::uint64_t budget, int threads,
                 const std::string& out) {
    const CayleySpec spec = family == "rect" ? CayleySpec::rect_shapes(n)
                                             : CayleySpec::square_shapes(n);
    ExtremalResult result;
    if (mode == "exact") {
        ExtremalOptions opts;
        opts.node_budget = budget;
        opts.threads = threads;
        result = max_avoiding_exact(spec, opts);
    } else {
        std::vector<GridVector> warm_set;
        if (warm == "spiral") warm_set = span_vector(spiral_basis(n));
        result = avoiding_greedy(spec, seed, warm_set);
    }
    emit_json(extremal_result_to_json(result), out);
    return 0;
}

int run_verify(const std::string& cert_path, int n, const SetSource& src,
               const std::string& out) {
    const Certificate cert = certificate_from_json(json::parse(read_file(cert_path)));
    PointSet S = load_set(src, n);
    const bool ok = verify_certificate(cert, S);
    json j;
    j["verified"] = ok;
    j["kind"] = to_string(cert.kind);
    emit_json(j, out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grid-difference toolkit: subspaces, pair searches, parity identities,"
                 " slice decompositions, extremal avoiding sets"};
    app.require_subcommand(1);

    int default_threads = 1;
    if (const char* env = std::getenv("QDHJ_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) default_threads = parsed;
    }

    int n = 0, k = 2, dim = 0, block_m = -1;
    std::uint64_t budget = 1u << 20;
    std::uint64_t extremal_budget = 20'000'000;
    std::size_t limit = 64;
    int threads = default_threads;
    double eps = 0.5;
    std::string out, basis_out, gamma_csv, size_range = "1..0", mode = "auto";
    std::string cells_csv, sigma_path, lambda_path, spec_path, cert_path;
    std::string extremal_family = "square", extremal_mode = "exact", warm = "none";
    std::string kstrings_in;
    SetSource src;

    CLI::App* c_subspace = app.add_subcommand("subspace", "spiral basis and parity report");
    c_subspace->add_option("--n", n, "grid side length")->required();
    c_subspace->add_option("--out", out, "write JSON here instead of stdout");
    c_subspace->add_option("--basis-out", basis_out, "also write the basis as grid blocks");

    CLI::App* c_classify = app.add_subcommand("classify", "shape of a grid-text difference");
    c_classify->add_option("--in", src.path, "grid text file")->required();
    c_classify->add_option("--out", out, "write JSON here instead of stdout");

    CLI::App* c_rect = app.add_subcommand("rect-pair", "pigeonhole rectangular-pair finder");
    c_rect->add_option("--n", n, "grid side length");
    c_rect->add_option("--gamma", gamma_csv, "row set, e.g. 1,3")->required();
    add_set_flags(c_rect, src);
    c_rect->add_option("--out", out, "write JSON here instead of stdout");

    CLI::App* c_squares = app.add_subcommand("square-pairs", "pairs differing by a square");
    CLI::App* c_lines = app.add_subcommand("lines", "oriented square pairs (lines)");
    for (CLI::App* cmd : {c_squares, c_lines}) {
        cmd->add_option("--n", n, "grid side length");
        add_set_flags(cmd, src);
        cmd->add_option("--limit", limit, "max certificates to report");
        cmd->add_option("--mode", mode, "auto|exhaustive|sampled")
            ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
        cmd->add_option("--budget", budget, "probe cap in sampled mode");
        cmd->add_option("--threads", threads, "worker threads");
        cmd->add_option("--out", out, "write JSON here instead of stdout");
    }

    CLI::App* c_ident = app.add_subcommand("identities", "power-set square-sum checks");
    c_ident->add_option("--n", n, "grid side length")->required();
    c_ident->add_option("--gamma-size", size_range, "size or LO..HI range of |gamma|");
    c_ident->add_option("--out", out, "write JSON here instead of stdout");

    CLI::App* c_rep = app.add_subcommand("repcounts", "pair representation-count table");
    c_rep->add_option("--n", n, "grid side length (random-subspace source)");
    c_rep->add_option("--dim", dim, "random subspace dimension");
    c_rep->add_option("--seed", src.seed, "seed for the random subspace");
    c_rep->add_option("--in", src.path, "grid-block file of elements");
    c_rep->add_option("--threads", threads, "worker threads");
    c_rep->add_option("--out", out, "write CSV here instead of stdout");

    CLI::App* c_mdqhj = app.add_subcommand("mdqhj", "slice/good/compose/verify machinery");
    c_mdqhj->require_subcommand(1);
    CLI::App* c_dec = c_mdqhj->add_subcommand("decompose", "slice table over a bipartition");
    CLI::App* c_good = c_mdqhj->add_subcommand("good", "slices of density at least eps/2");
    CLI::App* c_comp = c_mdqhj->add_subcommand("compose", "product of two subspace specs");
    CLI::App* c_ver = c_mdqhj->add_subcommand("verify", "check a spec lies inside a set");
    for (CLI::App* cmd : {c_dec, c_good}) {
        cmd->add_option("--k", k, "alphabet size")->required();
        cmd->add_option("--in", kstrings_in, "k-string blocks file")->required();
        cmd->add_option("--block", block_m, "P = upper-left m x m block");
        cmd->add_option("--cells", cells_csv, "P as comma-separated 0-based cell indices");
        cmd->add_option("--threads", threads, "worker threads");
        cmd->add_option("--out", out, "write JSON here instead of stdout");
    }
    c_good->add_option("--eps", eps, "density parameter in (0,1]")->required();
    c_comp->add_option("--sigma", sigma_path, "left spec JSON (over --cells/--block)")
        ->required();
    c_comp->add_option("--lambda", lambda_path, "right spec JSON")->required();
    c_comp->add_option("--block", block_m, "sigma's cells: upper-left m x m block");
    c_comp->add_option("--cells", cells_csv, "sigma's cells, comma-separated");
    c_comp->add_option("--out", out, "write JSON here instead of stdout");
    c_ver->add_option("--spec", spec_path, "subspace spec JSON")->required();
    c_ver->add_option("--k", k, "alphabet size")->required();
    c_ver->add_option("--in", kstrings_in, "k-string blocks file")->required();
    c_ver->add_option("--threads", threads, "worker threads");
    c_ver->add_option("--out", out, "write JSON here instead of stdout");

    CLI::App* c_ext = app.add_subcommand("extremal", "avoiding-set search");
    c_ext->add_option("--n", n, "grid side length")->required();
    c_ext->add_option("--family", extremal_family, "square|rect connection family")
        ->check(CLI::IsMember({"square", "rect"}));
    c_ext->add_option("--mode", extremal_mode, "exact|greedy")
        ->check(CLI::IsMember({"exact", "greedy"}));
    c_ext->add_option("--seed", src.seed, "greedy visiting order seed");
    c_ext->add_option("--warm", warm, "greedy warm start: none|spiral")
        ->check(CLI::IsMember({"none", "spiral"}));
    c_ext->add_option("--budget", extremal_budget, "branch-and-bound node budget");
    c_ext->add_option("--threads", threads, "worker threads");
    c_ext->add_option("--out", out, "write JSON here instead of stdout");

    CLI::App* c_verify = app.add_subcommand("verify", "re-verify a certificate against a set");
    c_verify->add_option("--cert", cert_path, "certificate JSON file")->required();
    c_verify->add_option("--n", n, "grid side length");
    add_set_flags(c_verify, src);
    c_verify->add_option("--out", out, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_subspace->parsed()) return run_subspace(n, out, basis_out);
        if (c_classify->parsed()) return run_classify(src.path, out);
        if (c_rect->parsed()) return run_rect_pair(n, src, gamma_csv, out);
        if (c_squares->parsed())
            return run_pair_scan(false, n, src, limit, mode, budget, threads, out);
        if (c_lines->parsed())
            return run_pair_scan(true, n, src, limit, mode, budget, threads, out);
        if (c_ident->parsed()) {
            if (size_range == "1..0") size_range = "1.." + std::to_string(n);
            return run_identities(n, size_range, out);
        }
        if (c_rep->parsed()) return run_repcounts(n, src.path, dim, src.seed, threads, out);
        if (c_dec->parsed())
            return run_mdqhj_decompose(k, kstrings_in, block_m, cells_csv, threads, out);
        if (c_good->parsed())
            return run_mdqhj_good(k, kstrings_in, block_m, cells_csv, eps, threads, out);
        if (c_comp->parsed())
            return run_mdqhj_compose(sigma_path, lambda_path, block_m, cells_csv, out);
        if (c_ver->parsed()) return run_mdqhj_verify(spec_path, k, kstrings_in, threads, out);
        if (c_ext->parsed())
            return run_extremal(n, extremal_family, extremal_mode, src.seed, warm,
                                extremal_budget, threads, out);
        if (c_verify->parsed()) return run_verify(cert_path, n, src, out);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
