#include "kcollapse/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "kcollapse/bounds.hpp"
#include "kcollapse/constructions.hpp"
#include "kcollapse/errors.hpp"
#include "kcollapse/family.hpp"
#include "kcollapse/graphtools.hpp"
#include "kcollapse/json_io.hpp"
#include "kcollapse/matrixform.hpp"
#include "kcollapse/simplexopt.hpp"

namespace kcollapse {

namespace {

struct Options
{
    int k = 0;
    int d = 0;
    int p = 0;
    std::string family;
    std::string matrix;
    std::string kind;
    std::string params;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t budget = 0;
    std::string out;
    std::string format;
    int kmin = 2;
    int kmax = 9;
    bool all = false;
    bool best = false;

    CLI::App* cmd = nullptr;
    bool given(const char* flag) const { return cmd->count(flag) > 0; }
};

class Params
{
public:
    Params(const std::string& text, std::set<std::string> allowed)
    {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) {
                continue;
            }
            auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw UsageError("parameter '" + item + "' must look like name=value");
            }
            std::string key = item.substr(0, eq);
            if (!allowed.count(key)) {
                std::string names;
                for (const auto& a : allowed) {
                    names += (names.empty() ? "" : ", ") + a;
                }
                throw UsageError("unknown parameter '" + key + "' (allowed: " + names + ")");
            }
            values_[key] = item.substr(eq + 1);
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    long integer(const std::string& key) const
    {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw UsageError("missing parameter '" + key + "'");
        }
        try {
            std::size_t used = 0;
            long v = std::stol(it->second, &used);
            if (used == it->second.size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
        throw UsageError("parameter '" + key + "' must be an integer");
    }

    long integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

    Rational rational(const std::string& key) const
    {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw UsageError("missing parameter '" + key + "'");
        }
        return parse_rational(it->second);
    }

    std::string text(const std::string& key, const std::string& fallback) const
    {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

private:
    std::map<std::string, std::string> values_;
};

void require(const Options& o, const char* flag)
{
    if (!o.given(flag)) {
        throw UsageError(std::string("missing required flag ") + flag);
    }
}

std::string format_of(const Options& o, const std::string& fallback)
{
    return o.format.empty() ? fallback : o.format;
}

void emit(const Options& o, std::ostream& out, const std::string& text)
{
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out);
    if (!file) {
        throw UsageError("cannot write '" + o.out + "'");
    }
    file << text;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string csv_line(const std::vector<std::string>& fields)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        line += (i ? "," : "") + csv_field(fields[i]);
    }
    return line + "\n";
}

std::string opt_text(const std::optional<double>& v)
{
    if (!v) {
        return "";
    }
    std::ostringstream s;
    s.precision(17);
    s << *v;
    return s.str();
}

ScanOptions scan_options(const Options& o)
{
    ScanOptions scan;
    if (o.given("--budget")) {
        scan.budget = o.budget;
    }
    if (o.given("--seed")) {
        scan.seed = o.seed;
    }
    scan.threads = std::max(1u, o.threads);
    return scan;
}

template <Scalar T>
int verify_family(const VectorFamily<T>& family, const Options& o, std::ostream& out)
{
    const std::string kind = o.kind.empty() ? "collapsing" : o.kind;
    std::vector<ConditionReport<T>> reports;
    if (kind == "collapsing" || kind == "all") {
        require(o, "--k");
        reports.push_back(check_k_collapsing(family, o.k, scan_options(o)));
    }
    if (kind == "full") {
        reports.push_back(check_full_collapsing(family));
    }
    if (kind == "strong" || kind == "all") {
        reports.push_back(check_strong_balancing(family));
    }
    if (kind == "weak" || kind == "all") {
        reports.push_back(check_weak_balancing(family));
    }
    Json j;
    j["m"] = family.size();
    j["dim"] = family.space().dim();
    j["arithmetic"] = is_exact_v<T> ? "exact" : "float";
    bool holds = true;
    Json list = Json::array();
    for (const auto& r : reports) {
        holds = holds && r.holds;
        list.push_back(report_to_json(r));
    }
    j["holds"] = holds;
    j["reports"] = std::move(list);
    emit(o, out, dump(j));
    return holds ? kExitOk : kExitFails;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    require(o, "--family");
    Json j = load_json_file(o.family);
    if (family_is_float(j)) {
        return verify_family(family_from_json<double>(j), o, out);
    }
    return verify_family(family_from_json<Rational>(j), o, out);
}

int cmd_bound(const Options& o, std::ostream& out)
{
    require(o, "--k");
    require(o, "--d");
    if (o.all && o.best) {
        throw UsageError("--all and --best are mutually exclusive");
    }
    const std::string format = format_of(o, "json");
    auto best = best_bounds(o.k, o.d);
    if (o.all) {
        auto bounds = all_bounds(o.k, o.d);
        if (format == "csv") {
            std::string text = csv_line({"name", "kind", "quantity", "applicable", "raw", "value", "asymptotic_only",
                                         "needs_large_d"});
            for (const auto& b : bounds) {
                text += csv_line({b.name, bound_kind_name(b.kind), quantity_name(b.quantity),
                                  b.applicable ? "true" : "false", opt_text(b.raw),
                                  b.value ? b.value->get_str() : "", b.asymptotic_only ? "true" : "false",
                                  b.needs_large_d ? "true" : "false"});
            }
            emit(o, out, text);
            return kExitOk;
        }
        Json j;
        j["k"] = o.k;
        j["d"] = o.d;
        Json list = Json::array();
        for (const auto& b : bounds) {
            list.push_back(bound_to_json(b));
        }
        j["bounds"] = std::move(list);
        j["best"] = best_bounds_to_json(best);
        emit(o, out, dump(j));
        return kExitOk;
    }
    if (format == "csv") {
        std::string text = csv_line({"k", "d", "best_lower", "lower_source", "best_upper", "upper_source", "exact"});
        text += csv_line({std::to_string(o.k), std::to_string(o.d), best.best_lower.get_str(), best.lower_source,
                          best.best_upper.get_str(), best.upper_source, best.exact ? best.exact->get_str() : ""});
        emit(o, out, text);
        return kExitOk;
    }
    emit(o, out, dump(best_bounds_to_json(best)));
    return kExitOk;
}

int cmd_table1(const Options& o, std::ostream& out)
{
    auto rows = table1(o.kmin, o.kmax);
    if (format_of(o, "json") == "csv") {
        std::string text = csv_line({"k", "gamma", "rank_base", "bm_base", "greedy_base"});
        for (const auto& r : rows) {
            text += csv_line({std::to_string(r.k), r.gamma_text, r.rank_base, r.bm_base, r.greedy_base});
        }
        emit(o, out, text);
        return kExitOk;
    }
    Json list = Json::array();
    for (const auto& r : rows) {
        list.push_back(table1_row_to_json(r));
    }
    emit(o, out, dump(list));
    return kExitOk;
}

Json almost_orthogonal_family(const AlmostOrthogonalSet& set)
{
    Json j;
    if (set.exact()) {
        j = family_to_json(VectorFamily<Rational>(NormSpace::lp(set.dim, 2.0), set.vectors));
        j["scale_sq"] = to_json(set.scale_sq);
    } else {
        j = family_to_json(VectorFamily<double>(NormSpace::lp(set.dim, 2.0), set.float_vectors));
    }
    j["gram_range"] = Json::array({to_json(set.gram_lo), to_json(set.gram_hi)});
    return j;
}

AlmostOrthogonalSet greedy_from(const Params& ps, const Options& o)
{
    require(o, "--seed");
    std::optional<std::size_t> cap;
    if (ps.has("max")) {
        cap = static_cast<std::size_t>(ps.integer("max"));
    }
    double delta = ps.rational("delta").get_d();
    return greedy_unit_vectors(static_cast<std::size_t>(ps.integer("d")), delta, o.seed,
                               static_cast<std::uint64_t>(ps.integer("trials", kDefaultMaxTrials)), cap);
}

int cmd_construct(const Options& o, std::ostream& out)
{
    require(o, "--kind");
    const std::string& kind = o.kind;
    Json j;
    if (kind == "cross") {
        Params ps(o.params, {"d"});
        j = family_to_json(linf_cross(static_cast<std::size_t>(ps.integer("d"))));
    } else if (kind == "pk") {
        Params ps(o.params, {"d", "k"});
        auto d = static_cast<std::size_t>(ps.integer("d"));
        auto cross = linf_cross(d);
        j = family_to_json(
            VectorFamily<Rational>(pk_polytope_norm(d, static_cast<std::size_t>(ps.integer("k"))), cross.vectors()));
    } else if (kind == "lift") {
        Params ps(o.params, {"source", "q", "s", "k", "d", "delta", "max", "trials"});
        const std::string source = ps.text("source", "poly");
        AlmostOrthogonalSet set;
        if (source == "poly") {
            set = polynomial_vectors(static_cast<unsigned>(ps.integer("q")), static_cast<unsigned>(ps.integer("s", 1)));
        } else if (source == "greedy") {
            set = greedy_from(ps, o);
        } else {
            throw UsageError("lift source must be poly or greedy");
        }
        auto lifted = lift_almost_orthogonal(set, static_cast<int>(ps.integer("k")));
        j = family_to_json(lifted.family);
        Json fs = Json::array();
        for (const auto& y : lifted.functionals) {
            Json row = Json::array();
            for (const auto& x : y) {
                row.push_back(to_json(x));
            }
            fs.push_back(std::move(row));
        }
        j["dual_functionals"] = std::move(fs);
    } else if (kind == "greedy") {
        Params ps(o.params, {"d", "delta", "max", "trials"});
        j = almost_orthogonal_family(greedy_from(ps, o));
    } else if (kind == "poly") {
        Params ps(o.params, {"q", "s"});
        j = almost_orthogonal_family(
            polynomial_vectors(static_cast<unsigned>(ps.integer("q")), static_cast<unsigned>(ps.integer("s"))));
    } else if (kind == "fixtureX") {
        Params ps(o.params, {"d", "eps"});
        j = family_to_json(fixture_X(static_cast<std::size_t>(ps.integer("d")), ps.rational("eps")));
    } else if (kind == "fixtureY") {
        Params ps(o.params, {"d"});
        j = family_to_json(fixture_Y(static_cast<std::size_t>(ps.integer("d"))));
    } else if (kind == "signs") {
        Params ps(o.params, {"d"});
        j = family_to_json(linf_sign_vectors(static_cast<std::size_t>(ps.integer("d"))));
    } else {
        throw UsageError("unknown construction '" + kind +
                         "' (expected cross, pk, lift, greedy, poly, fixtureX, fixtureY or signs)");
    }
    emit(o, out, dump(j));
    return kExitOk;
}

template <Scalar T>
Json matrix_report(const Matrix<T>& a, const Options& o, bool& holds)
{
    Json j;
    j["certificate"] = certificate_to_json(rank_certificate(a));
    if (o.given("--k")) {
        bool rows = check_rows(a, o.k);
        holds = holds && rows;
        j["rows_k_collapsing"] = rows;
    }
    if (o.given("--p")) {
        if (o.p < 1) {
            throw UsageError("--p must be positive");
        }
        auto h = hadamard_power(a, static_cast<unsigned>(o.p));
        const std::size_t rank = matrix_rank(a);
        Json hj;
        hj["p"] = o.p;
        hj["rank"] = matrix_rank(h);
        hj["bound"] = hadamard_rank_bound(rank, static_cast<unsigned>(o.p)).get_str();
        j["hadamard"] = std::move(hj);
    }
    return j;
}

template <Scalar T>
int gram_of_family(const VectorFamily<T>& family, const Options& o, std::ostream& out)
{
    auto a = gram_from_family(family);
    bool holds = true;
    Json j;
    j["matrix"] = matrix_to_json(a);
    Json rep = matrix_report(a, o, holds);
    for (auto& [key, value] : rep.items()) {
        j[key] = value;
    }
    emit(o, out, dump(j));
    return holds ? kExitOk : kExitFails;
}

template <Scalar T>
int gram_of_matrix(const Matrix<T>& a, const Options& o, std::ostream& out)
{
    bool holds = true;
    Json j = matrix_report(a, o, holds);
    if (o.given("--d")) {
        auto normalized = row_normalize(a);
        j["normalized"] = matrix_to_json(normalized);
        j["family"] = family_to_json(family_from_matrix(normalized, static_cast<std::size_t>(o.d)));
    }
    emit(o, out, dump(j));
    return holds ? kExitOk : kExitFails;
}

int cmd_gram(const Options& o, std::ostream& out)
{
    if (o.given("--family") == o.given("--matrix")) {
        throw UsageError("gram needs exactly one of --family or --matrix");
    }
    if (o.given("--family")) {
        Json j = load_json_file(o.family);
        if (family_is_float(j)) {
            return gram_of_family(family_from_json<double>(j), o, out);
        }
        return gram_of_family(family_from_json<Rational>(j), o, out);
    }
    Json j = load_json_file(o.matrix);
    if (matrix_is_float(j)) {
        return gram_of_matrix(matrix_from_json<double>(j), o, out);
    }
    return gram_of_matrix(matrix_from_json<Rational>(j), o, out);
}

int cmd_oracle(const Options& o, std::ostream& out)
{
    Params ps(o.params, {"mmin", "mmax"});
    const int mmin = static_cast<int>(ps.integer("mmin", 4));
    const int mmax = static_cast<int>(ps.integer("mmax", 12));
    const std::string kind = o.kind.empty() ? "general" : o.kind;
    if (kind != "general" && kind != "balanced") {
        throw UsageError("oracle kind must be general or balanced");
    }
    const bool balanced = kind == "balanced";
    if (mmin < 4 || mmax < mmin || mmax > kOracleMaxM) {
        throw UsageError("need 4 <= mmin <= mmax <= " + std::to_string(kOracleMaxM));
    }
    std::vector<int> powers;
    if (balanced) {
        if (o.given("--p") && o.p != 2) {
            throw UsageError("the balanced oracle is for p = 2");
        }
        powers = {2};
    } else if (o.given("--p")) {
        powers = {o.p};
    } else {
        powers = {1, 2, 3};
    }
    struct Row
    {
        int m, k, p;
        OptResult closed, oracle;
        bool agrees;
    };
    std::vector<Row> rows;
    for (int m = mmin; m <= mmax; ++m) {
        for (int p : powers) {
            for (int k = 2; k <= m - 2; ++k) {
                if (!balanced && p >= 2 && 2 * k > m + 1) {
                    continue;
                }
                OptResult closed = balanced ? max_sq_balanced(m, k) : max_pow_general(m, k, p);
                OptResult oracle = vertex_oracle(m, k, p, balanced);
                bool agrees = closed.exactness == Exactness::Exact ? closed.value == oracle.value
                                                                   : oracle.value <= closed.value;
                rows.push_back(Row{m, k, p, std::move(closed), std::move(oracle), agrees});
            }
        }
    }
    bool all = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.agrees; });
    if (format_of(o, "csv") == "csv") {
        std::string text = csv_line({"m", "k", "p", "closed_form", "oracle", "exactness"});
        for (const auto& r : rows) {
            text += csv_line({std::to_string(r.m), std::to_string(r.k), std::to_string(r.p),
                              format_rational(r.closed.value), format_rational(r.oracle.value),
                              exactness_name(r.closed.exactness)});
        }
        emit(o, out, text);
    } else {
        Json list = Json::array();
        for (const auto& r : rows) {
            Json j;
            j["m"] = r.m;
            j["k"] = r.k;
            j["p"] = r.p;
            j["closed_form"] = opt_result_to_json(r.closed);
            j["oracle"] = opt_result_to_json(r.oracle);
            j["agrees"] = r.agrees;
            list.push_back(std::move(j));
        }
        Json j;
        j["kind"] = kind;
        j["agrees"] = all;
        j["rows"] = std::move(list);
        emit(o, out, dump(j));
    }
    return all ? kExitOk : kExitFails;
}

template <Scalar T>
int pipeline_family(const VectorFamily<T>& family, const Options& o, std::ostream& out)
{
    auto report = bm_pipeline_check(family, o.k);
    Json j = pipeline_to_json(report);
    j["graph"] = graph_to_json(proximity_graph(family, T(1)));
    emit(o, out, dump(j));
    return report.stage == "ok" ? kExitOk : kExitFails;
}

int cmd_pipeline(const Options& o, std::ostream& out)
{
    require(o, "--family");
    require(o, "--k");
    Json j = load_json_file(o.family);
    if (family_is_float(j)) {
        return pipeline_family(family_from_json<double>(j), o, out);
    }
    return pipeline_family(family_from_json<Rational>(j), o, out);
}

int cmd_search(const Options& o, std::ostream& out)
{
    require(o, "--k");
    const std::string kind = o.kind.empty() ? "signs" : o.kind;
    std::optional<VectorFamily<Rational>> candidates;
    if (kind == "signs") {
        require(o, "--d");
        candidates = linf_sign_vectors(static_cast<std::size_t>(o.d));
    } else if (kind == "family") {
        require(o, "--family");
        Json j = load_json_file(o.family);
        if (family_is_float(j)) {
            throw UsageError("search needs an exact candidate family");
        }
        candidates = family_from_json<Rational>(j);
    } else {
        throw UsageError("search kind must be signs or family");
    }
    auto result = bnb_max_subfamily(*candidates, o.k);
    Json j;
    j["k"] = o.k;
    j["candidates"] = candidates->size();
    j["size"] = result.indices.size();
    Json idx = Json::array();
    Json vecs = Json::array();
    for (int i : result.indices) {
        idx.push_back(i + 1);
        Json row = Json::array();
        for (const auto& x : (*candidates)[static_cast<std::size_t>(i)]) {
            row.push_back(to_json(x));
        }
        vecs.push_back(std::move(row));
    }
    j["indices"] = std::move(idx);
    j["vectors"] = std::move(vecs);
    j["nodes"] = result.nodes;
    emit(o, out, dump(j));
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verify, bound and construct k-collapsing vector families"};
    app.name("kcollapse");
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Write the result to this file instead of stdout");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* verify = app.add_subcommand("verify", "Check collapsing and balancing conditions of a family");
    verify->add_option("--family", o.family, "Family JSON file");
    verify->add_option("--k", o.k, "Subset size");
    verify->add_option("--kind", o.kind, "Condition to check")
        ->check(CLI::IsMember({"collapsing", "full", "strong", "weak", "all"}));
    verify->add_option("--budget", o.budget, "Maximum number of subsets to enumerate");
    verify->add_option("--seed", o.seed, "Seed for sampling when the budget is exceeded");
    verify->add_option("--threads", o.threads, "Worker threads for subset scanning");
    common(verify);

    auto* bound = app.add_subcommand("bound", "Known bounds on the largest collapsing family");
    bound->add_option("--k", o.k, "Subset size");
    bound->add_option("--d", o.d, "Dimension");
    bound->add_flag("--all", o.all, "List every bound");
    bound->add_flag("--best", o.best, "Only the best bounds (default)");
    common(bound);

    auto* tab = app.add_subcommand("table1", "Table of gamma_k and growth bases");
    tab->add_option("--kmin", o.kmin, "Smallest k");
    tab->add_option("--kmax", o.kmax, "Largest k");
    common(tab);

    auto* construct = app.add_subcommand("construct", "Build an explicit family");
    construct->add_option("--kind", o.kind, "cross, pk, lift, greedy, poly, fixtureX, fixtureY or signs");
    construct->add_option("--params", o.params, "Comma-separated name=value parameters");
    construct->add_option("--seed", o.seed, "Seed for randomized constructions");
    common(construct);

    auto* gram = app.add_subcommand("gram", "Matrix form: Gram matrix, rank certificate, Hadamard powers");
    gram->add_option("--family", o.family, "Family JSON file");
    gram->add_option("--matrix", o.matrix, "Matrix JSON file");
    gram->add_option("--k", o.k, "Check that rows are k-collapsing");
    gram->add_option("--p", o.p, "Hadamard power");
    gram->add_option("--d", o.d, "Normalize and realize the matrix as a family in this dimension");
    common(gram);

    auto* oracle = app.add_subcommand("oracle", "Compare closed-form simplex maxima with the vertex oracle");
    oracle->add_option("--p", o.p, "Power");
    oracle->add_option("--kind", o.kind, "general or balanced");
    oracle->add_option("--params", o.params, "mmin=..,mmax=..");
    common(oracle);

    auto* pipeline = app.add_subcommand("pipeline", "Run the proximity-graph colouring argument on a family");
    pipeline->add_option("--family", o.family, "Family JSON file");
    pipeline->add_option("--k", o.k, "Subset size");
    common(pipeline);

    auto* search = app.add_subcommand("search", "Largest k-collapsing subfamily by branch and bound");
    search->add_option("--k", o.k, "Subset size");
    search->add_option("--d", o.d, "Dimension for sign-vector candidates");
    search->add_option("--kind", o.kind, "signs or family");
    search->add_option("--family", o.family, "Candidate family JSON file");
    common(search);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        for (auto* sub : app.get_subcommands()) {
            o.cmd = sub;
            const std::string name = sub->get_name();
            if (name == "verify") {
                return cmd_verify(o, out);
            }
            if (name == "bound") {
                return cmd_bound(o, out);
            }
            if (name == "table1") {
                return cmd_table1(o, out);
            }
            if (name == "construct") {
                return cmd_construct(o, out);
            }
            if (name == "gram") {
                return cmd_gram(o, out);
            }
            if (name == "oracle") {
                return cmd_oracle(o, out);
            }
            if (name == "pipeline") {
                return cmd_pipeline(o, out);
            }
            if (name == "search") {
                return cmd_search(o, out);
            }
        }
        err << "error: no command given\n";
        return kExitUsage;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: precondition not met: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << " (raise --budget or pass --seed to sample)\n";
        return kExitUsage;
    } catch (const InexactError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}

} // namespace kcollapse
