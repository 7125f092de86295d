#include "kcollapse/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "kcollapse/errors.hpp"

namespace kcollapse {

namespace {

Json rational_rows(const std::vector<Vec<Rational>>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows) {
        Json row = Json::array();
        for (const auto& x : r) {
            row.push_back(to_json(x));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<Vec<Rational>> rational_rows_from(const Json& j, const char* what)
{
    if (!j.is_array()) {
        throw UsageError(std::string("'") + what + "' must be an array of rows");
    }
    std::vector<Vec<Rational>> out;
    for (const auto& row : j) {
        if (!row.is_array()) {
            throw UsageError(std::string("'") + what + "' rows must be arrays");
        }
        Vec<Rational> v;
        for (const auto& x : row) {
            v.push_back(rational_from_json(x));
        }
        out.push_back(std::move(v));
    }
    return out;
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw UsageError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

std::size_t size_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw UsageError(std::string("'") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

bool is_float_entry(const Json& x)
{
    return x.is_number_float();
}

bool any_float(const Json& rows)
{
    if (!rows.is_array()) {
        return false;
    }
    for (const auto& row : rows) {
        if (!row.is_array()) {
            continue;
        }
        for (const auto& x : row) {
            if (is_float_entry(x)) {
                return true;
            }
        }
    }
    return false;
}

template <Scalar T>
T scalar_from_json(const Json& j)
{
    if constexpr (is_exact_v<T>) {
        return rational_from_json(j);
    } else {
        if (j.is_number()) {
            return j.get<double>();
        }
        return rational_from_json(j).get_d();
    }
}

template <Scalar T>
Json vec_to_json(const Vec<T>& v)
{
    Json row = Json::array();
    for (const auto& x : v) {
        row.push_back(to_json(x));
    }
    return row;
}

Json witness_json(const std::vector<int>& w)
{
    Json out = Json::array();
    for (int i : w) {
        out.push_back(i + 1);
    }
    return out;
}

} // namespace

Json to_json(const Rational& x)
{
    return Json(format_rational(x));
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (j.is_number_unsigned()) {
        return Rational(j.get<unsigned long>());
    }
    if (j.is_number_float()) {
        throw UsageError("float value " + j.dump() + " where an exact rational was expected; write it as \"p/q\"");
    }
    throw UsageError("expected a rational, got " + j.dump());
}

Json space_to_json(const NormSpace& space)
{
    Json j;
    switch (space.kind()) {
    case NormKind::Lp:
        j["kind"] = "lp";
        j["dim"] = space.dim();
        j["p"] = space.p();
        break;
    case NormKind::Linf:
        j["kind"] = "linf";
        j["dim"] = space.dim();
        break;
    case NormKind::Slab: {
        j["kind"] = "slab";
        j["dim"] = space.dim();
        j["functionals"] = rational_rows(space.functionals());
        Json caps = Json::array();
        for (const auto& c : space.caps()) {
            Json cap;
            cap["direction"] = vec_to_json(c.direction);
            cap["bound"] = to_json(c.bound);
            caps.push_back(std::move(cap));
        }
        j["caps"] = std::move(caps);
        break;
    }
    case NormKind::L1Subspace:
        j["kind"] = "l1sub";
        j["dim"] = space.dim();
        j["ambient"] = space.ambient();
        j["basis"] = rational_rows(space.basis());
        break;
    case NormKind::VPolytope:
        j["kind"] = "vpoly";
        j["dim"] = space.dim();
        j["vertices"] = rational_rows(space.vertices());
        break;
    }
    return j;
}

NormSpace space_from_json(const Json& j)
{
    const std::string kind = field(j, "kind").get<std::string>();
    NormSpace space;
    if (kind == "lp") {
        const Json& p = field(j, "p");
        double pv = 0;
        if (p.is_string() && (p.get<std::string>() == "inf" || p.get<std::string>() == "infinity")) {
            pv = std::numeric_limits<double>::infinity();
        } else if (p.is_number()) {
            pv = p.get<double>();
        } else {
            throw UsageError("'p' must be a number or \"inf\"");
        }
        space = NormSpace::lp(size_field(j, "dim"), pv);
    } else if (kind == "linf") {
        space = NormSpace::linf(size_field(j, "dim"));
    } else if (kind == "slab") {
        std::vector<SlabCap> caps;
        if (j.contains("caps")) {
            for (const auto& c : j.at("caps")) {
                Vec<Rational> dir;
                for (const auto& x : field(c, "direction")) {
                    dir.push_back(rational_from_json(x));
                }
                caps.push_back(SlabCap{std::move(dir), rational_from_json(field(c, "bound"))});
            }
        }
        space = NormSpace::slab(rational_rows_from(field(j, "functionals"), "functionals"), std::move(caps));
    } else if (kind == "l1sub") {
        space = NormSpace::l1_subspace(size_field(j, "ambient"), rational_rows_from(field(j, "basis"), "basis"));
    } else if (kind == "vpoly") {
        space = NormSpace::vpolytope(rational_rows_from(field(j, "vertices"), "vertices"));
    } else {
        throw UsageError("unknown norm kind '" + kind + "' (expected lp, linf, slab, l1sub or vpoly)");
    }
    if (j.contains("dim") && j.at("dim") != Json(space.dim())) {
        throw UsageError("'dim' does not match the norm description");
    }
    return space;
}

bool family_is_float(const Json& j)
{
    if (j.contains("arithmetic")) {
        const auto a = j.at("arithmetic").get<std::string>();
        if (a == "float") {
            return true;
        }
        if (a == "exact") {
            return false;
        }
        throw UsageError("'arithmetic' must be \"exact\" or \"float\"");
    }
    return any_float(field(j, "vectors"));
}

template <Scalar T>
VectorFamily<T> family_from_json(const Json& j)
{
    NormSpace space = space_from_json(field(j, "space"));
    const Json& rows = field(j, "vectors");
    if (!rows.is_array()) {
        throw UsageError("'vectors' must be an array");
    }
    std::vector<Vec<T>> vectors;
    for (const auto& row : rows) {
        if (!row.is_array()) {
            throw UsageError("each vector must be an array");
        }
        Vec<T> v;
        for (const auto& x : row) {
            v.push_back(scalar_from_json<T>(x));
        }
        vectors.push_back(std::move(v));
    }
    return VectorFamily<T>(std::move(space), std::move(vectors));
}

template <Scalar T>
Json family_to_json(const VectorFamily<T>& family)
{
    Json j;
    j["space"] = space_to_json(family.space());
    j["arithmetic"] = is_exact_v<T> ? "exact" : "float";
    Json rows = Json::array();
    for (const auto& v : family.vectors()) {
        rows.push_back(vec_to_json(v));
    }
    j["vectors"] = std::move(rows);
    return j;
}

bool matrix_is_float(const Json& j)
{
    return any_float(field(j, "entries"));
}

template <Scalar T>
Matrix<T> matrix_from_json(const Json& j)
{
    const Json& rows = field(j, "entries");
    if (!rows.is_array()) {
        throw UsageError("'entries' must be an array of rows");
    }
    std::vector<Vec<T>> out;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != rows.size()) {
            throw UsageError("matrix must be square");
        }
        Vec<T> v;
        for (const auto& x : row) {
            v.push_back(scalar_from_json<T>(x));
        }
        out.push_back(std::move(v));
    }
    if (j.contains("m") && j.at("m") != Json(out.size())) {
        throw UsageError("'m' does not match the number of rows");
    }
    if (out.empty()) {
        return Matrix<T>(0, 0);
    }
    return Matrix<T>::from_rows(out);
}

template <Scalar T>
Json matrix_to_json(const Matrix<T>& a)
{
    Json j;
    j["m"] = a.rows();
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) {
            row.push_back(to_json(a(i, c)));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

template <Scalar T>
Json report_to_json(const ConditionReport<T>& report)
{
    Json j;
    j["condition"] = condition_name(report.condition);
    if (report.condition == Condition::KCollapsing) {
        j["k"] = report.k;
    }
    j["holds"] = report.holds;
    j["witness"] = report.witness ? witness_json(*report.witness) : Json(nullptr);
    j["margin"] = to_json(report.margin);
    if (report.margin_squared) {
        j["margin_squared"] = true;
    }
    j["sampled"] = report.sampled;
    j["subsets_checked"] = report.subsets_checked;
    return j;
}

template <Scalar T>
Json certificate_to_json(const RankCertificate<T>& cert)
{
    Json j;
    j["trace"] = to_json(cert.trace);
    j["frobenius_sq"] = to_json(cert.frobenius_sq);
    j["rank_lower_bound"] = to_json(cert.rank_lower_bound);
    j["rank"] = cert.rank;
    j["symmetric"] = cert.symmetric;
    j["equality_case"] = cert.equality_case;
    return j;
}

Json bound_to_json(const BoundResult& b)
{
    Json j;
    j["name"] = b.name;
    j["kind"] = bound_kind_name(b.kind);
    j["quantity"] = quantity_name(b.quantity);
    j["applicable"] = b.applicable;
    j["raw"] = b.raw ? Json(*b.raw) : Json(nullptr);
    j["value"] = b.value ? Json(b.value->get_str()) : Json(nullptr);
    j["asymptotic_only"] = b.asymptotic_only;
    j["needs_large_d"] = b.needs_large_d;
    if (!b.note.empty()) {
        j["note"] = b.note;
    }
    return j;
}

Json best_bounds_to_json(const BestBounds& b)
{
    Json j;
    j["best_lower"] = b.best_lower.get_str();
    j["lower_source"] = b.lower_source;
    j["best_upper"] = b.best_upper.get_str();
    j["upper_source"] = b.upper_source;
    // Small values are emitted as numbers so that {"exact": 20} reads naturally.
    if (b.exact) {
        if (b.exact->fits_slong_p()) {
            j["exact"] = b.exact->get_si();
        } else {
            j["exact"] = b.exact->get_str();
        }
    } else {
        j["exact"] = nullptr;
    }
    if (b.greedy) {
        j["greedy"] = bound_to_json(*b.greedy);
    }
    return j;
}

Json table1_row_to_json(const Table1Row& row)
{
    Json j;
    j["k"] = row.k;
    j["gamma"] = row.gamma_text;
    j["rank_base"] = row.rank_base;
    j["bm_base"] = row.bm_base;
    j["greedy_base"] = row.greedy_base;
    return j;
}

Json opt_result_to_json(const OptResult& r)
{
    Json j;
    j["value"] = to_json(r.value);
    if (r.vertex) {
        j["vertex"] = vec_to_json(*r.vertex);
    } else {
        j["vertex"] = nullptr;
    }
    j["exactness"] = exactness_name(r.exactness);
    j["unique"] = r.unique;
    if (r.t0) {
        j["t0"] = to_json(*r.t0);
    }
    return j;
}

Json graph_to_json(const SimpleGraph& g)
{
    Json j;
    j["n"] = g.size();
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) {
        edges.push_back(Json::array({u + 1, v + 1}));
    }
    j["edges"] = std::move(edges);
    return j;
}

Json pipeline_to_json(const PipelineReport& r)
{
    Json j;
    j["stage"] = r.stage;
    j["collapsing"] = r.collapsing;
    j["norms_ok"] = r.norms_ok;
    j["max_degree"] = r.max_degree;
    j["degree_ok"] = r.degree_ok;
    if (r.coloring) {
        Json c;
        c["color"] = r.coloring->color;
        c["class_sizes"] = r.coloring->class_sizes;
        c["moves"] = r.coloring->moves;
        c["fallback_used"] = r.coloring->fallback_used;
        j["coloring"] = std::move(c);
    } else {
        j["coloring"] = nullptr;
    }
    if (r.inequality) {
        Json q;
        q["q"] = r.inequality->q;
        q["r"] = r.inequality->r;
        q["lhs_power"] = r.inequality->lhs_power.get_str();
        q["rhs_power"] = to_json(Rational(r.inequality->rhs_power));
        q["holds"] = r.inequality->holds;
        q["exceeds_simple_bound"] = r.inequality->exceeds_simple_bound;
        j["inequality"] = std::move(q);
    } else {
        j["inequality"] = nullptr;
    }
    if (!r.message.empty()) {
        j["message"] = r.message;
    }
    return j;
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("invalid JSON in '" + path + "': " + e.what());
    }
}

template VectorFamily<Rational> family_from_json(const Json&);
template VectorFamily<double> family_from_json(const Json&);
template Json family_to_json(const VectorFamily<Rational>&);
template Json family_to_json(const VectorFamily<double>&);
template Matrix<Rational> matrix_from_json(const Json&);
template Matrix<double> matrix_from_json(const Json&);
template Json matrix_to_json(const Matrix<Rational>&);
template Json matrix_to_json(const Matrix<double>&);
template Json report_to_json(const ConditionReport<Rational>&);
template Json report_to_json(const ConditionReport<double>&);
template Json certificate_to_json(const RankCertificate<Rational>&);
template Json certificate_to_json(const RankCertificate<double>&);

} // namespace kcollapse
