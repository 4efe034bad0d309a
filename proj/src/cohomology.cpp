#include "qforge/cohomology.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "qforge/errors.hpp"
#include "qforge/parallel.hpp"

namespace qforge {

std::string to_string(Theory theory)
{
    return theory == Theory::kRack ? "rack" : "quandle";
}

Theory parse_theory(const std::string& text)
{
    if (text == "rack") return Theory::kRack;
    if (text == "quandle") return Theory::kQuandle;
    throw InputError("unknown theory '" + text + "' (expected rack or quandle)");
}

namespace {

std::size_t ipow(std::size_t base, int exp)
{
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<int> decode(std::size_t index, int m, int n)
{
    std::vector<int> t(n);
    for (int i = n - 1; i >= 0; --i) {
        t[i] = static_cast<int>(index % m);
        index /= m;
    }
    return t;
}

std::size_t encode(const std::vector<int>& t, int m)
{
    std::size_t index = 0;
    for (int x : t) index = index * m + x;
    return index;
}

bool degenerate(const std::vector<int>& t)
{
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return true;
    return false;
}

void check_degree(int degree)
{
    if (degree < 0 || degree > kMaxCoboundaryDegree)
        throw InputError("coboundary degree " + std::to_string(degree) + " unsupported (0.." +
                         std::to_string(kMaxCoboundaryDegree) + ")");
}

// The 2(n+1) signed terms of (delta^n f)(t) as (coefficient, n-tuple index).
std::vector<std::pair<int, std::size_t>> coboundary_terms(const TableRack& rack, const std::vector<int>& t)
{
    const int m = rack.size();
    const int len = static_cast<int>(t.size());
    std::vector<std::pair<int, std::size_t>> terms;
    std::vector<int> s;
    for (int i = 1; i <= len; ++i) {
        const int sign = (i % 2 == 0) ? 1 : -1;
        const int xi = t[i - 1];
        s.clear();
        for (int p = 0; p < len; ++p)
            if (p != i - 1) s.push_back(t[p]);
        terms.emplace_back(sign, encode(s, m));
        s.clear();
        for (int p = 0; p < len; ++p) {
            if (p == i - 1) continue;
            s.push_back(p < i - 1 ? rack.op(t[p], xi) : t[p]);
        }
        terms.emplace_back(-sign, encode(s, m));
    }
    return terms;
}

}  // namespace

Cochain coboundary(const TableRack& rack, const Cochain& f)
{
    check_degree(f.degree);
    const int m = rack.size();
    if (f.values.size() != ipow(m, f.degree)) throw InputError("cochain has wrong number of values");
    Cochain out{f.degree + 1, std::vector<Rational>(ipow(m, f.degree + 1))};
    for (std::size_t r = 0; r < out.values.size(); ++r)
        for (const auto& [c, idx] : coboundary_terms(rack, decode(r, m, out.degree))) out.values[r] += c * f.values[idx];
    return out;
}

bool vanishes_on_degenerate(const TableRack& rack, const Cochain& f)
{
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] != 0 && degenerate(decode(i, rack.size(), f.degree))) return false;
    return true;
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& row : row_entries) n += row.size();
    return n;
}

SparseMatrix operator*(const SparseMatrix& lhs, const SparseMatrix& rhs)
{
    if (lhs.cols != rhs.rows) throw InputError("matrix dimensions do not match");
    SparseMatrix out{lhs.rows, rhs.cols, std::vector<std::vector<std::pair<std::size_t, Rational>>>(lhs.rows)};
    for (std::size_t r = 0; r < lhs.rows; ++r) {
        std::map<std::size_t, Rational> acc;
        for (const auto& [k, a] : lhs.row_entries[r])
            for (const auto& [c, b] : rhs.row_entries[k]) acc[c] += a * b;
        for (auto& [c, v] : acc)
            if (v != 0) out.row_entries[r].emplace_back(c, std::move(v));
    }
    return out;
}

std::size_t rank(const SparseMatrix& m)
{
    using Row = std::vector<std::pair<std::size_t, Rational>>;
    std::unordered_map<std::size_t, Row> pivots;  // leading column -> row with leading entry 1
    Row scratch;
    for (const auto& input : m.row_entries) {
        Row row = input;
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) break;
            const Rational factor = row.front().second;
            const Row& p = it->second;
            scratch.clear();
            std::size_t a = 0, b = 0;
            while (a < row.size() || b < p.size()) {
                if (b == p.size() || (a < row.size() && row[a].first < p[b].first)) {
                    scratch.push_back(std::move(row[a++]));
                } else if (a == row.size() || p[b].first < row[a].first) {
                    scratch.emplace_back(p[b].first, -factor * p[b].second);
                    ++b;
                } else {
                    Rational v = row[a].second - factor * p[b].second;
                    if (v != 0) scratch.emplace_back(row[a].first, std::move(v));
                    ++a;
                    ++b;
                }
            }
            row.swap(scratch);
        }
        if (row.empty()) continue;
        const Rational lead = row.front().second;
        for (auto& [c, v] : row) v /= lead;
        pivots.emplace(row.front().first, std::move(row));
    }
    return pivots.size();
}

std::vector<std::size_t> cochain_basis(const TableRack& rack, int degree, Theory theory)
{
    if (degree < 0 || degree > kMaxCoboundaryDegree + 1) throw InputError("cochain degree out of range");
    const std::size_t total = ipow(rack.size(), degree);
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < total; ++i)
        if (theory == Theory::kRack || !degenerate(decode(i, rack.size(), degree))) basis.push_back(i);
    return basis;
}

SparseMatrix coboundary_matrix(const TableRack& rack, int degree, Theory theory)
{
    check_degree(degree);
    if (theory == Theory::kQuandle && !rack.is_quandle())
        throw InputError("quandle theory requested for a rack that is not a quandle");
    const auto cols = cochain_basis(rack, degree, theory);
    const auto rows = cochain_basis(rack, degree + 1, theory);
    std::unordered_map<std::size_t, std::size_t> col_index;
    for (std::size_t i = 0; i < cols.size(); ++i) col_index[cols[i]] = i;

    SparseMatrix out{rows.size(), cols.size(), std::vector<std::vector<std::pair<std::size_t, Rational>>>(rows.size())};
    parallel_chunks(rows.size(), [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t r = begin; r < end; ++r) {
            std::map<std::size_t, int> acc;
            for (const auto& [c, idx] : coboundary_terms(rack, decode(rows[r], rack.size(), degree + 1))) {
                auto it = col_index.find(idx);
                if (it != col_index.end()) acc[it->second] += c;
            }
            for (const auto& [c, v] : acc)
                if (v != 0) out.row_entries[r].emplace_back(c, Rational(v));
        }
    });
    return out;
}

bool degenerate_subcomplex_preserved(const TableRack& rack, int degree)
{
    check_degree(degree);
    const int m = rack.size();
    const auto cols = cochain_basis(rack, degree, Theory::kQuandle);
    std::unordered_map<std::size_t, std::size_t> col_index;
    for (std::size_t i = 0; i < cols.size(); ++i) col_index[cols[i]] = i;
    const std::size_t total = ipow(m, degree + 1);
    for (std::size_t r = 0; r < total; ++r) {
        const auto t = decode(r, m, degree + 1);
        if (!degenerate(t)) continue;
        std::map<std::size_t, int> acc;
        for (const auto& [c, idx] : coboundary_terms(rack, t)) {
            auto it = col_index.find(idx);
            if (it != col_index.end()) acc[it->second] += c;
        }
        for (const auto& [c, v] : acc)
            if (v != 0) return false;
    }
    return true;
}

std::size_t cohomology_dimension(const TableRack& rack, int degree, Theory theory)
{
    if (degree < 1 || degree > kMaxCoboundaryDegree)
        throw InputError("cohomology degree must be in 1.." + std::to_string(kMaxCoboundaryDegree));
    if (theory == Theory::kQuandle && !rack.is_quandle())
        throw InputError("quandle theory requested for a rack that is not a quandle");
    const auto dn = coboundary_matrix(rack, degree, theory);
    const auto dprev = coboundary_matrix(rack, degree - 1, theory);
    return dn.cols - rank(dn) - rank(dprev);
}

ComparisonReport bounded_comparison_finite(const TableRack& rack, int degree, Theory theory)
{
    ComparisonReport r;
    r.degree = degree;
    r.theory = theory;
    r.cohomology = cohomology_dimension(rack, degree, theory);
    r.bounded_cohomology = r.cohomology;
    r.comparison_kernel = 0;
    return r;
}

nlohmann::json to_json(const Cochain& f)
{
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : f.values) values.push_back(to_string(v));
    return {{"degree", f.degree}, {"values", values}};
}

Cochain cochain_from_json(const nlohmann::json& j, const TableRack& rack)
{
    if (!j.is_object() || !j.contains("degree") || !j.contains("values"))
        throw InputError("cochain JSON needs \"degree\" and \"values\"");
    Cochain f;
    f.degree = j.at("degree").get<int>();
    if (f.degree < 0) throw InputError("cochain degree must be nonnegative");
    for (const auto& v : j.at("values")) {
        if (v.is_number_integer())
            f.values.emplace_back(v.get<long>());
        else
            f.values.push_back(parse_rational(v.get<std::string>()));
    }
    if (f.values.size() != ipow(rack.size(), f.degree))
        throw InputError("cochain of degree " + std::to_string(f.degree) + " needs " +
                         std::to_string(ipow(rack.size(), f.degree)) + " values");
    return f;
}

}  // namespace qforge
