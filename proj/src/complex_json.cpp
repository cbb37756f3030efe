// Complex (de)serialization.
//
// Schema:
//   {"terms": {"<deg>": [vertex, ...], ...},
//    "diffs": {"<deg>": [[{"<path>": "<coeff>", ...}, ...], ...], ...}}
// diffs["<d>"] is the matrix of d^d : C^d -> C^{d+1} as rows of
// {path-name: rational-string} objects (rows indexed by the degree-(d+1)
// summands, columns by the degree-d summands).  Coefficients are exact
// rational strings; integers are also accepted on input.

#include "twistcat/complex.h"

#include <json.hpp>

#include <stdexcept>

namespace twistcat {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const ProjComplex& input, int indent) {
    const ProjComplex c = normalized(input);
    ordered_json j;
    j["terms"] = ordered_json::object();
    j["diffs"] = ordered_json::object();
    for (int d = c.lo; !c.empty() && d <= c.hi(); ++d)
        j["terms"][std::to_string(d)] = c.term(d);
    for (int d = c.lo; !c.empty() && d < c.hi(); ++d) {
        const EntryMatrix* m = c.diff(d);
        ordered_json rows = ordered_json::array();
        for (int row = 0; row < m->rows; ++row) {
            ordered_json cols = ordered_json::array();
            for (int col = 0; col < m->cols; ++col) {
                ordered_json entry = ordered_json::object();
                for (const auto& [pid, coeff] : m->at(row, col).terms)
                    entry[c.alg->path_name(pid)] = rat_to_string(coeff);
                cols.push_back(std::move(entry));
            }
            rows.push_back(std::move(cols));
        }
        j["diffs"][std::to_string(d)] = std::move(rows);
    }
    return j.dump(indent);
}

namespace {

int parse_degree_key(const std::string& key) {
    try {
        size_t used = 0;
        const int d = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("complex JSON: bad degree key '" + key + "'");
    }
}

} // namespace

ProjComplex from_json(const Algebra& A, const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("complex JSON: parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_object())
        throw std::runtime_error("complex JSON: expected an object with a 'terms' object");

    std::map<int, std::vector<int>> terms;
    for (const auto& [key, val] : j["terms"].items()) {
        const int d = parse_degree_key(key);
        if (!val.is_array()) throw std::runtime_error("complex JSON: terms['" + key + "'] must be an array");
        std::vector<int> vs;
        for (const auto& v : val) {
            if (!v.is_number_integer())
                throw std::runtime_error("complex JSON: terms['" + key + "'] must hold integer vertices");
            const int vert = v.get<int>();
            if (!A.has_vertex(vert))
                throw std::runtime_error("complex JSON: vertex " + std::to_string(vert) + " not in the quiver");
            vs.push_back(vert);
        }
        if (!vs.empty()) terms[d] = std::move(vs);
    }

    ProjComplex c;
    c.alg = &A;
    if (terms.empty()) return c;
    c.lo = terms.begin()->first;
    const int hi = terms.rbegin()->first;
    for (int d = c.lo; d <= hi; ++d) {
        auto it = terms.find(d);
        c.terms.push_back(it == terms.end() ? std::vector<int>{} : it->second);
    }
    for (int d = c.lo; d < hi; ++d)
        c.diffs.emplace_back(c.term_size(d + 1), c.term_size(d));

    if (j.contains("diffs")) {
        if (!j["diffs"].is_object()) throw std::runtime_error("complex JSON: 'diffs' must be an object");
        for (const auto& [key, rows] : j["diffs"].items()) {
            const int d = parse_degree_key(key);
            if (d < c.lo || d >= hi)
                throw std::runtime_error("complex JSON: differential at degree " + key + " outside terms");
            EntryMatrix& m = c.diffs[static_cast<size_t>(d - c.lo)];
            if (!rows.is_array() || static_cast<int>(rows.size()) != m.rows)
                throw std::runtime_error("complex JSON: diffs['" + key + "'] must have " +
                                         std::to_string(m.rows) + " rows");
            for (int row = 0; row < m.rows; ++row) {
                const auto& cols = rows[static_cast<size_t>(row)];
                if (!cols.is_array() || static_cast<int>(cols.size()) != m.cols)
                    throw std::runtime_error("complex JSON: diffs['" + key + "'] row " + std::to_string(row) +
                                             " must have " + std::to_string(m.cols) + " entries");
                for (int col = 0; col < m.cols; ++col) {
                    const auto& entry = cols[static_cast<size_t>(col)];
                    if (!entry.is_object())
                        throw std::runtime_error("complex JSON: differential entries must be objects");
                    for (const auto& [pname, cval] : entry.items()) {
                        const auto pid = A.parse_path(pname);
                        if (!pid)
                            throw std::runtime_error("complex JSON: unknown path '" + pname + "'");
                        Rat coeff;
                        if (cval.is_string()) {
                            const auto r = rat_from_string(cval.get<std::string>());
                            if (!r)
                                throw std::runtime_error("complex JSON: bad coefficient '" +
                                                         cval.get<std::string>() + "'");
                            coeff = *r;
                        } else if (cval.is_number_integer()) {
                            coeff = Rat(cval.get<long long>());
                        } else {
                            throw std::runtime_error(
                                "complex JSON: coefficients must be rational strings or integers");
                        }
                        const Path& pa = A.path(*pid);
                        const int sv = c.terms[static_cast<size_t>(d - c.lo)][static_cast<size_t>(col)];
                        const int tv = c.terms[static_cast<size_t>(d + 1 - c.lo)][static_cast<size_t>(row)];
                        if (pa.src != tv || pa.tgt != sv)
                            throw std::runtime_error("complex JSON: path '" + pname +
                                                     "' is not parallel to entry (" + std::to_string(row) + "," +
                                                     std::to_string(col) + ") at degree " + key);
                        m.at(row, col).add_term(*pid, coeff);
                    }
                }
            }
        }
    }

    try {
        c.validate();
    } catch (const std::logic_error& e) {
        throw std::runtime_error(std::string("complex JSON: ") + e.what());
    }
    return c;
}

} // namespace twistcat
