#include "twistcat/algebra.h"

#include <algorithm>
#include <stdexcept>

namespace twistcat {

Algebra::Algebra(int p, int q, int r) : p_(p), q_(q), r_(r) {
    if (p < 1 || q < 0 || r < 1 || r > p)
        throw std::invalid_argument("Algebra(p,q,r) requires p >= 1, q >= 0, 1 <= r <= p");

    const int nv = num_vertices();
    // Arrows grouped by source vertex, ascending label, for the extension
    // step below.
    std::vector<std::vector<int>> arrows_from(static_cast<size_t>(nv));
    for (int a = -q_; a <= p_ - 1; ++a) arrows_from[static_cast<size_t>(vi(arrow_src(a)))].push_back(a);

    // Enumerate the surviving paths breadth-first.  Trivial paths first
    // (v ascending), then by length; a path survives iff no consecutive
    // traversal pair is a relation, so each extension needs only one check
    // against the last arrow.
    for (int v = -q_; v <= p_ - 1; ++v) {
        Path e{v, v, {}};
        path_index_[{v, {}}] = static_cast<int>(paths_.size());
        paths_.push_back(std::move(e));
    }
    const int length_cap = 4 * (p_ + q_) + 8; // never reached; guards the loop
    size_t level_begin = 0, level_end = paths_.size();
    for (int len = 1;; ++len) {
        if (len > length_cap) throw std::logic_error("path enumeration failed to terminate");
        for (size_t id = level_begin; id < level_end; ++id) {
            const Path base = paths_[id]; // copy: paths_ may reallocate
            for (int a : arrows_from[static_cast<size_t>(vi(base.tgt))]) {
                if (!base.arrows.empty() && is_relation_pair(base.arrows.back(), a)) continue;
                Path ext{base.src, arrow_tgt(a), base.arrows};
                ext.arrows.push_back(a);
                path_index_[{ext.src, ext.arrows}] = static_cast<int>(paths_.size());
                paths_.push_back(std::move(ext));
            }
        }
        level_begin = level_end;
        level_end = paths_.size();
        if (level_begin == level_end) break; // no paths of this length
    }

    hom_bases_.assign(static_cast<size_t>(nv), std::vector<std::vector<int>>(static_cast<size_t>(nv)));
    proj_bases_.assign(static_cast<size_t>(nv), {});
    for (int id = 0; id < num_paths(); ++id) {
        const Path& pa = paths_[static_cast<size_t>(id)];
        hom_bases_[static_cast<size_t>(vi(pa.tgt))][static_cast<size_t>(vi(pa.src))].push_back(id);
        proj_bases_[static_cast<size_t>(vi(pa.src))].push_back(id);
    }
}

std::vector<int> Algebra::vertices() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(num_vertices()));
    for (int v = p_ - 1; v >= -q_; --v) out.push_back(v);
    return out;
}

int Algebra::arrow_src(int a) const {
    if (!has_arrow(a)) throw std::out_of_range("arrow label out of range");
    if (a >= 0) return (a + 1) % p_; // cycle
    return a + 1;                    // line
}

int Algebra::arrow_tgt(int a) const {
    if (!has_arrow(a)) throw std::out_of_range("arrow label out of range");
    return a;
}

bool Algebra::is_relation_pair(int first, int then) const {
    // Relation j (j = p-1 .. p-r): traverse alpha_{(j+1) mod p}, then
    // alpha_j.  (Line arrows are never part of a relation.)
    if (then < p_ - r_ || then > p_ - 1) return false;
    return first == (then + 1) % p_;
}

std::vector<std::pair<int, int>> Algebra::relation_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int j = p_ - 1; j >= p_ - r_; --j) out.emplace_back((j + 1) % p_, j);
    return out;
}

int Algebra::trivial_path(int v) const {
    if (!has_vertex(v)) throw std::out_of_range("vertex out of range");
    return v + q_; // trivial paths were enumerated first, v ascending
}

int Algebra::arrow_path(int a) const {
    const auto it = path_index_.find({arrow_src(a), {a}});
    if (it == path_index_.end()) throw std::logic_error("arrow path missing from basis");
    return it->second;
}

int Algebra::compose_traversal(int x, int y) const {
    const Path& px = paths_[static_cast<size_t>(x)];
    const Path& py = paths_[static_cast<size_t>(y)];
    if (px.tgt != py.src) return -1;
    if (px.arrows.empty()) return y;
    if (py.arrows.empty()) return x;
    if (is_relation_pair(px.arrows.back(), py.arrows.front())) return -1;
    std::vector<int> arrows = px.arrows;
    arrows.insert(arrows.end(), py.arrows.begin(), py.arrows.end());
    const auto it = path_index_.find({px.src, arrows});
    return it == path_index_.end() ? -1 : it->second;
}

const std::vector<int>& Algebra::hom_basis(int a, int b) const {
    if (!has_vertex(a) || !has_vertex(b)) throw std::out_of_range("vertex out of range");
    return hom_bases_[static_cast<size_t>(vi(a))][static_cast<size_t>(vi(b))];
}

const std::vector<int>& Algebra::projective_basis(int v) const {
    if (!has_vertex(v)) throw std::out_of_range("vertex out of range");
    return proj_bases_[static_cast<size_t>(vi(v))];
}

int Algebra::projective_dim(int v) const {
    return static_cast<int>(projective_basis(v).size());
}

std::string Algebra::path_name(int id) const {
    const Path& pa = paths_[static_cast<size_t>(id)];
    if (pa.arrows.empty()) return "e" + std::to_string(pa.src);
    std::string out;
    for (size_t i = 0; i < pa.arrows.size(); ++i) {
        if (i) out += "*";
        out += "a" + std::to_string(pa.arrows[i]);
    }
    return out;
}

std::optional<int> Algebra::parse_path(const std::string& name) const {
    if (name.empty()) return std::nullopt;
    auto parse_int = [](const std::string& t) -> std::optional<int> {
        if (t.empty()) return std::nullopt;
        size_t i = t[0] == '-' ? 1 : 0;
        if (i == t.size()) return std::nullopt;
        long v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') return std::nullopt;
            v = v * 10 + (t[i] - '0');
            if (v > 1'000'000) return std::nullopt;
        }
        return static_cast<int>(t[0] == '-' ? -v : v);
    };
    if (name[0] == 'e') {
        const auto v = parse_int(name.substr(1));
        if (!v || !has_vertex(*v)) return std::nullopt;
        return trivial_path(*v);
    }
    std::vector<int> arrows;
    size_t pos = 0;
    while (pos < name.size()) {
        size_t star = name.find('*', pos);
        if (star == std::string::npos) star = name.size();
        const std::string tok = name.substr(pos, star - pos);
        if (tok.size() < 2 || tok[0] != 'a') return std::nullopt;
        const auto a = parse_int(tok.substr(1));
        if (!a || !has_arrow(*a)) return std::nullopt;
        arrows.push_back(*a);
        pos = star + 1;
    }
    if (arrows.empty()) return std::nullopt;
    for (size_t i = 0; i + 1 < arrows.size(); ++i)
        if (arrow_tgt(arrows[i]) != arrow_src(arrows[i + 1])) return std::nullopt;
    const auto it = path_index_.find({arrow_src(arrows[0]), arrows});
    if (it == path_index_.end()) return std::nullopt;
    return it->second;
}

AlgElem AlgElem::single(int path_id, Rat coeff) {
    AlgElem e;
    if (coeff != 0) e.terms.emplace_back(path_id, std::move(coeff));
    return e;
}

AlgElem& AlgElem::add_term(int path_id, const Rat& coeff) {
    if (coeff == 0) return *this;
    auto it = std::lower_bound(terms.begin(), terms.end(), path_id,
                               [](const auto& t, int id) { return t.first < id; });
    if (it != terms.end() && it->first == path_id) {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    } else {
        terms.insert(it, {path_id, coeff});
    }
    return *this;
}

AlgElem AlgElem::operator+(const AlgElem& other) const {
    AlgElem out = *this;
    for (const auto& [id, c] : other.terms) out.add_term(id, c);
    return out;
}

AlgElem AlgElem::operator-() const {
    AlgElem out = *this;
    for (auto& [id, c] : out.terms) c = -c;
    return out;
}

AlgElem AlgElem::scaled(const Rat& f) const {
    if (f == 0) return {};
    AlgElem out = *this;
    for (auto& [id, c] : out.terms) c *= f;
    return out;
}

AlgElem hom_compose(const Algebra& A, const AlgElem& g, const AlgElem& f) {
    AlgElem out;
    for (const auto& [gp, gc] : g.terms)
        for (const auto& [fp, fc] : f.terms) {
            // g.f acts by x -> (x.f).g; on paths that is the concatenation
            // walking g's path first.
            const int comp = A.compose_traversal(gp, fp);
            if (comp >= 0) out.add_term(comp, gc * fc);
        }
    return out;
}

Rat scalar_part(const Algebra& A, const AlgElem& x) {
    for (const auto& [id, c] : x.terms)
        if (A.path(id).arrows.empty()) return c;
    return Rat(0);
}

AlgElem radical_part(const Algebra& A, const AlgElem& x) {
    AlgElem out;
    for (const auto& [id, c] : x.terms)
        if (!A.path(id).arrows.empty()) out.terms.emplace_back(id, c);
    return out;
}

} // namespace twistcat
