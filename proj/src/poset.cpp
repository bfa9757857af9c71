#include "wbr/poset.hpp"

#include <algorithm>
#include <numeric>

#include "wbr/errors.hpp"

namespace wbr {

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// FNV-1a, used only as a stable content key for cache filenames.
std::string fnv1a_hex(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", h);
    return std::string(buf);
}

}  // namespace

int GroupPoset::position(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    throw ValidationError("unknown poset element '" + label + "'");
}

long long GroupPoset::rel_index(int w, int v) const {
    if (!leq(w, v)) throw Error("rel_index: elements are not comparable");
    return index_[v] / index_[w];
}

int GroupPoset::meet(int a, int b) const {
    if (!abelian_) throw Error("meet: poset is not abelian");
    return meet_[a][b];
}

int GroupPoset::join(int a, int b) const {
    if (!abelian_) throw Error("join: poset is not abelian");
    return join_[a][b];
}

std::string GroupPoset::content_key() const { return fnv1a_hex(doc_.dump()); }

void GroupPoset::validate() const {
    int n = size();
    if (n == 0) throw ValidationError("poset: empty");
    if ((int)index_.size() != n || (int)marks_.size() != n) throw ValidationError("poset: non-square data");
    if (index_[0] != 1) throw ValidationError("poset: index of the whole group must be 1");
    for (int v = 0; v < n; ++v) {
        if ((int)marks_[v].size() != n) throw ValidationError("poset: non-square marks matrix");
        if (index_[v] <= 0) throw ValidationError("poset: indices must be positive");
        if (marks_[v][0] != 1) throw ValidationError("poset: marks[V][G] must equal 1");
        if (marks_[v][v] < 1) throw ValidationError("poset: diagonal marks must be >= 1");
    }
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            if (marks_[v][w] < 0) throw ValidationError("poset: negative mark");
            bool le = leq_[v][w];
            if ((marks_[v][w] != 0) != le) throw ValidationError("poset: marks support must match the order");
            if (le && w > v) throw ValidationError("poset: linear order must extend the partial order");
            if (le && index_[v] % index_[w] != 0)
                throw ValidationError("poset: relative index must be integral");
        }
        if (!leq_[v][0]) throw ValidationError("poset: the whole group must precede everything");
    }
    // transitivity of the derived order
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (leq_[v][w] && leq_[u][v] && !leq_[u][w])
                    throw ValidationError("poset: order relation is not transitive");
    if (abelian_) {
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (leq_[v][w] && marks_[v][w] != index_[w])
                    throw ValidationError("poset: abelian marks must equal the index");
        // meet = intersection (glb in containment), join = generated subgroup (lub).
        // Containment here reads: W contains V iff leq(w,v).
        auto contains = [&](int w, int v) { return leq_[v][w]; };
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                int m = meet_[a][b], j = join_[a][b];
                if (!contains(a, m) || !contains(b, m)) throw ValidationError("poset: meet not below arguments");
                if (!contains(j, a) || !contains(j, b)) throw ValidationError("poset: join not above arguments");
                for (int v = 0; v < n; ++v) {
                    if (contains(a, v) && contains(b, v) && !contains(m, v))
                        throw ValidationError("poset: meet is not the intersection");
                    if (contains(v, a) && contains(v, b) && !contains(v, j))
                        throw ValidationError("poset: join is not the generated subgroup");
                }
            }
        }
    }
}

std::shared_ptr<const GroupPoset> GroupPoset::cyclic(const std::set<long long>& divisors) {
    if (divisors.empty()) throw ValidationError("cyclic poset: empty divisor set");
    for (long long d : divisors) {
        if (d <= 0) throw ValidationError("cyclic poset: divisors must be positive");
        for (long long e = 1; e * e <= d; ++e) {
            if (d % e == 0) {
                if (!divisors.count(e) || !divisors.count(d / e))
                    throw ValidationError("cyclic poset: divisor set is not divisor-closed");
            }
        }
    }
    auto p = std::shared_ptr<GroupPoset>(new GroupPoset());
    std::vector<long long> ds(divisors.begin(), divisors.end());
    int n = (int)ds.size();
    for (long long d : ds) {
        p->labels_.push_back(std::to_string(d));
        p->index_.push_back(d);
    }
    p->leq_.assign(n, std::vector<bool>(n, false));
    p->marks_.assign(n, std::vector<long long>(n, 0));
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            if (ds[v] % ds[w] == 0) {
                p->leq_[v][w] = true;
                p->marks_[v][w] = ds[w];
            }
        }
    }
    p->abelian_ = true;
    p->meet_.assign(n, std::vector<int>(n, -1));
    p->join_.assign(n, std::vector<int>(n, -1));
    auto pos_of = [&](long long d) {
        auto it = std::find(ds.begin(), ds.end(), d);
        if (it == ds.end()) throw ValidationError("cyclic poset: lattice is not closed (missing divisor)");
        return (int)(it - ds.begin());
    };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            p->meet_[a][b] = pos_of(lcm_ll(ds[a], ds[b]));
            p->join_[a][b] = pos_of(gcd_ll(ds[a], ds[b]));
        }
    }
    p->doc_ = nlohmann::json{{"kind", "cyclic"}, {"divisors", ds}};
    p->validate();
    return p;
}

namespace {

// Elements of prod Z/f_i in mixed-radix encoding.
struct AbelianGroup {
    std::vector<long long> factors;
    long long order = 1;

    long long add(long long a, long long b) const {
        long long out = 0, mult = 1;
        for (long long f : factors) {
            long long x = (a % f + b % f) % f;
            out += x * mult;
            a /= f;
            b /= f;
            mult *= f;
        }
        return out;
    }

    std::vector<long long> closure(std::vector<long long> gens) const {
        std::set<long long> seen = {0};
        std::vector<long long> frontier = {0};
        for (long long g : gens)
            if (seen.insert(g).second) frontier.push_back(g);
        bool grown = true;
        while (grown) {
            grown = false;
            std::vector<long long> cur(seen.begin(), seen.end());
            for (long long a : cur)
                for (long long g : gens)
                    if (seen.insert(add(a, g)).second) grown = true;
        }
        return std::vector<long long>(seen.begin(), seen.end());
    }
};

std::string subgroup_label(const std::vector<long long>& elems) {
    std::string out;
    for (size_t i = 0; i < elems.size(); ++i) {
        if (i) out += "-";
        out += std::to_string(elems[i]);
    }
    return out;
}

}  // namespace

std::shared_ptr<const GroupPoset> GroupPoset::finite_abelian(const std::vector<long long>& invariant_factors) {
    AbelianGroup g;
    g.factors = invariant_factors;
    for (long long f : invariant_factors) {
        if (f < 2) throw ValidationError("finite abelian poset: invariant factors must be >= 2");
        g.order *= f;
        if (g.order > 4096) throw GuardError("finite abelian poset: group order exceeds 4096");
    }
    if (invariant_factors.empty()) throw ValidationError("finite abelian poset: no invariant factors");

    // Enumerate all subgroups by closing each known subgroup under one more generator.
    std::set<std::vector<long long>> subgroups;
    subgroups.insert({0});
    std::vector<std::vector<long long>> frontier = {{0}};
    while (!frontier.empty()) {
        std::vector<std::vector<long long>> next;
        for (const auto& h : frontier) {
            std::set<long long> in(h.begin(), h.end());
            for (long long x = 1; x < g.order; ++x) {
                if (in.count(x)) continue;
                std::vector<long long> gens = h;
                gens.push_back(x);
                auto closed = g.closure(gens);
                if (subgroups.insert(closed).second) next.push_back(closed);
            }
        }
        frontier = std::move(next);
    }

    std::vector<std::vector<long long>> subs(subgroups.begin(), subgroups.end());
    std::sort(subs.begin(), subs.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();  // ascending index
        return subgroup_label(a) < subgroup_label(b);
    });

    auto p = std::shared_ptr<GroupPoset>(new GroupPoset());
    int n = (int)subs.size();
    for (const auto& s : subs) {
        p->labels_.push_back(subgroup_label(s));
        p->index_.push_back(g.order / (long long)s.size());
    }
    auto contains = [&](int big, int small) {
        return std::includes(subs[big].begin(), subs[big].end(), subs[small].begin(), subs[small].end());
    };
    p->leq_.assign(n, std::vector<bool>(n, false));
    p->marks_.assign(n, std::vector<long long>(n, 0));
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            if (contains(w, v)) {  // V subset of W  <=>  [W] preceq [V]
                p->leq_[v][w] = true;
                p->marks_[v][w] = p->index_[w];
            }
        }
    }
    p->abelian_ = true;
    p->meet_.assign(n, std::vector<int>(n, -1));
    p->join_.assign(n, std::vector<int>(n, -1));
    auto find_sub = [&](const std::vector<long long>& s) {
        auto it = std::find(subs.begin(), subs.end(), s);
        return (int)(it - subs.begin());
    };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::vector<long long> inter;
            std::set_intersection(subs[a].begin(), subs[a].end(), subs[b].begin(), subs[b].end(),
                                  std::back_inserter(inter));
            p->meet_[a][b] = find_sub(inter);
            std::vector<long long> gens = subs[a];
            gens.insert(gens.end(), subs[b].begin(), subs[b].end());
            p->join_[a][b] = find_sub(g.closure(gens));
        }
    }
    p->doc_ = nlohmann::json{{"kind", "abelian"}, {"invariants", invariant_factors}};
    p->validate();
    return p;
}

std::shared_ptr<const GroupPoset> GroupPoset::from_marks(const nlohmann::json& doc) {
    auto p = std::shared_ptr<GroupPoset>(new GroupPoset());
    p->labels_ = doc.at("labels").get<std::vector<std::string>>();
    p->index_ = doc.at("index").get<std::vector<long long>>();
    p->marks_ = doc.at("marks").get<std::vector<std::vector<long long>>>();
    int n = (int)p->labels_.size();
    if ((int)p->index_.size() != n || (int)p->marks_.size() != n)
        throw ValidationError("marks document: labels/index/marks sizes disagree");
    p->leq_.assign(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) {
        if ((int)p->marks_[v].size() != n) throw ValidationError("marks document: matrix is not square");
        for (int w = 0; w < n; ++w) p->leq_[v][w] = p->marks_[v][w] != 0;
    }
    if (doc.contains("meet") != doc.contains("join"))
        throw ValidationError("marks document: meet and join must be supplied together");
    if (doc.contains("meet")) {
        p->abelian_ = true;
        p->meet_ = doc.at("meet").get<std::vector<std::vector<int>>>();
        p->join_ = doc.at("join").get<std::vector<std::vector<int>>>();
    }
    nlohmann::json canonical{{"kind", "marks"},
                        {"labels", p->labels_},
                        {"index", p->index_},
                        {"marks", p->marks_}};
    if (p->abelian_) {
        canonical["meet"] = p->meet_;
        canonical["join"] = p->join_;
    }
    p->doc_ = canonical;
    p->validate();
    return p;
}

std::shared_ptr<const GroupPoset> GroupPoset::from_json(const nlohmann::json& doc) {
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "cyclic") {
        auto ds = doc.at("divisors").get<std::vector<long long>>();
        return cyclic(std::set<long long>(ds.begin(), ds.end()));
    }
    if (kind == "abelian") return finite_abelian(doc.at("invariants").get<std::vector<long long>>());
    if (kind == "marks") return from_marks(doc);
    throw ValidationError("poset document: unknown kind '" + kind + "'");
}

std::set<Int> poset_prime_support(const GroupPoset& poset) {
    std::set<Int> out;
    for (int v = 0; v < poset.size(); ++v)
        for (const Int& p : prime_divisors(Int(poset.index(v)))) out.insert(p);
    return out;
}

SubPoset sub_poset(const PosetPtr& parent, int u) {
    if (!parent->abelian()) throw Error("sub_poset: abelian parent required");
    SubPoset out;
    out.parent = parent;
    out.top = u;
    out.from_parent.assign(parent->size(), -1);
    std::vector<std::string> labels;
    std::vector<long long> index;
    for (int v = 0; v < parent->size(); ++v) {
        if (!parent->leq(u, v)) continue;  // keep V with V contained in U
        out.from_parent[v] = (int)out.parent_pos.size();
        out.parent_pos.push_back(v);
        labels.push_back(parent->label(v));
        index.push_back(parent->index(v) / parent->index(u));
    }
    int n = (int)out.parent_pos.size();
    std::vector<std::vector<long long>> marks(n, std::vector<long long>(n, 0));
    std::vector<std::vector<int>> meet(n, std::vector<int>(n, -1)), join(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int pa = out.parent_pos[a], pb = out.parent_pos[b];
            if (parent->leq(pb, pa)) marks[a][b] = index[b];
            meet[a][b] = out.from_parent[parent->meet(pa, pb)];
            join[a][b] = out.from_parent[parent->join(pa, pb)];
            if (meet[a][b] < 0 || join[a][b] < 0)
                throw Error("sub_poset: lattice operations leave the subgroup");
        }
    }
    out.poset = GroupPoset::from_marks(nlohmann::json{{"labels", labels},
                                                      {"index", index},
                                                      {"marks", marks},
                                                      {"meet", meet},
                                                      {"join", join}});
    return out;
}

void TwistedMatrix::set(int r, int c, QPoly coeff, long long adams) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("TwistedMatrix: out of range");
    if (coeff.is_zero())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = Entry{std::move(coeff), adams};
}

const TwistedMatrix::Entry* TwistedMatrix::get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? nullptr : &it->second;
}

bool TwistedMatrix::operator==(const TwistedMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

TwistedMatrix TwistedMatrix::compose(const TwistedMatrix& o) const {
    if (cols_ != o.rows_) throw Error("TwistedMatrix: shape mismatch in composition");
    TwistedMatrix out(rows_, o.cols_);
    // Collect per-cell sums grouped by Adams power; a cell may legitimately
    // hold several powers during intermediate sums, which must cancel to at
    // most one for the result to be representable.
    std::map<std::pair<int, int>, std::map<long long, QPoly>> acc;
    for (const auto& [rc, e1] : entries_) {
        for (int c = 0; c < o.cols_; ++c) {
            const Entry* e2 = o.get(rc.second, c);
            if (!e2) continue;
            acc[{rc.first, c}][e1.adams * e2->adams] += e1.coeff * e2->coeff;
        }
    }
    for (auto& [cell, byp] : acc) {
        QPoly coeff;
        long long adams = 1;
        int live = 0;
        for (auto& [a, c] : byp) {
            if (c.is_zero()) continue;
            ++live;
            coeff = c;
            adams = a;
        }
        if (live > 1) throw Error("TwistedMatrix: composition mixes Adams powers in one cell");
        if (live == 1) out.set(cell.first, cell.second, coeff, adams);
    }
    return out;
}

TwistedMatrix TwistedMatrix::scaled(const QPoly& c) const {
    TwistedMatrix out(rows_, cols_);
    for (const auto& [rc, e] : entries_) out.set(rc.first, rc.second, e.coeff * c, e.adams);
    return out;
}

TwistedMatrix TwistedMatrix::row(int r) const {
    TwistedMatrix out(1, cols_);
    for (int c = 0; c < cols_; ++c)
        if (const Entry* e = get(r, c)) out.set(0, c, e->coeff, e->adams);
    return out;
}

std::vector<MultiPoly> TwistedMatrix::apply(const std::vector<MultiPoly>& x) const {
    if ((int)x.size() != cols_) throw Error("TwistedMatrix: vector length mismatch");
    std::vector<MultiPoly> out(rows_);
    for (const auto& [rc, e] : entries_)
        out[rc.first] += x[rc.second].adams(e.adams).scaled(e.coeff);
    return out;
}

nlohmann::json TwistedMatrix::to_json(const std::vector<std::string>& row_labels,
                                      const std::vector<std::string>& col_labels) const {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [rc, e] : entries_) {
        cells.push_back({{"row", row_labels[rc.first]},
                         {"col", col_labels[rc.second]},
                         {"coeff", e.coeff.to_json()},
                         {"adams", e.adams}});
    }
    return nlohmann::json{{"entries", cells}};
}

TwistedMatrix zeta_q(const GroupPoset& poset, bool twisted) {
    int n = poset.size();
    TwistedMatrix z(n, n);
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            if (!poset.leq(w, v)) continue;
            long long k = poset.rel_index(w, v);
            z.set(v, w, QPoly::q_power(k - 1, Rat(poset.marks(v, w))), twisted ? k : 1);
        }
    }
    return z;
}

TwistedMatrix mu_q(const GroupPoset& poset, bool twisted) {
    int n = poset.size();
    TwistedMatrix zeta = zeta_q(poset, false);
    TwistedMatrix mu(n, n);
    // Forward substitution row by row; the diagonal of zeta^q is the constant
    // marks(v,v) > 0, so no pivoting is ever needed.
    for (int v = 0; v < n; ++v) {
        Rat dv(poset.marks(v, v));
        for (int w = v; w >= 0; --w) {
            if (!poset.leq(w, v)) continue;
            QPoly s;
            if (w == v) {
                s = QPoly(Rat(1));
            } else {
                for (int z = w; z < v; ++z) {
                    if (!poset.leq(w, z) || !poset.leq(z, v)) continue;
                    const auto* ze = zeta.get(v, z);
                    const auto* me = mu.get(z, w);
                    if (ze && me) s -= ze->coeff * me->coeff;
                }
            }
            QPoly entry = s.scaled(Rat(1) / dv);
            if (!entry.is_zero()) mu.set(v, w, entry, twisted ? poset.rel_index(w, v) : 1);
        }
    }
    // exact verification of the inverse, both ways
    TwistedMatrix plain(n, n);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (const auto* e = mu.get(v, w)) plain.set(v, w, e->coeff, 1);
    TwistedMatrix id(n, n);
    for (int v = 0; v < n; ++v) id.set(v, v, QPoly(Rat(1)), 1);
    if (!(zeta.compose(plain) == id) || !(plain.compose(zeta) == id))
        throw Error("mu_q: inverse verification failed");
    return mu;
}

QPoly mu_coeff(const TwistedMatrix& mu, int v, int w) {
    const auto* e = mu.get(v, w);
    return e ? e->coeff : QPoly();
}

bool bold_mu_integer_coeffs(const GroupPoset& poset) {
    TwistedMatrix mu = mu_q(poset, false);
    for (int v = 0; v < poset.size(); ++v)
        for (int w = 0; w <= v; ++w)
            if (const auto* e = mu.get(v, w))
                if (!e->coeff.scaled(Rat(poset.index(v))).integer_coeffs()) return false;
    return true;
}

}  // namespace wbr
