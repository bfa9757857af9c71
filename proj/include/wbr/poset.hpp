#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "wbr/multipoly.hpp"

namespace wbr {

// Finite model of the poset of (conjugacy classes of) open subgroups of a
// profinite group, together with its table of marks.
//
// Position 0 is the whole group. The linear order of positions extends the
// subconjugacy order: leq(w,v) ("[W] precedes [V]") implies w <= v. For an
// abelian poset leq(w,v) holds iff the subgroup at v is contained in the one
// at w, and marks(v,w) = index(w) whenever leq(w,v).
class GroupPoset {
public:
    static std::shared_ptr<const GroupPoset> cyclic(const std::set<long long>& divisors);
    static std::shared_ptr<const GroupPoset> finite_abelian(const std::vector<long long>& invariant_factors);
    static std::shared_ptr<const GroupPoset> from_marks(const nlohmann::json& doc);
    static std::shared_ptr<const GroupPoset> from_json(const nlohmann::json& doc);

    int size() const { return (int)labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_[v]; }
    int position(const std::string& label) const;  // throws if unknown
    long long index(int v) const { return index_[v]; }

    bool leq(int w, int v) const { return leq_[v][w]; }  // [W] preceq [V]
    long long marks(int v, int w) const { return marks_[v][w]; }
    // (W:V) = index(v)/index(w); requires leq(w,v).
    long long rel_index(int w, int v) const;

    bool abelian() const { return abelian_; }
    bool is_cyclic() const { return doc_.value("kind", "") == "cyclic"; }
    int meet(int a, int b) const;  // subgroup intersection
    int join(int a, int b) const;  // subgroup generated by the union

    nlohmann::json to_json() const { return doc_; }
    std::string content_key() const;  // stable hash of the canonical document

private:
    GroupPoset() = default;
    void validate() const;

    std::vector<std::string> labels_;
    std::vector<long long> index_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<long long>> marks_;
    bool abelian_ = false;
    std::vector<std::vector<int>> meet_, join_;
    nlohmann::json doc_;
};

using PosetPtr = std::shared_ptr<const GroupPoset>;

// Primes dividing some index (G:U) over the truncation.
std::set<Int> poset_prime_support(const GroupPoset& poset);

// The poset of open subgroups of U inside an abelian parent poset, with
// indices recomputed relative to U and marks/meet/join restricted. Labels are
// inherited from the parent, so nested sub-posets can be located by label.
struct SubPoset {
    PosetPtr parent;
    int top;  // position of U in the parent
    PosetPtr poset;
    std::vector<int> parent_pos;   // subposet position -> parent position
    std::vector<int> from_parent;  // parent position -> subposet position, -1 outside
};

SubPoset sub_poset(const PosetPtr& parent, int u);

// Matrix whose entries are pairs (coefficient in Q[q], Adams power),
// representing operators of the form c(q) * Psi^n. Composition multiplies
// coefficients as plain polynomials (q is a binomial scalar) and multiplies
// Adams powers.
class TwistedMatrix {
public:
    struct Entry {
        QPoly coeff;
        long long adams = 1;
        bool operator==(const Entry& o) const { return coeff == o.coeff && adams == o.adams; }
    };

    TwistedMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void set(int r, int c, QPoly coeff, long long adams);
    const Entry* get(int r, int c) const;
    bool operator==(const TwistedMatrix& o) const;
    bool operator!=(const TwistedMatrix& o) const { return !(*this == o); }

    TwistedMatrix compose(const TwistedMatrix& o) const;
    TwistedMatrix scaled(const QPoly& c) const;
    TwistedMatrix row(int r) const;  // 1 x cols slice
    // Apply to a symbolic vector; Psi^n acts as MultiPoly::adams.
    std::vector<MultiPoly> apply(const std::vector<MultiPoly>& x) const;

    nlohmann::json to_json(const std::vector<std::string>& row_labels,
                           const std::vector<std::string>& col_labels) const;

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Entry> entries_;
};

// zeta^q matrix: entries (marks(v,w) * q^{(W:V)-1}, (W:V)) for leq(w,v);
// Adams power 1 everywhere when twisted = false.
TwistedMatrix zeta_q(const GroupPoset& poset, bool twisted);

// Inverse of zeta^q over Q[q] by forward substitution; the twisted inverse
// carries the same coefficients with Adams power (W:V). The product with
// zeta^q is re-verified exactly.
TwistedMatrix mu_q(const GroupPoset& poset, bool twisted);

// mu^q(V,W) as a plain coefficient (adams stripped), zero when !leq(w,v).
QPoly mu_coeff(const TwistedMatrix& mu, int v, int w);

// Observed (not assumed) property: index(V) * mu^q(V,W) has integer
// coefficients. Verified per poset and reported.
bool bold_mu_integer_coeffs(const GroupPoset& poset);

}  // namespace wbr
