#pragma once

// Chordal and affine (annular) link patterns: the index sets for every
// Coulomb gas integral and meander matrix in this library.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "slecg/errors.hpp"

namespace slecg {

using Link = std::pair<int, int>;  // {i, j} with 1 <= i < j <= n

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n > 62) throw DomainError("binomial: n too large");
    std::uint64_t r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

// dim V_{n,m} = C(n,m) - C(n,m-1), the Catalan triangle entry.
inline std::uint64_t dimension(int n, int m) {
    if (n < 0 || m < 0 || 2 * m > n) throw DomainError("dimension: need 0 <= m <= n/2");
    return binomial(n, m) - binomial(n, m - 1);
}

// Planar pairing of m links among points 1..n; the other n-2m points are
// defects (rays to infinity). Links are kept sorted by left endpoint.
class LinkPattern {
public:
    LinkPattern() : n_(0) {}

    LinkPattern(int n, std::vector<Link> links) : n_(n), links_(std::move(links)) {
        if (n_ < 0) throw DomainError("LinkPattern: negative n");
        for (auto& l : links_) {
            if (l.first > l.second) std::swap(l.first, l.second);
            if (l.first < 1 || l.second > n_ || l.first == l.second)
                throw DomainError("LinkPattern: link endpoint out of range");
        }
        std::sort(links_.begin(), links_.end());
        std::vector<int> used(n_ + 1, 0);
        for (const auto& l : links_) {
            if (used[l.first]++ || used[l.second]++)
                throw DomainError("LinkPattern: links not pairwise disjoint");
        }
        for (std::size_t a = 0; a < links_.size(); ++a)
            for (std::size_t b = a + 1; b < links_.size(); ++b)
                if (crossing(links_[a], links_[b]))
                    throw DomainError("LinkPattern: crossing links");
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(links_.size()); }
    const std::vector<Link>& links() const { return links_; }

    std::vector<int> defects() const {
        std::vector<int> used(n_ + 1, 0), d;
        for (const auto& l : links_) used[l.first] = used[l.second] = 1;
        for (int i = 1; i <= n_; ++i)
            if (!used[i]) d.push_back(i);
        return d;
    }

    bool has_link(int i, int j) const {
        if (i > j) std::swap(i, j);
        return std::binary_search(links_.begin(), links_.end(), Link{i, j});
    }

    // Partner of index i, or nullopt when i is a defect.
    std::optional<int> partner(int i) const {
        for (const auto& l : links_) {
            if (l.first == i) return l.second;
            if (l.second == i) return l.first;
        }
        return std::nullopt;
    }

    // Index reversal i -> n+1-i.
    LinkPattern mirror() const {
        std::vector<Link> ls;
        ls.reserve(links_.size());
        for (const auto& l : links_) ls.push_back({n_ + 1 - l.second, n_ + 1 - l.first});
        return LinkPattern(n_, std::move(ls));
    }

    bool operator==(const LinkPattern& o) const { return n_ == o.n_ && links_ == o.links_; }
    bool operator<(const LinkPattern& o) const { return links_ < o.links_; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t k = 0; k < links_.size(); ++k) {
            if (k) s += ",";
            s += "{" + std::to_string(links_[k].first) + "," +
                 std::to_string(links_[k].second) + "}";
        }
        return s + "}";
    }

    static bool crossing(const Link& a, const Link& b) {
        return (a.first < b.first && b.first < a.second && a.second < b.second) ||
               (b.first < a.first && a.first < b.second && b.second < a.second);
    }

private:
    int n_;
    std::vector<Link> links_;
};

// All basis patterns of V_{n,m}: non-crossing, no defect under a link,
// listed in lexicographic order on the sorted link lists.
inline std::vector<LinkPattern> enumerate_chordal(int n, int m) {
    if (n < 0 || m < 0 || 2 * m > n) throw DomainError("enumerate_chordal: need 0 <= m <= n/2");
    std::vector<std::vector<Link>> out;
    std::vector<Link> cur;
    std::vector<int> state(n + 1, 0);  // 0 free, 1 linked, 2 defect

    auto covered_by_cur = [&](int t) {
        for (const auto& l : cur)
            if (l.first < t && t < l.second) return true;
        return false;
    };

    auto rec = [&](auto&& self, int pos, int placed) -> void {
        if (placed == m) {
            for (int t = 1; t <= n; ++t)
                if (state[t] == 0 && covered_by_cur(t)) return;  // trapped defect
            out.push_back(cur);
            return;
        }
        if (pos > n) return;
        if (state[pos] != 0) {
            self(self, pos + 1, placed);
            return;
        }
        // link pos to a later free point, keeping planarity and defect access
        for (int j = pos + 1; j <= n; ++j) {
            if (state[j] != 0) continue;
            bool ok = true;
            for (int t = pos + 1; t < j; ++t)
                if (state[t] == 2) { ok = false; break; }
            if (ok)
                for (const auto& l : cur)
                    if (LinkPattern::crossing({pos, j}, l)) { ok = false; break; }
            if (!ok) continue;
            state[pos] = state[j] = 1;
            cur.push_back({pos, j});
            self(self, pos + 1, placed + 1);
            cur.pop_back();
            state[pos] = state[j] = 0;
        }
        // leave pos as a defect; no open link may cover it
        if (!covered_by_cur(pos)) {
            state[pos] = 2;
            self(self, pos + 1, placed);
            state[pos] = 0;
        }
    };
    rec(rec, 1, 0);
    std::sort(out.begin(), out.end());
    std::vector<LinkPattern> res;
    res.reserve(out.size());
    for (auto& ls : out) res.emplace_back(n, std::move(ls));
    return res;
}

// Removes the adjacent link {j, j+1} and relabels indices > j+1 down by 2.
inline LinkPattern remove_link(const LinkPattern& a, int j) {
    if (!a.has_link(j, j + 1))
        throw DomainError("remove_link: {j, j+1} is not a link of the pattern");
    std::vector<Link> ls;
    for (const auto& l : a.links()) {
        if (l == Link{j, j + 1}) continue;
        auto shift = [&](int t) { return t > j + 1 ? t - 2 : t; };
        ls.push_back({shift(l.first), shift(l.second)});
    }
    return LinkPattern(a.n() - 2, std::move(ls));
}

// Inverse of remove_link: shift indices >= j up by 2 and insert {j, j+1}.
inline LinkPattern insert_link(const LinkPattern& a, int j) {
    if (j < 1 || j > a.n() + 1) throw DomainError("insert_link: position out of range");
    std::vector<Link> ls;
    auto shift = [&](int t) { return t >= j ? t + 2 : t; };
    for (const auto& l : a.links()) ls.push_back({shift(l.first), shift(l.second)});
    ls.push_back({j, j + 1});
    return LinkPattern(a.n() + 2, std::move(ls));
}

struct GlueResult {
    bool matched = false;
    std::optional<int> loops;                         // chordal closed loops
    std::optional<std::pair<int, int>> affine_loops;  // (n_a, n_b)
};

// Closes the diagram of alpha against beta. Indices are aligned point by
// point; the mirror step of the diagrammatic definition only reverses arc
// orientation and is the identity on labels (the paper's n=4 Gram matrices
// fix this convention). matched iff every defect of alpha meets one of beta.
inline GlueResult glue(const LinkPattern& alpha, const LinkPattern& beta) {
    if (alpha.n() != beta.n()) throw DomainError("glue: size mismatch");
    if (alpha.m() != beta.m()) throw DomainError("glue: link count mismatch");
    const int n = alpha.n();
    std::vector<int> visited(n + 1, 0);
    int loops = 0;
    bool matched = true;

    for (int s = 1; s <= n; ++s) {
        if (visited[s]) continue;
        bool closed = false;
        int ends_alpha = 0, ends_beta = 0;
        for (int dir = 0; dir < 2 && !closed; ++dir) {
            int p = s;
            bool on_beta = (dir == 0);
            while (true) {
                visited[p] = 1;
                auto q = (on_beta ? beta : alpha).partner(p);
                if (!q) {
                    (on_beta ? ends_beta : ends_alpha)++;
                    break;
                }
                p = *q;
                visited[p] = 1;
                on_beta = !on_beta;
                if (p == s && on_beta == (dir == 0)) {
                    closed = true;
                    break;
                }
            }
        }
        if (closed)
            ++loops;
        else if (ends_alpha != 1 || ends_beta != 1)
            matched = false;
    }
    GlueResult r;
    r.matched = matched;
    if (matched) r.loops = loops;
    return r;
}

// ---------------------------------------------------------------------------
// Affine (annular) patterns
// ---------------------------------------------------------------------------

// A link on the annulus, stored as a chord of the universal cover: the arc
// joins positions (s mod n) and (t mod n) with 1 <= s <= n, s < t < s+n.
// Winding tag = 1 when the arc crosses the periodic seam (t > n).
struct AffineLink {
    int s = 0;
    int t = 0;
    bool operator==(const AffineLink& o) const { return s == o.s && t == o.t; }
    bool operator<(const AffineLink& o) const { return std::tie(s, t) < std::tie(o.s, o.t); }
};

class AffineLinkPattern {
public:
    AffineLinkPattern() : n_(0) {}

    AffineLinkPattern(int n, std::vector<AffineLink> links) : n_(n), links_(std::move(links)) {
        if (n_ < 1) throw DomainError("AffineLinkPattern: need n >= 1");
        std::sort(links_.begin(), links_.end());
        std::vector<int> used(n_ + 1, 0);
        for (const auto& l : links_) {
            if (l.s < 1 || l.s > n_ || l.t <= l.s || l.t >= l.s + n_)
                throw DomainError("AffineLinkPattern: bad chord");
            int a = base(l.s), b = base(l.t);
            if (a == b || used[a]++ || used[b]++)
                throw DomainError("AffineLinkPattern: links not pairwise disjoint");
        }
        std::vector<int> defs;
        for (int i = 1; i <= n_; ++i)
            if (!used[i]) defs.push_back(i);
        // planarity on the annulus, checked in the universal cover
        for (std::size_t a = 0; a < links_.size(); ++a) {
            for (std::size_t b = a; b < links_.size(); ++b) {
                for (int k = -1; k <= 1; ++k) {
                    if (a == b && k == 0) continue;
                    if (interleave(links_[a].s, links_[a].t,
                                   links_[b].s + k * n_, links_[b].t + k * n_))
                        throw DomainError("AffineLinkPattern: crossing arcs");
                }
            }
            for (int d : defs)
                for (int k = 0; k <= 1; ++k)
                    if (links_[a].s < d + k * n_ && d + k * n_ < links_[a].t)
                        throw DomainError("AffineLinkPattern: arc covers a defect ray");
        }
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(links_.size()); }
    const std::vector<AffineLink>& links() const { return links_; }

    int base(int cover) const {
        int b = (cover - 1) % n_;
        if (b < 0) b += n_;
        return b + 1;
    }

    std::vector<int> defects() const {
        std::vector<int> used(n_ + 1, 0), d;
        for (const auto& l : links_) {
            used[base(l.s)] = 1;
            used[base(l.t)] = 1;
        }
        for (int i = 1; i <= n_; ++i)
            if (!used[i]) d.push_back(i);
        return d;
    }

    // Reflection i -> n+1-i (windings flip side).
    AffineLinkPattern mirror() const {
        std::vector<AffineLink> ls;
        for (const auto& l : links_) {
            int s = n_ + 1 - l.t, t = n_ + 1 - l.s;
            while (s < 1) { s += n_; t += n_; }
            while (s > n_) { s -= n_; t -= n_; }
            ls.push_back({s, t});
        }
        return AffineLinkPattern(n_, std::move(ls));
    }

    bool operator==(const AffineLinkPattern& o) const { return n_ == o.n_ && links_ == o.links_; }
    bool operator<(const AffineLinkPattern& o) const { return links_ < o.links_; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t k = 0; k < links_.size(); ++k) {
            if (k) s += ",";
            s += "(" + std::to_string(links_[k].s) + "," + std::to_string(links_[k].t) + ")";
        }
        return s + "}";
    }

    static bool interleave(int a1, int a2, int b1, int b2) {
        return (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2);
    }

private:
    int n_;
    std::vector<AffineLink> links_;
};

// All isotopy classes of annular diagrams with m links and n-2m through-lines.
// Every matched pair admits two candidate routings (either side of the
// puncture); the pattern constructor rejects the non-planar combinations.
inline std::vector<AffineLinkPattern> enumerate_affine(int n, int m) {
    if (n < 1 || m < 0 || 2 * m > n) throw DomainError("enumerate_affine: need 0 <= m <= n/2");
    std::vector<AffineLinkPattern> out;

    std::vector<std::vector<Link>> matchings;
    std::vector<Link> curm;
    auto match_rec = [&](auto&& self, std::vector<int> rest) -> void {
        if (rest.empty()) {
            matchings.push_back(curm);
            return;
        }
        int a = rest.front();
        for (std::size_t k = 1; k < rest.size(); ++k) {
            std::vector<int> next;
            for (std::size_t t = 1; t < rest.size(); ++t)
                if (t != k) next.push_back(rest[t]);
            curm.push_back({a, rest[k]});
            self(self, next);
            curm.pop_back();
        }
    };

    std::vector<int> idx;
    auto subset_rec = [&](auto&& self, int pos, int need) -> void {
        if (need == 0) {
            matchings.clear();
            curm.clear();
            match_rec(match_rec, idx);
            for (const auto& mt : matchings) {
                const int mm = static_cast<int>(mt.size());
                for (int mask = 0; mask < (1 << mm); ++mask) {
                    std::vector<AffineLink> ls;
                    for (int b = 0; b < mm; ++b) {
                        int i = mt[b].first, j = mt[b].second;
                        if (mask & (1 << b))
                            ls.push_back({j, i + n});
                        else
                            ls.push_back({i, j});
                    }
                    try {
                        out.emplace_back(n, std::move(ls));
                    } catch (const DomainError&) {
                    }
                }
            }
            return;
        }
        if (pos > n || n - pos + 1 < need) return;
        idx.push_back(pos);
        self(self, pos + 1, need - 1);
        idx.pop_back();
        self(self, pos + 1, need);
    };
    subset_rec(subset_rec, 1, 2 * m);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Gram closure on the cylinder. Loops are traced in the universal cover; a
// loop is non-contractible iff its net winding around the axis is nonzero.
inline GlueResult glue_affine(const AffineLinkPattern& alpha, const AffineLinkPattern& beta) {
    if (alpha.n() != beta.n()) throw DomainError("glue_affine: size mismatch");
    if (alpha.m() != beta.m()) throw DomainError("glue_affine: link count mismatch");
    const int n = alpha.n();

    // cover partner maps: the chord through base point i sends cover
    // position i+k*n to partner+k*n
    auto make_map = [&](const AffineLinkPattern& p) {
        std::vector<long> part(n + 1, 0);
        std::vector<int> linked(n + 1, 0);
        for (const auto& l : p.links()) {
            int bs = p.base(l.s), bt = p.base(l.t);
            part[bs] = l.t - (l.s - bs);
            part[bt] = l.s - (l.t - bt);
            linked[bs] = linked[bt] = 1;
        }
        return std::make_pair(part, linked);
    };
    auto [pa, la] = make_map(alpha);
    auto [pb, lb] = make_map(beta);
    auto to_base = [&](long p) {
        long b = (p - 1) % n;
        if (b < 0) b += n;
        return static_cast<int>(b) + 1;
    };
    auto step = [&](const std::vector<long>& part, long p) {
        int b = to_base(p);
        return part[b] + (p - b);
    };

    std::vector<int> visited(n + 1, 0);
    bool matched = true;
    int na = 0, nb = 0;
    for (int s = 1; s <= n; ++s) {
        if (visited[s]) continue;
        bool closed = false;
        long winding = 0;
        int ends_alpha = 0, ends_beta = 0;
        for (int dir = 0; dir < 2 && !closed; ++dir) {
            long p = s;
            bool on_beta = (dir == 0);
            while (true) {
                int b = to_base(p);
                visited[b] = 1;
                const auto& linked = on_beta ? lb : la;
                if (!linked[b]) {
                    (on_beta ? ends_beta : ends_alpha)++;
                    break;
                }
                p = step(on_beta ? pb : pa, p);
                b = to_base(p);
                visited[b] = 1;
                on_beta = !on_beta;
                if (b == s && on_beta == (dir == 0)) {
                    closed = true;
                    winding = (p - s) / n;
                    break;
                }
            }
        }
        if (closed)
            (winding == 0 ? na : nb)++;
        else if (ends_alpha != 1 || ends_beta != 1)
            matched = false;
    }
    GlueResult r;
    r.matched = matched;
    if (matched) r.affine_loops = {na, nb};
    return r;
}

}  // namespace slecg
