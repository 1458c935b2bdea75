#pragma once

// Diagram calculus for TL_n and affine TL_n: composition with loop
// extraction, and the standard-module action on link states.

#include <utility>
#include <vector>

#include "slecg/errors.hpp"
#include "slecg/patterns.hpp"

namespace slecg {

// Planar pairing of 2n boundary points of a rectangle: 1..n on the top edge
// (left to right), n+1..2n on the bottom edge (left to right).
class TLDiagram {
public:
    TLDiagram() : n_(0) {}

    TLDiagram(int n, std::vector<int> mate, long internal_loops = 0)
        : n_(n), mate_(std::move(mate)), internal_loops_(internal_loops) {
        if (n_ < 1 || static_cast<int>(mate_.size()) != 2 * n_ + 1)
            throw DomainError("TLDiagram: bad mate table");
        for (int i = 1; i <= 2 * n_; ++i) {
            int j = mate_[i];
            if (j < 1 || j > 2 * n_ || j == i || mate_[j] != i)
                throw DomainError("TLDiagram: mate table is not an involution");
        }
        // planarity on the boundary circle t1..tn, b_n..b_1
        auto circ = [&](int p) { return p <= n_ ? p : 3 * n_ + 1 - p; };
        for (int i = 1; i <= 2 * n_; ++i) {
            if (mate_[i] < i) continue;
            for (int j = i + 1; j <= 2 * n_; ++j) {
                if (mate_[j] < j) continue;
                int a1 = circ(i), a2 = circ(mate_[i]);
                int b1 = circ(j), b2 = circ(mate_[j]);
                if (a1 > a2) std::swap(a1, a2);
                if (b1 > b2) std::swap(b1, b2);
                if (AffineLinkPattern::interleave(a1, a2, b1, b2))
                    throw DomainError("TLDiagram: crossing strands");
            }
        }
    }

    int n() const { return n_; }
    int mate(int p) const { return mate_[p]; }
    long internal_loops() const { return internal_loops_; }

    static TLDiagram identity(int n) {
        std::vector<int> m(2 * n + 1);
        for (int i = 1; i <= n; ++i) {
            m[i] = n + i;
            m[n + i] = i;
        }
        return TLDiagram(n, std::move(m));
    }

    // Generator u_i: cup (t_i, t_{i+1}), cap (b_i, b_{i+1}), rest through.
    static TLDiagram generator(int n, int i) {
        if (i < 1 || i + 1 > n) throw DomainError("TLDiagram::generator: index out of range");
        std::vector<int> m(2 * n + 1);
        for (int k = 1; k <= n; ++k) {
            m[k] = n + k;
            m[n + k] = k;
        }
        m[i] = i + 1;
        m[i + 1] = i;
        m[n + i] = n + i + 1;
        m[n + i + 1] = n + i;
        return TLDiagram(n, std::move(m));
    }

    bool operator==(const TLDiagram& o) const {
        return n_ == o.n_ && mate_ == o.mate_ && internal_loops_ == o.internal_loops_;
    }

private:
    int n_;
    std::vector<int> mate_;
    long internal_loops_ = 0;
};

struct TLComposeResult {
    TLDiagram diagram;
    int loops = 0;  // closed loops extracted by this composition
};

// Stacks d2 under d1 (d1's bottom edge glued to d2's top edge); the product
// acts as "apply d2 first": act(compose(d1,d2), s) == act(d1, act(d2, s)).
inline TLComposeResult compose(const TLDiagram& d1, const TLDiagram& d2) {
    if (d1.n() != d2.n()) throw DomainError("compose: size mismatch");
    const int n = d1.n();

    enum Zone { Top, Mid, Bot };
    struct Node {
        Zone z;
        int i;
    };
    auto d1_step = [&](Node u) -> Node {
        int q = d1.mate(u.z == Top ? u.i : n + u.i);
        return q <= n ? Node{Top, q} : Node{Mid, q - n};
    };
    auto d2_step = [&](Node u) -> Node {
        int q = d2.mate(u.z == Mid ? u.i : n + u.i);
        return q <= n ? Node{Mid, q} : Node{Bot, q - n};
    };

    std::vector<int> mate(2 * n + 1, 0);
    std::vector<int> mid_seen(n + 1, 0);
    for (int start = 1; start <= 2 * n; ++start) {
        if (mate[start]) continue;
        Node u = start <= n ? Node{Top, start} : Node{Bot, start - n};
        bool from_d1 = (u.z == Top);
        Node v = from_d1 ? d1_step(u) : d2_step(u);
        while (v.z == Mid) {
            mid_seen[v.i] = 1;
            v = from_d1 ? d2_step(v) : d1_step(v);
            from_d1 = !from_d1;
        }
        int b = (v.z == Top) ? v.i : n + v.i;
        mate[start] = b;
        mate[b] = start;
    }

    int loops = 0;
    for (int s = 1; s <= n; ++s) {
        if (mid_seen[s]) continue;
        ++loops;
        Node v{Mid, s};
        bool use_d1 = true;
        while (true) {
            mid_seen[v.i] = 1;
            v = use_d1 ? d1_step(v) : d2_step(v);
            use_d1 = !use_d1;
            if (v.i == s && use_d1) break;
        }
    }

    return {TLDiagram(n, std::move(mate), d1.internal_loops() + d2.internal_loops()), loops};
}

struct TLActResult {
    bool zero_in_module = false;  // state left V_{n,p}: link count grew
    int loops = 0;
    LinkPattern state;
};

// Concatenates diagram d onto link state s (state below, result read off the
// top edge of d). Returns the zero marker when the link count increases.
inline TLActResult act(const TLDiagram& d, const LinkPattern& s) {
    if (d.n() != s.n()) throw DomainError("act: size mismatch");
    const int n = d.n();

    std::vector<int> bot_seen(n + 1, 0);
    // walk downward from a top point; marks every bottom node it passes
    auto trace_from_top = [&](int top_start) {
        int p = top_start;
        while (true) {
            int q = d.mate(p);
            if (q <= n) return std::pair<bool, int>{true, q};
            bot_seen[q - n] = 1;
            auto pr = s.partner(q - n);
            if (!pr) return std::pair<bool, int>{false, q - n};
            bot_seen[*pr] = 1;
            p = n + *pr;
        }
    };

    std::vector<Link> links;
    std::vector<int> top_done(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        if (top_done[i]) continue;
        auto [reached_top, j] = trace_from_top(i);
        top_done[i] = 1;
        if (reached_top) {
            top_done[j] = 1;
            links.push_back({i, j});
        }
    }

    // remaining bottom components: cycles (loops) or defect-defect paths
    int loops = 0;
    for (int b = 1; b <= n; ++b) {
        if (bot_seen[b]) continue;
        bool closed = false;
        for (int dir = 0; dir < 2 && !closed; ++dir) {
            int p = b;
            bool use_cap = (dir == 0);
            while (true) {
                bot_seen[p] = 1;
                int q;
                if (use_cap) {
                    q = d.mate(n + p) - n;  // unvisited components never reach the top
                } else {
                    auto pr = s.partner(p);
                    if (!pr) break;
                    q = *pr;
                }
                bot_seen[q] = 1;
                p = q;
                use_cap = !use_cap;
                if (p == b && use_cap == (dir == 0)) {
                    closed = true;
                    break;
                }
            }
        }
        if (closed) ++loops;
    }

    LinkPattern out(n, std::move(links));
    TLActResult r;
    r.loops = loops;
    r.zero_in_module = out.m() > s.m();
    r.state = std::move(out);
    return r;
}

// All Catalan(n) basis diagrams of TL_n.
inline std::vector<TLDiagram> enumerate_tl_basis(int n) {
    std::vector<TLDiagram> out;
    auto point_of_circ = [&](int c) { return c <= n ? c : 3 * n + 1 - c; };
    std::vector<std::pair<int, int>> chosen;
    auto rec = [&](auto&& self, std::vector<std::pair<int, int>> segments) -> void {
        while (!segments.empty() && segments.back().first > segments.back().second)
            segments.pop_back();
        if (segments.empty()) {
            std::vector<int> mate(2 * n + 1, 0);
            for (auto [a, b] : chosen) {
                mate[point_of_circ(a)] = point_of_circ(b);
                mate[point_of_circ(b)] = point_of_circ(a);
            }
            out.emplace_back(n, std::move(mate));
            return;
        }
        auto [lo, hi] = segments.back();
        segments.pop_back();
        for (int j = lo + 1; j <= hi; j += 2) {
            chosen.push_back({lo, j});
            auto segs = segments;
            segs.push_back({j + 1, hi});
            segs.push_back({lo + 1, j - 1});
            self(self, segs);
            chosen.pop_back();
        }
    };
    rec(rec, {{1, 2 * n}});
    return out;
}

// ---------------------------------------------------------------------------
// Affine diagrams on the cylinder
// ---------------------------------------------------------------------------

// Pairing of 2n points (n per boundary circle of the cylinder) with winding
// data in the universal cover. For the endpoint anchored at base position i
// of its side, other_cover holds the cover position of the strand's far end.
class AffineDiagram {
public:
    AffineDiagram() : n_(0) {}

    // endpoint ids: 0..n-1 top base 1..n, n..2n-1 bottom base 1..n
    AffineDiagram(int n, std::vector<int> other_side, std::vector<long> other_cover,
                  long loops_a = 0, long loops_b = 0)
        : n_(n),
          other_side_(std::move(other_side)),
          other_cover_(std::move(other_cover)),
          loops_a_(loops_a),
          loops_b_(loops_b) {
        if (n_ < 1 || other_side_.size() != static_cast<std::size_t>(2 * n_) ||
            other_cover_.size() != static_cast<std::size_t>(2 * n_))
            throw DomainError("AffineDiagram: bad tables");
        for (int x = 0; x < 2 * n_; ++x) {
            int tau = other_side_[x];
            long c = other_cover_[x];
            int b = base_of(c);
            int y = tau * n_ + (b - 1);
            long back = other_cover_[y] + (c - b);
            int my_side = x < n_ ? 0 : 1;
            long my_base = x % n_ + 1;
            if (tau != 0 && tau != 1)
                throw DomainError("AffineDiagram: bad side tag");
            if (other_side_[y] != my_side || back != my_base)
                throw DomainError("AffineDiagram: tables are not an involution");
        }
    }

    int n() const { return n_; }
    long loops_a() const { return loops_a_; }
    long loops_b() const { return loops_b_; }

    int base_of(long cover) const {
        long b = (cover - 1) % n_;
        if (b < 0) b += n_;
        return static_cast<int>(b) + 1;
    }

    // far end of the strand leaving endpoint (side, cover position p)
    std::pair<int, long> far_end(int side, long p) const {
        int b = base_of(p);
        int x = side * n_ + (b - 1);
        return {other_side_[x], other_cover_[x] + (p - b)};
    }

    static AffineDiagram identity(int n) { return omega(n, 0); }

    // Rotation generator: Omega^power; Omega joins top i to bottom i+1,
    // so that Omega e_i Omega^{-1} = e_{i-1} (indices mod n).
    static AffineDiagram omega(int n, int power = 1) {
        if (n < 1) throw DomainError("AffineDiagram::omega: need n >= 1");
        std::vector<int> os(2 * n);
        std::vector<long> oc(2 * n);
        for (int i = 1; i <= n; ++i) {
            os[i - 1] = 1;
            oc[i - 1] = i + power;
            os[n + i - 1] = 0;
            oc[n + i - 1] = i - power;
        }
        return AffineDiagram(n, std::move(os), std::move(oc));
    }

    // e_i for i in 0..n-1; e_0 cups across the periodic seam (n, 1).
    static AffineDiagram e(int n, int i) {
        if (n < 2 || i < 0 || i >= n) throw DomainError("AffineDiagram::e: index out of range");
        auto d = identity(n);
        auto cup = [&](int side, int a, long other) {
            d.other_side_[side * n + a - 1] = side;
            d.other_cover_[side * n + a - 1] = other;
        };
        if (i >= 1) {
            cup(0, i, i + 1);
            cup(0, i + 1, i);
            cup(1, i, i + 1);
            cup(1, i + 1, i);
        } else {
            cup(0, n, n + 1);
            cup(0, 1, 0);
            cup(1, n, n + 1);
            cup(1, 1, 0);
        }
        return d;
    }

    bool operator==(const AffineDiagram& o) const {
        return n_ == o.n_ && other_side_ == o.other_side_ && other_cover_ == o.other_cover_ &&
               loops_a_ == o.loops_a_ && loops_b_ == o.loops_b_;
    }

private:
    int n_;
    std::vector<int> other_side_;  // 0 top, 1 bottom
    std::vector<long> other_cover_;
    long loops_a_ = 0;
    long loops_b_ = 0;
};

struct AffineComposeResult {
    AffineDiagram diagram;
    int loops_a = 0;  // contractible loops extracted
    int loops_b = 0;  // non-contractible loops extracted
};

// Stacks d2 under d1 on the cylinder; winding is tracked exactly, and
// extracted loops are split by contractibility.
inline AffineComposeResult compose(const AffineDiagram& d1, const AffineDiagram& d2) {
    if (d1.n() != d2.n()) throw DomainError("compose: size mismatch");
    const int n = d1.n();
    std::vector<int> mid_seen(n + 1, 0);
    std::vector<int> os(2 * n);
    std::vector<long> oc(2 * n);

    // from result top i: leave d1 via its top
    for (int i = 1; i <= n; ++i) {
        auto [side, q] = d1.far_end(0, i);
        while (side == 1) {  // landed on the interface
            mid_seen[d1.base_of(q)] = 1;
            auto nxt = d2.far_end(0, q);
            if (nxt.first == 1) {  // exits through result bottom
                os[i - 1] = 1;
                oc[i - 1] = nxt.second;
                side = -1;
                break;
            }
            mid_seen[d2.base_of(nxt.second)] = 1;
            auto up = d1.far_end(1, nxt.second);
            side = up.first;
            q = up.second;
        }
        if (side == 0) {
            os[i - 1] = 0;
            oc[i - 1] = q;
        }
    }
    // from result bottom i: leave d2 via its bottom
    for (int i = 1; i <= n; ++i) {
        auto [side, q] = d2.far_end(1, i);
        while (side == 0) {  // landed on the interface
            mid_seen[d2.base_of(q)] = 1;
            auto nxt = d1.far_end(1, q);
            if (nxt.first == 0) {  // exits through result top
                os[n + i - 1] = 0;
                oc[n + i - 1] = nxt.second;
                side = -1;
                break;
            }
            mid_seen[d1.base_of(nxt.second)] = 1;
            auto dn = d2.far_end(0, nxt.second);
            side = dn.first;
            q = dn.second;
        }
        if (side == 1) {
            os[n + i - 1] = 1;
            oc[n + i - 1] = q;
        }
    }

    int na = 0, nb = 0;
    for (int s = 1; s <= n; ++s) {
        if (mid_seen[s]) continue;
        long p = s;
        while (true) {
            mid_seen[d1.base_of(p)] = 1;
            auto [su, qu] = d1.far_end(1, p);  // d1 bottom cup
            (void)su;
            mid_seen[d1.base_of(qu)] = 1;
            auto [sd, qd] = d2.far_end(0, qu);  // d2 top cap
            (void)sd;
            p = qd;
            if (d1.base_of(p) == s) {
                ((p - s) / n == 0 ? na : nb)++;
                break;
            }
        }
    }

    return {AffineDiagram(n, std::move(os), std::move(oc), d1.loops_a() + d2.loops_a(),
                          d1.loops_b() + d2.loops_b()),
            na, nb};
}

}  // namespace slecg
