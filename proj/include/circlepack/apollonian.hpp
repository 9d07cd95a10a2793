#pragma once

// Apollonian circle packings: root quadruple reduction, canonical geometric
// realization, and exact breadth-first generation under a curvature cutoff.
//
// Generation walks the swap tree (never re-applying the swap that produced
// the current quadruple). Along that tree the swapped-in curvature never
// drops below the largest member of the parent quadruple, so pruning at
// curvature > cutoff loses no circle. A coordinate-level dedup index is kept
// as a safety net for coincidences such as the doubled curvature-3 circle of
// the (-1,2,2,3) packing.
//
// Strip packings (root (0,0,c,c)) are generated over one fundamental period
// of the horizontal translation. The stored circles have center-x in
// [0, period); the seed's right-hand circle at x = period is kept as a
// tagged alias so period-straddling tangencies stay visible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "circlepack/inversive.hpp"
#include "circlepack/parallel.hpp"

namespace circlepack {

template <class S>
struct CurvatureQuadruple {
    std::array<S, 4> k{};
};

// Sum-minimal representative of a swap orbit: a <= 0 <= b <= c <= d with
// a + b + c >= d.
template <class S>
struct RootQuadruple {
    std::array<S, 4> k{};
};

namespace detail {

template <class S>
bool descartes_holds(const std::array<S, 4>& k) {
    if constexpr (scalar_traits<S>::exact) {
        return descartes_form(k[0], k[1], k[2], k[3]) == S(0);
    } else {
        S scale(1);
        for (const auto& v : k) scale += v * v;
        return scalar_traits<S>::abs(descartes_form(k[0], k[1], k[2], k[3])) <= S(1e-9) * scale;
    }
}

}  // namespace detail

// Walks the unique sum-decreasing swap (replacing the largest curvature)
// until no swap decreases the sum, then sorts. Throws if the input does not
// satisfy the Descartes relation.
template <class S>
RootQuadruple<S> reduce_to_root(const CurvatureQuadruple<S>& q) {
    if (!detail::descartes_holds(q.k))
        throw std::invalid_argument("reduce_to_root: quadruple does not satisfy the Descartes relation");
    std::array<S, 4> k = q.k;
    for (int guard = 0; guard < 1000000; ++guard) {
        const S sum = k[0] + k[1] + k[2] + k[3];
        std::size_t best = 4;
        S best_drop(0);
        for (std::size_t i = 0; i < 4; ++i) {
            const S drop = S(4) * k[i] - S(2) * sum;  // sum decrease of swapping i
            if (drop > best_drop) { best_drop = drop; best = i; }
        }
        if (best == 4) break;
        k[best] = S(2) * (sum - k[best]) - k[best];
    }
    std::sort(k.begin(), k.end());
    if (!(k[0] <= S(0) && S(0) <= k[1] && k[0] + k[1] + k[2] >= k[3]))
        throw std::domain_error("reduce_to_root: reduction did not reach a root quadruple");
    return RootQuadruple<S>{k};
}

// Canonical placement of a root quadruple.
//   a < 0:      outer circle centered at the origin, the b-circle on the
//               negative x-axis, the c-circle with center-y >= 0, the
//               d-circle the Apollonius solution with center-y >= 0.
//   a = b = 0:  lines y = 0 and y = 2/c with circles of curvature c at
//               (0, 1/c) and (2/c, 1/c); the packing repeats with period 2/c.
// For rational roots every coordinate is exactly rational: the only square
// root in the construction is sqrt(ab+bc+ca) = |d-(a+b+c)|/2.
template <class S>
DescartesQuadruple<S> realize_root(const RootQuadruple<S>& root) {
    const auto& k = root.k;
    if (k[0] < S(0)) {
        const S big_r = S(-1) / k[0];
        const S r2 = S(1) / k[1], r3 = S(1) / k[2];
        const auto c1 = make_circle(S(0), S(0), big_r, -1);
        const S x2 = -(big_r - r2);
        const auto c2 = make_circle(x2, S(0), r2);
        const S rho3 = big_r - r3, s23 = r2 + r3;
        const S x3 = (x2 * x2 + rho3 * rho3 - s23 * s23) / (S(2) * x2);
        const S y3 = scalar_traits<S>::sqrt(rho3 * rho3 - x3 * x3);
        const auto c3 = make_circle(x3, y3, r3);
        const auto [lo, hi] = apollonius_pair(c1, c2, c3);
        // Pick the solution with curvature d; on a tie (a+b+c = d) the one
        // with center-y >= 0.
        InversiveCircle<S> c4;
        if constexpr (scalar_traits<S>::exact) {
            if (lo.curv == k[3] && hi.curv == k[3]) c4 = (lo.my >= hi.my) ? lo : hi;
            else if (lo.curv == k[3]) c4 = lo;
            else if (hi.curv == k[3]) c4 = hi;
            else throw std::domain_error("realize_root: no tangent circle with the requested curvature");
        } else {
            const S dlo = scalar_traits<S>::abs(lo.curv - k[3]), dhi = scalar_traits<S>::abs(hi.curv - k[3]);
            if (std::min(dlo, dhi) > S(1e-6) * (S(1) + k[3]))
                throw std::domain_error("realize_root: no tangent circle with the requested curvature");
            if (dlo < dhi) c4 = lo;
            else if (dhi < dlo) c4 = hi;
            else c4 = (lo.my >= hi.my) ? lo : hi;
        }
        return {{c1, c2, c3, c4}};
    }
    if (k[0] == S(0) && k[1] == S(0) && k[2] > S(0) && k[2] == k[3]) {
        const S c = k[2], r = S(1) / c, h = S(2) / c;
        return {{make_line(S(0), S(-1), S(0)), make_line(S(0), S(1), h),
                 make_circle(S(0), r, r), make_circle(h, r, r)}};
    }
    throw std::invalid_argument("realize_root: only bounded (a<0) and strip (0,0,c,c) roots are realizable");
}

enum class SpecialKind : std::uint8_t { outer, line, alias };

struct GenerateOptions {
    long long max_circles = 100000000;  // memory guard, not a silent truncation
    int workers = 1;
};

template <class S>
struct Packing {
    // Stored circles: 0 < curv <= cutoff, one period for strips, canonically
    // ordered by (curvature, center-x, center-y).
    std::vector<InversiveCircle<S>> circles;
    std::vector<std::string> words;  // swap word that produced each circle; "" for seed members

    // Generators with curv <= 0 (outer circle, lines) and period aliases.
    std::vector<InversiveCircle<S>> specials;
    std::vector<SpecialKind> special_kinds;

    // Combined index space: specials first, then circles. Adjacency pairs in
    // creation order: the 6 seed pairs, then (new, parent) triples per
    // generated circle. quadruples lists the seed and one entry per creation.
    std::vector<std::pair<std::int32_t, std::int32_t>> adjacency;
    std::vector<std::array<std::int32_t, 4>> quadruples;

    std::array<S, 4> root{};
    S cutoff{};
    S period{};             // 0 unless a strip packing
    double min_radius = 0;  // orbit packings only
    std::string source = "apollonian";

    std::size_t n_specials() const { return specials.size(); }
    std::size_t size() const { return circles.size(); }
    std::size_t total() const { return specials.size() + circles.size(); }

    const InversiveCircle<S>& at(std::size_t combined) const {
        return combined < specials.size() ? specials[combined]
                                          : circles[combined - specials.size()];
    }
    bool is_strip() const { return period != S(0); }
};

namespace detail {

template <class S>
struct circle_key {
    using type = std::array<S, 4>;
    static type make(const InversiveCircle<S>& c) { return {c.curv, c.cocurv, c.mx, c.my}; }
};

// Floating backing dedups on coordinates quantized at 1e-9.
template <>
struct circle_key<double> {
    using type = std::array<long long, 4>;
    static type make(const InversiveCircle<double>& c) {
        auto q = [](double x) { return static_cast<long long>(llround(x * 1e9)); };
        return {q(c.curv), q(c.cocurv), q(c.mx), q(c.my)};
    }
};

template <class S>
struct strip_window {
    S period;
    // stored iff center-x in [0, period)
    bool stores(const InversiveCircle<S>& c) const {
        return c.curv > S(0) && c.mx >= S(0) && c.mx < period * c.curv;
    }
    // a quadruple is worth expanding while some member overlaps [-L/2, 3L/2]
    bool keeps(const DescartesQuadruple<S>& q) const {
        for (const auto& c : q.circles) {
            if (!(c.curv > S(0))) continue;
            const S lo = (c.mx - S(1)), hi = (c.mx + S(1));  // times curv: (x -+ r)*curv
            if (hi >= -period / S(2) * c.curv && lo <= S(3) * period / S(2) * c.curv) return true;
        }
        return false;
    }
};

}  // namespace detail

// Breadth-first expansion of the swap tree under a curvature cutoff.
// Deterministic: the result is identical for any worker count.
template <class S>
Packing<S> generate(const DescartesQuadruple<S>& seed, const S& cutoff,
                    const GenerateOptions& options = {}) {
    using Key = typename detail::circle_key<S>::type;
    const int workers = resolve_workers(options.workers);

    // Classify the seed.
    int n_lines = 0;
    for (const auto& c : seed.circles) n_lines += c.is_line() ? 1 : 0;
    if (n_lines != 0 && n_lines != 2)
        throw std::invalid_argument("generate: seed must be a bounded or strip configuration");
    const bool strip = n_lines == 2;
    S period(0);
    std::size_t alias_slot = 4;
    if (strip) {
        // Canonical strip seed: two horizontal lines plus two circles of
        // equal curvature; the right-hand circle is the period alias.
        std::vector<std::size_t> circ;
        for (std::size_t i = 0; i < 4; ++i)
            if (!seed.circles[i].is_line()) circ.push_back(i);
        const auto &a = seed.circles[circ[0]], &b = seed.circles[circ[1]];
        if (a.curv != b.curv || !(a.curv > S(0)))
            throw std::invalid_argument("generate: strip seed must be the canonical placement");
        period = S(2) / a.curv;
        alias_slot = (b.mx > a.mx) ? circ[1] : circ[0];
    }
    for (const auto& c : seed.circles)
        if (c.curv > cutoff)
            throw std::invalid_argument("generate: cutoff is below a seed curvature");

    Packing<S> out;
    out.cutoff = cutoff;
    out.period = period;
    {
        CurvatureQuadruple<S> cq{seed.curvatures()};
        out.root = reduce_to_root(cq).k;
    }

    // Provisional index scheme while the walk runs: circles get insertion
    // ids >= 0, specials get ~s for special slot s, and a member that is not
    // stored at all (outside the strip window) gets kUnstored. Everything is
    // remapped to combined indices once the canonical order is known.
    constexpr std::int32_t kUnstored = std::numeric_limits<std::int32_t>::min();
    std::map<Key, std::int32_t> seen;
    std::array<std::int32_t, 4> seed_idx{};
    std::vector<std::string> circle_words;
    const detail::strip_window<S> window{period};

    // Returns the insertion id, or kUnstored if the circle coincides with an
    // already stored one.
    auto store_circle = [&](const InversiveCircle<S>& c, const std::string& word) -> std::int32_t {
        const auto key = detail::circle_key<S>::make(c);
        auto [it, inserted] = seen.emplace(key, 0);
        if (!inserted) return kUnstored;
        if (static_cast<long long>(out.circles.size()) >= options.max_circles)
            throw resource_limit_error("generate: circle budget exceeded (raise max_circles)");
        const std::int32_t idx = static_cast<std::int32_t>(out.circles.size());
        it->second = idx;
        out.circles.push_back(c);
        circle_words.push_back(word);
        return idx;
    };

    for (std::size_t i = 0; i < 4; ++i) {
        const auto& c = seed.circles[i];
        if (c.curv <= S(0) || (strip && i == alias_slot)) {
            seed_idx[i] = ~static_cast<std::int32_t>(out.specials.size());
            out.specials.push_back(c);
            out.special_kinds.push_back(c.curv <= S(0)
                                            ? (c.is_line() ? SpecialKind::line : SpecialKind::outer)
                                            : SpecialKind::alias);
        } else {
            seed_idx[i] = store_circle(c, "");
            if (seed_idx[i] == kUnstored)
                throw std::invalid_argument("generate: seed contains coincident circles");
        }
    }

    struct Node {
        DescartesQuadruple<S> q;
        std::array<std::int32_t, 4> idx;  // combined (circle >= 0, special = ~slot, unstored = -1)
        std::int8_t last;
        std::string word;
    };
    struct Candidate {
        DescartesQuadruple<S> q;
        std::array<std::int32_t, 4> idx;
        std::int8_t slot;
        std::string word;
    };

    auto record_links = [&](const std::array<std::int32_t, 4>& idx, std::size_t fresh) {
        if (idx[fresh] == kUnstored) return;
        // fresh member first, then its three parents
        std::array<std::int32_t, 4> quad{idx[fresh], 0, 0, 0};
        std::size_t n = 1;
        bool whole = true;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == fresh) continue;
            if (idx[j] == kUnstored) {
                whole = false;
                continue;
            }
            out.adjacency.emplace_back(idx[fresh], idx[j]);
            quad[n++] = idx[j];
        }
        if (whole) out.quadruples.push_back(quad);
    };

    // Seed records: all 6 pairs plus the seed quadruple.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) out.adjacency.emplace_back(seed_idx[i], seed_idx[j]);
    out.quadruples.push_back(seed_idx);

    std::vector<Node> frontier{Node{seed, seed_idx, -1, ""}};
    constexpr std::size_t kChunks = 64;  // fixed so merge order ignores worker count

    while (!frontier.empty()) {
        std::array<std::vector<Candidate>, kChunks> produced;
        parallel_chunks(frontier.size(), workers, kChunks,
                        [&](std::size_t chunk, std::size_t b, std::size_t e) {
                            auto& local = produced[chunk];
                            for (std::size_t n = b; n < e; ++n) {
                                const Node& node = frontier[n];
                                for (std::int8_t slot = 0; slot < 4; ++slot) {
                                    if (slot == node.last) continue;
                                    DescartesQuadruple<S> child = swap_at(node.q, slot);
                                    const auto& nc = child.circles[slot];
                                    if (nc.curv > cutoff) continue;
                                    if (strip && !window.keeps(child)) continue;
                                    local.push_back(Candidate{std::move(child), node.idx, slot,
                                                              node.word + char('0' + slot)});
                                }
                            }
                        });
        std::vector<Node> next;
        for (auto& chunk : produced) {
            for (auto& cand : chunk) {
                const auto& nc = cand.q.circles[cand.slot];
                std::int32_t idx = kUnstored;
                if (!strip || window.stores(nc)) {
                    idx = store_circle(nc, cand.word);
                    if (idx == kUnstored) continue;  // coincidence: already visited
                }
                auto child_idx = cand.idx;
                child_idx[static_cast<std::size_t>(cand.slot)] = idx;
                record_links(child_idx, static_cast<std::size_t>(cand.slot));
                next.push_back(Node{std::move(cand.q), child_idx, cand.slot, std::move(cand.word)});
            }
        }
        frontier = std::move(next);
    }

    // Canonical order (curvature, center-x, center-y); remap all records.
    const std::size_t ns = out.specials.size(), n = out.circles.size();
    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t l, std::int32_t r) {
        const auto &a = out.circles[static_cast<std::size_t>(l)], &b = out.circles[static_cast<std::size_t>(r)];
        if (a.curv != b.curv) return a.curv < b.curv;
        if (a.mx != b.mx) return a.mx < b.mx;
        return a.my < b.my;
    });
    std::vector<std::int32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<std::int32_t>(i);
    std::vector<InversiveCircle<S>> sorted_circles(n);
    out.words.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sorted_circles[i] = out.circles[static_cast<std::size_t>(order[i])];
        out.words[i] = std::move(circle_words[static_cast<std::size_t>(order[i])]);
    }
    out.circles = std::move(sorted_circles);
    auto remap = [&](std::int32_t v) -> std::int32_t {
        if (v >= 0) return static_cast<std::int32_t>(ns) + rank[static_cast<std::size_t>(v)];
        return ~v;  // special slot -> combined index
    };
    for (auto& [x, y] : out.adjacency) {
        x = remap(x);
        y = remap(y);
    }
    for (auto& quad : out.quadruples)
        for (auto& v : quad) v = remap(v);
    return out;
}

template <class S>
bool is_integral(const Packing<S>& p) {
    for (const auto& v : p.root) {
        if constexpr (scalar_traits<S>::exact) {
            if (denominator(v) != 1) return false;
        } else {
            if (v != std::rint(v)) return false;
        }
    }
    return true;
}

template <class S>
bool is_primitive(const Packing<S>& p) {
    if (!is_integral(p)) return false;
    if constexpr (scalar_traits<S>::exact) {
        Int g = 0;
        for (const auto& v : p.root) g = gcd(g, Int(abs(numerator(v))));
        return g == 1;
    } else {
        long long g = 0;
        for (const auto& v : p.root) g = std::gcd(g, std::llabs(llround(v)));
        return g == 1;
    }
}

// All unordered tangent pairs with both curvatures in (0, T), drawn from the
// recorded adjacency (seed pairs plus creation links).
template <class S>
std::vector<std::pair<std::int32_t, std::int32_t>> tangent_pairs(const Packing<S>& p, const S& T) {
    if (T > p.cutoff) throw std::invalid_argument("tangent_pairs: T exceeds the generation cutoff");
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    for (const auto& [i, j] : p.adjacency) {
        const auto &a = p.at(static_cast<std::size_t>(i)), &b = p.at(static_cast<std::size_t>(j));
        if (a.curv > S(0) && a.curv < T && b.curv > S(0) && b.curv < T)
            pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace circlepack
