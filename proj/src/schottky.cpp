#include "circlepack/schottky.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "circlepack/parallel.hpp"

namespace circlepack {

MobiusMap standard_pairing(const Disk& d, const Disk& d_prime, double twist) {
    if (!(d.radius > 0) || !(d_prime.radius > 0))
        throw std::invalid_argument("standard_pairing: disks need positive radii");
    if (std::abs(d.center - d_prime.center) < d.radius + d_prime.radius &&
        std::abs(d.center - d_prime.center) < 1e-12)
        throw std::invalid_argument("standard_pairing: coincident overlapping disks");
    const std::complex<double> phase = std::polar(1.0, twist);
    const std::complex<double> rr = phase * d.radius * d_prime.radius;
    // (c' z + (rr - c c')) / (z - c)
    return MobiusMap::from_coefficients(d_prime.center, rr - d.center * d_prime.center,
                                        std::complex<double>(1, 0), -d.center);
}

SchottkyGroup SchottkyGroup::from_pairs(std::vector<DiskPair> pairs) {
    SchottkyGroup g;
    g.pairs = std::move(pairs);
    for (const auto& p : g.pairs) g.generators.push_back(standard_pairing(p.d, p.d_prime, p.twist));
    return g;
}

SchottkyGroup SchottkyGroup::from_generators(std::vector<DiskPair> pairs, std::vector<MobiusMap> gens) {
    if (pairs.size() != gens.size())
        throw std::invalid_argument("from_generators: one generator per disk pair required");
    SchottkyGroup g;
    g.pairs = std::move(pairs);
    g.generators = std::move(gens);
    return g;
}

MobiusMap SchottkyGroup::letter(std::size_t i) const {
    const std::size_t k = genus();
    return i < k ? generators[i] : invert(generators[i - k]);
}

std::size_t SchottkyGroup::inverse_letter(std::size_t i) const {
    const std::size_t k = genus();
    return i < k ? i + k : i - k;
}

const Disk& SchottkyGroup::target_disk(std::size_t i) const {
    const std::size_t k = genus();
    return i < k ? pairs[i].d_prime : pairs[i - k].d;
}

char SchottkyGroup::letter_name(std::size_t i, std::size_t genus) {
    return i < genus ? static_cast<char>('a' + i) : static_cast<char>('A' + (i - genus));
}

ValidationReport validate(const SchottkyGroup& g) {
    ValidationReport rep;
    const std::size_t k = g.genus();
    if (k == 0) {
        rep.issues.push_back({"group has no disk pairs"});
        return rep;
    }
    std::vector<Disk> disks;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) {
        disks.push_back(g.pairs[i].d);
        names.push_back(std::string("D") + std::to_string(i + 1));
        disks.push_back(g.pairs[i].d_prime);
        names.push_back(std::string("D") + std::to_string(i + 1) + "'");
    }
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j) {
            const double dist = std::abs(disks[i].center - disks[j].center);
            const double need = disks[i].radius + disks[j].radius;
            if (dist <= need) {
                std::ostringstream os;
                os << "disks " << names[i] << " and " << names[j] << " are not disjoint (center distance "
                   << dist << " <= radius sum " << need << ")";
                rep.issues.push_back({os.str()});
            }
        }
    constexpr int kSamples = 100;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& p = g.pairs[i];
        const MobiusMap& m = g.generators[i];
        double worst = 0;
        for (int s = 0; s < kSamples; ++s) {
            const double ang = 2 * std::numbers::pi * s / kSamples;
            const auto z = p.d.center + std::polar(p.d.radius, ang);
            worst = std::max(worst, std::fabs(std::abs(m.apply(z) - p.d_prime.center) - p.d_prime.radius));
        }
        if (worst > 1e-9) {
            std::ostringstream os;
            os << "generator " << i + 1 << " does not map the boundary of D" << i + 1 << " onto D" << i + 1
               << "' (max boundary deviation " << worst << ")";
            rep.issues.push_back({os.str()});
        }
        // an interior point off the pole must land outside D_i'
        const auto inside = p.d.center + std::complex<double>(p.d.radius / 2, 0);
        const auto img = m.apply(inside);
        if (std::isfinite(img.real()) && std::isfinite(img.imag()) &&
            std::abs(img - p.d_prime.center) < p.d_prime.radius) {
            std::ostringstream os;
            os << "generator " << i + 1 << " maps the interior of D" << i + 1 << " inside D" << i + 1
               << "' rather than to its exterior";
            rep.issues.push_back({os.str()});
        }
    }
    return rep;
}

std::string ValidationReport::to_string() const {
    if (valid()) return "group valid";
    std::ostringstream os;
    os << issues.size() << " issue(s):";
    for (const auto& issue : issues) os << "\n  - " << issue.what;
    return os.str();
}

SchottkyGroup sample_genus2_group() {
    std::vector<DiskPair> pairs{
        {Disk{{-3, 0}, 1}, Disk{{3, 0}, 1}, 0},
        {Disk{{0, -3}, 1}, Disk{{0, 3}, 1}, 0},
    };
    return SchottkyGroup::from_pairs(std::move(pairs));
}

Packing<double> generate_orbit(const SchottkyGroup& g, double min_radius, const GenerateOptions& options) {
    if (!(min_radius > 0)) throw std::invalid_argument("generate_orbit: min_radius must be positive");
    {
        const auto rep = validate(g);
        if (!rep.valid()) throw std::invalid_argument("generate_orbit: invalid group: " + rep.to_string());
    }
    const int workers = resolve_workers(options.workers);
    const std::size_t nl = g.letters();

    struct Node {
        MobiusMap prefix;     // x1..x_{l-1}
        std::size_t last;     // x_l
        DCircle circle;       // prefix applied to the boundary of A(x_l)
        std::string word;
    };

    Packing<double> out;
    out.cutoff = 1.0 / min_radius;
    out.min_radius = min_radius;
    out.source = "schottky";

    auto boundary_circle = [&](std::size_t letter) {
        const Disk& d = g.target_disk(letter);
        return make_circle(d.center.real(), d.center.imag(), d.radius);
    };
    auto orient = [](DCircle c) {
        if (c.curv < 0) {
            c.curv = -c.curv;
            c.cocurv = -c.cocurv;
            c.mx = -c.mx;
            c.my = -c.my;
        }
        return c;
    };

    std::vector<std::string> words;
    std::vector<Node> frontier;
    for (std::size_t l = 0; l < nl; ++l) {
        Node n{MobiusMap::identity(), l, boundary_circle(l), std::string(1, SchottkyGroup::letter_name(l, g.genus()))};
        if (1.0 / n.circle.curv < min_radius) continue;
        out.circles.push_back(n.circle);
        words.push_back(n.word);
        frontier.push_back(std::move(n));
    }

    constexpr std::size_t kChunks = 64;
    while (!frontier.empty()) {
        std::array<std::vector<Node>, kChunks> produced;
        parallel_chunks(frontier.size(), workers, kChunks,
                        [&](std::size_t chunk, std::size_t b, std::size_t e) {
                            auto& local = produced[chunk];
                            for (std::size_t i = b; i < e; ++i) {
                                const Node& node = frontier[i];
                                const MobiusMap next_prefix = compose(node.prefix, g.letter(node.last));
                                for (std::size_t y = 0; y < nl; ++y) {
                                    if (y == g.inverse_letter(node.last)) continue;
                                    DCircle img = orient(apply_mobius(next_prefix, boundary_circle(y)));
                                    if (!(img.curv > 0) || 1.0 / img.curv < min_radius) continue;
                                    local.push_back(Node{next_prefix, y, img,
                                                         node.word + SchottkyGroup::letter_name(y, g.genus())});
                                }
                            }
                        });
        std::vector<Node> next;
        for (auto& chunk : produced) {
            for (auto& node : chunk) {
                if (static_cast<long long>(out.circles.size()) >= options.max_circles)
                    throw resource_limit_error("generate_orbit: circle budget exceeded");
                out.circles.push_back(node.circle);
                words.push_back(node.word);
                next.push_back(std::move(node));
            }
        }
        frontier = std::move(next);
    }

    std::vector<std::size_t> order(out.circles.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const auto &a = out.circles[l], &b = out.circles[r];
        if (a.curv != b.curv) return a.curv < b.curv;
        if (a.mx != b.mx) return a.mx < b.mx;
        return a.my < b.my;
    });
    std::vector<DCircle> circles(out.circles.size());
    out.words.resize(out.circles.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        circles[i] = out.circles[order[i]];
        out.words[i] = std::move(words[order[i]]);
    }
    out.circles = std::move(circles);
    return out;
}

double hyperbolic_displacement(const MobiusMap& m) {
    const double fro = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
    return std::acosh(std::max(1.0, fro / 2.0));
}

std::vector<double> poincare_shell_sums(const SchottkyGroup& g, double s, int max_len, int workers) {
    if (max_len < 1) throw std::invalid_argument("poincare_shell_sums: max_len must be >= 1");
    if (s < 0) throw std::invalid_argument("poincare_shell_sums: s must be >= 0");
    const std::size_t nl = g.letters();
    const int nworkers = resolve_workers(workers);

    struct Branch {
        MobiusMap prefix;
        std::size_t last;
        int len;
    };
    // Fixed top-level branch list: words of length <= 2, each a deterministic
    // accumulation slot.
    std::vector<Branch> branches;
    std::vector<std::vector<double>> partial;  // per branch, per length
    std::vector<double> sums(static_cast<std::size_t>(max_len), 0.0);
    for (std::size_t x = 0; x < nl; ++x) {
        const MobiusMap mx = g.letter(x);
        sums[0] += std::exp(-s * hyperbolic_displacement(mx));
        if (max_len >= 2) {
            for (std::size_t y = 0; y < nl; ++y) {
                if (y == g.inverse_letter(x)) continue;
                branches.push_back(Branch{mx, y, 2});
            }
        }
    }
    partial.assign(branches.size(), {});

    parallel_chunks(branches.size(), nworkers, branches.size() ? branches.size() : 1,
                    [&](std::size_t chunk, std::size_t b, std::size_t e) {
                        for (std::size_t i = b; i < e; ++i) {
                            (void)chunk;
                            auto& acc = partial[i];
                            acc.assign(static_cast<std::size_t>(max_len), 0.0);
                            // depth-first over reduced continuations
                            struct Item {
                                MobiusMap prefix;
                                std::size_t last;
                                int len;
                            };
                            std::vector<Item> stack{{branches[i].prefix, branches[i].last, branches[i].len}};
                            while (!stack.empty()) {
                                const Item it = stack.back();
                                stack.pop_back();
                                const MobiusMap m = compose(it.prefix, g.letter(it.last));
                                acc[static_cast<std::size_t>(it.len - 1)] +=
                                    std::exp(-s * hyperbolic_displacement(m));
                                if (it.len >= max_len) continue;
                                for (std::size_t y = nl; y-- > 0;) {
                                    if (y == g.inverse_letter(it.last)) continue;
                                    stack.push_back(Item{m, y, it.len + 1});
                                }
                            }
                        }
                    });
    for (const auto& acc : partial)
        for (std::size_t l = 0; l < acc.size(); ++l) sums[l] += acc[l];
    return sums;
}

namespace {

double mean_tail_ratio(const std::vector<double>& sums) {
    const std::size_t n = sums.size();
    double acc = 0;
    int cnt = 0;
    for (std::size_t l = n - 3; l < n; ++l) {
        acc += sums[l] / sums[l - 1];
        ++cnt;
    }
    return acc / cnt;
}

}  // namespace

DeltaEstimate estimate_delta(const SchottkyGroup& g, int max_len, int workers) {
    if (max_len < 4) throw std::invalid_argument("estimate_delta: max_len must be >= 4");
    auto ratio_at = [&](double s) { return mean_tail_ratio(poincare_shell_sums(g, s, max_len, workers)); };
    double lo = 0, hi = 2;
    if (ratio_at(hi) >= 1)
        throw std::domain_error(
            "estimate_delta: shell ratio still >= 1 at s = 2; the group is too thick for this "
            "word-length truncation");
    while (hi - lo > 1e-3) {
        const double mid = (lo + hi) / 2;
        if (ratio_at(mid) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    DeltaEstimate est;
    est.delta = (lo + hi) / 2;
    est.max_len = max_len;
    const auto sums = poincare_shell_sums(g, est.delta, max_len, workers);
    for (std::size_t l = 1; l < sums.size(); ++l) est.shell_ratios_at_delta.push_back(sums[l] / sums[l - 1]);
    return est;
}

}  // namespace circlepack
