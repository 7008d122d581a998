#include "lorcomp/space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

#include "lorcomp/strfmt.hpp"

namespace lorcomp::space {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Largest point count for the exhaustive causal-triple validation sweep.
constexpr std::size_t kExactTripleLimit = 600;
// Work caps for the sampled sweep on larger spaces.
constexpr std::uint64_t kTripleCap = 20'000'000;
constexpr std::uint64_t kNullWorkCap = 4'000'000;

std::string triple_witness(std::uint32_t x, std::uint32_t y, std::uint32_t z,
                           double lhs, double rhs) {
    return "x=" + std::to_string(x) + " y=" + std::to_string(y) +
           " z=" + std::to_string(z) + " tau(x,z)=" + detail::g17(lhs) +
           " tau(x,y)+tau(y,z)=" + detail::g17(rhs);
}

} // namespace

std::uint64_t BitRows::row_popcount(std::size_t i) const {
    const std::uint64_t* r = row(i);
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(r[w]);
    return c;
}

std::vector<std::uint32_t> BitRows::row_indices(std::size_t i) const {
    std::vector<std::uint32_t> out;
    const std::uint64_t* r = row(i);
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            out.push_back(static_cast<std::uint32_t>(
                w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
            bits &= bits - 1;
        }
    }
    return out;
}

TauMatrix::TauMatrix(std::size_t n, std::size_t dense_threshold) : n_(n) {
    dense_ = n < dense_threshold;
    if (dense_)
        dense_rows_.assign(n * n, 0.0);
    else
        sparse_rows_.resize(n);
}

double TauMatrix::get(std::uint32_t i, std::uint32_t j) const {
    if (dense_) return dense_rows_[std::size_t{i} * n_ + j];
    const auto& r = sparse_rows_[i];
    auto it = std::lower_bound(
        r.begin(), r.end(), j,
        [](const auto& e, std::uint32_t k) { return e.first < k; });
    return (it != r.end() && it->first == j) ? it->second : 0.0;
}

void TauMatrix::set(std::uint32_t i, std::uint32_t j, double v) {
    if (dense_)
        dense_rows_[std::size_t{i} * n_ + j] = v;
    else
        sparse_rows_[i].emplace_back(j, v);
}

void TauMatrix::finalize() {
    if (dense_) return;
    for (auto& r : sparse_rows_) {
        std::stable_sort(r.begin(), r.end(),
                         [](const auto& a, const auto& b) {
                             return a.first < b.first;
                         });
        // Keep the last value written for a duplicated column.
        std::size_t out = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (out > 0 && r[out - 1].first == r[k].first)
                r[out - 1].second = r[k].second;
            else
                r[out++] = r[k];
        }
        r.resize(out);
    }
}

std::uint64_t TauMatrix::positive_count() const {
    std::uint64_t c = 0;
    for_each_positive([&](std::uint32_t, std::uint32_t, double) { ++c; });
    return c;
}

DiscreteSpace DiscreteSpace::from_ambient(std::vector<PointRec> points,
                                          AmbientTag tag, TauMatrix tau,
                                          Provenance prov) {
    const std::size_t n = points.size();
    if (tau.size() != n)
        throw FormatError("tau matrix size does not match point count");
    tau.finalize();

    DiscreteSpace sp;
    sp.points_ = std::move(points);
    sp.tag_ = tag;
    sp.prov_ = prov;
    sp.tau_ = std::move(tau);
    sp.all_coords_ = true;
    for (const auto& p : sp.points_)
        if (!p.has_coords) { sp.all_coords_ = false; break; }

    sp.topo_.resize(n);
    sp.topo_pos_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) sp.topo_[i] = sp.topo_pos_[i] = i;

    std::vector<std::vector<std::uint32_t>> succ(n);
    bool bad_order = false;
    sp.tau_.for_each_positive([&](std::uint32_t i, std::uint32_t j, double) {
        if (j <= i) { bad_order = true; return; }
        succ[i].push_back(j);
    });
    if (bad_order)
        throw CyclicOrder("points are not sorted compatibly with tau");

    sp.reduce_and_close(std::move(succ));
    return sp;
}

DiscreteSpace DiscreteSpace::from_links(
    std::vector<PointRec> points, AmbientTag tag,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> links,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>&
        tau_entries,
    Provenance prov) {
    const std::size_t n = points.size();
    DiscreteSpace sp;
    sp.points_ = std::move(points);
    sp.tag_ = tag;
    sp.prov_ = prov;
    sp.all_coords_ = true;
    for (const auto& p : sp.points_)
        if (!p.has_coords) { sp.all_coords_ = false; break; }

    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    std::vector<std::vector<std::uint32_t>> succ(n);
    std::vector<std::uint32_t> indeg(n, 0);
    for (auto [a, b] : links) {
        if (a >= n || b >= n) throw FormatError("link index out of range");
        if (a == b) throw CyclicOrder("self-link");
        succ[a].push_back(b);
        ++indeg[b];
    }

    // Deterministic topological order: smallest available index first.
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                        std::greater<>>
        ready;
    for (std::uint32_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    sp.topo_.reserve(n);
    while (!ready.empty()) {
        std::uint32_t v = ready.top();
        ready.pop();
        sp.topo_.push_back(v);
        for (std::uint32_t w : succ[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (sp.topo_.size() != n) throw CyclicOrder("links contain a cycle");
    sp.topo_pos_.resize(n);
    for (std::uint32_t p = 0; p < n; ++p) sp.topo_pos_[sp.topo_[p]] = p;

    sp.tau_ = TauMatrix(n);
    for (auto [a, b, v] : tau_entries) {
        if (a >= n || b >= n) throw FormatError("tau index out of range");
        sp.tau_.set(a, b, v);
    }
    sp.tau_.finalize();

    sp.reduce_and_close(std::move(succ));
    return sp;
}

void DiscreteSpace::reduce_and_close(
    std::vector<std::vector<std::uint32_t>> succ) {
    const std::size_t n = points_.size();
    reach_ = BitRows(n);
    links_.assign(n, {});
    rlinks_.assign(n, {});
    link_count_ = 0;
    // Reverse topological sweep: a successor already implied through another
    // successor's descendants is not a link.
    for (std::size_t p = n; p-- > 0;) {
        std::uint32_t v = topo_[p];
        for (std::uint32_t w : succ[v]) reach_.or_row(v, w);
        std::sort(succ[v].begin(), succ[v].end());
        for (std::uint32_t w : succ[v])
            if (!reach_.get(v, w)) links_[v].push_back(w);
        for (std::uint32_t w : succ[v]) reach_.set(v, w);
        link_count_ += links_[v].size();
    }
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w : links_[v]) rlinks_[w].push_back(v);
    for (auto& r : rlinks_) std::sort(r.begin(), r.end());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>>
DiscreteSpace::all_links() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(link_count_);
    for (std::uint32_t v = 0; v < links_.size(); ++v)
        for (std::uint32_t w : links_[v]) out.emplace_back(v, w);
    return out;
}

DiscreteSpace DiscreteSpace::with_tau(TauMatrix tau, Provenance prov) const {
    if (tau.size() != size())
        throw FormatError("tau matrix size does not match point count");
    DiscreteSpace sp = *this;
    tau.finalize();
    sp.tau_ = std::move(tau);
    sp.prov_ = prov;
    return sp;
}

std::vector<std::uint32_t> DiscreteSpace::interval(std::uint32_t p,
                                                   std::uint32_t q) const {
    std::vector<std::uint32_t> out;
    if (tau_.dense()) {
        const double* rp = tau_.row(p);
        for (std::uint32_t r = 0; r < size(); ++r)
            if (rp[r] > 0.0 && chron(r, q)) out.push_back(r);
    } else {
        for (const auto& [r, v] : tau_.sparse_row(p))
            if (v > 0.0 && chron(r, q)) out.push_back(r);
    }
    return out;
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

struct Worst {
    double deficit = 0.0;
    std::string witness;
    bool fail = false;
    void offer(double d, double tol, auto make_witness) {
        if (d > tol && (!fail || d > deficit)) {
            fail = true;
            deficit = d;
            witness = make_witness();
        }
    }
};

// Exhaustive sweep over ordered causal triples, exact for small spaces.
void triples_exact(const DiscreteSpace& sp, double tol, Worst& rti,
                   Worst& trans, std::uint64_t& checked) {
    const std::size_t n = sp.size();
    const auto& topo = sp.topo_order();
    for (std::size_t pi = 0; pi < n; ++pi) {
        std::uint32_t i = topo[pi];
        for (std::size_t pj = pi + 1; pj < n; ++pj) {
            std::uint32_t j = topo[pj];
            if (!sp.reach().get(i, j)) continue;
            double tij = sp.tau(i, j);
            for (std::size_t pk = pj + 1; pk < n; ++pk) {
                std::uint32_t k = topo[pk];
                if (!sp.reach().get(j, k)) continue;
                ++checked;
                double tjk = sp.tau(j, k);
                double tik = sp.tau(i, k);
                rti.offer(tij + tjk - tik, tol, [&] {
                    return triple_witness(i, j, k, tik, tij + tjk);
                });
                if (tij > 0.0 && tjk > 0.0 && !(tik > 0.0))
                    trans.offer(1.0, 0.0, [&] {
                        return triple_witness(i, j, k, tik, tij + tjk);
                    });
            }
        }
    }
}

// Sampled sweep for larger spaces: all timelike-timelike triples up to a
// work cap, then the timelike/null mixed triples around null causal pairs.
void triples_sampled(const DiscreteSpace& sp, double tol, Worst& rti,
                     Worst& trans, std::uint64_t& checked, bool& truncated) {
    const std::size_t n = sp.size();
    const TauMatrix& tm = sp.tau_matrix();

    auto visit = [&](std::uint32_t i, std::uint32_t j, double tij) {
        // Walk row j; look up tau(i, k) as we go.
        if (tm.dense()) {
            const double* ri = tm.row(i);
            const double* rj = tm.row(j);
            for (std::uint32_t k = 0; k < n; ++k) {
                if (!(rj[k] > 0.0)) continue;
                ++checked;
                double tik = ri[k];
                rti.offer(tij + rj[k] - tik, tol, [&] {
                    return triple_witness(i, j, k, tik, tij + rj[k]);
                });
                if (!(tik > 0.0))
                    trans.offer(1.0, 0.0, [&] {
                        return triple_witness(i, j, k, tik, tij + rj[k]);
                    });
            }
        } else {
            const auto& ri = tm.sparse_row(i);
            std::size_t pi = 0;
            for (const auto& [k, tjk] : tm.sparse_row(j)) {
                if (!(tjk > 0.0)) continue;
                ++checked;
                while (pi < ri.size() && ri[pi].first < k) ++pi;
                double tik =
                    (pi < ri.size() && ri[pi].first == k) ? ri[pi].second : 0.0;
                rti.offer(tij + tjk - tik, tol, [&] {
                    return triple_witness(i, j, k, tik, tij + tjk);
                });
                if (!(tik > 0.0))
                    trans.offer(1.0, 0.0, [&] {
                        return triple_witness(i, j, k, tik, tij + tjk);
                    });
            }
        }
    };

    for (std::uint32_t i = 0; i < n && !truncated; ++i) {
        if (tm.dense()) {
            const double* ri = tm.row(i);
            for (std::uint32_t j = 0; j < n; ++j) {
                if (ri[j] > 0.0) visit(i, j, ri[j]);
                if (checked >= kTripleCap) { truncated = true; break; }
            }
        } else {
            for (const auto& [j, tij] : tm.sparse_row(i)) {
                if (tij > 0.0) visit(i, j, tij);
                if (checked >= kTripleCap) { truncated = true; break; }
            }
        }
    }

    // Null causal pairs: u <= v with tau(u, v) = 0. The reverse triangle
    // inequality then forces tau(w, v) >= tau(w, u) and tau(u, w) >= tau(v, w).
    std::uint64_t null_work = 0;
    for (std::uint32_t u = 0; u < n && null_work < kNullWorkCap; ++u) {
        std::uint64_t reach_count = sp.reach().row_popcount(u);
        std::uint64_t chron_count = 0;
        if (tm.dense()) {
            const double* ru = tm.row(u);
            for (std::uint32_t j = 0; j < n; ++j)
                if (ru[j] > 0.0) ++chron_count;
        } else {
            for (const auto& e : tm.sparse_row(u))
                if (e.second > 0.0) ++chron_count;
        }
        if (reach_count == chron_count) continue;
        for (std::uint32_t v : sp.reach().row_indices(u)) {
            if (sp.tau(u, v) > 0.0) continue;
            null_work += 2 * n;
            for (std::uint32_t w = 0; w < n; ++w) {
                double twu = sp.tau(w, u);
                if (twu > 0.0) {
                    ++checked;
                    rti.offer(twu - sp.tau(w, v), tol, [&] {
                        return triple_witness(w, u, v, sp.tau(w, v), twu);
                    });
                }
                double tvw = sp.tau(v, w);
                if (tvw > 0.0) {
                    ++checked;
                    rti.offer(tvw - sp.tau(u, w), tol, [&] {
                        return triple_witness(u, v, w, sp.tau(u, w), tvw);
                    });
                }
            }
            if (null_work >= kNullWorkCap) { truncated = true; break; }
        }
    }
}

} // namespace

AxiomReport validate_axioms(const DiscreteSpace& sp, double tol) {
    const std::size_t n = sp.size();
    AxiomReport rep;
    rep.tolerance = tol;
    rep.points = n;
    auto add = [&](std::string name, const Worst& w, std::uint64_t checked) {
        rep.checks.push_back({std::move(name), !w.fail, checked, w.witness});
        rep.pass = rep.pass && !w.fail;
    };

    {
        Worst w;
        for (std::uint32_t i = 0; i < n; ++i)
            w.offer(std::abs(sp.tau(i, i)), tol, [&] {
                return "x=" + std::to_string(i) +
                       " tau(x,x)=" + detail::g17(sp.tau(i, i));
            });
        add("tau-diagonal", w, n);
    }
    {
        Worst w;
        std::uint64_t checked = 0;
        sp.tau_matrix().for_each_positive(
            [&](std::uint32_t i, std::uint32_t j, double v) {
                ++checked;
                if (v > tol)
                    w.offer(sp.tau(j, i), tol, [&] {
                        return "x=" + std::to_string(i) + " y=" +
                               std::to_string(j) + " tau(x,y)=" +
                               detail::g17(v) + " tau(y,x)=" +
                               detail::g17(sp.tau(j, i));
                    });
            });
        add("antisymmetry", w, checked);
    }
    {
        Worst w;
        std::uint64_t checked = 0;
        sp.tau_matrix().for_each_positive(
            [&](std::uint32_t i, std::uint32_t j, double v) {
                ++checked;
                if (!sp.causal(i, j))
                    w.offer(v, 0.0, [&] {
                        return "x=" + std::to_string(i) + " y=" +
                               std::to_string(j) + " tau(x,y)=" +
                               detail::g17(v) + " not causal";
                    });
            });
        add("chron-in-causal", w, checked);
    }
    {
        Worst rti, trans;
        std::uint64_t checked = 0;
        bool truncated = false;
        if (n <= kExactTripleLimit)
            triples_exact(sp, tol, rti, trans, checked);
        else
            triples_sampled(sp, tol, rti, trans, checked, truncated);
        add("chron-transitive", trans, checked);
        add("reverse-triangle", rti, checked);
    }
    {
        // Structural by construction; recorded for completeness.
        Worst w;
        for (std::uint32_t v = 0; v < n; ++v)
            for (std::uint32_t u : sp.links_from(v))
                w.offer(sp.topo_pos(v) >= sp.topo_pos(u) ? 1.0 : 0.0, 0.0,
                        [&] {
                            return "link " + std::to_string(v) + "->" +
                                   std::to_string(u) + " against order";
                        });
        add("links-acyclic", w, sp.link_count());
    }
    return rep;
}

TauMatrix tau_intrinsic(const DiscreteSpace& sp, IntrinsicMode mode) {
    const std::size_t n = sp.size();
    TauMatrix out(n);
    const auto& topo = sp.topo_order();
    std::vector<double> g(n, kNegInf);
    for (std::uint32_t y = 0; y < n; ++y) {
        const std::size_t py = sp.topo_pos(y);
        for (std::size_t p = 0; p < py; ++p) g[topo[p]] = kNegInf;
        g[y] = 0.0;
        for (std::size_t p = py; p-- > 0;) {
            std::uint32_t v = topo[p];
            double best = kNegInf;
            for (std::uint32_t w : sp.links_from(v)) {
                if (sp.topo_pos(w) > py || g[w] == kNegInf) continue;
                double s =
                    (mode == IntrinsicMode::weighted ? sp.tau(v, w) : 1.0) +
                    g[w];
                if (s > best) best = s;
            }
            g[v] = best;
            if (best > 0.0) out.set(v, y, best);
        }
        g[y] = kNegInf;
    }
    out.finalize();
    return out;
}

RealizedChain geodesic_chain(const DiscreteSpace& sp, std::uint32_t x,
                             std::uint32_t y) {
    if (!sp.chron(x, y))
        throw NotTimelikeRelated("geodesic_chain requires tau(x,y) > 0");
    if (!sp.causal(x, y))
        throw NotTimelikeRelated("x does not reach y through links");
    const auto& topo = sp.topo_order();
    const std::size_t px = sp.topo_pos(x), py = sp.topo_pos(y);
    std::vector<double> g(sp.size(), kNegInf);
    g[y] = 0.0;
    for (std::size_t p = py; p-- > px;) {
        std::uint32_t v = topo[p];
        double best = kNegInf;
        for (std::uint32_t w : sp.links_from(v)) {
            if (sp.topo_pos(w) > py || g[w] == kNegInf) continue;
            double s = sp.tau(v, w) + g[w];
            if (s > best) best = s;
        }
        g[v] = best;
    }

    RealizedChain out;
    out.chain.tau_length = g[x];
    out.chain.vertices.push_back(x);
    std::uint32_t cur = x;
    while (cur != y) {
        std::uint32_t next = cur;
        for (std::uint32_t w : sp.links_from(cur)) {
            if (sp.topo_pos(w) > py || g[w] == kNegInf) continue;
            if (sp.tau(cur, w) + g[w] == g[cur]) { next = w; break; }
        }
        if (next == cur) throw Error("chain reconstruction failed");
        if (!(sp.tau(cur, next) > 0.0)) out.consecutive_timelike = false;
        out.chain.vertices.push_back(next);
        cur = next;
    }
    out.gap = sp.tau(x, y) - out.chain.tau_length;
    return out;
}

double finite_diameter(const DiscreteSpace& sp) {
    double best = 0.0;
    sp.tau_matrix().for_each_positive(
        [&](std::uint32_t, std::uint32_t, double v) {
            if (std::isfinite(v) && v > best) best = v;
        });
    return best;
}

} // namespace lorcomp::space
