#ifndef LORCOMP_SPACE_HPP
#define LORCOMP_SPACE_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lorcomp/errors.hpp"

// Finite Lorentzian pre-length spaces: an indexed point set with a causal
// order (the reflexive-transitive closure of a transitively reduced link
// relation), a timelike relation (tau > 0), and a time-separation matrix
// subject to the reverse triangle inequality.
namespace lorcomp::space {

enum class Provenance {
    inherited, // tau restricted from an ambient model space
    intrinsic, // tau rebuilt from the link skeleton (longest chains)
    explicit_, // tau supplied directly (files, fixtures)
};

enum class AmbientKind { none, minkowski, ads, desitter, cylinder };

struct AmbientTag {
    AmbientKind kind = AmbientKind::none;
    // Curvature K for ads/desitter, circumference for cylinder, else unused.
    double param = 0.0;
};

struct PointRec {
    bool has_coords = false;
    double t = 0.0;
    double x = 0.0;
};

// Row-indexed bitset matrix for reachability relations.
class BitRows {
public:
    BitRows() = default;
    BitRows(std::size_t n)
        : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}
    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void set(std::size_t i, std::size_t j) {
        bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    // row(i) |= row(j)
    void or_row(std::size_t i, std::size_t j) {
        std::uint64_t* a = &bits_[i * words_];
        const std::uint64_t* b = &bits_[j * words_];
        for (std::size_t w = 0; w < words_; ++w) a[w] |= b[w];
    }
    const std::uint64_t* row(std::size_t i) const { return &bits_[i * words_]; }
    std::size_t words() const { return words_; }
    std::size_t size() const { return n_; }
    std::uint64_t row_popcount(std::size_t i) const;
    // Indices of set bits in row i, ascending.
    std::vector<std::uint32_t> row_indices(std::size_t i) const;

private:
    std::size_t n_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Time-separation storage: dense matrix below the threshold, sorted sparse
// rows above. Absent entries are 0.
class TauMatrix {
public:
    static constexpr std::size_t kDefaultDenseThreshold = 4096;

    TauMatrix() = default;
    explicit TauMatrix(std::size_t n,
                       std::size_t dense_threshold = kDefaultDenseThreshold);

    std::size_t size() const { return n_; }
    bool dense() const { return dense_; }

    double get(std::uint32_t i, std::uint32_t j) const;
    void set(std::uint32_t i, std::uint32_t j, double v);
    // Must be called after the last set() on a sparse matrix.
    void finalize();

    // Dense row pointer (nullptr when sparse).
    const double* row(std::uint32_t i) const {
        return dense_ ? dense_rows_.data() + std::size_t{i} * n_ : nullptr;
    }
    const std::vector<std::pair<std::uint32_t, double>>&
    sparse_row(std::uint32_t i) const {
        return sparse_rows_[i];
    }

    std::uint64_t positive_count() const;
    // Visit positive entries in (i, j) ascending order.
    template <typename F> void for_each_positive(F&& f) const {
        if (dense_) {
            for (std::uint32_t i = 0; i < n_; ++i) {
                const double* r = row(i);
                for (std::uint32_t j = 0; j < n_; ++j)
                    if (r[j] > 0.0) f(i, j, r[j]);
            }
        } else {
            for (std::uint32_t i = 0; i < n_; ++i)
                for (const auto& [j, v] : sparse_rows_[i])
                    if (v > 0.0) f(i, j, v);
        }
    }

private:
    std::size_t n_ = 0;
    bool dense_ = true;
    std::vector<double> dense_rows_;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> sparse_rows_;
};

// Ordered list of causally consecutive vertices with its accumulated tau.
struct Chain {
    std::vector<std::uint32_t> vertices;
    double tau_length = 0.0;
};

// geodesic_chain result: the maximizing chain, the realization gap
// tau(x,y) - tau_length (0 for intrinsic tau), and whether every consecutive
// pair is timelike rather than merely causal.
struct RealizedChain {
    Chain chain;
    double gap = 0.0;
    bool consecutive_timelike = true;
};

class DiscreteSpace {
public:
    DiscreteSpace() = default;

    // Points must be in topological order already (tau(i,j) > 0 requires
    // i < j); generators sort by the time coordinate. Throws CyclicOrder when
    // the matrix violates that.
    static DiscreteSpace from_ambient(std::vector<PointRec> points,
                                      AmbientTag tag, TauMatrix tau,
                                      Provenance prov);

    // Arbitrary link list (reduced on construction) plus explicit tau
    // entries. Throws CyclicOrder when the links contain a cycle.
    static DiscreteSpace
    from_links(std::vector<PointRec> points, AmbientTag tag,
               std::vector<std::pair<std::uint32_t, std::uint32_t>> links,
               const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>&
                   tau_entries,
               Provenance prov = Provenance::explicit_);

    std::size_t size() const { return points_.size(); }
    const PointRec& point(std::uint32_t i) const { return points_[i]; }
    const AmbientTag& ambient() const { return tag_; }
    Provenance provenance() const { return prov_; }
    bool all_coords() const { return all_coords_; }

    double tau(std::uint32_t i, std::uint32_t j) const { return tau_.get(i, j); }
    bool chron(std::uint32_t i, std::uint32_t j) const { return tau(i, j) > 0.0; }
    bool causal(std::uint32_t i, std::uint32_t j) const {
        return i == j || reach_.get(i, j);
    }

    const TauMatrix& tau_matrix() const { return tau_; }
    const BitRows& reach() const { return reach_; } // strict descendants
    const std::vector<std::uint32_t>& links_from(std::uint32_t i) const {
        return links_[i];
    }
    const std::vector<std::uint32_t>& links_to(std::uint32_t i) const {
        return rlinks_[i];
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all_links() const;
    std::size_t link_count() const { return link_count_; }
    std::uint64_t chron_pair_count() const { return tau_.positive_count(); }

    const std::vector<std::uint32_t>& topo_order() const { return topo_; }
    std::uint32_t topo_pos(std::uint32_t i) const { return topo_pos_[i]; }

    // Same points/links, different tau (used for intrinsic tau modes).
    DiscreteSpace with_tau(TauMatrix tau, Provenance prov) const;

    // Points strictly timelike between p and q, ascending.
    std::vector<std::uint32_t> interval(std::uint32_t p, std::uint32_t q) const;

private:
    void build_links_from_chron();
    void reduce_and_close(
        std::vector<std::vector<std::uint32_t>> succ);

    std::vector<PointRec> points_;
    AmbientTag tag_;
    Provenance prov_ = Provenance::explicit_;
    bool all_coords_ = false;
    TauMatrix tau_;
    std::vector<std::vector<std::uint32_t>> links_, rlinks_;
    std::size_t link_count_ = 0;
    BitRows reach_;
    std::vector<std::uint32_t> topo_, topo_pos_;
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::uint64_t checked = 0;
    std::string witness; // empty when passing
};

struct AxiomReport {
    bool pass = true;
    double tolerance = 0.0;
    std::size_t points = 0;
    std::vector<AxiomCheck> checks;
    const AxiomCheck* find(const std::string& name) const;
};

// Check every defining axiom; violations land in the report, never throw.
AxiomReport validate_axioms(const DiscreteSpace& sp, double tol = 1e-9);

enum class IntrinsicMode { link_count, weighted };

// Longest-path tau over the link skeleton: weighted sums link tau values,
// link_count counts links. Idempotent on its own output.
TauMatrix tau_intrinsic(const DiscreteSpace& sp, IntrinsicMode mode);

// Maximizing chain from x to y over the links, lexicographically smallest
// among maximizers. Requires x << y.
RealizedChain geodesic_chain(const DiscreteSpace& sp, std::uint32_t x,
                             std::uint32_t y);

// Largest finite tau value; 0 on empty spaces and antichains.
double finite_diameter(const DiscreteSpace& sp);

} // namespace lorcomp::space

#endif
