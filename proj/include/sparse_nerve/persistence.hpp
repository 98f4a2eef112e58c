#pragma once

#include <string>
#include <vector>

#include "sparse_nerve/simplex_enum.hpp"

namespace sparse_nerve {

struct BarcodeInterval {
    int dim = 0;
    Real birth = 0.0;
    Real death = 0.0;  // +inf for essential classes
};

/// Persistence barcode: intervals sorted by (dim, birth, death). Zero-length
/// pairings are dropped from the intervals but tallied for diagnostics.
struct Barcode {
    std::vector<BarcodeInterval> intervals;
    std::size_t zero_length_pairs = 0;

    std::vector<BarcodeInterval> in_dim(int dim) const;
};

/// Standard boundary-matrix column reduction over GF(2). The input must be a
/// valid filtration (validated; throws std::invalid_argument otherwise).
Barcode compute_barcode(const FilteredComplex& fc);

/// Brute-force full Rips filtration: every simplex up to max_dim whose
/// half-diameter is at most alpha_max, born at half its diameter.
FilteredComplex full_rips_filtration(const PointCloud& cloud, int max_dim, Real alpha_max);

/// Brute-force full Cech filtration (L2): every simplex whose minimum
/// enclosing ball radius is at most alpha_max, born at that radius.
FilteredComplex full_cech_filtration_l2(const PointCloud& cloud, int max_dim, Real alpha_max);

/// Outcome of a multiplicative c-approximation test between two barcodes.
struct MatchResult {
    bool ok = false;
    Real worst_ratio = 1.0;  // largest endpoint ratio over the certifying matching
    std::vector<std::pair<BarcodeInterval, BarcodeInterval>> matched;
    std::vector<BarcodeInterval> unmatched_ok;  // short bars left unmatched
    std::string detail;                         // human-readable failure note
};

/// Decides whether B1 and B2 admit a partial matching in which every bar with
/// death/birth beyond c (on either side) is matched and matched endpoints stay
/// within ratio c. Ratios at zero use an additive slack of 1e-9; inf/inf
/// counts as ratio 1, finite-vs-inf is never admissible. When compare_dims is
/// nonempty only those dimensions participate.
MatchResult barcode_approx_check(const Barcode& b1, const Barcode& b2, Real c,
                                 const std::vector<int>& compare_dims = {});

/// Smallest c among the candidate thresholds for which the check passes;
/// +inf when no finite c works (e.g. essential-class counts differ).
Real barcode_min_ratio(const Barcode& b1, const Barcode& b2,
                       const std::vector<int>& compare_dims = {});

/// Betti numbers of the sublevel complex at scale alpha, dimensions
/// 0..max_hom_dim, by independent GF(2) rank computation of the boundary
/// operators (not via the reduction pairing).
std::vector<std::size_t> betti_numbers_at(const FilteredComplex& fc, Real alpha, int max_hom_dim);

/// Rank over GF(2) of a bit matrix given as 64-bit packed rows.
std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows);

/// Text format: one line "dim birth death" per interval ("inf" for infinite
/// deaths), sorted by (dim, birth, death).
std::string format_barcode(const Barcode& bc);
Barcode parse_barcode(const std::string& text);

}  // namespace sparse_nerve
