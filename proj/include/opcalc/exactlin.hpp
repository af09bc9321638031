#pragma once

#include <optional>

#include "opcalc/graded.hpp"
#include "opcalc/perm.hpp"

namespace opcalc {

enum class SignRule { koszul, plain };

inline int sign_for(SignRule rule, const Perm& sigma, const std::vector<int>& degs) {
    return rule == SignRule::koszul ? koszul_sign(sigma, degs) : 1;
}

// Ordered basis of a tensor product of graded spaces, degree-truncated.
// A basis element of total degree d is a tuple of (degree, index) pairs, one
// per factor; tuples are ordered lexicographically (leftmost factor major).
struct TensorBasis {
    using Part = std::pair<int, int>;     // (degree, index within that degree)
    using Elem = std::vector<Part>;       // one Part per factor

    std::vector<GradedVectorSpace> factors;
    GradedVectorSpace space;
    std::map<int, std::vector<Elem>> elems;
    std::map<int, std::map<Elem, int>> position;

    static TensorBasis build(std::vector<GradedVectorSpace> factor_list,
                             std::optional<int> degree_cap = std::nullopt);

    int dim(int degree) const { return space.dim(degree); }

    int index_of(int degree, const Elem& e) const {
        auto it = position.find(degree);
        assert(it != position.end());
        auto jt = it->second.find(e);
        assert(jt != it->second.end());
        return jt->second;
    }

    static int degree_of(const Elem& e) {
        int d = 0;
        for (const auto& [deg, idx] : e) d += deg;
        return d;
    }
};

// Matrix of the symmetry isomorphism permuting tensor factors: factor i of
// the source becomes factor sigma(i) of the target basis. Signs per rule.
GradedLinearMap permute_factors(const TensorBasis& source, const TensorBasis& target,
                                const Perm& sigma, SignRule rule);

// (f_1 (x) ... (x) f_r) between tensor bases with matching factor counts.
// Degree-preserving factor maps, so no signs arise.
GradedLinearMap tensor_of_maps(const TensorBasis& source, const TensorBasis& target,
                               const std::vector<const GradedLinearMap*>& per_factor);

// Applies f to the contiguous factors [lo, lo+cnt) of src, identity on the
// rest; the image replaces them as a single factor at position lo of tgt.
GradedLinearMap contract_factors(const TensorBasis& src, int lo, int cnt,
                                 const TensorBasis& fdom, const GradedLinearMap& f,
                                 const TensorBasis& tgt);

// Binary tensor product together with its basis bookkeeping.
struct TensorProduct {
    GradedVectorSpace space;
    TensorBasis basis;
    // The symmetry isomorphism V (x) W -> W (x) V onto the swapped product.
    GradedLinearMap swap_to(const TensorProduct& swapped, SignRule rule) const;
};

TensorProduct tensor_product(const GradedVectorSpace& v, const GradedVectorSpace& w,
                             SignRule rule = SignRule::koszul,
                             std::optional<int> degree_cap = std::nullopt);

// Exact kernel and cokernel with witness maps.
struct KernelCokernel {
    GradedVectorSpace kernel;
    GradedLinearMap inclusion;   // kernel -> source
    GradedVectorSpace cokernel;
    GradedLinearMap projection;  // target -> cokernel
};

KernelCokernel kernel_cokernel(const GradedLinearMap& f);

// Quotient of the ambient space by the span of the columns of `subspace`
// (one block per degree, columns live in the ambient space).
struct QuotientMaps {
    GradedVectorSpace space;
    GradedLinearMap projection;  // ambient -> quotient
    GradedLinearMap section;     // quotient -> ambient, projection o section = id
};

QuotientMaps quotient_by_span(const GradedVectorSpace& ambient,
                              const std::map<int, Matrix>& subspace);

// Right inverse of p when p is degreewise surjective, pivoting on the
// leftmost independent columns; nullopt otherwise.
std::optional<GradedLinearMap> solve_section(const GradedLinearMap& p);

}  // namespace opcalc
