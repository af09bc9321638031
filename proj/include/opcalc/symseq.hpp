#pragma once

#include "opcalc/symrep.hpp"

namespace opcalc {

// Set partition of {0..n-1}: blocks listed increasing, blocks ordered by
// their minimal elements.
struct SetPartition {
    std::vector<std::vector<int>> blocks;

    int num_blocks() const { return (int)blocks.size(); }
    int ground_size() const {
        int n = 0;
        for (const auto& b : blocks) n += (int)b.size();
        return n;
    }
    static std::vector<SetPartition> all(int n);

    friend bool operator<(const SetPartition& a, const SetPartition& b) {
        return a.blocks < b.blocks;
    }
    friend bool operator==(const SetPartition& a, const SetPartition& b) {
        return a.blocks == b.blocks;
    }
};

// Relabeling a partition by sigma: where each block went and how it was
// internally rearranged.
struct PartitionMove {
    SetPartition target;
    Perm tau;                 // source block j -> target block tau(j)
    std::vector<Perm> local;  // local[j]: position shuffle within block j
};
PartitionMove move_partition(const SetPartition& pi, const Perm& sigma);

// Arity-indexed symmetric-group modules; the underlying data of an operad
// or analytic functor. Non-unital: components[0] is zero unless flagged.
struct SymmetricSequence {
    int max_arity = 0;
    SignRule rule = SignRule::koszul;
    bool unital = false;
    std::vector<SymGroupModule> components;  // index = arity, size max_arity+1

    const SymGroupModule& at(int n) const {
        static const SymGroupModule empty;
        if (n < 0 || n > max_arity) return empty;
        return components[n];
    }

    static SymmetricSequence zeros(int max_arity, SignRule rule = SignRule::koszul);
    // The unit of the composition product: K in arity 1, zero elsewhere.
    static SymmetricSequence one(int max_arity, SignRule rule = SignRule::koszul);

    bool validate() const;
};

// Basis bookkeeping for a composite component (F o G)[n]: elements are
// (set partition pi, F[#blocks] basis element, one G[|B|] basis element per
// block), partition-major, tensor order within each partition.
struct CompositeBasis {
    int n = 0;
    std::vector<SetPartition> partitions;
    std::vector<TensorBasis> tensors;            // per partition: [F[k], G[B_1], ...]
    GradedVectorSpace space;
    std::vector<std::map<int, int>> offsets;     // partition -> degree -> base index

    int index_of(int part, int degree, const TensorBasis::Elem& e) const {
        return offsets[part].at(degree) + tensors[part].index_of(degree, e);
    }
    // Inverse lookup: which partition and local element a coordinate is.
    std::pair<int, TensorBasis::Elem> locate(int degree, int index) const;
};

struct ComposeResult {
    SymmetricSequence seq;
    std::vector<CompositeBasis> bases;  // per arity
};

// Composition product (plethysm) on the set-partition basis, with the
// natural Sigma_n action (Koszul signs per F.rule when blocks reorder).
ComposeResult compose(const SymmetricSequence& f, const SymmetricSequence& g);

}  // namespace opcalc
