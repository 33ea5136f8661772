#ifndef SUMMABILITY_SEQCORE_HPP
#define SUMMABILITY_SEQCORE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "summability/bignum.hpp"

// Symbolic 0/1 block sequences.  A sequence is an initial value plus a lazy
// strictly increasing stream of toggle boundaries; u_n = initial XOR
// (#boundaries <= n mod 2).  Boundary streams are restartable: every
// consumer opens its own cursor.

namespace summability::seqcore {

using bignum::Int;
using bignum::Nat;
using bignum::Rational;

class BoundaryCursor {
public:
    virtual ~BoundaryCursor() = default;
    virtual std::optional<Nat> next() = 0;
};

using CursorFactory = std::function<std::unique_ptr<BoundaryCursor>()>;

// Cap on boundary pulls per walk; factorially growing streams never get
// anywhere near it, and it turns accidental dense iteration into an error.
inline constexpr std::size_t kBoundaryPullCap = 1u << 22;

class BlockSequence {
public:
    BlockSequence(int initial_value, CursorFactory boundaries, std::string description);

    int initial_value() const { return initial_; }
    const std::string& description() const { return description_; }
    std::unique_ptr<BoundaryCursor> boundaries() const { return factory_(); }
    const CursorFactory& boundary_factory() const { return factory_; }

    // u_n; cost proportional to the number of boundaries <= n
    int term(const Nat& n) const;

private:
    int initial_;
    CursorFactory factory_;
    std::string description_;
};

// maximal constant runs of the sequence
struct Block {
    Nat start;
    std::optional<Nat> end;  // nullopt = final infinite block
    int value;
};

class BlockCursor {
public:
    explicit BlockCursor(const BlockSequence& s);
    std::optional<Block> next();

private:
    std::unique_ptr<BoundaryCursor> cur_;
    Nat prev_ = 0;
    int value_;
    bool done_ = false;
};

// first `count` finite blocks of the given value (value = -1 for all blocks);
// blocks are returned in order
std::vector<Block> first_blocks(const BlockSequence& s, int value, std::size_t count);

// --- stream combinators -------------------------------------------------

CursorFactory vector_stream(std::vector<Nat> boundaries);
// pure j -> j-th boundary (0-based); nullopt ends the stream
CursorFactory generated_stream(std::function<std::optional<Nat>(std::size_t)> nth);
// nondecreasing k-way merge, duplicates preserved
CursorFactory merge_streams(std::vector<CursorFactory> streams);
// collapse runs of equal boundaries (even-length run disappears, odd run
// keeps one); output is strictly increasing
CursorFactory normalize_stream(CursorFactory raw);

// named generators (also reachable from sequence spec files)
CursorFactory factorial_stream();         // 1!, 2!, 3!, ...
CursorFactory double_factorial_stream();  // 2*1!, 2*2!, ...
CursorFactory dsum_stream();              // D(1), D(2), ...

// --- constructors ---------------------------------------------------------

BlockSequence from_boundaries(int initial_value, std::vector<Nat> boundaries,
                              std::string description = "explicit");
BlockSequence from_generator(int initial_value,
                             std::function<std::optional<Nat>(std::size_t)> nth,
                             std::string description = "generated");
BlockSequence constant(int value);
// 1,0,1,0,... (boundaries 1,2,3,...)
BlockSequence alternating();

// ones exactly on [D(2k-1), D(2k)); boundaries D(1), D(2), ...
BlockSequence example1();
// zeros exactly on the normalized union of [k!, 2k!); boundaries
// 1, 4, 6, 12, 24, 48, ... (the k = 1 pair cancels in normalization)
BlockSequence example2();
// ones outside the single zero-block [D(2k), D(2k+1)); pointwise >= example1
BlockSequence example1_majorant(unsigned k);

// complement: initial value flipped, identical boundaries, u -> 1 - u
BlockSequence negate(const BlockSequence& s);

// random block sequence for property suites: boundaries b_{j+1} = b_j * r_j
// with r_j uniform over {2, ..., j!+1}; `boundary_count` boundaries are
// materialized
BlockSequence random_block_sequence(std::uint64_t seed, std::size_t boundary_count = 24);

// --- general real sequences ------------------------------------------------

// grid/naive evaluation only; used for MDP expected-cost sequences
struct RealSequence {
    std::function<Rational(std::uint64_t)> term;
    bool bounded_below = false;
    Rational lower_bound{};
    // |u_n| <= magnitude_bound when set; required by Abel tail bounds
    std::optional<Rational> magnitude_bound;
};

RealSequence to_real(const BlockSequence& s);

}  // namespace summability::seqcore

#endif
