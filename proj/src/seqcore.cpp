#include "summability/seqcore.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>

namespace summability::seqcore {

namespace {

class VectorCursor final : public BoundaryCursor {
public:
    explicit VectorCursor(std::shared_ptr<const std::vector<Nat>> v) : v_(std::move(v)) {}
    std::optional<Nat> next() override {
        if (i_ >= v_->size()) return std::nullopt;
        return (*v_)[i_++];
    }

private:
    std::shared_ptr<const std::vector<Nat>> v_;
    std::size_t i_ = 0;
};

class GeneratedCursor final : public BoundaryCursor {
public:
    explicit GeneratedCursor(std::function<std::optional<Nat>(std::size_t)> nth)
        : nth_(std::move(nth)) {}
    std::optional<Nat> next() override {
        if (done_) return std::nullopt;
        auto b = nth_(j_++);
        if (!b) done_ = true;
        return b;
    }

private:
    std::function<std::optional<Nat>(std::size_t)> nth_;
    std::size_t j_ = 0;
    bool done_ = false;
};

class MergeCursor final : public BoundaryCursor {
public:
    explicit MergeCursor(const std::vector<CursorFactory>& streams) {
        for (const auto& f : streams) {
            auto c = f();
            auto head = c->next();
            if (head) heads_.push_back({std::move(*head), std::move(c)});
        }
    }
    std::optional<Nat> next() override {
        if (heads_.empty()) return std::nullopt;
        std::size_t best = 0;
        for (std::size_t i = 1; i < heads_.size(); ++i)
            if (heads_[i].value < heads_[best].value) best = i;
        Nat out = heads_[best].value;
        auto n = heads_[best].cursor->next();
        if (n) {
            heads_[best].value = std::move(*n);
        } else {
            heads_.erase(heads_.begin() + static_cast<std::ptrdiff_t>(best));
        }
        return out;
    }

private:
    struct Head {
        Nat value;
        std::unique_ptr<BoundaryCursor> cursor;
    };
    std::vector<Head> heads_;
};

class NormalizeCursor final : public BoundaryCursor {
public:
    explicit NormalizeCursor(std::unique_ptr<BoundaryCursor> inner) : inner_(std::move(inner)) {
        pending_ = inner_->next();
    }
    std::optional<Nat> next() override {
        while (pending_) {
            Nat v = *pending_;
            std::size_t run = 1;
            for (pending_ = inner_->next(); pending_ && *pending_ == v;
                 pending_ = inner_->next())
                ++run;
            if (pending_ && *pending_ < v)
                throw std::logic_error("normalize_stream: boundaries must be nondecreasing");
            if (run % 2 == 1) return v;
        }
        return std::nullopt;
    }

private:
    std::unique_ptr<BoundaryCursor> inner_;
    std::optional<Nat> pending_;
};

}  // namespace

BlockSequence::BlockSequence(int initial_value, CursorFactory boundaries,
                             std::string description)
    : initial_(initial_value), factory_(std::move(boundaries)),
      description_(std::move(description)) {
    if (initial_ != 0 && initial_ != 1)
        throw std::invalid_argument("BlockSequence: initial value must be 0 or 1");
}

int BlockSequence::term(const Nat& n) const {
    auto cur = factory_();
    int v = initial_;
    std::size_t pulls = 0;
    for (auto b = cur->next(); b; b = cur->next()) {
        if (*b > n) break;
        v ^= 1;
        if (++pulls > kBoundaryPullCap)
            throw std::runtime_error("BlockSequence::term: boundary pull cap exceeded");
    }
    return v;
}

BlockCursor::BlockCursor(const BlockSequence& s)
    : cur_(s.boundaries()), value_(s.initial_value()) {}

std::optional<Block> BlockCursor::next() {
    if (done_) return std::nullopt;
    auto b = cur_->next();
    if (!b) {
        done_ = true;
        return Block{prev_, std::nullopt, value_};
    }
    if (*b <= prev_)
        throw std::logic_error("BlockCursor: boundaries must be strictly increasing");
    Block out{prev_, *b, value_};
    prev_ = std::move(*b);
    value_ ^= 1;
    return out;
}

std::vector<Block> first_blocks(const BlockSequence& s, int value, std::size_t count) {
    std::vector<Block> out;
    BlockCursor bc(s);
    std::size_t pulls = 0;
    while (out.size() < count) {
        auto blk = bc.next();
        if (!blk || !blk->end) break;  // final infinite block never qualifies
        if (value < 0 || blk->value == value) out.push_back(std::move(*blk));
        if (++pulls > kBoundaryPullCap)
            throw std::runtime_error("first_blocks: boundary pull cap exceeded");
    }
    return out;
}

CursorFactory vector_stream(std::vector<Nat> boundaries) {
    auto shared = std::make_shared<const std::vector<Nat>>(std::move(boundaries));
    return [shared] { return std::make_unique<VectorCursor>(shared); };
}

CursorFactory generated_stream(std::function<std::optional<Nat>(std::size_t)> nth) {
    return [nth = std::move(nth)] { return std::make_unique<GeneratedCursor>(nth); };
}

CursorFactory merge_streams(std::vector<CursorFactory> streams) {
    auto shared = std::make_shared<const std::vector<CursorFactory>>(std::move(streams));
    return [shared] { return std::make_unique<MergeCursor>(*shared); };
}

CursorFactory normalize_stream(CursorFactory raw) {
    return [raw = std::move(raw)] { return std::make_unique<NormalizeCursor>(raw()); };
}

namespace {

class FactorialCursor final : public BoundaryCursor {
public:
    explicit FactorialCursor(unsigned multiplier) : mult_(multiplier) {}
    std::optional<Nat> next() override {
        fact_ *= ++k_;
        return Nat(mult_ * fact_);
    }

private:
    unsigned mult_;
    Nat fact_ = 1;
    unsigned k_ = 0;
};

class DsumCursor final : public BoundaryCursor {
public:
    std::optional<Nat> next() override {
        fact_ *= ++k_;
        sum_ += fact_;
        return sum_;
    }

private:
    Nat fact_ = 1, sum_ = 0;
    unsigned k_ = 0;
};

}  // namespace

CursorFactory factorial_stream() {
    return [] { return std::make_unique<FactorialCursor>(1); };
}

CursorFactory double_factorial_stream() {
    return [] { return std::make_unique<FactorialCursor>(2); };
}

CursorFactory dsum_stream() {
    return [] { return std::make_unique<DsumCursor>(); };
}

BlockSequence from_boundaries(int initial_value, std::vector<Nat> boundaries,
                              std::string description) {
    for (const auto& b : boundaries)
        if (b < 1) throw std::invalid_argument("from_boundaries: boundaries must be >= 1");
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
        if (!(boundaries[i] < boundaries[i + 1]))
            throw std::invalid_argument("from_boundaries: boundaries must be strictly increasing");
    return BlockSequence(initial_value, vector_stream(std::move(boundaries)),
                         std::move(description));
}

BlockSequence from_generator(int initial_value,
                             std::function<std::optional<Nat>(std::size_t)> nth,
                             std::string description) {
    return BlockSequence(initial_value, generated_stream(std::move(nth)),
                         std::move(description));
}

BlockSequence constant(int value) {
    return BlockSequence(value, vector_stream({}),
                         value ? "constant-1" : "constant-0");
}

BlockSequence alternating() {
    return from_generator(1, [](std::size_t j) { return Nat(j + 1); }, "alternating");
}

BlockSequence example1() {
    return BlockSequence(0, dsum_stream(), "example1");
}

BlockSequence example2() {
    return BlockSequence(
        1, normalize_stream(merge_streams({factorial_stream(), double_factorial_stream()})),
        "example2");
}

BlockSequence example1_majorant(unsigned k) {
    if (k < 1) throw std::invalid_argument("example1_majorant: requires k >= 1");
    return from_boundaries(1, {bignum::dsum(2 * k), bignum::dsum(2 * k + 1)},
                           "example1-majorant(" + std::to_string(k) + ")");
}

BlockSequence negate(const BlockSequence& s) {
    return BlockSequence(1 - s.initial_value(), s.boundary_factory(),
                         "negated " + s.description());
}

namespace {

// uniform Nat in [lo, hi] by rejection over fixed-width random bit blocks
Nat uniform_nat(std::mt19937_64& rng, const Nat& lo, const Nat& hi) {
    Nat span = hi - lo + 1;
    auto bits = msb(span) + 1;
    for (;;) {
        Nat candidate = 0;
        for (unsigned got = 0; got < bits; got += 64) {
            candidate <<= 64;
            candidate |= Nat(rng());
        }
        candidate >>= (((bits + 63) / 64) * 64 - bits);
        if (candidate < span) return lo + candidate;
    }
}

}  // namespace

BlockSequence random_block_sequence(std::uint64_t seed, std::size_t boundary_count) {
    std::mt19937_64 rng(seed);
    std::vector<Nat> bounds;
    bounds.reserve(boundary_count);
    Nat b = 1 + Nat(rng() % 4);
    Nat jfact = 1;
    for (std::size_t j = 1; j <= boundary_count; ++j) {
        bounds.push_back(b);
        jfact *= j;
        b *= uniform_nat(rng, 2, jfact + 1);
    }
    int initial = static_cast<int>(rng() % 2);
    return from_boundaries(initial, std::move(bounds),
                           "random(" + std::to_string(seed) + ")");
}

RealSequence to_real(const BlockSequence& s) {
    RealSequence r;
    r.term = [s](std::uint64_t n) { return Rational(s.term(Nat(n))); };
    r.bounded_below = true;
    r.lower_bound = 0;
    r.magnitude_bound = Rational(1);
    return r;
}

}  // namespace summability::seqcore
