#ifndef TINV_DBM_HPP
#define TINV_DBM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tinv {

// ── Bound ───────────────────────────────────────────────────────────────────
// A DBM entry: an upper bound on a clock difference, either (value, <=),
// (value, <) or +infinity. Encoded in a single int64 as value*2 + 1 for
// non-strict and value*2 for strict bounds, so the natural integer order is
// exactly the bound order ((v,<) is tighter than (v,<=)).

struct Bound {
    std::int64_t raw;

    static constexpr std::int64_t kInfRaw = INT64_MAX;
    // Values beyond this are a sign of runaway arithmetic, not a real model.
    static constexpr std::int64_t kValueCap = (INT64_C(1) << 40);

    static Bound infinity() { return Bound{kInfRaw}; }
    static Bound le(std::int64_t v);
    static Bound lt(std::int64_t v);
    static Bound of(std::int64_t v, bool strict) { return strict ? lt(v) : le(v); }

    bool is_infinity() const { return raw == kInfRaw; }
    std::int64_t value() const { return raw >> 1; }
    bool is_strict() const { return !(raw & 1); }

    bool operator==(const Bound& o) const { return raw == o.raw; }
    bool operator<(const Bound& o) const { return raw < o.raw; }
    bool operator<=(const Bound& o) const { return raw <= o.raw; }

    Bound operator+(const Bound& o) const;

    std::string to_string() const;
};

// ── Dbm ─────────────────────────────────────────────────────────────────────
// Difference Bound Matrix over clocks 0..dim-1 where clock 0 is the constant
// zero reference. Entry (i,j) bounds x_i - x_j. All mutating operations keep
// the matrix canonical (shortest-path closed) unless stated otherwise; the
// empty zone is represented explicitly by a flag once detected.

class Dbm {
public:
    Dbm() : dim_(0), empty_(true) {}

    // All clocks >= 0, otherwise unconstrained.
    static Dbm universal(int dim);
    // All clocks = 0.
    static Dbm zero(int dim);
    static Dbm empty(int dim);

    int dim() const { return dim_; }
    bool is_empty() const { return empty_; }

    Bound at(int i, int j) const { return Bound{m_[idx(i, j)]}; }

    // Intersect with the constraint x_i - x_j <= b (or < b). Incremental
    // O(dim^2) re-closure; detects emptiness.
    void constrain(int i, int j, Bound b);

    // Full Floyd-Warshall closure. Public mostly for tests; operations keep
    // canonical form on their own.
    void canonicalize();

    void intersect(const Dbm& other);

    // Forward diagonal projection (time elapse): drop upper bounds on clocks.
    void up();
    // Backward diagonal projection: drop lower bounds on clocks.
    void down();
    // Reset the given clocks to 0.
    void reset(const std::vector<int>& clocks);
    // Inverse reset [r]z = { v | v with r:=0 in z }.
    void inverse_reset(const std::vector<int>& clocks);
    // Remove all constraints on clock i except x_i >= 0.
    void free_clock(int i);

    // k-normalisation. maxc[i] caps bounds against the reference clock for
    // clock i (ignored for i = 0), diffcap caps clock-clock entries. Any
    // upper bound above its cap becomes infinity, any bound below -cap is
    // tightened to (-cap, <). Result is re-canonicalized.
    void extrapolate(const std::vector<std::int64_t>& maxc, std::int64_t diffcap);

    bool includes(const Dbm& other) const;  // this >= other as sets
    bool same_zone(const Dbm& other) const { return includes(other) && other.includes(*this); }
    bool operator==(const Dbm& other) const;

    // Exact projection onto a subset of clocks. keep must contain 0.
    Dbm project(const std::vector<int>& keep) const;

    bool contains(const std::vector<double>& valuation) const;

    // One line per non-trivial bound, sorted; used in golden tests.
    std::string dump(const std::vector<std::string>& names) const;

private:
    int dim_;
    bool empty_;
    std::vector<std::int64_t> m_;

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * dim_ + j; }
    void set(int i, int j, Bound b) { m_[idx(i, j)] = b.raw; }
    void close_after_tighten(int a, int b);
};

}  // namespace tinv

#endif
