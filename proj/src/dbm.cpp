#include "tinv/dbm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tinv {

Bound Bound::le(std::int64_t v) {
    if (v > kValueCap || v < -kValueCap) throw std::overflow_error("dbm bound overflow");
    return Bound{v * 2 + 1};
}

Bound Bound::lt(std::int64_t v) {
    if (v > kValueCap || v < -kValueCap) throw std::overflow_error("dbm bound overflow");
    return Bound{v * 2};
}

Bound Bound::operator+(const Bound& o) const {
    if (is_infinity() || o.is_infinity()) return infinity();
    std::int64_t v = value() + o.value();
    bool strict = is_strict() || o.is_strict();
    return Bound::of(v, strict);
}

std::string Bound::to_string() const {
    if (is_infinity()) return "inf";
    std::ostringstream os;
    os << (is_strict() ? "<" : "<=") << value();
    return os.str();
}

Dbm Dbm::universal(int dim) {
    Dbm z;
    z.dim_ = dim;
    z.empty_ = false;
    z.m_.assign(static_cast<std::size_t>(dim) * dim, Bound::kInfRaw);
    for (int i = 0; i < dim; ++i) {
        z.set(i, i, Bound::le(0));
        z.set(0, i, Bound::le(0));  // x_i >= 0
    }
    z.set(0, 0, Bound::le(0));
    return z;
}

Dbm Dbm::zero(int dim) {
    Dbm z;
    z.dim_ = dim;
    z.empty_ = false;
    z.m_.assign(static_cast<std::size_t>(dim) * dim, Bound::le(0).raw);
    return z;
}

Dbm Dbm::empty(int dim) {
    Dbm z;
    z.dim_ = dim;
    z.empty_ = true;
    z.m_.assign(static_cast<std::size_t>(dim) * dim, Bound::le(0).raw);
    return z;
}

void Dbm::canonicalize() {
    if (empty_) return;
    for (int k = 0; k < dim_; ++k)
        for (int i = 0; i < dim_; ++i) {
            Bound ik = at(i, k);
            if (ik.is_infinity()) continue;
            for (int j = 0; j < dim_; ++j) {
                Bound alt = ik + at(k, j);
                if (alt < at(i, j)) set(i, j, alt);
            }
        }
    for (int i = 0; i < dim_; ++i)
        if (at(i, i) < Bound::le(0)) {
            empty_ = true;
            return;
        }
}

// After tightening entry (a,b) of a canonical matrix, restore closure in
// O(dim^2) by routing paths through the updated edge.
void Dbm::close_after_tighten(int a, int b) {
    if (at(a, b) + at(b, a) < Bound::le(0)) {
        empty_ = true;
        return;
    }
    for (int i = 0; i < dim_; ++i) {
        Bound ia = at(i, a);
        if (ia.is_infinity()) continue;
        Bound via = ia + at(a, b);
        for (int j = 0; j < dim_; ++j) {
            Bound alt = via + at(b, j);
            if (alt < at(i, j)) set(i, j, alt);
        }
    }
    for (int i = 0; i < dim_; ++i)
        if (at(i, i) < Bound::le(0)) {
            empty_ = true;
            return;
        }
}

void Dbm::constrain(int i, int j, Bound b) {
    if (empty_) return;
    if (b < at(i, j)) {
        set(i, j, b);
        close_after_tighten(i, j);
    }
}

void Dbm::intersect(const Dbm& other) {
    if (empty_) return;
    if (other.empty_) {
        empty_ = true;
        return;
    }
    if (other.dim_ != dim_) throw std::invalid_argument("dbm dimension mismatch");
    for (int i = 0; i < dim_ && !empty_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (other.at(i, j) < at(i, j)) constrain(i, j, other.at(i, j));
}

void Dbm::up() {
    if (empty_) return;
    for (int i = 1; i < dim_; ++i) set(i, 0, Bound::infinity());
    // Still canonical: no finite path through column 0 can tighten anything.
}

void Dbm::down() {
    if (empty_) return;
    for (int j = 1; j < dim_; ++j) set(0, j, Bound::le(0));
    canonicalize();
}

void Dbm::reset(const std::vector<int>& clocks) {
    if (empty_) return;
    for (int x : clocks) {
        for (int j = 0; j < dim_; ++j) {
            set(x, j, at(0, j));
            set(j, x, at(j, 0));
        }
        set(x, x, Bound::le(0));
    }
}

void Dbm::free_clock(int x) {
    if (empty_) return;
    for (int j = 0; j < dim_; ++j) {
        if (j == x) continue;
        set(x, j, Bound::infinity());
        set(j, x, at(j, 0));
    }
    set(0, x, Bound::le(0));
}

void Dbm::inverse_reset(const std::vector<int>& clocks) {
    if (empty_) return;
    for (int x : clocks) constrain(x, 0, Bound::le(0));  // intersect with x = 0
    if (empty_) return;
    for (int x : clocks) free_clock(x);
    canonicalize();
}

void Dbm::extrapolate(const std::vector<std::int64_t>& maxc, std::int64_t diffcap) {
    if (empty_) return;
    bool changed = false;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            if (i == j) continue;
            std::int64_t cap;
            if (j == 0)
                cap = maxc[i];
            else if (i == 0)
                cap = maxc[j];
            else
                cap = diffcap;
            Bound b = at(i, j);
            if (b.is_infinity()) continue;
            if (b.value() > cap) {
                set(i, j, Bound::infinity());
                changed = true;
            } else if (b < Bound::lt(-cap)) {
                set(i, j, Bound::lt(-cap));
                changed = true;
            }
        }
    if (changed) {
        // Row 0 must keep clocks nonnegative.
        for (int j = 1; j < dim_; ++j)
            if (Bound::le(0) < at(0, j)) set(0, j, Bound::le(0));
        canonicalize();
    }
}

bool Dbm::includes(const Dbm& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    if (other.dim_ != dim_) throw std::invalid_argument("dbm dimension mismatch");
    for (std::size_t k = 0; k < m_.size(); ++k)
        if (m_[k] < other.m_[k]) return false;
    return true;
}

bool Dbm::operator==(const Dbm& other) const {
    if (empty_ || other.empty_) return empty_ == other.empty_ && dim_ == other.dim_;
    return dim_ == other.dim_ && m_ == other.m_;
}

Dbm Dbm::project(const std::vector<int>& keep) const {
    Dbm out;
    out.dim_ = static_cast<int>(keep.size());
    out.empty_ = empty_;
    out.m_.assign(static_cast<std::size_t>(out.dim_) * out.dim_, Bound::kInfRaw);
    for (int i = 0; i < out.dim_; ++i)
        for (int j = 0; j < out.dim_; ++j) out.m_[static_cast<std::size_t>(i) * out.dim_ + j] = at(keep[i], keep[j]).raw;
    return out;
}

bool Dbm::contains(const std::vector<double>& v) const {
    if (empty_) return false;
    auto val = [&](int i) { return i == 0 ? 0.0 : v[static_cast<std::size_t>(i) - 1]; };
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Bound b = at(i, j);
            if (b.is_infinity()) continue;
            double d = val(i) - val(j);
            if (b.is_strict() ? !(d < b.value()) : !(d <= b.value())) return false;
        }
    return true;
}

std::string Dbm::dump(const std::vector<std::string>& names) const {
    if (empty_) return "empty\n";
    auto name = [&](int i) { return i == 0 ? std::string("0") : names[static_cast<std::size_t>(i) - 1]; };
    std::vector<std::string> lines;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            if (i == j) continue;
            Bound b = at(i, j);
            if (b.is_infinity()) continue;
            if (i == 0 && b == Bound::le(0)) continue;  // x >= 0 is implicit
            std::ostringstream os;
            if (j == 0)
                os << name(i);
            else if (i == 0)
                os << "0 - " << name(j);
            else
                os << name(i) << " - " << name(j);
            os << " " << (b.is_strict() ? "<" : "<=") << " " << b.value();
            lines.push_back(os.str());
        }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace tinv
