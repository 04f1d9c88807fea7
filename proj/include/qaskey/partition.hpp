#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaskey {

/// An integer partition: weakly decreasing positive parts, empty allowed.
/// Partitions index everything in this library, so the ordering used by
/// std::map (graded lexicographic) doubles as the canonical serialization
/// order for coefficient tables.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : p_(std::move(parts)) {
        while (!p_.empty() && p_.back() == 0) p_.pop_back();
        for (size_t i = 0; i < p_.size(); ++i) {
            if (p_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
            if (i + 1 < p_.size() && p_[i] < p_[i + 1])
                throw std::invalid_argument("Partition: parts must be weakly decreasing");
        }
    }
    /// Sorts the entries (used when collecting symmetric-orbit exponents).
    static Partition sorted(std::vector<int> v) {
        std::sort(v.begin(), v.end(), std::greater<int>());
        return Partition(std::move(v));
    }

    const std::vector<int>& parts() const { return p_; }
    int length() const { return static_cast<int>(p_.size()); }
    bool empty() const { return p_.empty(); }
    long size() const {
        long s = 0;
        for (int x : p_) s += x;
        return s;
    }
    /// i is 0-based; parts beyond the length read as 0.
    int part(int i) const { return (i >= 0 && i < length()) ? p_[i] : 0; }

    Partition conjugate() const {
        if (p_.empty()) return {};
        std::vector<int> c(p_[0], 0);
        for (int j = 0; j < p_[0]; ++j)
            for (int x : p_) c[j] += (x > j) ? 1 : 0;
        return Partition(std::move(c));
    }

    /// n(lambda) = sum (i-1) * lambda_i.
    long n_stat() const {
        long s = 0;
        for (size_t i = 0; i < p_.size(); ++i) s += static_cast<long>(i) * p_[i];
        return s;
    }

    /// Each square replaced by a 2x2 square: (2l1, 2l1, 2l2, 2l2, ...).
    Partition hat() const {
        std::vector<int> h;
        h.reserve(2 * p_.size());
        for (int x : p_) {
            h.push_back(2 * x);
            h.push_back(2 * x);
        }
        return Partition(std::move(h));
    }

    /// True iff this diagram fits inside la (mu_i <= la_i for all i).
    bool contained_in(const Partition& la) const {
        if (length() > la.length()) return false;
        for (int i = 0; i < length(); ++i)
            if (p_[i] > la.p_[i]) return false;
        return true;
    }

    /// Parts padded with zeros to the given length.
    std::vector<int> padded(int n) const {
        if (n < length()) throw std::invalid_argument("Partition: padding shorter than length");
        std::vector<int> v = p_;
        v.resize(n, 0);
        return v;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

    /// Graded lexicographic: by |lambda| first, then lex on the parts.
    friend bool operator<(const Partition& a, const Partition& b) {
        long sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.p_ < b.p_;
    }
    friend bool operator>(const Partition& a, const Partition& b) { return b < a; }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < p_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(p_[i]);
        }
        return s + "]";
    }

private:
    std::vector<int> p_;
};

inline bool contains(const Partition& mu, const Partition& la) { return mu.contained_in(la); }

/// All partitions with length <= max_length, largest part <= max_part and
/// size <= max_size, in graded lexicographic order.
inline std::vector<Partition> enumerate_partitions(int max_length, int max_part, long max_size) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int maxp, long left) -> void {
        out.emplace_back(Partition(cur));
        if (static_cast<int>(cur.size()) >= max_length) return;
        for (int p = std::min<long>(maxp, left); p >= 1; --p) {
            cur.push_back(p);
            self(self, p, left - p);
            cur.pop_back();
        }
    };
    if (max_length >= 0 && max_part >= 0 && max_size >= 0) rec(rec, max_part, max_size);
    std::sort(out.begin(), out.end());
    return out;
}

/// All mu contained in la (including empty and la itself), graded-lex order.
inline std::vector<Partition> subdiagrams(const Partition& la) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int row) -> void {
        if (row == la.length() || (!cur.empty() && cur.back() == 0)) {
            std::vector<int> trimmed = cur;
            while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
            out.emplace_back(Partition(std::move(trimmed)));
            return;
        }
        int hi = la.part(row);
        if (row > 0 && !cur.empty()) hi = std::min(hi, cur.back());
        for (int p = hi; p >= 0; --p) {
            cur.push_back(p);
            self(self, row + 1);
            cur.pop_back();
            if (p == 0) break;
        }
    };
    if (la.empty())
        out.push_back({});
    else
        rec(rec, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace qaskey
