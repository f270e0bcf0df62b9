#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "valdyn/errors.hpp"
#include "valdyn/valuation.hpp"

namespace valdyn {

// A prime at infinity: b = -ord_E(L) for generic affine L, a = 1 + ord_E(dx^dy),
// alpha the skewness and thinness = a/b of the normalized valuation.
struct PrimeRecord {
    int id = 0;
    long long b = 1;
    long long a = -2;
    Rat alpha = Rat(1);
    Rat thinness = Rat(-2);
    std::vector<int> neighbors;
};

// The dual graph of an admissible compactification: a tree of primes
// rooted at the line at infinity (1, -2, 1, -2). Operations are
// persistent and return new graphs.
class DualGraph {
  public:
    DualGraph() { records_.push_back(PrimeRecord{}); }

    static constexpr int root_id = 0;
    const std::vector<PrimeRecord>& records() const { return records_; }
    const PrimeRecord& record(int id) const {
        if (id < 0 || id >= static_cast<int>(records_.size()))
            throw Error("UnknownPrime", "no prime with id " + std::to_string(id));
        return records_[static_cast<std::size_t>(id)];
    }
    int size() const { return static_cast<int>(records_.size()); }

    bool adjacent(int e1, int e2) const {
        const auto& n = record(e1).neighbors;
        return std::find(n.begin(), n.end(), e2) != n.end();
    }

    // Blowup of a free point of E: b' = b, a' = a + 1,
    // alpha' = alpha - 1/b^2, A' = A + 1/b.
    std::pair<DualGraph, int> blowup_free(int e) const {
        const PrimeRecord& E = record(e);
        DualGraph g = *this;
        PrimeRecord n;
        n.id = g.size();
        n.b = E.b;
        n.a = E.a + 1;
        n.alpha = E.alpha - Rat(1, E.b * E.b);
        n.thinness = Rat(n.a, n.b);
        n.neighbors = {e};
        g.records_.push_back(n);
        g.records_[static_cast<std::size_t>(e)].neighbors.push_back(n.id);
        return {g, n.id};
    }

    // Blowup of the intersection point of E1 and E2: b'' = b1 + b2,
    // a'' = a1 + a2; the new prime separates E1 and E2.
    std::pair<DualGraph, int> blowup_satellite(int e1, int e2) const {
        if (e1 == e2) throw Error("NotAdjacent", "a prime does not intersect itself");
        if (!adjacent(e1, e2))
            throw Error("NotAdjacent", "primes " + std::to_string(e1) + " and " +
                                           std::to_string(e2) + " do not intersect");
        const PrimeRecord& E1 = record(e1);
        const PrimeRecord& E2 = record(e2);
        DualGraph g = *this;
        PrimeRecord n;
        n.id = g.size();
        n.b = E1.b + E2.b;
        n.a = E1.a + E2.a;
        // alpha lies between the neighbours: |alpha'' - alpha_i| = 1/(b_i b'')
        n.alpha = (E1.alpha * Rat(E1.b) + E2.alpha * Rat(E2.b)) / Rat(n.b);
        n.thinness = Rat(n.a, n.b);
        n.neighbors = {e1, e2};
        g.records_.push_back(n);
        auto& v1 = g.records_[static_cast<std::size_t>(e1)].neighbors;
        auto& v2 = g.records_[static_cast<std::size_t>(e2)].neighbors;
        v1.erase(std::remove(v1.begin(), v1.end(), e2), v1.end());
        v2.erase(std::remove(v2.begin(), v2.end(), e1), v2.end());
        v1.push_back(n.id);
        v2.push_back(n.id);
        return {g, n.id};
    }

    // Tight iff every prime has alpha >= 0 and thinness <= 0.
    bool is_tight() const {
        for (const auto& r : records_)
            if (r.alpha < Rat(0) || r.thinness > Rat(0)) return false;
        return true;
    }

    // A free blowup on E keeps the compactification tight iff E has
    // neither skewness zero nor thinness zero.
    bool legal_free(int e) const {
        const PrimeRecord& E = record(e);
        return !E.alpha.is_zero() && !E.thinness.is_zero();
    }
    // A satellite point lies on two primes; blowing it up always stays
    // inside the subtree spanned by them.
    bool legal_satellite(int e1, int e2) const { return e1 != e2 && adjacent(e1, e2); }

    // One record per line: `id b a alpha A neighbors=[...]`, by id.
    std::string dump() const {
        std::string out;
        for (const auto& r : records_) {
            out += std::to_string(r.id) + " " + std::to_string(r.b) + " " +
                   std::to_string(r.a) + " " + r.alpha.to_string() + " " +
                   r.thinness.to_string() + " neighbors=[";
            std::vector<int> ns = r.neighbors;
            std::sort(ns.begin(), ns.end());
            for (std::size_t i = 0; i < ns.size(); ++i)
                out += (i ? "," : "") + std::to_string(ns[i]);
            out += "]\n";
        }
        return out;
    }

  private:
    std::vector<PrimeRecord> records_;
};

// Realization of a divisorial valuation as a chain of free and satellite
// blowups driven by the continued-fraction expansion of the datum
// exponents. Returns the graph and the id of the prime whose normalized
// valuation is v.
inline std::pair<DualGraph, int> realize_divisorial(const ValInfinity& v) {
    if (!v.is_divisorial())
        throw Error("NotDivisorial", "realize_divisorial needs a rational generic-tail datum");
    DualGraph g;
    // local exponent queue at the point at infinity: term e -> 1 - e,
    // increasing; a first term with e == 1 only translates along the root
    struct Item {
        Rat value;
        bool is_tail;
    };
    std::deque<Item> queue;
    for (const auto& t : v.terms()) {
        Rat gamma = Rat(1) - t.exponent;
        if (gamma.is_zero()) continue;
        queue.push_back({gamma, false});
    }
    queue.push_back({Rat(1) - v.tail_exponent().to_rat(), true});
    if (queue.back().value.is_zero()) return {g, DualGraph::root_id};  // -deg

    int e_z = DualGraph::root_id;
    int e_w = -1;  // -1: the transverse curve through the center is not a prime
    Rat sigma(1);
    for (;;) {
        Rat tau = queue.front().value;
        auto blow = [&]() {
            auto [g2, id] = e_w >= 0 ? g.blowup_satellite(e_z, e_w) : g.blowup_free(e_z);
            g = std::move(g2);
            return id;
        };
        if (tau == sigma) {
            int id = blow();
            if (queue.front().is_tail) return {g, id};
            queue.pop_front();
            for (auto& it : queue) it.value -= tau;
            e_z = id;
            e_w = -1;
        } else if (tau > sigma) {
            int id = blow();
            for (auto& it : queue) it.value -= sigma;
            e_z = id;
        } else {
            int id = blow();
            sigma -= tau;
            e_w = id;
        }
    }
}

}  // namespace valdyn
