#include "groupoidal/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groupoidal/tolerances.hpp"

namespace groupoidal {

namespace {

void require_same_parent(const AlgebraElement& a, const AlgebraElement& b) {
    if (&a.parent() == &b.parent()) return;
    if (a.parent() == b.parent()) return;
    throw std::invalid_argument("algebra elements belong to different groupoids");
}

}  // namespace

AlgebraElement::AlgebraElement(const Groupoid& parent) : parent_(&parent) {}

AlgebraElement AlgebraElement::delta(const Groupoid& parent, int transition_id) {
    if (!parent.has_transition(transition_id))
        throw std::invalid_argument("delta at undeclared transition " + std::to_string(transition_id));
    AlgebraElement e(parent);
    e.coeffs_[transition_id] = 1.0;
    return e;
}

cplx AlgebraElement::coefficient(int transition_id) const {
    auto it = coeffs_.find(transition_id);
    return it == coeffs_.end() ? cplx{} : it->second;
}

AlgebraElement& AlgebraElement::set_coefficient(int transition_id, cplx value) {
    if (!parent_->has_transition(transition_id))
        throw std::invalid_argument("coefficient at undeclared transition " + std::to_string(transition_id));
    if (std::abs(value) <= tol::prune)
        coeffs_.erase(transition_id);
    else
        coeffs_[transition_id] = value;
    return *this;
}

std::vector<int> AlgebraElement::support() const {
    std::vector<int> ids;
    ids.reserve(coeffs_.size());
    for (const auto& [tid, c] : coeffs_) ids.push_back(tid);
    std::sort(ids.begin(), ids.end());
    return ids;
}

void AlgebraElement::add_(int transition_id, cplx value) {
    auto it = coeffs_.find(transition_id);
    cplx next = (it == coeffs_.end() ? cplx{} : it->second) + value;
    if (std::abs(next) <= tol::prune) {
        if (it != coeffs_.end()) coeffs_.erase(it);
    } else if (it == coeffs_.end()) {
        coeffs_.emplace(transition_id, next);
    } else {
        it->second = next;
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    require_same_parent(*this, other);
    for (const auto& [tid, c] : other.coeffs_) add_(tid, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
    require_same_parent(*this, other);
    for (const auto& [tid, c] : other.coeffs_) add_(tid, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx scalar) {
    if (std::abs(scalar) <= tol::prune) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [tid, c] : coeffs_) c *= scalar;
    return *this;
}

AlgebraElement AlgebraElement::adjoint() const {
    AlgebraElement out(*parent_);
    for (const auto& [tid, c] : coeffs_) {
        auto inv = parent_->inverse(tid);
        if (!inv) throw std::runtime_error("transition " + std::to_string(tid) + " has no inverse");
        out.add_(*inv, std::conj(c));
    }
    return out;
}

double AlgebraElement::norm() const {
    double sum = 0.0;
    for (const auto& [tid, c] : coeffs_) sum += std::norm(c);
    return std::sqrt(sum);
}

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) {
    lhs += rhs;
    return lhs;
}

AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) {
    lhs -= rhs;
    return lhs;
}

AlgebraElement operator*(cplx scalar, AlgebraElement elem) {
    elem *= scalar;
    return elem;
}

AlgebraElement operator*(AlgebraElement elem, cplx scalar) {
    elem *= scalar;
    return elem;
}

AlgebraElement convolve(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    require_same_parent(lhs, rhs);
    const Groupoid& g = lhs.parent();
    AlgebraElement out(g);
    for (const auto& [a, fa] : lhs.coeffs_) {
        for (const auto& [b, gb] : rhs.coeffs_) {
            auto c = g.compose(a, b);
            if (c) out.add_(*c, fa * gb);
        }
    }
    return out;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) { return convolve(lhs, rhs); }

AlgebraElement algebra_unit(const Groupoid& g) {
    AlgebraElement e(g);
    for (const auto& [x, u] : g.unit_table()) e.set_coefficient(u, 1.0);
    return e;
}

bool approx_equal(const AlgebraElement& lhs, const AlgebraElement& rhs, double tolerance) {
    if (!(&lhs.parent() == &rhs.parent() || lhs.parent() == rhs.parent())) return false;
    for (int tid : lhs.support())
        if (std::abs(lhs.coefficient(tid) - rhs.coefficient(tid)) > tolerance) return false;
    for (int tid : rhs.support())
        if (std::abs(lhs.coefficient(tid) - rhs.coefficient(tid)) > tolerance) return false;
    return true;
}

}  // namespace groupoidal
