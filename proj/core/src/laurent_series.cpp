#include "ellmu/laurent_series.hpp"

#include <algorithm>
#include <sstream>

#include "ellmu/errors.hpp"

namespace ellmu {

laurent_series::laurent_series(field_ref f, int precision) : field_(std::move(f)), val_(precision), prec_(precision) {}

laurent_series::laurent_series(field_ref f, int val, std::vector<ff_elem> coeffs, int precision)
    : field_(std::move(f)), val_(val), c_(std::move(coeffs)), prec_(precision) {
    if (val_ > prec_) val_ = prec_;
    c_.resize(static_cast<std::size_t>(prec_ - val_), ff_elem{0});
    normalize();
}

void laurent_series::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].v == 0) ++lead;
    if (lead == 0) return;
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
}

laurent_series laurent_series::constant(field_ref f, ff_elem c, int precision) {
    return monomial(std::move(f), c, 0, precision);
}

laurent_series laurent_series::monomial(field_ref f, ff_elem c, int k, int precision) {
    if (k >= precision) return laurent_series(std::move(f), precision);
    std::vector<ff_elem> v(static_cast<std::size_t>(precision - k), ff_elem{0});
    v[0] = c;
    return laurent_series(std::move(f), k, std::move(v), precision);
}

int laurent_series::valuation() const {
    if (c_.empty()) throw precision_exhausted("series is zero to precision " + std::to_string(prec_));
    return val_;
}

ff_elem laurent_series::coeff(int k) const {
    if (k >= prec_) throw precision_exhausted("coefficient " + std::to_string(k) + " beyond precision " + std::to_string(prec_));
    if (k < val_) return ff_elem{0};
    return c_[static_cast<std::size_t>(k - val_)];
}

ff_elem laurent_series::leading() const {
    if (c_.empty()) throw precision_exhausted("leading coefficient of a series zero to precision");
    return c_.front();
}

laurent_series laurent_series::shift(int k) const {
    laurent_series r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
}

laurent_series laurent_series::truncate(int precision) const {
    if (precision >= prec_) return *this;
    laurent_series r = *this;
    r.prec_ = precision;
    if (r.val_ >= precision) {
        r.val_ = precision;
        r.c_.clear();
    } else {
        r.c_.resize(static_cast<std::size_t>(precision - r.val_));
    }
    return r;
}

laurent_series laurent_series::extend(int precision) const {
    if (precision <= prec_) return *this;
    if (c_.empty()) return laurent_series(field_, precision);
    laurent_series r = *this;
    r.prec_ = precision;
    r.c_.resize(static_cast<std::size_t>(precision - val_), ff_elem{0});
    return r;
}

laurent_series laurent_series::inflate(int k) const {
    if (k < 1) throw input_error("inflation factor must be positive");
    if (c_.empty()) return laurent_series(field_, prec_ * k);
    const int val = val_ * k;
    const int prec = prec_ * k;
    std::vector<ff_elem> v(static_cast<std::size_t>(prec - val), ff_elem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * static_cast<std::size_t>(k)] = c_[i];
    return laurent_series(field_, val, std::move(v), prec);
}

laurent_series laurent_series::inverse() const {
    if (c_.empty()) throw precision_exhausted("inverse of a series zero to precision");
    const auto& K = F();
    const std::size_t n = c_.size();
    std::vector<ff_elem> b(n);
    const ff_elem a0inv = K.inv(c_[0]);
    b[0] = a0inv;
    for (std::size_t k = 1; k < n; ++k) {
        ff_elem s{0};
        for (std::size_t i = 1; i <= k; ++i)
            if (c_[i].v) s = K.add(s, K.mul(c_[i], b[k - i]));
        b[k] = K.neg(K.mul(s, a0inv));
    }
    return laurent_series(field_, -val_, std::move(b), -val_ + static_cast<int>(n));
}

laurent_series laurent_series::scale(ff_elem c) const {
    if (c.v == 0) return laurent_series(field_, prec_);
    laurent_series r = *this;
    for (auto& x : r.c_) x = F().mul(x, c);
    return r;
}

std::string laurent_series::format(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].v == 0) continue;
        if (!first) os << " + ";
        first = false;
        const int k = val_ + static_cast<int>(i);
        os << F().format(c_[i]);
        if (k != 0) os << "*" << var << "^" << k;
    }
    if (!first) os << " + ";
    os << "O(" << var << "^" << prec_ << ")";
    return os.str();
}

laurent_series operator+(const laurent_series& a, const laurent_series& b) {
    const int prec = std::min(a.prec_, b.prec_);
    const int val = std::min(a.val_, b.val_);
    if (val >= prec) return laurent_series(a.field_, prec);
    const auto& K = a.F();
    std::vector<ff_elem> v(static_cast<std::size_t>(prec - val), ff_elem{0});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const int k = a.val_ + static_cast<int>(i);
        if (k >= prec) break;
        v[static_cast<std::size_t>(k - val)] = a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        const int k = b.val_ + static_cast<int>(i);
        if (k >= prec) break;
        auto& slot = v[static_cast<std::size_t>(k - val)];
        slot = K.add(slot, b.c_[i]);
    }
    return laurent_series(a.field_, val, std::move(v), prec);
}

laurent_series laurent_series::operator-() const {
    laurent_series r = *this;
    for (auto& x : r.c_) x = F().neg(x);
    return r;
}

laurent_series operator-(const laurent_series& a, const laurent_series& b) { return a + (-b); }

laurent_series operator*(const laurent_series& a, const laurent_series& b) {
    const int val = a.val_ + b.val_;
    const int prec = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
    if (a.c_.empty() || b.c_.empty() || val >= prec) return laurent_series(a.field_, prec);
    const auto& K = a.F();
    const std::size_t n = static_cast<std::size_t>(prec - val);
    std::vector<ff_elem> v(n, ff_elem{0});
    const std::size_t na = std::min(a.c_.size(), n), nb = std::min(b.c_.size(), n);
    for (std::size_t i = 0; i < na; ++i) {
        if (a.c_[i].v == 0) continue;
        const std::size_t lim = std::min(nb, n - i);
        for (std::size_t j = 0; j < lim; ++j)
            if (b.c_[j].v) v[i + j] = K.add(v[i + j], K.mul(a.c_[i], b.c_[j]));
    }
    return laurent_series(a.field_, val, std::move(v), prec);
}

laurent_series operator/(const laurent_series& a, const laurent_series& b) { return a * b.inverse(); }

laurent_series evaluate(const poly& f, const field_embedding& emb, const laurent_series& x) {
    if (!x.is_zero() && x.valuation() < 0) throw input_error("evaluation at a series with a pole");
    const int prec = x.precision();
    laurent_series acc(x.field(), prec);
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * x + laurent_series::constant(x.field(), emb(c[i]), prec);
    return acc;
}

laurent_series hensel_root(const poly& h, const field_embedding& emb, ff_elem root, int precision) {
    if (precision < 1) throw input_error("precision must be positive");
    const field_ref& R = emb.target();
    if (h.eval(emb, root).v != 0) throw input_error("hensel_root: start value is not a root");
    const poly dh = h.derivative();
    if (dh.eval(emb, root).v == 0) throw input_error("hensel_root: root is not simple");
    laurent_series tau = laurent_series::constant(R, root, 1);
    int prec = 1;
    while (prec < precision) {
        prec = std::min(2 * prec, precision);
        tau = tau.extend(prec);
        const laurent_series u = laurent_series::monomial(R, R->one(), 1, prec);
        const laurent_series residual = evaluate(h, emb, tau) - u;
        tau = tau - residual / evaluate(dh, emb, tau);
        tau = tau.truncate(prec);
    }
    return tau;
}

}  // namespace ellmu
