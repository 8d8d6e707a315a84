#ifndef SEGRE_RATIONAL_HPP
#define SEGRE_RATIONAL_HPP

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

namespace segre {

/// Gaussian rational a + b*i with arbitrary-precision rational parts.
///
/// Both parts are kept canonical (coprime numerator/denominator, positive
/// denominator); all arithmetic is exact.
class GaussRational {
public:
    GaussRational() : re_(0), im_(0) {}
    GaussRational(long n) : re_(n), im_(0) {}
    GaussRational(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }
    GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussRational conj() const { return GaussRational(re_, -im_); }

    /// |a + bi|^2 = a^2 + b^2, an exact nonnegative rational.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    std::string re_str() const { return re_.get_str(); }
    std::string im_str() const { return im_.get_str(); }

    /// Compact display form: "0", "1/2", "i", "-i", "2/3i", "1/2-1/3i", ...
    std::string str() const;

private:
    mpq_class re_, im_;
};

inline GaussRational& GaussRational::operator/=(const GaussRational& o) {
    mpq_class n2 = o.norm2();
    if (n2 == 0) throw std::domain_error("GaussRational: division by zero");
    // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n2;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n2;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

inline std::string GaussRational::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out = re_.get_str();
    if (im_ != 0) {
        if (im_ == 1)
            out += out.empty() ? "i" : "+i";
        else if (im_ == -1)
            out += "-i";
        else {
            std::string s = im_.get_str();
            if (!out.empty() && s[0] != '-') out += '+';
            out += s + "i";
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const GaussRational& q) { return os << q.str(); }

} // namespace segre

#endif
