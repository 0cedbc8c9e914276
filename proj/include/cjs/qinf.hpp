#ifndef CJS_QINF_HPP
#define CJS_QINF_HPP

#include <compare>
#include <string>

#include <gmpxx.h>

namespace cjs {

// Nonnegative-or-any rational extended by +infinity.
class QInf {
public:
    QInf() : inf_(false), v_(0) {}
    QInf(const mpq_class& v) : inf_(false), v_(v) { v_.canonicalize(); }
    QInf(long v) : inf_(false), v_(v) {}
    static QInf infinity() {
        QInf q;
        q.inf_ = true;
        return q;
    }

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }
    const mpq_class& value() const { return v_; }

    std::strong_ordering operator<=>(const QInf& o) const {
        if (inf_ || o.inf_) return inf_ == o.inf_ ? std::strong_ordering::equal
                                   : inf_     ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
        int c = cmp(v_, o.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    bool operator==(const QInf& o) const { return (*this <=> o) == std::strong_ordering::equal; }

    QInf operator+(const QInf& o) const { return inf_ || o.inf_ ? infinity() : QInf(mpq_class(v_ + o.v_)); }
    QInf operator-(const mpq_class& o) const { return inf_ ? infinity() : QInf(mpq_class(v_ - o)); }

    // "inf" or the canonical "a/b" / "a" text.
    std::string to_string() const { return inf_ ? "inf" : v_.get_str(); }
    static QInf parse(const std::string& s) { return s == "inf" ? infinity() : QInf(mpq_class(s)); }

private:
    bool inf_;
    mpq_class v_;
};

} // namespace cjs

#endif
