#include "blobcalc/field.hpp"

namespace blobcalc {

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

FieldSpec::FieldSpec(unsigned long characteristic) : characteristic_(characteristic) {
    if (characteristic != 0 && !is_prime(characteristic))
        throw std::invalid_argument("field characteristic must be 0 or a prime, got " +
                                    std::to_string(characteristic));
}

std::string FieldSpec::to_string() const {
    return characteristic_ == 0 ? "Q" : "F" + std::to_string(characteristic_);
}

Scalar::Scalar(long n, FieldSpec field) : value_(n), characteristic_(field.characteristic()) {
    reduce();
}

Scalar::Scalar(mpq_class value, FieldSpec field)
    : value_(std::move(value)), characteristic_(field.characteristic()) {
    value_.canonicalize();
    reduce();
}

void Scalar::reduce() {
    if (characteristic_ == 0) return;
    mpz_class p(static_cast<unsigned long>(characteristic_));
    mpz_class num = value_.get_num();
    mpz_class den = value_.get_den();
    mpz_class den_mod = den % p;
    if (den_mod < 0) den_mod += p;
    if (den_mod == 0)
        throw std::invalid_argument("denominator divisible by the field characteristic");
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den_mod.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::invalid_argument("denominator not invertible mod p");
    mpz_class res = (num % p) * inv % p;
    if (res < 0) res += p;
    value_ = mpq_class(res);
}

void Scalar::check_same_field(const Scalar& rhs) const {
    if (characteristic_ != rhs.characteristic_)
        throw std::logic_error("scalar arithmetic across different fields");
}

Scalar Scalar::parse(const std::string& text, FieldSpec field) {
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    auto valid_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("malformed scalar '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("scalar with zero denominator '" + text + "'");
    return Scalar(mpq_class(n, d), field);
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    check_same_field(rhs);
    return Scalar(value_ + rhs.value_, field());
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    check_same_field(rhs);
    return Scalar(value_ - rhs.value_, field());
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    check_same_field(rhs);
    return Scalar(value_ * rhs.value_, field());
}

Scalar Scalar::operator/(const Scalar& rhs) const {
    check_same_field(rhs);
    return *this * rhs.inverse();
}

Scalar Scalar::operator-() const { return Scalar(-value_, field()); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (characteristic_ == 0) return Scalar(1 / value_, field());
    mpz_class p(characteristic_);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(value_.get_num()).get_mpz_t(), p.get_mpz_t());
    if (inv < 0) inv += p;
    return Scalar(mpq_class(inv), field());
}

bool Scalar::operator==(const Scalar& rhs) const {
    return characteristic_ == rhs.characteristic_ && value_ == rhs.value_;
}

std::string Scalar::to_string() const {
    if (characteristic_ != 0 || value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

}  // namespace blobcalc
