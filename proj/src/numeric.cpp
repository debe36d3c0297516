#include "flatlab/numeric.hpp"

#include "flatlab/errors.hpp"

#include <cmath>

namespace flatlab {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    size_t first = 0;
    while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first])))
        ++first;
    s = s.substr(first);
    if (s.empty())
        throw Error(ErrorCode::ConfigError, "core", "empty rational literal");
    try {
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            if (s.find('/') != std::string::npos)
                throw Error(ErrorCode::ConfigError, "core", "bad rational literal: " + s);
            bool neg = s[0] == '-';
            std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
            dot = body.find('.');
            std::string ip = body.substr(0, dot);
            std::string fp = body.substr(dot + 1);
            if (ip.empty()) ip = "0";
            for (char c : ip + fp)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw Error(ErrorCode::ConfigError, "core", "bad decimal literal: " + s);
            BigInt num(ip + fp);
            BigInt den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
            Rational q(num, den);
            q.canonicalize();
            return neg ? Rational(-q) : q;
        }
        if (s[0] == '+') s = s.substr(1);
        Rational q(s, 10);
        if (q.get_den() == 0)
            throw Error(ErrorCode::ConfigError, "core", "zero denominator: " + s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ConfigError, "core", "bad rational literal: " + s);
    }
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }
double to_double(const BigInt& z) { return mpz_get_d(z.get_mpz_t()); }

Rational exact_rational(double v)
{
    if (!std::isfinite(v))
        throw Error(ErrorCode::ConfigError, "core", "non-finite value");
    Rational q;
    mpq_set_d(q.get_mpq_t(), v);
    return q;
}

BigInt floor_div(const Rational& q)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt lcm(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream)
{
    std::uint64_t s = root ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

}  // namespace flatlab
