#include <segre/series.hpp>

#include <algorithm>
#include <sstream>

namespace segre {

TruncatedSeries TruncatedSeries::variable(std::vector<std::string> vars, unsigned cap,
                                          size_t index) {
    if (index >= vars.size()) throw structural_error("variable index out of range");
    if (cap < 1) throw insufficient_cap_error("cap too small to represent a variable");
    TruncatedSeries s(std::move(vars), cap);
    Exponents e(s.vars_.size(), 0);
    e[index] = 1;
    s.terms_[e] = GaussRational(1);
    return s;
}

void TruncatedSeries::add_term(const Exponents& e, const GaussRational& c) {
    if (e.size() != vars_.size()) throw structural_error("exponent vector length mismatch");
    if (c.is_zero() || total_degree(e) > cap_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TruncatedSeries TruncatedSeries::truncated(unsigned new_cap) const {
    if (new_cap > cap_)
        throw structural_error("cannot raise the certified cap of a truncated series");
    if (new_cap == cap_) return *this;
    TruncatedSeries out(vars_, new_cap);
    for (const auto& [e, c] : terms_) {
        if (total_degree(e) > new_cap) break; // graded order: the rest is higher
        out.terms_.emplace(e, c);
    }
    return out;
}

void TruncatedSeries::require_shape(const TruncatedSeries& o) const {
    if (cap_ != o.cap_) throw structural_error("series cap mismatch");
    if (vars_ != o.vars_) throw structural_error("series variable mismatch");
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries out(vars_, cap_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    require_shape(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    require_shape(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_shape(b);
    TruncatedSeries out(a.vars_, a.cap_);
    const size_t nv = a.vars_.size();
    Exponents e(nv);
    for (const auto& [ea, ca] : a.terms_) {
        const unsigned da = total_degree(ea);
        for (const auto& [eb, cb] : b.terms_) {
            if (da + total_degree(eb) > a.cap_) break; // graded order cutoff
            for (size_t k = 0; k < nv; ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

TruncatedSeries operator*(const GaussRational& c, TruncatedSeries s) {
    if (c.is_zero()) return TruncatedSeries(s.vars_, s.cap_);
    for (auto& [e, v] : s.terms_) v *= c;
    return s;
}

std::string TruncatedSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            os << "*" << vars_[k];
            if (e[k] > 1) os << "^" << e[k];
        }
    }
    return os.str();
}

// ---- substitution -------------------------------------------------------

namespace {

// Truncated power of a zero-constant-term series, memoized per argument.
class PowerTable {
public:
    explicit PowerTable(const TruncatedSeries& base) : base_(base) {
        powers_.push_back(
            TruncatedSeries::constant(base.vars(), base.cap(), GaussRational(1)));
    }

    const TruncatedSeries& pow(unsigned k) {
        while (powers_.size() <= k) powers_.push_back(powers_.back() * base_);
        return powers_[k];
    }

private:
    const TruncatedSeries& base_;
    std::vector<TruncatedSeries> powers_;
};

} // namespace

TruncatedSeries compose(const TruncatedSeries& f, const SeriesVector& args) {
    if (args.size() != f.vars().size())
        throw structural_error("compose: need one argument per variable");
    if (args.empty()) {
        // No variables: f is a constant in an empty space; nothing to substitute.
        throw structural_error("compose: series has no variables");
    }
    const unsigned arg_cap = args.front().cap();
    for (const auto& a : args) {
        if (!a.same_shape(args.front()))
            throw structural_error("compose: arguments must share vars and cap");
        if (!a.constant_term().is_zero())
            throw validation_error("compose: argument has nonzero constant term");
    }
    const unsigned cap = std::min(f.cap(), arg_cap);

    std::vector<PowerTable> tables;
    tables.reserve(args.size());
    for (const auto& a : args) tables.emplace_back(a);

    TruncatedSeries out(args.front().vars(), cap);
    for (const auto& [e, c] : f.terms()) {
        if (total_degree(e) > cap) break; // zero-constant args: degree only grows
        TruncatedSeries term = TruncatedSeries::constant(args.front().vars(), arg_cap, c);
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            term = term * tables[k].pow(e[k]);
        }
        out += term.truncated(cap);
    }
    return out;
}

TruncatedSeries derive(const TruncatedSeries& f, size_t var_index) {
    if (var_index >= f.vars().size()) throw structural_error("derive: unknown variable");
    if (f.cap() == 0)
        throw insufficient_cap_error("derive: cap 0 certifies nothing about the derivative");
    TruncatedSeries out(f.vars(), f.cap() - 1);
    for (const auto& [e, c] : f.terms()) {
        if (e[var_index] == 0) continue;
        Exponents d = e;
        d[var_index] -= 1;
        out.add_term(d, GaussRational(static_cast<long>(e[var_index])) * c);
    }
    return out;
}

TruncatedSeries derive(const TruncatedSeries& f, const std::string& var_name) {
    auto it = std::find(f.vars().begin(), f.vars().end(), var_name);
    if (it == f.vars().end()) throw structural_error("derive: unknown variable " + var_name);
    return derive(f, static_cast<size_t>(it - f.vars().begin()));
}

TruncatedSeries derive_multi(const TruncatedSeries& f, size_t var_offset, const Exponents& order) {
    TruncatedSeries out = f;
    for (size_t k = 0; k < order.size(); ++k)
        for (unsigned rep = 0; rep < order[k]; ++rep) out = derive(out, var_offset + k);
    return out;
}

TruncatedSeries bar(const TruncatedSeries& f) {
    TruncatedSeries out(f.vars(), f.cap());
    for (const auto& [e, c] : f.terms()) out.add_term(e, c.conj());
    return out;
}

TruncatedSeries invert_unit(const TruncatedSeries& f) {
    GaussRational c0 = f.constant_term();
    if (c0.is_zero()) throw validation_error("invert_unit: not a unit (zero constant term)");
    // f = c0 (1 + u),  1/f = (1/c0) sum (-u)^k; u^k has valuation >= k.
    GaussRational inv_c0 = GaussRational(1) / c0;
    TruncatedSeries u = inv_c0 * f;
    u.add_term(Exponents(f.vars().size(), 0), GaussRational(-1));
    TruncatedSeries out = TruncatedSeries::constant(f.vars(), f.cap(), GaussRational(1));
    TruncatedSeries upow = out;
    for (unsigned k = 1; k <= f.cap(); ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        out += (k % 2 == 1) ? -upow : upow;
    }
    return inv_c0 * out;
}

GaussRational eval(const TruncatedSeries& f, const std::vector<GaussRational>& point) {
    if (point.size() != f.vars().size())
        throw structural_error("eval: point dimension mismatch");
    GaussRational acc;
    for (const auto& [e, c] : f.terms()) {
        GaussRational term = c;
        for (size_t k = 0; k < e.size(); ++k)
            for (unsigned rep = 0; rep < e[k]; ++rep) term *= point[k];
        acc += term;
    }
    return acc;
}

TruncatedSeries embed(const TruncatedSeries& f, const std::vector<std::string>& target_vars,
                      const std::vector<size_t>& var_map) {
    if (var_map.size() != f.vars().size())
        throw structural_error("embed: variable map length mismatch");
    for (size_t t : var_map)
        if (t >= target_vars.size()) throw structural_error("embed: map target out of range");
    TruncatedSeries out(target_vars, f.cap());
    Exponents e(target_vars.size());
    for (const auto& [src, c] : f.terms()) {
        std::fill(e.begin(), e.end(), 0u);
        for (size_t k = 0; k < src.size(); ++k) e[var_map[k]] += src[k];
        out.add_term(e, c);
    }
    return out;
}

TruncatedSeries set_vars_to_zero(const TruncatedSeries& f,
                                 const std::vector<size_t>& var_indices) {
    TruncatedSeries out(f.vars(), f.cap());
    for (const auto& [e, c] : f.terms()) {
        bool killed = false;
        for (size_t k : var_indices)
            if (e[k] != 0) {
                killed = true;
                break;
            }
        if (!killed) out.add_term(e, c);
    }
    return out;
}

TruncatedSeries block_coefficient(const TruncatedSeries& f, size_t block_offset,
                                  const Exponents& beta) {
    const size_t bn = beta.size();
    if (block_offset + bn > f.vars().size())
        throw structural_error("block_coefficient: block out of range");
    const unsigned db = total_degree(beta);
    if (db > f.cap())
        throw insufficient_cap_error("block_coefficient: |beta| exceeds the cap");

    std::vector<std::string> rest_vars;
    for (size_t k = 0; k < f.vars().size(); ++k)
        if (k < block_offset || k >= block_offset + bn) rest_vars.push_back(f.vars()[k]);

    TruncatedSeries out(rest_vars, f.cap() - db);
    Exponents e(rest_vars.size());
    for (const auto& [src, c] : f.terms()) {
        bool match = true;
        for (size_t k = 0; k < bn; ++k)
            if (src[block_offset + k] != beta[k]) {
                match = false;
                break;
            }
        if (!match) continue;
        size_t j = 0;
        for (size_t k = 0; k < src.size(); ++k)
            if (k < block_offset || k >= block_offset + bn) e[j++] = src[k];
        out.add_term(e, c);
    }
    return out;
}

SeriesMatrix jacobian(const SeriesVector& components, size_t var_offset, size_t var_count) {
    if (components.empty()) throw structural_error("jacobian: no components");
    if (components.front().cap() == 0)
        throw insufficient_cap_error("jacobian: cap 0 certifies nothing about derivatives");
    SeriesMatrix J(components.size(), var_count,
                   TruncatedSeries(components.front().vars(), components.front().cap() - 1));
    for (size_t i = 0; i < components.size(); ++i)
        for (size_t j = 0; j < var_count; ++j)
            J.at(i, j) = derive(components[i], var_offset + j);
    return J;
}

TruncatedSeries mul_aligned(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned cap = std::min(a.cap(), b.cap());
    return a.truncated(cap) * b.truncated(cap);
}

TruncatedSeries add_aligned(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned cap = std::min(a.cap(), b.cap());
    return a.truncated(cap) + b.truncated(cap);
}

TruncatedSeries sub_aligned(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned cap = std::min(a.cap(), b.cap());
    return a.truncated(cap) - b.truncated(cap);
}

SeriesVector identity_args(const std::vector<std::string>& vars, unsigned cap) {
    SeriesVector out;
    out.reserve(vars.size());
    for (size_t k = 0; k < vars.size(); ++k)
        out.push_back(TruncatedSeries::variable(vars, cap, k));
    return out;
}

namespace {

void multi_indices_rec(unsigned slots, unsigned total, Exponents& cur, size_t pos,
                       std::vector<Exponents>& out) {
    if (pos + 1 == slots) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (unsigned take = 0; take <= total; ++take) {
        cur[pos] = take;
        multi_indices_rec(slots, total - take, cur, pos + 1, out);
    }
}

} // namespace

std::vector<Exponents> multi_indices(unsigned slots, unsigned total) {
    std::vector<Exponents> out;
    if (slots == 0) return out;
    Exponents cur(slots, 0);
    multi_indices_rec(slots, total, cur, 0, out);
    return out;
}

} // namespace segre
