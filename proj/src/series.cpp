#include "diagcx/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "diagcx/errors.hpp"

namespace dcx {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Truncated integer power series helpers, length D+1.
using Ints = std::vector<std::int64_t>;

Ints mul_trunc(const Ints& a, const Ints& b) {
  Ints r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return r;
}

}  // namespace

MultiPoly MultiPoly::constant(int variables, std::int64_t c) {
  MultiPoly p(variables);
  p.add_term(Monomial(static_cast<std::size_t>(variables), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int variables, int i) {
  MultiPoly p(variables);
  Monomial m(static_cast<std::size_t>(variables), 0);
  m.at(static_cast<std::size_t>(i)) = 1;
  p.add_term(m, 1);
  return p;
}

std::int64_t MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::add_term(const Monomial& m, std::int64_t c) {
  if (static_cast<int>(m.size()) != vars_) throw std::invalid_argument("monomial has the wrong number of variables");
  if (c == 0) return;
  auto& slot = terms_[m];
  slot = checked_add(slot, c);
  if (slot == 0) terms_.erase(m);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (o.vars_ != vars_) throw std::invalid_argument("variable counts differ");
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (o.vars_ != vars_) throw std::invalid_argument("variable counts differ");
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (o.vars_ != vars_) throw std::invalid_argument("variable counts differ");
  MultiPoly r(vars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      Monomial m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
      r.add_term(m, checked_mul(ca, cb));
    }
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  MultiPoly r = constant(vars_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::int64_t MultiPoly::evaluate_diagonal(std::int64_t x) const {
  std::int64_t total = 0;
  for (const auto& [m, c] : terms_) {
    std::int64_t v = c;
    for (int e : m)
      for (int k = 0; k < e; ++k) v = checked_mul(v, x);
    total = checked_add(total, v);
  }
  return total;
}

std::string MultiPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  // Higher total degree first, then reverse-lexicographic exponents.
  std::vector<std::pair<Monomial, std::int64_t>> order(terms_.begin(), terms_.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a.first) da += e;
    for (int e : b.first) db += e;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [m, c] : order) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += var + std::to_string(i + 1);
      if (m[i] > 1) mono += '^' + std::to_string(m[i]);
    }
    std::int64_t mag = c < 0 ? -c : c;
    std::string term = mono.empty() ? std::to_string(mag) : (mag == 1 ? mono : std::to_string(mag) + '*' + mono);
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

MultiPoly hilbert_polynomial(const LabelledComplex& lc) {
  MultiPoly h(lc.labels().label_count());
  for (const auto& kv : lc.complex().gamma_map()) h.add_term(monomial(lc, kv.first), 1);
  return h;
}

MultiPoly forest_hilbert_closed_form(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  MultiPoly base = MultiPoly::constant(n, 1);
  for (int i = 0; i < n; ++i) base = base + MultiPoly::variable(n, i);
  return base.pow(n - 1) - MultiPoly::constant(n, 1);
}

GradedModuleSeries::GradedModuleSeries(int truncation, bool finite) : truncation_(truncation), finite_(finite) {
  if (truncation < 0) throw std::invalid_argument("negative truncation degree");
  coeffs_.resize(static_cast<std::size_t>(truncation) + 1);
}

GradedModuleSeries GradedModuleSeries::unit(int truncation) {
  GradedModuleSeries s(truncation, true);
  s.at(0).free = 1;
  return s;
}

GradedModuleSeries GradedModuleSeries::zero(int truncation) { return GradedModuleSeries(truncation, true); }

GradedModuleSeries GradedModuleSeries::circle(int truncation) {
  auto s = unit(truncation);
  if (truncation >= 1) s.at(1).free = 1;
  else s.finite_ = false;
  return s;
}

GradedModuleSeries GradedModuleSeries::cyclic_group(int m, int truncation) {
  if (m < 2) throw std::invalid_argument("cyclic group order must be at least 2");
  auto s = unit(truncation);
  s.finite_ = false;
  for (int d = 1; d <= truncation; d += 2)
    for (auto [p, e] : factorize(m)) s.add_torsion(d, p, e, 1);
  return s;
}

GradedModuleSeries GradedModuleSeries::free_polynomial(const std::vector<std::int64_t>& c, int truncation) {
  GradedModuleSeries s(truncation, true);
  for (std::size_t d = 0; d < c.size(); ++d) {
    if (c[d] < 0) throw std::invalid_argument("negative rank");
    if (c[d] == 0) continue;
    if (static_cast<int>(d) > truncation) throw std::invalid_argument("polynomial exceeds the truncation degree");
    s.at(static_cast<int>(d)).free = c[d];
  }
  return s;
}

void GradedModuleSeries::add_torsion(int d, int p, int e, std::int64_t count) {
  if (!is_prime(p) || e < 1) throw std::invalid_argument("torsion summand must be Z/p^e with p prime, e >= 1");
  if (count == 0) return;
  auto& slot = at(d).torsion[{p, e}];
  slot = checked_add(slot, count);
}

GradedModuleSeries GradedModuleSeries::operator+(const GradedModuleSeries& o) const {
  if (o.truncation_ != truncation_) throw std::invalid_argument("series truncations differ");
  GradedModuleSeries r(truncation_, finite_ && o.finite_);
  for (int d = 0; d <= truncation_; ++d) {
    auto& c = r.at(d);
    c = (*this)[d];
    c.free = checked_add(c.free, o[d].free);
    for (const auto& [pe, k] : o[d].torsion) c.torsion[pe] = checked_add(c.torsion[pe], k);
  }
  return r;
}

GradedModuleSeries GradedModuleSeries::reduced() const {
  if ((*this)[0].free < 1) throw std::invalid_argument("series has no Z in degree 0 to remove");
  auto r = *this;
  r.at(0).free -= 1;
  return r;
}

std::int64_t GradedModuleSeries::euler_characteristic() const {
  if (!finite_) throw UnsupportedError("Euler characteristic of a series that is not a polynomial");
  std::int64_t chi = 0;
  for (int d = 0; d <= truncation_; ++d) chi = checked_add(chi, (d % 2 ? -1 : 1) * (*this)[d].free);
  return chi;
}

std::string GradedModuleSeries::to_string() const {
  std::vector<std::string> terms;
  for (int d = 0; d <= truncation_; ++d) {
    const auto& c = (*this)[d];
    if (c.is_zero()) continue;
    std::vector<std::string> parts;
    if (c.free) parts.push_back(std::to_string(c.free));
    for (const auto& [pe, k] : c.torsion) {
      const std::string g = "Z/" + std::to_string(ipow(pe.first, pe.second));
      parts.push_back(k == 1 ? g : "(" + g + ")^" + std::to_string(k));
    }
    std::string coeff;
    for (std::size_t i = 0; i < parts.size(); ++i) coeff += (i ? " + " : "") + parts[i];
    if (parts.size() > 1) coeff = "(" + coeff + ")";
    const std::string power = d == 0 ? "" : (d == 1 ? "t" : "t^" + std::to_string(d));
    if (d == 0) terms.push_back(coeff);
    else if (coeff == "1") terms.push_back(power);
    else if (c.torsion.empty()) terms.push_back(coeff + power);
    else terms.push_back(coeff + " " + power);
  }
  if (!finite_) terms.push_back("O(t^" + std::to_string(truncation_ + 1) + ")");
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i];
  return out;
}

GradedModuleSeries tor_mul(const GradedModuleSeries& a, const GradedModuleSeries& b) {
  const int D = a.truncation();
  if (b.truncation() != D) throw std::invalid_argument("tor_mul: series truncations differ");
  bool dropped = false;
  GradedModuleSeries r(D, true);
  auto put_free = [&](int d, std::int64_t k) {
    if (k == 0) return;
    if (d > D) dropped = true;
    else r.at(d).free = checked_add(r[d].free, k);
  };
  auto put_tors = [&](int d, PrimePower pe, std::int64_t k) {
    if (k == 0) return;
    if (d > D) dropped = true;
    else r.add_torsion(d, pe.first, pe.second, k);
  };
  for (int i = 0; i <= D; ++i) {
    const auto& x = a[i];
    if (x.is_zero()) continue;
    for (int j = 0; j <= D; ++j) {
      const auto& y = b[j];
      if (y.is_zero()) continue;
      put_free(i + j, checked_mul(x.free, y.free));
      for (const auto& [pe, k] : y.torsion) put_tors(i + j, pe, checked_mul(x.free, k));
      for (const auto& [pe, k] : x.torsion) put_tors(i + j, pe, checked_mul(k, y.free));
      for (const auto& [pa, ka] : x.torsion)
        for (const auto& [pb, kb] : y.torsion) {
          if (pa.first != pb.first) continue;
          const PrimePower m{pa.first, std::min(pa.second, pb.second)};
          const auto k = checked_mul(ka, kb);
          put_tors(i + j, m, k);
          put_tors(i + j + 1, m, k);
        }
    }
  }
  GradedModuleSeries out(D, a.finite() && b.finite() && !dropped);
  for (int d = 0; d <= D; ++d) out.at(d) = r[d];
  return out;
}

GradedModuleSeries tor_pow(const GradedModuleSeries& a, int e) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  auto r = GradedModuleSeries::unit(a.truncation());
  for (int i = 0; i < e; ++i) r = tor_mul(r, a);
  return r;
}

GradedModuleSeries substitute(const MultiPoly& h, const std::vector<GradedModuleSeries>& y) {
  if (static_cast<int>(y.size()) != h.variables())
    throw std::invalid_argument("substitute: need one series per variable");
  if (y.empty()) throw std::invalid_argument("substitute: no series given");
  const int D = y.front().truncation();
  std::vector<std::vector<GradedModuleSeries>> powers(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].truncation() != D) throw std::invalid_argument("substitute: series truncations differ");
    powers[i].push_back(GradedModuleSeries::unit(D));
  }
  auto power = [&](std::size_t i, int e) -> const GradedModuleSeries& {
    while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(tor_mul(powers[i].back(), y[i].reduced()));
    return powers[i][static_cast<std::size_t>(e)];
  };
  auto total = GradedModuleSeries::unit(D);
  for (const auto& [m, c] : h.terms()) {
    if (c < 0) throw std::invalid_argument("substitute: negative coefficients are not supported");
    auto term = GradedModuleSeries::free_polynomial({c}, D);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) term = tor_mul(term, power(i, m[i]));
    total = total + term;
  }
  return total;
}

GradedModuleSeries free_product_series(const std::vector<GradedModuleSeries>& factors) {
  if (factors.empty()) throw std::invalid_argument("free_product_series: no factors");
  auto total = GradedModuleSeries::unit(factors.front().truncation());
  for (const auto& f : factors) total = total + f.reduced();
  return total;
}

GradedModuleSeries series_Wh_free(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int D = n - 1;
  auto base = GradedModuleSeries::free_polynomial({1, n}, std::max(D, 1));
  auto s = tor_pow(base, D);
  // Re-truncate to the exact degree of the polynomial.
  GradedModuleSeries out(D, true);
  for (int d = 0; d <= D; ++d) out.at(d) = s[d];
  return out;
}

std::int64_t wh_free_euler_characteristic(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::int64_t r = 1;
  for (int i = 0; i < n - 1; ++i) r = checked_mul(r, 1 - n);
  return r;
}

GradedModuleSeries series_Wh_Zp(int n, int p, int degree) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (degree < 1) throw std::invalid_argument("truncation degree must be at least 1");
  const auto len = static_cast<std::size_t>(degree) + 1;
  // 1 + n t/(1-t) = 1 + n(t + t^2 + ...)
  Ints base(len, n);
  base[0] = 1;
  Ints s(len, 0);
  s[0] = 1;
  for (int i = 0; i < n - 1; ++i) s = mul_trunc(s, base);
  s[0] -= 1;
  // Divide by (1 + t): c_d = s_d - c_{d-1}.
  Ints c(len, 0);
  for (std::size_t d = 1; d < len; ++d) c[d] = s[d] - c[d - 1];
  auto out = GradedModuleSeries::unit(degree);
  for (std::size_t d = 1; d < len; ++d) {
    if (c[d] < 0) throw std::logic_error("negative summand count in closed form");
    out.add_torsion(static_cast<int>(d), p, 1, c[d]);
  }
  GradedModuleSeries r(degree, n == 1);
  for (int d = 0; d <= degree; ++d) r.at(d) = out[d];
  return r;
}

std::vector<PrimePower> factorize(int m) {
  if (m < 1) throw std::invalid_argument("factorize: m must be positive");
  std::vector<PrimePower> out;
  for (int p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

nlohmann::json to_json(const GradedModuleSeries& s) {
  nlohmann::json j;
  j["truncation"] = s.truncation();
  j["finite"] = s.finite();
  j["coefficients"] = nlohmann::json::array();
  for (int d = 0; d <= s.truncation(); ++d) {
    nlohmann::json c;
    c["degree"] = d;
    c["free"] = s[d].free;
    c["torsion"] = nlohmann::json::array();
    for (const auto& [pe, k] : s[d].torsion)
      for (std::int64_t i = 0; i < k; ++i) c["torsion"].push_back(std::to_string(pe.first) + "^" + std::to_string(pe.second));
    j["coefficients"].push_back(c);
  }
  return j;
}

}  // namespace dcx
