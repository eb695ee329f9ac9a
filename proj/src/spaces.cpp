#include "epslab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace epslab {

NormSpec NormSpec::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("lp norm needs a finite exponent p >= 1, got " + std::to_string(p));
  }
  return NormSpec(Kind::lp, p);
}

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "sup" || text == "c0" || text == "linf") return sup();
  if (text == "l1") return lp(1.0);
  if (text == "l2") return lp(2.0);
  if (text.rfind("lp:", 0) == 0) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(text.substr(3), &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse norm exponent in '" + text + "'");
    }
    if (used != text.size() - 3) throw DomainError("trailing characters in norm '" + text + "'");
    return lp(p);
  }
  throw DomainError("unknown norm '" + text + "' (expected lp:P or sup)");
}

std::string NormSpec::to_string() const {
  if (kind_ == Kind::sup) return "sup";
  char buf[64];
  std::snprintf(buf, sizeof buf, "lp:%g", p_);
  return buf;
}

double NormSpec::of_magnitudes(std::span<const double> magnitudes) const {
  double largest = 0.0;
  for (double m : magnitudes) largest = std::max(largest, m);
  if (kind_ == Kind::sup || largest == 0.0) return largest;
  if (p_ == 1.0) {
    double sum = 0.0;
    for (double m : magnitudes) sum += m;
    return sum;
  }
  // Scale by the largest entry so huge weights do not overflow the p-th powers.
  double sum = 0.0;
  for (double m : magnitudes) sum += std::pow(m / largest, p_);
  return largest * std::pow(sum, 1.0 / p_);
}

double NormSpec::of_pair(double a, double b) const {
  const double pair[2] = {std::abs(a), std::abs(b)};
  return of_magnitudes(pair);
}

Scalar CoeffVector::operator[](Index n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? Scalar{} : it->second;
}

CoeffVector CoeffVector::pruned(double threshold) const {
  CoeffVector out;
  for (const auto& [n, c] : entries_) {
    if (c != Scalar{} && std::abs(c) >= threshold) out.entries_.emplace_hint(out.entries_.end(), n, c);
  }
  return out;
}

CoeffVector& CoeffVector::operator+=(const CoeffVector& other) {
  for (const auto& [n, c] : other.entries_) entries_[n] += c;
  return *this;
}

CoeffVector& CoeffVector::operator-=(const CoeffVector& other) {
  for (const auto& [n, c] : other.entries_) entries_[n] -= c;
  return *this;
}

CoeffVector& CoeffVector::operator*=(Scalar factor) {
  for (auto& [n, c] : entries_) c *= factor;
  return *this;
}

const CoeffVector& DirectSumVector::block(Index n) const {
  static const CoeffVector zero;
  auto it = blocks_.find(n);
  return it == blocks_.end() ? zero : it->second;
}

void DirectSumVector::set_block(Index n, CoeffVector v) {
  if (v.empty()) {
    blocks_.erase(n);
  } else {
    blocks_[n] = std::move(v);
  }
}

DirectSumVector DirectSumVector::pruned(double threshold) const {
  DirectSumVector out;
  for (const auto& [n, v] : blocks_) out.set_block(n, v.pruned(threshold));
  return out;
}

DirectSumVector& DirectSumVector::operator+=(const DirectSumVector& other) {
  for (const auto& [n, v] : other.blocks_) blocks_[n] += v;
  return *this;
}

DirectSumVector& DirectSumVector::operator-=(const DirectSumVector& other) {
  for (const auto& [n, v] : other.blocks_) blocks_[n] -= v;
  return *this;
}

DirectSumVector& DirectSumVector::operator*=(Scalar factor) {
  for (auto& [n, v] : blocks_) v *= factor;
  return *this;
}

double norm_x(const CoeffVector& v, const NormSpec& spec) {
  std::vector<double> mags;
  mags.reserve(v.size());
  for (const auto& [n, c] : v) mags.push_back(std::abs(c));
  return spec.of_magnitudes(mags);
}

double norm_z(const DirectSumVector& u, const NormSpec& spec_x, const NormSpec& spec_y) {
  std::vector<double> profile;
  profile.reserve(u.size());
  for (const auto& [n, block] : u) profile.push_back(norm_x(block, spec_x));
  return spec_y.of_magnitudes(profile);
}

double max_abs_diff(const CoeffVector& a, const CoeffVector& b) {
  double worst = 0.0;
  for (const auto& [n, c] : a) worst = std::max(worst, std::abs(c - b[n]));
  for (const auto& [n, c] : b) worst = std::max(worst, std::abs(a[n] - c));
  return worst;
}

double max_abs_diff(const DirectSumVector& a, const DirectSumVector& b) {
  double worst = 0.0;
  for (const auto& [n, v] : a) worst = std::max(worst, max_abs_diff(v, b.block(n)));
  for (const auto& [n, v] : b) worst = std::max(worst, max_abs_diff(a.block(n), v));
  return worst;
}

}  // namespace epslab
