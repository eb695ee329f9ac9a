#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

namespace epslab {

using Index = std::size_t;
using Scalar = std::complex<double>;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// A concrete 1-unconditional sequence norm with normalized canonical basis:
/// either l^p (1 <= p < inf) or the sup norm of c_0.
class NormSpec {
 public:
  enum class Kind { lp, sup };

  static NormSpec lp(double p);
  static NormSpec sup() { return NormSpec(Kind::sup, 0.0); }
  /// Parses "lp:P", "l1", "l2" or "sup".
  static NormSpec parse(const std::string& text);

  Kind kind() const { return kind_; }
  /// Exponent; only meaningful for Kind::lp.
  double p() const { return p_; }
  bool is_l1() const { return kind_ == Kind::lp && p_ == 1.0; }

  std::string to_string() const;

  /// Norm of the vector with the given coordinate moduli.
  double of_magnitudes(std::span<const double> magnitudes) const;
  double of_pair(double a, double b) const;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;

 private:
  NormSpec(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;
};

/// Finitely supported vector sum_n x_n e_n of X. Iteration is by ascending index.
class CoeffVector {
 public:
  using Storage = std::map<Index, Scalar>;

  CoeffVector() = default;
  CoeffVector(std::initializer_list<Storage::value_type> entries) : entries_(entries) {}
  explicit CoeffVector(Storage entries) : entries_(std::move(entries)) {}

  static CoeffVector basis(Index n, Scalar c = 1.0) { return CoeffVector{{n, c}}; }

  Scalar operator[](Index n) const;
  void set(Index n, Scalar c) { entries_[n] = c; }
  void add(Index n, Scalar c) { entries_[n] += c; }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// Largest stored index; 0 for the empty vector.
  Index max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
  const Storage& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Drops entries with modulus strictly below threshold (and exact zeros).
  CoeffVector pruned(double threshold = 0.0) const;

  CoeffVector& operator+=(const CoeffVector& other);
  CoeffVector& operator-=(const CoeffVector& other);
  CoeffVector& operator*=(Scalar factor);

  friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
  friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
  friend CoeffVector operator*(Scalar s, CoeffVector v) { return v *= s; }
  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

 private:
  Storage entries_;
};

/// Finitely supported element (u_0, u_1, ...) of Z = (+)_Y X.
class DirectSumVector {
 public:
  using Storage = std::map<Index, CoeffVector>;

  DirectSumVector() = default;
  DirectSumVector(std::initializer_list<Storage::value_type> blocks) : blocks_(blocks) {}
  explicit DirectSumVector(Storage blocks) : blocks_(std::move(blocks)) {}

  /// Block n, or the zero vector when absent.
  const CoeffVector& block(Index n) const;
  void set_block(Index n, CoeffVector v);
  CoeffVector& block_mut(Index n) { return blocks_[n]; }

  bool empty() const { return blocks_.empty(); }
  std::size_t size() const { return blocks_.size(); }
  Index max_block() const { return blocks_.empty() ? 0 : blocks_.rbegin()->first; }
  const Storage& blocks() const { return blocks_; }
  auto begin() const { return blocks_.begin(); }
  auto end() const { return blocks_.end(); }

  DirectSumVector pruned(double threshold = 0.0) const;

  DirectSumVector& operator+=(const DirectSumVector& other);
  DirectSumVector& operator-=(const DirectSumVector& other);
  DirectSumVector& operator*=(Scalar factor);

  friend DirectSumVector operator+(DirectSumVector a, const DirectSumVector& b) { return a += b; }
  friend DirectSumVector operator-(DirectSumVector a, const DirectSumVector& b) { return a -= b; }
  friend DirectSumVector operator*(Scalar s, DirectSumVector v) { return v *= s; }
  friend bool operator==(const DirectSumVector&, const DirectSumVector&) = default;

 private:
  Storage blocks_;
};

double norm_x(const CoeffVector& v, const NormSpec& spec);

/// ||sum_n ||u_n||_X f_n||_Y.
double norm_z(const DirectSumVector& u, const NormSpec& spec_x, const NormSpec& spec_y);

/// e_n^*(v).
inline Scalar coordinate(const CoeffVector& v, Index n) { return v[n]; }

/// Largest coefficient modulus of a - b over the union of supports.
double max_abs_diff(const CoeffVector& a, const CoeffVector& b);
double max_abs_diff(const DirectSumVector& a, const DirectSumVector& b);

}  // namespace epslab
