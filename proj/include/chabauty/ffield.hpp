#pragma once

#include <string>
#include <vector>

namespace chabauty {

/// The field with q = p^k elements, built from a primitive polynomial.
/// Elements are integers 0..q-1 whose base-p digits are the coordinates in
/// the power basis; integers 0..p-1 are the prime field.
class FiniteField {
 public:
  FiniteField(long p, int k);

  long characteristic() const { return p_; }
  int degree() const { return k_; }
  long size() const { return q_; }

  long add(long a, long b) const;
  long sub(long a, long b) const;
  long neg(long a) const;
  long mul(long a, long b) const;
  long inv(long a) const;
  long pow(long a, long e) const;
  /// Image of an integer (reduced mod p).
  long from_integer(long n) const;

  bool is_square(long a) const;
  /// The two square roots of a nonzero square are {r, neg(r)}; returns one.
  long sqrt(long a) const;

  std::string to_string(long a) const;

 private:
  long p_;
  int k_;
  long q_;
  std::vector<long> exp_;  // exp_[i] = g^i, i in [0, q-1)
  std::vector<long> log_;
};

}  // namespace chabauty
