#pragma once

#include <cstddef>
#include <vector>

namespace pfunc {

/// Square band matrix with kl sub- and ku super-diagonals, factored in place
/// by Gaussian elimination with partial pivoting. Storage per row covers
/// columns [r - kl, r + ku + kl] to hold the fill produced by row swaps.
class BandLU {
 public:
  BandLU(std::size_t n, std::size_t kl, std::size_t ku);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::size_t lower() const { return kl_; }
  [[nodiscard]] std::size_t upper() const { return ku_; }

  /// Adds v to entry (r, c); throws BadParams outside the band.
  void add(std::size_t r, std::size_t c, double v);
  [[nodiscard]] double get(std::size_t r, std::size_t c) const;
  void clear();

  /// Throws LinearSolveFailure on a zero pivot.
  void factor();
  /// Solves A x = b with the stored factors; b is overwritten by x.
  void solve(std::vector<double>& b) const;

 private:
  [[nodiscard]] std::size_t width() const { return 2 * kl_ + ku_ + 1; }
  double& cell(std::size_t r, std::size_t c) { return a_[r * width() + (c + kl_ - r)]; }
  [[nodiscard]] double cell(std::size_t r, std::size_t c) const { return a_[r * width() + (c + kl_ - r)]; }

  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  std::vector<double> a_;
  std::vector<std::size_t> piv_;
  bool factored_ = false;
};

}  // namespace pfunc
