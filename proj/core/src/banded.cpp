#include "pfunc/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pfunc/error.hpp"

namespace pfunc {

BandLU::BandLU(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), a_(n * (2 * kl + ku + 1), 0.0), piv_(n, 0) {
  if (n == 0) throw Error(ErrorCode::BadParams, "band matrix must be non-empty");
}

void BandLU::add(std::size_t r, std::size_t c, double v) {
  if (r >= n_ || c >= n_ || c + kl_ < r || c > r + ku_) {
    throw Error(ErrorCode::BadParams,
                "entry (" + std::to_string(r) + ", " + std::to_string(c) + ") outside the band");
  }
  cell(r, c) += v;
  factored_ = false;
}

double BandLU::get(std::size_t r, std::size_t c) const {
  if (r >= n_ || c >= n_ || c + kl_ < r || c > r + ku_ + kl_) return 0.0;
  return cell(r, c);
}

void BandLU::clear() {
  std::fill(a_.begin(), a_.end(), 0.0);
  factored_ = false;
}

void BandLU::factor() {
  double scale = 0.0;
  for (double v : a_) scale = std::max(scale, std::abs(v));
  const double tiny = scale * 1e-15;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    const std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
    std::size_t p = k;
    double best = std::abs(cell(k, k));
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      if (std::abs(cell(r, k)) > best) {
        best = std::abs(cell(r, k));
        p = r;
      }
    }
    if (!(best > tiny) || !std::isfinite(best)) {
      throw Error(ErrorCode::LinearSolveFailure, "singular pivot at column " + std::to_string(k));
    }
    piv_[k] = p;
    if (p != k) {
      for (std::size_t c = k; c <= last_col; ++c) std::swap(cell(k, c), cell(p, c));
    }
    const double inv = 1.0 / cell(k, k);
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      const double l = cell(r, k) * inv;
      cell(r, k) = l;
      if (l == 0.0) continue;
      for (std::size_t c = k + 1; c <= last_col; ++c) cell(r, c) -= l * cell(k, c);
    }
  }
  factored_ = true;
}

void BandLU::solve(std::vector<double>& b) const {
  if (!factored_) throw Error(ErrorCode::LinearSolveFailure, "solve called before factor");
  if (b.size() != n_) throw Error(ErrorCode::BadParams, "right-hand side size mismatch");
  for (std::size_t k = 0; k < n_; ++k) {
    if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    for (std::size_t r = k + 1; r <= last_row; ++r) b[r] -= cell(r, k) * b[k];
  }
  for (std::size_t k = n_; k-- > 0;) {
    const std::size_t last_col = std::min(n_ - 1, k + kl_ + ku_);
    double acc = b[k];
    for (std::size_t c = k + 1; c <= last_col; ++c) acc -= cell(k, c) * b[c];
    b[k] = acc / cell(k, k);
  }
}

}  // namespace pfunc
