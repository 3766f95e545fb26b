#include "flowlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flowlab/errors.hpp"

namespace flowlab {

namespace {

void require_pivot(double p, double scale, std::size_t row) {
    if (!std::isfinite(p) || std::abs(p) <= 1e-300 || std::abs(p) < 1e-14 * scale)
        throw SingularLinearSystem("vanishing pivot at row " + std::to_string(row));
}

}  // namespace

void solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                       std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    if (sub.size() != n || sup.size() != n || rhs.size() != n)
        throw DomainMismatch("tridiagonal operands differ in length");
    if (n == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = std::abs(sub[i]) + std::abs(diag[i]) + std::abs(sup[i]);
        if (i > 0) {
            const double m = sub[i] / diag[i - 1];
            diag[i] -= m * sup[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        require_pivot(diag[i], scale, i);
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

BandMatrix::BandMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(kl + ku + 1), a_(n * (kl + ku + 1), 0.0) {
    if (kl < 0 || ku < 0) throw InvalidParameter("negative bandwidth");
}

bool BandMatrix::in_band(std::size_t i, std::size_t j) const {
    return j + kl_ >= i && i + ku_ >= j && i < n_ && j < n_;
}

double& BandMatrix::at(std::size_t i, std::size_t j) {
    if (!in_band(i, j))
        throw InvalidParameter("entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") outside band");
    return a_[i * width_ + (j + kl_ - i)];
}

double BandMatrix::get(std::size_t i, std::size_t j) const {
    if (!in_band(i, j)) return 0.0;
    return a_[i * width_ + (j + kl_ - i)];
}

void BandMatrix::clear_row(std::size_t i) {
    std::fill(a_.begin() + i * width_, a_.begin() + (i + 1) * width_, 0.0);
}

void BandMatrix::factor() {
    for (std::size_t k = 0; k < n_; ++k) {
        double* rowk = &a_[k * width_];
        double scale = 0.0;
        for (int c = 0; c < width_; ++c) scale = std::max(scale, std::abs(rowk[c]));
        const double piv = rowk[kl_];
        require_pivot(piv, scale, k);
        const std::size_t last_row = std::min(n_ - 1, k + kl_);
        const std::size_t last_col = std::min(n_ - 1, k + ku_);
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            double* rowi = &a_[i * width_];
            double& lik = rowi[k + kl_ - i];
            if (lik == 0.0) continue;
            lik /= piv;
            for (std::size_t j = k + 1; j <= last_col; ++j)
                rowi[j + kl_ - i] -= lik * rowk[j + kl_ - k];
        }
    }
    factored_ = true;
}

void BandMatrix::solve(std::vector<double>& b) const {
    if (!factored_) throw InvalidParameter("band matrix not factored");
    if (b.size() != n_) throw DomainMismatch("right-hand side length mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t first = i > static_cast<std::size_t>(kl_) ? i - kl_ : 0;
        double acc = b[i];
        for (std::size_t j = first; j < i; ++j) acc -= a_[i * width_ + (j + kl_ - i)] * b[j];
        b[i] = acc;
    }
    for (std::size_t i = n_; i-- > 0;) {
        const std::size_t last = std::min(n_ - 1, i + ku_);
        double acc = b[i];
        for (std::size_t j = i + 1; j <= last; ++j) acc -= a_[i * width_ + (j + kl_ - i)] * b[j];
        b[i] = acc / a_[i * width_ + kl_];
    }
}

std::vector<double> BandMatrix::multiply(const std::vector<double>& x) const {
    if (factored_) throw InvalidParameter("band matrix already factored");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t first = i > static_cast<std::size_t>(kl_) ? i - kl_ : 0;
        const std::size_t last = std::min(n_ - 1, i + ku_);
        for (std::size_t j = first; j <= last; ++j) y[i] += get(i, j) * x[j];
    }
    return y;
}

}  // namespace flowlab
