#pragma once

#include <cstddef>
#include <vector>

namespace flowlab {

// Solves a tridiagonal system in place of `rhs`. sub[0] and sup[n-1] are
// ignored. Throws SingularLinearSystem on a vanishing pivot.
void solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                       std::vector<double>& rhs);

// Square band matrix with kl sub- and ku super-diagonals, factored by
// Gaussian elimination without pivoting. Intended for diagonally dominant
// operators where pivoting would only widen the band.
class BandMatrix {
public:
    BandMatrix(std::size_t n, int kl, int ku);

    std::size_t size() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }
    bool in_band(std::size_t i, std::size_t j) const;

    double& at(std::size_t i, std::size_t j);
    double get(std::size_t i, std::size_t j) const;
    void clear_row(std::size_t i);

    // In-place LU; afterwards only solve() is meaningful.
    void factor();
    void solve(std::vector<double>& rhs) const;
    bool factored() const { return factored_; }

    std::vector<double> multiply(const std::vector<double>& x) const;

private:
    std::size_t n_;
    int kl_;
    int ku_;
    int width_;
    std::vector<double> a_;
    bool factored_ = false;
};

}  // namespace flowlab
