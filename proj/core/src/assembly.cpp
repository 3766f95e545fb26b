#include "assembly.hpp"

#include <algorithm>

#include "flowlab/errors.hpp"

namespace flowlab::detail {

BandMatrix make_system(const BackgroundMetric& bg) {
    const int nt = bg.n_theta();
    const int bw = bg.radial_mode() ? 1 : 2 * nt;
    return BandMatrix(bg.node_count(), bw, bw);
}

void add_laplace_row(const BackgroundMetric& bg, BandMatrix& A, int row, double scale) {
    const Stencil& st = bg.laplace_stencil();
    for (int k = st.row_ptr[row]; k < st.row_ptr[row + 1]; ++k) A.at(row, st.col[k]) += scale * st.val[k];
}

void set_origin_tie(const BackgroundMetric& bg, BandMatrix& A, std::vector<double>& rhs, int j) {
    const auto row = bg.index(0, j);
    A.clear_row(row);
    A.at(row, row) = 1.0;
    A.at(row, bg.index(0, 0)) = -1.0;
    rhs[row] = 0.0;
}

void set_identity_row(BandMatrix& A, std::vector<double>& rhs, int row, double value) {
    A.clear_row(row);
    A.at(row, row) = 1.0;
    rhs[row] = value;
}

double set_one_sided_row(const BackgroundMetric& bg, BandMatrix& A, const BoundaryComponent& c, int j) {
    const int s = c.inward;
    const auto rb = bg.index(c.node, j);
    const auto r1 = bg.index(c.node + s, j);
    const auto r2 = bg.index(c.node + 2 * s, j);
    A.clear_row(rb);
    A.at(rb, rb) = 3.0;
    A.at(rb, r1) = -4.0;
    const double alpha = A.get(r1, r2);
    if (alpha == 0.0) throw SingularLinearSystem("interior row lacks the coupling needed for elimination");
    const double m = 1.0 / alpha;
    const int lo = static_cast<int>(r1) - A.kl();
    const int hi = static_cast<int>(r1) + A.ku();
    for (int col = std::max(lo, 0); col <= hi && col < static_cast<int>(A.size()); ++col) {
        const double v = A.get(r1, col);
        if (v == 0.0 || col == static_cast<int>(r2)) continue;
        A.at(rb, col) -= m * v;
    }
    return m;
}

void tie_origin(const BackgroundMetric& bg, Field& u) {
    if (bg.kind() != DomainKind::Disk) return;
    for (int j = 1; j < bg.n_theta(); ++j) u(0, j) = u(0, 0);
}

}  // namespace flowlab::detail
