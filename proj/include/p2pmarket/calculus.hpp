#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "p2pmarket/errors.hpp"
#include "p2pmarket/market.hpp"

namespace p2pmarket {

/// Root-finding interval with termination width.
struct Bracket {
    double lo;
    double hi;
    double tol = 1e-12;

    Bracket(double lo_, double hi_, double tol_ = 1e-12);
};

/// Root of a continuous f with f(lo) * f(hi) < 0. A secant step is tried
/// each iteration; whenever it lands outside the bracket or shrinks it
/// too slowly the step falls back to bisection, so convergence is
/// guaranteed. Fails after 200 iterations.
double find_root_bracketed(const ScalarFn& f, const Bracket& bracket);

/// Objective on [lo, hi] split at interior breakpoints into smooth
/// pieces (one callable per piece; pieces may share a callable).
class PiecewiseObjective {
public:
    /// Single continuous objective, split at `breakpoints`.
    PiecewiseObjective(ScalarFn f, double lo, double hi,
                       std::vector<double> breakpoints = {});

    struct Piece {
        double lo, hi;
        ScalarFn f;
    };

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

private:
    double lo_, hi_;
    std::vector<double> breakpoints_;
    std::vector<Piece> pieces_;
};

struct MaximizeOptions {
    double x_tol = 1e-9;   // golden-section interval width target
    int scan_points = 33;  // bracketing scan per piece
};

/// Best point over all pieces. Each piece is scanned to bracket the
/// incumbent, then polished by golden section; breakpoints and interval
/// endpoints always compete as candidates, so a kink maximum is found
/// exactly. Ties break toward the smaller argument.
std::pair<double, double> maximize_piecewise(const PiecewiseObjective& obj,
                                             const MaximizeOptions& opts = {});

struct GridResult {
    double x, y, value;
};

/// Lattice-with-refinement maximizer of f over the unit square.
/// Evaluates coarse_n x coarse_n points, then refines a one-spacing
/// neighbourhood of the incumbent by a factor of 10 per level.
/// Reduction is ordered, ties break toward the lexicographically
/// smallest pair, so the result is deterministic.
GridResult maximize_grid_2d(const std::function<double(double, double)>& f,
                            int coarse_n = 101, int refine_levels = 4);

/// Worst mismatch between f_prime and a central difference of f over the
/// sample points, scaled by max(1, |f_prime|). Throws on non-finite
/// evaluations, naming the offending point.
double check_derivative(const ScalarFn& f, const ScalarFn& f_prime,
                        const std::vector<double>& points);

} // namespace p2pmarket
