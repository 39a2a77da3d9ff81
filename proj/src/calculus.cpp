#include "p2pmarket/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace p2pmarket {

Bracket::Bracket(double lo_, double hi_, double tol_)
    : lo(lo_), hi(hi_), tol(tol_) {
    if (!(lo < hi))
        throw Error(ErrorCode::invalid_argument, "bracket requires lo < hi");
    if (!(tol > 0.0))
        throw Error(ErrorCode::invalid_argument, "bracket tol must be positive");
}

double find_root_bracketed(const ScalarFn& f, const Bracket& bracket) {
    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0 || fb == 0.0 || fa * fb > 0.0)
        throw Error(ErrorCode::no_sign_change,
                    "no sign change on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    for (int iter = 0; iter < 200; ++iter) {
        if (b - a <= bracket.tol)
            return std::abs(fa) <= std::abs(fb) ? a : b;
        double mid = a + 0.5 * (b - a);
        double x = mid;
        if (fb != fa) {
            double secant = b - fb * (b - a) / (fb - fa);
            // accept the secant step only if it stays well inside
            double margin = 0.01 * (b - a);
            if (secant > a + margin && secant < b - margin)
                x = secant;
        }
        double fx = f(x);
        if (fx == 0.0)
            return x;
        if (fa * fx < 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        // a pure secant sequence can stagnate on one side; force the
        // interval to halve at least every other iteration
        if (b - a > 0.5 * (bracket.hi - bracket.lo) && iter > 60) {
            double m = a + 0.5 * (b - a);
            double fm = f(m);
            if (fa * fm < 0.0) {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
        }
    }
    throw Error(ErrorCode::max_iterations, "root finder hit 200 iterations");
}

PiecewiseObjective::PiecewiseObjective(ScalarFn f, double lo, double hi,
                                       std::vector<double> breakpoints)
    : lo_(lo), hi_(hi), breakpoints_(std::move(breakpoints)) {
    if (!(lo <= hi))
        throw Error(ErrorCode::invalid_argument, "objective requires lo <= hi");
    double prev = lo_;
    for (double b : breakpoints_) {
        if (!(b > prev) || !(b < hi_))
            throw Error(ErrorCode::invalid_argument,
                        "breakpoints must be strictly increasing inside (lo, hi)");
        prev = b;
    }
    double start = lo_;
    for (double b : breakpoints_) {
        pieces_.push_back({start, b, f});
        start = b;
    }
    pieces_.push_back({start, hi_, f});
}

namespace {

// Golden-section maximization on [a, b]; returns (x, f(x)).
std::pair<double, double> golden_max(const ScalarFn& f, double a, double b,
                                     double x_tol) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 200 && (b - a) > x_tol; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

} // namespace

std::pair<double, double> maximize_piecewise(const PiecewiseObjective& obj,
                                             const MaximizeOptions& opts) {
    double best_x = obj.lo();
    double best_v = -std::numeric_limits<double>::infinity();
    auto consider = [&](double x, double v) {
        if (v > best_v || (v == best_v && x < best_x)) {
            best_v = v;
            best_x = x;
        }
    };
    for (const auto& piece : obj.pieces()) {
        consider(piece.lo, piece.f(piece.lo));
        if (piece.hi == piece.lo)
            continue;
        consider(piece.hi, piece.f(piece.hi));
        // coarse scan to bracket the interior incumbent; rounding may
        // push lo + i*h past hi, so the last point is pinned
        int n = std::max(3, opts.scan_points);
        double h = (piece.hi - piece.lo) / (n - 1);
        auto at = [&](int i) {
            return i >= n - 1 ? piece.hi : piece.lo + i * h;
        };
        int best_i = 0;
        double best_scan = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            double v = piece.f(at(i));
            if (v > best_scan) {
                best_scan = v;
                best_i = i;
            }
        }
        double a = at(std::max(0, best_i - 1));
        double b = at(std::min(n - 1, best_i + 1));
        auto [x, v] = golden_max(piece.f, a, b, opts.x_tol);
        consider(x, v);
    }
    return {best_x, best_v};
}

GridResult maximize_grid_2d(const std::function<double(double, double)>& f,
                            int coarse_n, int refine_levels) {
    if (coarse_n < 11)
        throw Error(ErrorCode::invalid_argument, "coarse_n must be at least 11");
    if (refine_levels < 2)
        throw Error(ErrorCode::invalid_argument, "refine_levels must be at least 2");

    GridResult best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
    auto scan = [&](double x0, double x1, double y0, double y1, int n) {
        for (int i = 0; i < n; ++i) {
            double x = x0 + (x1 - x0) * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                double y = y0 + (y1 - y0) * j / (n - 1);
                double v = f(x, y);
                if (v > best.value ||
                    (v == best.value &&
                     (x < best.x || (x == best.x && y < best.y))))
                    best = {x, y, v};
            }
        }
    };

    scan(0.0, 1.0, 0.0, 1.0, coarse_n);
    double spacing = 1.0 / (coarse_n - 1);
    for (int level = 0; level < refine_levels; ++level) {
        double x0 = std::max(0.0, best.x - spacing);
        double x1 = std::min(1.0, best.x + spacing);
        double y0 = std::max(0.0, best.y - spacing);
        double y1 = std::min(1.0, best.y + spacing);
        scan(x0, x1, y0, y1, 21);
        spacing /= 10.0;
    }
    return best;
}

double check_derivative(const ScalarFn& f, const ScalarFn& f_prime,
                        const std::vector<double>& points) {
    double worst = 0.0;
    for (double x : points) {
        double h = 1e-6 * std::max(1.0, std::abs(x));
        double numeric = (f(x + h) - f(x - h)) / (2.0 * h);
        double analytic = f_prime(x);
        if (!std::isfinite(numeric) || !std::isfinite(analytic))
            throw Error(ErrorCode::non_finite,
                        "non-finite derivative at x = " + std::to_string(x));
        double err = std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic));
        worst = std::max(worst, err);
    }
    return worst;
}

} // namespace p2pmarket
