#include "primerace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "primerace/errors.hpp"
#include "primerace/parallel.hpp"
#include "primerace/rng.hpp"
#include "primerace/simplex.hpp"

namespace primerace {

RegionSpec RegionSpec::wedge(std::vector<std::size_t> sigma) {
    RegionSpec r;
    r.kind = Kind::wedge;
    std::vector<std::size_t> sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i) throw std::invalid_argument("wedge: sigma is not a permutation");
    r.sigma = std::move(sigma);
    return r;
}

RegionSpec RegionSpec::ball(std::vector<double> center, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("ball: rho must be positive");
    RegionSpec r;
    r.kind = Kind::ball;
    r.center = std::move(center);
    r.radius = rho;
    return r;
}

RegionSpec RegionSpec::cylinder(std::vector<double> center, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("cylinder: rho must be positive");
    RegionSpec r;
    r.kind = Kind::cylinder;
    r.center = std::move(center);
    r.radius = rho;
    return r;
}

RegionSpec RegionSpec::halfspace(std::vector<double> normal, double threshold) {
    RegionSpec r;
    r.kind = Kind::halfspace;
    r.center = std::move(normal);
    r.radius = threshold;
    return r;
}

RegionSpec RegionSpec::sum_zero_hyperplane(std::size_t r_) {
    RegionSpec r;
    r.kind = Kind::hyperplane_sum_zero;
    r.center.assign(r_, 0.0);
    return r;
}

bool region_contains(const RegionSpec& region, const std::vector<double>& x) {
    switch (region.kind) {
        case RegionSpec::Kind::wedge: {
            if (x.size() != region.sigma.size())
                throw std::invalid_argument("region_contains: dimension mismatch");
            for (std::size_t i = 0; i + 1 < region.sigma.size(); ++i)
                if (!(x[region.sigma[i]] > x[region.sigma[i + 1]])) return false;
            return true;
        }
        case RegionSpec::Kind::ball: {
            if (x.size() != region.center.size())
                throw std::invalid_argument("region_contains: dimension mismatch");
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - region.center[i];
                d2 += d * d;
            }
            return d2 < region.radius * region.radius;
        }
        case RegionSpec::Kind::cylinder: {
            if (x.size() != region.center.size())
                throw std::invalid_argument("region_contains: dimension mismatch");
            double mean = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) mean += x[i] - region.center[i];
            mean /= static_cast<double>(x.size());
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - region.center[i] - mean;
                d2 += d * d;
            }
            return d2 < region.radius * region.radius;
        }
        case RegionSpec::Kind::halfspace: {
            if (x.size() != region.center.size())
                throw std::invalid_argument("region_contains: dimension mismatch");
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += region.center[i] * x[i];
            return dot > region.radius;
        }
        case RegionSpec::Kind::hyperplane_sum_zero: {
            double s = 0.0;
            for (double v : x) s += v;
            return s == 0.0;
        }
    }
    return false;
}

SpanCheck span_check(const std::vector<std::vector<double>>& vectors, std::size_t r,
                     SpanTarget target) {
    SpanCheck out;
    out.dim_target = target == SpanTarget::full_space ? r : r - 1;
    Mat m(vectors.size(), r);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != r) throw std::invalid_argument("span_check: dimension mismatch");
        for (std::size_t j = 0; j < r; ++j) m(i, j) = vectors[i][j];
    }
    out.rank = rank(m, 1e-10);
    out.spans = out.rank == out.dim_target;
    if (target == SpanTarget::sum_zero_hyperplane) {
        for (const auto& v : vectors) {
            double s = 0.0, scale = 1.0;
            for (double c : v) {
                s += c;
                scale = std::max(scale, std::fabs(c));
            }
            if (std::fabs(s) > 1e-9 * scale) out.spans = false;
        }
    }
    return out;
}

SubspaceSpec make_subspace(std::size_t ambient, std::vector<std::vector<double>> basis) {
    SubspaceSpec s;
    s.ambient = ambient;
    Mat m(basis.size(), ambient);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].size() != ambient)
            throw std::invalid_argument("make_subspace: dimension mismatch");
        for (std::size_t j = 0; j < ambient; ++j) m(i, j) = basis[i][j];
    }
    s.orthonormal = orthonormal_rows(m, 1e-12);
    if (s.orthonormal.rows < rank(m, 1e-10))
        throw std::logic_error("make_subspace: orthonormalization dropped rank");
    s.basis = std::move(basis);
    return s;
}

double quadform_constant(const std::vector<std::vector<std::complex<double>>>& vectors,
                         const SubspaceSpec& subspace) {
    const std::size_t r = subspace.ambient;
    const std::size_t ell = subspace.dim();
    if (ell == 0) throw std::invalid_argument("quadform_constant: trivial subspace");
    Mat g(r, r);
    for (const auto& v : vectors) {
        if (v.size() != r) throw std::invalid_argument("quadform_constant: dimension mismatch");
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                g(i, j) += v[i].real() * v[j].real() + v[i].imag() * v[j].imag();
    }
    // restrict to the subspace: M = U G U^T
    const Mat& u = subspace.orthonormal;
    Mat m(ell, ell);
    for (std::size_t a = 0; a < ell; ++a)
        for (std::size_t b = 0; b < ell; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) acc += u(a, i) * g(i, j) * u(b, j);
            m(a, b) = acc;
        }
    std::vector<double> ev = symmetric_eigenvalues(m);
    double lambda_min = ev.front();
    double scale = std::max(1.0, ev.back());
    if (lambda_min <= 1e-10 * scale)
        throw std::invalid_argument("quadform_constant: subspace direction not covered");
    double c = 1.0 / lambda_min;

    // spot check on random subspace points
    Philox rng(0xC0FFEE, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x(r, 0.0);
        for (std::size_t a = 0; a < ell; ++a) {
            double coef = 2.0 * rng.next_double() - 1.0;
            for (std::size_t i = 0; i < r; ++i) x[i] += coef * u(a, i);
        }
        double nx = 0.0;
        for (double v : x) nx += v * v;
        double q = 0.0;
        for (const auto& v : vectors) {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < r; ++i) {
                re += v[i].real() * x[i];
                im += v[i].imag() * x[i];
            }
            q += re * re + im * im;
        }
        if (nx > c * q * (1.0 + 1e-8) + 1e-12)
            throw std::logic_error("quadform_constant: eigenvalue bound violated");
    }
    return c;
}

BoundedSolve bounded_solve(const Mat& A, const std::vector<double>& t) {
    if (t.size() != A.rows) throw std::invalid_argument("bounded_solve: size mismatch");
    Mat u;
    std::vector<std::size_t> pivots;
    Mat e = rref(A, &u, &pivots, 1e-12);
    std::vector<double> ut(A.rows, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.rows; ++j) ut[i] += u(i, j) * t[j];
    BoundedSolve out;
    out.y.assign(A.cols, 0.0);
    for (std::size_t i = 0; i < pivots.size(); ++i) out.y[pivots[i]] = ut[i];
    double tinf = 0.0;
    for (double v : t) tinf = std::max(tinf, std::fabs(v));
    double rinf = 0.0;
    for (std::size_t i = 0; i < A.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < A.cols; ++j) acc += A(i, j) * out.y[j];
        rinf = std::max(rinf, std::fabs(acc - t[i]));
    }
    out.residual_inf = rinf;
    if (rinf > 1e-10 * std::max(1.0, tinf))
        throw std::invalid_argument("bounded_solve: t outside the column space");
    double uinf = 0.0;
    for (double v : u.a) uinf = std::max(uinf, std::fabs(v));
    out.c_A = static_cast<double>(A.rows) * uinf;
    return out;
}

namespace {

// closed-form 2-link reach: lb e^{i t1} + lc e^{i t2} = w
void two_link(std::complex<double> w, double lb, double lc, double& t1, double& t2) {
    double d = std::abs(w);
    if (d < 1e-300) {
        // requires lb == lc
        t1 = 0.0;
        t2 = 3.14159265358979323846;
        return;
    }
    double cosphi = (d * d + lb * lb - lc * lc) / (2.0 * d * lb);
    cosphi = std::clamp(cosphi, -1.0, 1.0);
    double phi = std::acos(cosphi);
    t1 = std::arg(w) + phi;
    std::complex<double> rest = w - lb * std::polar(1.0, t1);
    t2 = std::arg(rest);
    if (std::abs(rest) < 1e-300) t2 = 0.0;
}

}  // namespace

std::vector<double> robot_arm_solve(const std::vector<double>& lambda, std::complex<double> z) {
    const std::size_t n = lambda.size();
    if (n == 0) throw std::invalid_argument("robot_arm_solve: no arms");
    double total = 0.0, maxl = 0.0;
    for (double l : lambda) {
        if (!(l > 0.0)) throw std::invalid_argument("robot_arm_solve: arm lengths must be positive");
        total += l;
        maxl = std::max(maxl, l);
    }
    double inner = std::max(0.0, 2.0 * maxl - total);
    double r = std::abs(z);
    if (r > total * (1.0 + 1e-12) + 1e-300 || r < inner * (1.0 - 1e-12))
        throw std::invalid_argument("robot_arm_solve: target outside the reachable annulus");

    std::vector<double> theta(n, 0.0);
    double az = (r > 0) ? std::arg(z) : 0.0;
    if (std::fabs(r - total) <= 1e-12 * total) {
        // full extension
        for (double& t : theta) t = az;
        return theta;
    }
    if (n == 1) {
        theta[0] = az;
        return theta;
    }

    // three segments: the longest arm alone, the rest split evenly
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lambda[a] > lambda[b]; });
    std::vector<int> group(n, 0);
    double la = lambda[order[0]], lb = 0.0, lc = 0.0;
    group[order[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (lb <= lc) {
            lb += lambda[order[i]];
            group[order[i]] = 1;
        } else {
            lc += lambda[order[i]];
            group[order[i]] = 2;
        }
    }
    if (n == 2) {
        // degenerate: two segments, direct 2-link solve
        double t1, t2;
        two_link(z, lambda[0], lambda[1], t1, t2);
        return {t1, t2};
    }

    // choose alpha so the distance from z to la e^{i alpha} is closable by
    // the two remaining segments; d(alpha) increases on [0, pi] (z rotated
    // onto the positive axis)
    double lo = std::fabs(lb - lc), hi = lb + lc;
    auto dist = [&](double alpha) {
        return std::sqrt(std::max(0.0, r * r + la * la - 2.0 * r * la * std::cos(alpha)));
    };
    double target = std::min(hi, std::max(lo, dist(0.0)));
    target = 0.5 * (target + std::min(hi, dist(3.14159265358979323846)));
    target = std::min(hi, std::max(lo, target));
    double a0 = 0.0, a1 = 3.14159265358979323846;
    if (dist(a1) <= target) {
        a0 = a1;
    } else {
        for (int it = 0; it < 200 && a1 - a0 > 1e-16; ++it) {
            double mid = 0.5 * (a0 + a1);
            if (dist(mid) < target)
                a0 = mid;
            else
                a1 = mid;
        }
    }
    double alpha = 0.5 * (a0 + a1);
    std::complex<double> zr = std::polar(r, 0.0);  // work in the rotated frame
    std::complex<double> w = zr - la * std::polar(1.0, alpha);
    double t1, t2;
    two_link(w, lb, lc, t1, t2);
    for (std::size_t i = 0; i < n; ++i) {
        double t = group[i] == 0 ? alpha : (group[i] == 1 ? t1 : t2);
        theta[i] = t + az;  // rotate back
    }
    // verify
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += lambda[i] * std::polar(1.0, theta[i]);
    if (std::abs(acc - z) > 1e-9)
        throw std::logic_error("robot_arm_solve: residual above tolerance");
    return theta;
}

double w_threshold(const RaceVectors& vectors, const std::vector<std::size_t>& char_rows,
                   double V, const std::vector<double>& gamma_s) {
    if (char_rows.empty()) throw std::invalid_argument("w_threshold: empty character set");
    const std::size_t r = vectors.r();
    Mat A(r, 1 + 2 * char_rows.size());
    for (std::size_t i = 0; i < r; ++i) A(i, 0) = 1.0;
    for (std::size_t c = 0; c < char_rows.size(); ++c) {
        for (std::size_t i = 0; i < r; ++i) {
            A(i, 1 + 2 * c) = vectors.x[char_rows[c]][i];
            A(i, 2 + 2 * c) = vectors.y[char_rows[c]][i];
        }
    }
    // c_A is a property of the matrix; probe it with t = 0
    BoundedSolve probe = bounded_solve(A, std::vector<double>(r, 0.0));
    double w = std::max(8.0, probe.c_A * V * std::sqrt(2.0));
    for (double g : gamma_s) {
        if (!(g > 0.0)) throw std::invalid_argument("w_threshold: ordinates must be positive");
        w += 0.25 / (g * g * g);
    }
    return w;
}

WedgeCoverage wedge_coverage_check(const SubspaceSpec& V, std::size_t r) {
    if (r < 2 || r > 6) throw EnvelopeError("wedge_coverage_check: r outside 2..6");
    if (V.ambient != r) throw std::invalid_argument("wedge_coverage_check: ambient mismatch");
    const std::size_t d = V.dim();
    if (d == 0) throw std::invalid_argument("wedge_coverage_check: trivial subspace");
    // (1,...,1) must not lie in V
    {
        double res2 = static_cast<double>(r);
        for (std::size_t a = 0; a < d; ++a) {
            double dot = 0.0;
            for (std::size_t i = 0; i < r; ++i) dot += V.orthonormal(a, i);
            res2 -= dot * dot;
        }
        if (res2 < 1e-9 * static_cast<double>(r))
            throw std::invalid_argument("wedge_coverage_check: subspace contains (1,...,1)");
    }
    WedgeCoverage out;
    out.dim_is_r_minus_1 = d == r - 1;

    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> sigma(r);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        perms.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    out.checked = perms.size();

    std::vector<char> feasible(perms.size(), 0);
    parallel_chunks(perms.size(), [&](std::size_t pi) {
        const std::vector<std::size_t>& sg = perms[pi];
        // variables: u_1..u_d in [0,2] (y = u - 1), m in [0,1]; maximize m
        // constraints: m - sum_i u_i g_{ji} <= -sum_i g_{ji} for each of the
        // r-1 consecutive differences, plus the box rows u_i <= 2, m <= 1
        const std::size_t nv = d + 1;
        std::vector<std::vector<mpq_class>> A;
        std::vector<mpq_class> b, c(nv, 0);
        c[d] = 1;
        for (std::size_t j = 0; j + 1 < r; ++j) {
            std::vector<mpq_class> row(nv, 0);
            mpq_class rhs = 0;
            for (std::size_t i = 0; i < d; ++i) {
                mpq_class g = mpq_class(V.orthonormal(i, sg[j])) - mpq_class(V.orthonormal(i, sg[j + 1]));
                row[i] = -g;
                rhs -= g;
            }
            row[d] = 1;
            A.push_back(std::move(row));
            b.push_back(rhs);
        }
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<mpq_class> row(nv, 0);
            row[i] = 1;
            A.push_back(std::move(row));
            b.push_back(2);
        }
        {
            std::vector<mpq_class> row(nv, 0);
            row[d] = 1;
            A.push_back(std::move(row));
            b.push_back(1);
        }
        LPResult lp = solve_lp(A, b, c);
        feasible[pi] = lp.status == LPStatus::optimal && lp.objective > 0;
    });
    out.covers_all_wedges = true;
    for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        if (!feasible[pi]) {
            out.covers_all_wedges = false;
            out.witness = perms[pi];
            break;
        }
    }
    return out;
}

}  // namespace primerace
