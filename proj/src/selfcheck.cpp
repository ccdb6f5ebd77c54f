#include "bfn/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bfn/addition.hpp"
#include "bfn/angular.hpp"
#include "bfn/basis_sets.hpp"
#include "bfn/bfunction.hpp"
#include "bfn/specfunc.hpp"

namespace bfn {

namespace {

std::string err_detail(double worst, double tol) {
    std::ostringstream os;
    os.precision(3);
    os << "max error " << worst << ", tolerance " << tol;
    return os.str();
}

CheckResult check_gaunt(bool quick) {
    const int lmax = quick ? 2 : 4;
    const double tol = 1e-12;
    double worst = 0.0;
    for (int l1 = 0; l1 <= lmax; ++l1)
        for (int l2 = 0; l2 <= lmax; ++l2)
            for (int l3 = std::abs(l1 - l2); l3 <= std::min(l1 + l2, lmax); ++l3) {
                if ((l1 + l2 + l3) % 2 != 0) continue;
                for (int m1 = -l1; m1 <= l1; ++m1)
                    for (int m2 = -l2; m2 <= l2; ++m2) {
                        int m3 = m1 + m2;
                        if (std::abs(m3) > l3) continue;
                        ComplexValue quad = sphere_quadrature(
                            [&](double th, double ph) {
                                return std::conj(spherical_harmonic({l3, m3}, th, ph)) *
                                       spherical_harmonic({l2, m2}, th, ph) *
                                       spherical_harmonic({l1, m1}, th, ph);
                            },
                            32, 64);
                        double g = gaunt({l1, m1, l2, m2, l3, m3});
                        worst = std::max(worst, std::abs(quad - g));
                    }
            }
    return {"gaunt-quadrature", worst <= tol, err_detail(worst, tol)};
}

CheckResult check_exp_dot(bool quick) {
    const int pairs = quick ? 10 : 40;
    const double tol = 1e-12;
    std::mt19937_64 rng(20260814u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto draw = [&]() {
        while (true) {
            Vector3 v{u(rng), u(rng), u(rng)};
            double n = v.norm();
            if (n > 1e-3 && n <= 1.0) return 2.0 * v;
        }
    };
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        Vector3 a = draw(), b = draw();
        double exact = std::exp(dot(a, b));
        worst = std::max(worst, std::abs(exp_dot_spherical(a, b, 30, 30) - exact));
        worst = std::max(worst, std::abs(exp_dot_legendre(a, b, 30) - exact));
    }
    return {"exp-dot", worst <= tol, err_detail(worst, tol)};
}

CheckResult check_conversions(bool quick) {
    const double tol = 1e-12;
    const std::vector<std::pair<int, int>> nl =
        quick ? std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 0}}
              : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 0}, {4, 2}, {5, 3}};
    const Vector3 dir{0.36, 0.48, 0.8};
    const double radii[] = {0.3, 1.1, 2.7};
    double worst = 0.0;
    for (auto kind : {RadialBasisKind::slater, RadialBasisKind::hydrogenic,
                      RadialBasisKind::lambda, RadialBasisKind::sturmian}) {
        for (auto [n, ell] : nl) {
            double scale = (kind == RadialBasisKind::hydrogenic) ? 1.1 : 0.9;
            RadialBasisSpec spec{kind, n, ell, std::min(ell, 1), scale};
            BExpansion ex = to_b_expansion(spec);
            for (double r : radii) {
                Vector3 v = r * dir;
                ComplexValue direct = eval_direct(spec, v);
                ComplexValue expanded = expansion_eval(ex, v);
                double rel = std::abs(expanded - direct) /
                             std::max(std::abs(direct), 1e-14);
                worst = std::max(worst, rel);
            }
        }
    }
    return {"conversions", worst <= tol, err_detail(worst, tol)};
}

CheckResult check_addition(bool quick) {
    const double tol = 1e-8;
    double worst = 0.0;
    bool converged = true;
    {
        TruncationSpec trunc{16, 1e-10, TruncationMode::adaptive};
        auto [value, rep] =
            b_addition({1, 0, 0, 1.0}, {0.0, 0.0, 0.2}, {0.0, 0.0, 1.0}, trunc);
        (void)value;
        converged = converged && rep.converged_at.has_value();
        worst = std::max(worst, rep.errors.back());
    }
    if (!quick) {
        TruncationSpec trunc{18, 1e-10, TruncationMode::adaptive};
        auto [value, rep] = b_addition({2, 1, 1, 0.8}, {0.05, 0.1, 0.12},
                                       {0.4, -0.8, 0.9}, trunc);
        (void)value;
        converged = converged && rep.converged_at.has_value();
        worst = std::max(worst, rep.errors.back());
    }
    return {"addition", converged && worst <= tol,
            err_detail(worst, tol) + (converged ? "" : ", outer sum not converged")};
}

}  // namespace

std::vector<CheckResult> selfcheck_run(bool quick) {
    return {check_gaunt(quick), check_exp_dot(quick), check_conversions(quick),
            check_addition(quick)};
}

}  // namespace bfn
