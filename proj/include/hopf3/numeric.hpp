#ifndef HOPF3_NUMERIC_HPP
#define HOPF3_NUMERIC_HPP

#include "hopf3/poincare.hpp"

#include <array>
#include <functional>

namespace hopf3 {

// Compiled double-precision evaluators for the floating-point lab.
struct NumField3 {
    struct Term {
        int ex, ey, ez;
        double c;
    };
    std::array<std::vector<Term>, 3> comp;

    static NumField3 compile(const VectorField3& f);
    std::array<double, 3> eval(const std::array<double, 3>& p) const;
};

// Non-autonomous planar chart system dz/dtheta, drho/dtheta with
// trig-polynomial coefficients.
struct NumChartSystem {
    struct Harm {
        int k;
        double c, s;
    };
    struct Term {
        int ez, er;
        double mean;
        std::vector<Harm> h;
    };
    std::vector<Term> fz, fr;

    static NumChartSystem compile(const TSeries& f, const TSeries& g);
    std::array<double, 2> eval(double theta, double z, double rho) const;
};

struct IntegratorOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double h0 = 1e-3;
    double hmax = 0.1;
    long max_steps = 2'000'000;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::array<double, 3>> x;
    bool step_underflow = false;
};

// Adaptive Dormand–Prince 5(4) integration of the ambient field.
Trajectory integrate(const NumField3& f, std::array<double, 3> x0, double t1,
                     const IntegratorOptions& opt = {});

// Successive returns to the half-plane section {y = 0, x > 0}, by event
// detection with bisection polishing.
std::vector<std::array<double, 3>> section_returns(const NumField3& f,
                                                   std::array<double, 3> x0, int n_iter,
                                                   const IntegratorOptions& opt = {},
                                                   double escape_radius = 8.0,
                                                   double max_time = 400.0);

// Numeric return map of the chart system over theta in [0, 2pi].
std::array<double, 2> chart_return(const NumChartSystem& sys, double z0, double rho0,
                                   const IntegratorOptions& opt = {});

struct NumericCycle {
    double period = 0;
    std::array<double, 3> point{};
    double residual = 0;
    std::array<double, 2> floquet{}; // return-map eigenvalue magnitudes
};

// Newton refinement on the section return map from seeded starts.
std::vector<NumericCycle> detect_cycles(const NumField3& f,
                                        const std::vector<std::array<double, 3>>& seeds,
                                        double residual_tol = 1e-9,
                                        double cluster_radius = 1e-6);

// Richardson-style order fit: slope of log(err) against log(rho).
double order_fit_slope(const std::vector<double>& rho, const std::vector<double>& err);

} // namespace hopf3

#endif
