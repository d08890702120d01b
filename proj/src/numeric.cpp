#include "hopf3/numeric.hpp"

#include <cmath>

namespace hopf3 {

NumField3 NumField3::compile(const VectorField3& f) {
    NumField3 out;
    const SSeries* comp[3] = {&f.x, &f.y, &f.z};
    for (int i = 0; i < 3; ++i)
        for (const auto& [m, c] : comp[i]->terms())
            out.comp[i].push_back({m.e[0], m.e[1], m.e[2], c.to_double()});
    return out;
}

std::array<double, 3> NumField3::eval(const std::array<double, 3>& p) const {
    std::array<double, 3> v{0, 0, 0};
    auto ipow = [](double b, int e) {
        double r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    for (int i = 0; i < 3; ++i)
        for (const auto& t : comp[i])
            v[i] += t.c * ipow(p[0], t.ex) * ipow(p[1], t.ey) * ipow(p[2], t.ez);
    return v;
}

NumChartSystem NumChartSystem::compile(const TSeries& f, const TSeries& g) {
    NumChartSystem out;
    auto conv = [](const TSeries& s, std::vector<Term>& dst) {
        for (const auto& [m, c] : s.terms()) {
            Term t;
            t.ez = m.e[CZ];
            t.er = m.e[CR];
            t.mean = c.mean().to_double();
            c.for_each([&](int k, const Scalar& v, bool is_cos) {
                if (k == 0) return;
                Harm h{k, 0, 0};
                auto it = std::find_if(t.h.begin(), t.h.end(),
                                       [&](const Harm& x) { return x.k == k; });
                if (it == t.h.end()) {
                    t.h.push_back(h);
                    it = std::prev(t.h.end());
                }
                if (is_cos) it->c += v.to_double();
                else it->s += v.to_double();
            });
            dst.push_back(std::move(t));
        }
    };
    conv(f, out.fz);
    conv(g, out.fr);
    return out;
}

std::array<double, 2> NumChartSystem::eval(double theta, double z, double rho) const {
    auto part = [&](const std::vector<Term>& v) {
        double acc = 0;
        for (const auto& t : v) {
            double coef = t.mean;
            for (const auto& h : t.h)
                coef += h.c * std::cos(h.k * theta) + h.s * std::sin(h.k * theta);
            double zz = 1, rr = 1;
            for (int i = 0; i < t.ez; ++i) zz *= z;
            for (int i = 0; i < t.er; ++i) rr *= rho;
            acc += coef * zz * rr;
        }
        return acc;
    };
    return {part(fz), part(fr)};
}

namespace {

// Dormand–Prince 5(4) coefficients
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

template <size_t N>
using Vec = std::array<double, N>;

template <size_t N, class F>
bool dopri_step(const F& f, double t, const Vec<N>& y, double h, Vec<N>& out, double& err,
                const IntegratorOptions& opt) {
    Vec<N> k1 = f(t, y), tmp;
    auto axpy = [&](const Vec<N>& base, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
        Vec<N> r = base;
        for (auto& [a, v] : terms)
            for (size_t i = 0; i < N; ++i) r[i] += h * a * (*v)[i];
        return r;
    };
    Vec<N> k2 = f(t + h / 5, axpy(y, {{A21, &k1}}));
    Vec<N> k3 = f(t + 3 * h / 10, axpy(y, {{A31, &k1}, {A32, &k2}}));
    Vec<N> k4 = f(t + 4 * h / 5, axpy(y, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
    Vec<N> k5 = f(t + 8 * h / 9, axpy(y, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
    Vec<N> k6 = f(t + h, axpy(y, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
    for (size_t i = 0; i < N; ++i)
        out[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    Vec<N> k7 = f(t + h, out);
    err = 0;
    for (size_t i = 0; i < N; ++i) {
        double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                        E7 * k7[i]);
        double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(out[i]));
        err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);
    return err <= 1.0;
}

template <size_t N, class F>
bool advance(const F& f, double& t, Vec<N>& y, double t1, const IntegratorOptions& opt,
             const std::function<void(double, const Vec<N>&)>& record) {
    double h = std::min(opt.h0, t1 - t);
    long steps = 0;
    while (t < t1 && steps++ < opt.max_steps) {
        if (t + h > t1) h = t1 - t;
        Vec<N> ynew;
        double err;
        if (dopri_step<N>(f, t, y, h, ynew, err, opt)) {
            t += h;
            y = ynew;
            if (record) record(t, y);
        }
        double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        fac = std::min(5.0, std::max(0.2, fac));
        h *= fac;
        if (h > opt.hmax) h = opt.hmax;
        if (h < 1e-14) return false; // step-size underflow
    }
    return t >= t1;
}

} // namespace

Trajectory integrate(const NumField3& f, std::array<double, 3> x0, double t1,
                     const IntegratorOptions& opt) {
    Trajectory tr;
    auto rhs = [&](double, const Vec<3>& y) { return f.eval(y); };
    double t = 0;
    tr.t.push_back(0);
    tr.x.push_back(x0);
    bool ok = advance<3>(rhs, t, x0, t1, opt, [&](double tt, const Vec<3>& y) {
        tr.t.push_back(tt);
        tr.x.push_back(y);
    });
    tr.step_underflow = !ok;
    return tr;
}

std::vector<std::array<double, 3>> section_returns(const NumField3& f,
                                                   std::array<double, 3> x0, int n_iter,
                                                   const IntegratorOptions& opt,
                                                   double escape_radius, double max_time) {
    std::vector<std::array<double, 3>> out;
    auto rhs = [&](double, const Vec<3>& y) { return f.eval(y); };
    double t = 0;
    Vec<3> y = x0;
    auto crossing = [&](const Vec<3>& a, const Vec<3>& b) {
        // section {y = 0, x > 0}, oriented by increasing y
        return a[1] < 0 && b[1] >= 0 && (a[0] > 0 || b[0] > 0);
    };
    long guard = 0;
    double h = opt.h0;
    while ((int)out.size() < n_iter && guard++ < 400000) {
        if (t > max_time) break;
        if (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] > escape_radius * escape_radius) break;
        Vec<3> yprev = y;
        double tprev = t;
        Vec<3> ynew;
        double err;
        bool acc = dopri_step<3>(rhs, t, y, h, ynew, err, opt);
        double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        fac = std::min(5.0, std::max(0.2, fac));
        if (!acc) {
            h *= std::min(fac, 0.5);
            if (h < 1e-13) break;
            continue;
        }
        t += h;
        y = ynew;
        h = std::min(h * fac, opt.hmax);
        if (crossing(yprev, y)) {
            // bisect the step for the crossing point
            double lo = 0, hi = t - tprev;
            Vec<3> ylo = yprev;
            for (int it = 0; it < 80; ++it) {
                double mid = (lo + hi) / 2;
                double tt = tprev;
                Vec<3> ym = yprev;
                IntegratorOptions o2 = opt;
                o2.h0 = std::max(mid / 8, 1e-13);
                advance<3>(rhs, tt, ym, tprev + mid, o2, nullptr);
                if (crossing(yprev, ym)) hi = mid;
                else {
                    lo = mid;
                    ylo = ym;
                }
                if (hi - lo < 1e-13 * std::max(1.0, std::abs(t))) break;
            }
            double tt = tprev;
            Vec<3> yc = yprev;
            IntegratorOptions o2 = opt;
            o2.h0 = std::max(hi / 8, 1e-13);
            advance<3>(rhs, tt, yc, tprev + hi, o2, nullptr);
            out.push_back(yc);
        }
    }
    return out;
}

std::array<double, 2> chart_return(const NumChartSystem& sys, double z0, double rho0,
                                   const IntegratorOptions& opt) {
    auto rhs = [&](double th, const Vec<2>& y) {
        auto v = sys.eval(th, y[0], y[1]);
        return Vec<2>{v[0], v[1]};
    };
    double t = 0;
    Vec<2> y{z0, rho0};
    advance<2>(rhs, t, y, 2 * M_PI, opt, nullptr);
    return {y[0], y[1]};
}

std::vector<NumericCycle> detect_cycles(const NumField3& f,
                                        const std::vector<std::array<double, 3>>& seeds,
                                        double residual_tol, double cluster_radius) {
    std::vector<NumericCycle> found;
    for (const auto& s : seeds) {
        auto ret = section_returns(f, s, 2);
        if (ret.empty()) continue;
        // Levenberg–Marquardt on the (x,z) return displacement from the
        // first crossing (the Jacobian is singular along a cycle continuum)
        std::array<double, 3> p = ret[0];
        bool converged = false;
        double lambda = 1e-4;
        for (int it = 0; it < 40; ++it) {
            auto r1 = section_returns(f, p, 1);
            if (r1.empty()) break;
            double rx = r1[0][0] - p[0], rz = r1[0][2] - p[2];
            double res = std::hypot(rx, rz);
            if (res < residual_tol / 100) {
                converged = true;
                break;
            }
            double eps = 1e-7 * std::max(1.0, std::abs(p[0]));
            auto rA = section_returns(f, {p[0] + eps, 0, p[2]}, 1);
            auto rB = section_returns(f, {p[0], 0, p[2] + eps}, 1);
            if (rA.empty() || rB.empty()) break;
            // Jacobian of the displacement F(p) - p
            double j11 = (rA[0][0] - (p[0] + eps) - rx) / eps;
            double j12 = (rB[0][0] - p[0] - rx) / eps;
            double j21 = (rA[0][2] - p[2] - rz) / eps;
            double j22 = (rB[0][2] - (p[2] + eps) - rz) / eps;
            bool stepped = false;
            for (int damp = 0; damp < 12; ++damp) {
                // (J^T J + lambda I) d = -J^T r
                double a11 = j11 * j11 + j21 * j21 + lambda;
                double a12 = j11 * j12 + j21 * j22;
                double a22 = j12 * j12 + j22 * j22 + lambda;
                double g1 = -(j11 * rx + j21 * rz), g2 = -(j12 * rx + j22 * rz);
                double det = a11 * a22 - a12 * a12;
                if (std::abs(det) < 1e-300) break;
                double dx = (g1 * a22 - g2 * a12) / det;
                double dz = (a11 * g2 - a12 * g1) / det;
                std::array<double, 3> q{p[0] + dx, 0, p[2] + dz};
                if (q[0] <= 1e-9) {
                    lambda *= 10;
                    continue;
                }
                auto rq = section_returns(f, q, 1);
                if (rq.empty()) {
                    lambda *= 10;
                    continue;
                }
                double resq = std::hypot(rq[0][0] - q[0], rq[0][2] - q[2]);
                if (resq < res) {
                    p = q;
                    lambda = std::max(lambda / 3, 1e-12);
                    stepped = true;
                    break;
                }
                lambda *= 10;
            }
            if (!stepped) break;
        }
        if (!converged) continue;
        // reject candidates below the detection amplitude floor: the return
        // map is tangent to the identity, so single-turn residuals cannot
        // separate genuine cycles from slow drift arbitrarily close to 0
        if (p[0] < 1e-3) continue;
        NumericCycle c;
        c.point = {p[0], 0.0, p[2]};
        auto r1 = section_returns(f, c.point, 1);
        if (r1.empty()) continue;
        c.residual = std::hypot(r1[0][0] - p[0], r1[0][2] - p[2]);
        if (c.residual > residual_tol) continue;
        // long-run drift test: 32 returns must stay put for a genuine cycle
        {
            auto r32 = section_returns(f, c.point, 32);
            if (r32.size() < 32) continue;
            double drift = std::hypot(r32.back()[0] - p[0], r32.back()[2] - p[2]);
            if (drift > 64 * residual_tol) continue;
        }
        // period estimate: integrate until the return
        {
            auto rhs = [&](double, const Vec<3>& y) { return f.eval(y); };
            // crude period: time of first return
            double t = 0;
            Vec<3> y = c.point;
            IntegratorOptions opt;
            bool seen_neg = false;
            long guard = 0;
            while (guard++ < 100000) {
                Vec<3> yp = y;
                double h = 1e-3;
                Vec<3> yn;
                double err;
                if (!dopri_step<3>(rhs, t, y, h, yn, err, opt)) {
                    h /= 2;
                    continue;
                }
                t += h;
                y = yn;
                if (y[1] < 0) seen_neg = true;
                if (seen_neg && yp[1] < 0 && y[1] >= 0) break;
            }
            c.period = t;
        }
        // Floquet magnitude estimates from the finite-difference return Jacobian
        {
            double eps = 1e-6;
            auto rA = section_returns(f, {p[0] + eps, 0, p[2]}, 1);
            auto rB = section_returns(f, {p[0], 0, p[2] + eps}, 1);
            if (!rA.empty() && !rB.empty()) {
                double j11 = (rA[0][0] - r1[0][0]) / eps, j12 = (rB[0][0] - r1[0][0]) / eps;
                double j21 = (rA[0][2] - r1[0][2]) / eps, j22 = (rB[0][2] - r1[0][2]) / eps;
                double tr = j11 + j22, det = j11 * j22 - j12 * j21;
                double disc = tr * tr / 4 - det;
                if (disc >= 0) {
                    c.floquet = {std::abs(tr / 2 + std::sqrt(disc)),
                                 std::abs(tr / 2 - std::sqrt(disc))};
                } else {
                    double mag = std::sqrt(std::max(det, 0.0));
                    c.floquet = {mag, mag};
                }
            }
        }
        bool dup = false;
        for (const auto& k : found)
            if (std::hypot(k.point[0] - c.point[0], k.point[2] - c.point[2]) < cluster_radius)
                dup = true;
        if (!dup) found.push_back(c);
    }
    std::sort(found.begin(), found.end(), [](const NumericCycle& a, const NumericCycle& b) {
        return a.point[0] < b.point[0] || (a.point[0] == b.point[0] && a.point[2] < b.point[2]);
    });
    return found;
}

double order_fit_slope(const std::vector<double>& rho, const std::vector<double>& err) {
    // least squares on log-log
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < rho.size(); ++i) {
        if (err[i] <= 0) continue;
        double lx = std::log(rho[i]), ly = std::log(err[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace hopf3
