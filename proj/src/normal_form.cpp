#include "hopf3/normal_form.hpp"

namespace hopf3 {

namespace {

struct CS {
    Scalar re, im;
    CS() = default;
    CS(Scalar r) : re(std::move(r)) {}
    CS(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    CS conj() const { return {re, -im}; }
    friend CS operator+(const CS& a, const CS& b) { return {a.re + b.re, a.im + b.im}; }
    friend CS operator-(const CS& a, const CS& b) { return {a.re - b.re, a.im - b.im}; }
    friend CS operator*(const CS& a, const CS& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CS operator/(const CS& a, const CS& b) {
        Scalar n = b.re * b.re + b.im * b.im;
        CS c = a * b.conj();
        return {c.re / n, c.im / n};
    }
};

// Sparse polynomial in (w, wbar, z) with complex scalar coefficients.
using CMap = std::map<Mono, CS>;

void cadd(CMap& m, const Mono& k, const CS& v) {
    if (v.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) m[k] = v;
    else {
        it->second = it->second + v;
        if (it->second.is_zero()) m.erase(it);
    }
}

// Convert a real ambient series (x,y,z) into the (w,wbar,z) basis:
// x = (w+wbar)/2, y = (w-wbar)/(2i).
CMap complexify(const SSeries& s) {
    CMap out;
    const CS halfc{Scalar(Rat(1, 2))};
    const CS half_over_i{Scalar(), Scalar(Rat(-1, 2))}; // 1/(2i) = -i/2
    for (const auto& [m, c] : s.terms()) {
        // expand ((w+wb)/2)^a ((w-wb)/(2i))^b z^r
        CMap term;
        term[Mono{{0, 0, m.e[2]}}] = CS(c);
        for (int i = 0; i < m.e[0]; ++i) {
            CMap nxt;
            for (const auto& [k, v] : term) {
                Mono k1 = k; k1.e[0] += 1;
                cadd(nxt, k1, v * halfc);
                Mono k2 = k; k2.e[1] += 1;
                cadd(nxt, k2, v * halfc);
            }
            term = std::move(nxt);
        }
        for (int i = 0; i < m.e[1]; ++i) {
            CMap nxt;
            for (const auto& [k, v] : term) {
                Mono k1 = k; k1.e[0] += 1;
                cadd(nxt, k1, v * half_over_i);
                Mono k2 = k; k2.e[1] += 1;
                cadd(nxt, k2, CS() - v * half_over_i);
            }
            term = std::move(nxt);
        }
        for (const auto& [k, v] : term) cadd(out, k, v);
    }
    return out;
}

// Inverse: substitute w = x+iy, wbar = x-iy and keep the real part.
SSeries realify(const CMap& m) {
    SSeries out(3);
    for (const auto& [k, v] : m) {
        CMap term;
        term[Mono{{0, 0, k.e[2]}}] = v;
        for (int i = 0; i < k.e[0]; ++i) { // * (x + iy)
            CMap nxt;
            for (const auto& [mm, vv] : term) {
                Mono m1 = mm; m1.e[0] += 1;
                cadd(nxt, m1, vv);
                Mono m2 = mm; m2.e[1] += 1;
                cadd(nxt, m2, vv * CS{Scalar(), Scalar(1)});
            }
            term = std::move(nxt);
        }
        for (int i = 0; i < k.e[1]; ++i) { // * (x - iy)
            CMap nxt;
            for (const auto& [mm, vv] : term) {
                Mono m1 = mm; m1.e[0] += 1;
                cadd(nxt, m1, vv);
                Mono m2 = mm; m2.e[1] += 1;
                cadd(nxt, m2, vv * CS{Scalar(), Scalar(-1)});
            }
            term = std::move(nxt);
        }
        for (const auto& [mm, vv] : term) out.add_coeff(mm, vv.re);
    }
    return out;
}

VectorField3 degree_part(const VectorField3& f, int d) {
    auto pick = [d](const SSeries& s) {
        SSeries r(3);
        for (const auto& [m, c] : s.terms())
            if (m.total() == d) r.set_coeff(m, c);
        return r;
    };
    return {pick(f.x), pick(f.y), pick(f.z)};
}

// Pull back xi by phi = id + g (g homogeneous of degree >= 2), as jets of
// total order <= work: (Dphi)^{-1} (xi o phi).
VectorField3 pullback_poly_map(const VectorField3& xi, const std::array<SSeries, 3>& g,
                               int work) {
    std::vector<SSeries> args;
    for (int i = 0; i < 3; ++i) args.push_back(SSeries::var(3, i) + g[i]);
    std::array<SSeries, 3> comp{xi.x.compose(args, work), xi.y.compose(args, work),
                                xi.z.compose(args, work)};
    // (I + Dg)^{-1} = sum (-Dg)^k, entrywise series
    std::array<std::array<SSeries, 3>, 3> dg, inv, pw;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            dg[i][j] = g[i].derivative(j);
            inv[i][j] = i == j ? SSeries::constant(3, Scalar(1)) : SSeries::zero(3);
            pw[i][j] = inv[i][j];
        }
    int gord = ORD_INF;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!dg[i][j].is_zero()) gord = std::min(gord, dg[i][j].ord_total());
    if (gord < 1) throw std::logic_error("pullback_poly_map: generator is not tangent to id");
    for (int k = 1; k * gord <= work; ++k) {
        std::array<std::array<SSeries, 3>, 3> nxt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                SSeries s(3);
                for (int t = 0; t < 3; ++t) s = s + pw[i][t] * dg[t][j];
                nxt[i][j] = (-s).jet(work);
            }
        pw = std::move(nxt);
        bool allzero = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                inv[i][j] = inv[i][j] + pw[i][j];
                allzero = allzero && pw[i][j].is_zero();
            }
        if (allzero) break;
    }
    VectorField3 out = VectorField3::zero();
    std::array<SSeries*, 3> dst{&out.x, &out.y, &out.z};
    for (int i = 0; i < 3; ++i) {
        SSeries s(3);
        for (int j = 0; j < 3; ++j) s = s + inv[i][j] * comp[j];
        *dst[i] = s.jet(work);
    }
    return out;
}

} // namespace

std::optional<SSeries> uv_collapse(const SSeries& ambient) {
    SSeries rest = ambient;
    SSeries out(2);
    while (!rest.is_zero()) {
        auto [m, c] = *rest.terms().begin(); // lex-min: smallest x power first
        if (m.e[0] != 0 || (m.e[1] % 2) != 0) return std::nullopt;
        int k = m.e[1] / 2, mm = m.e[2];
        Mono uv;
        uv.e[VU] = k;
        uv.e[VV] = mm;
        out.add_coeff(uv, c);
        // subtract c * (x^2+y^2)^k z^m
        SSeries u = SSeries::var(3, VX) * SSeries::var(3, VX) +
                    SSeries::var(3, VY) * SSeries::var(3, VY);
        SSeries t = SSeries::constant(3, c);
        for (int i = 0; i < k; ++i) t = t * u;
        for (int i = 0; i < mm; ++i) t = t * SSeries::var(3, VZ);
        rest = rest - t;
    }
    return out;
}

SSeries uv_expand(const SSeries& uv) {
    SSeries out(3);
    SSeries u = SSeries::var(3, VX) * SSeries::var(3, VX) +
                SSeries::var(3, VY) * SSeries::var(3, VY);
    for (const auto& [m, c] : uv.terms()) {
        SSeries t = SSeries::constant(3, c);
        for (int i = 0; i < m.e[VU]; ++i) t = t * u;
        for (int i = 0; i < m.e[VV]; ++i) t = t * SSeries::var(3, VZ);
        out = out + t;
    }
    return out;
}

VectorField3 rotational_field(const SSeries& T, const SSeries& R, const SSeries& Z,
                              int ambient_jet) {
    auto wtrunc = [ambient_jet](const SSeries& s, int budget) {
        if (ambient_jet < 0) return s;
        SSeries r(2);
        for (const auto& [m, c] : s.terms())
            if (2 * m.e[VU] + m.e[VV] <= budget) r.set_coeff(m, c);
        return r;
    };
    SSeries Ta = uv_expand(wtrunc(T, ambient_jet - 1));
    SSeries Ra = uv_expand(wtrunc(R, ambient_jet - 1));
    SSeries Za = uv_expand(wtrunc(Z, ambient_jet));
    VectorField3 f = VectorField3::zero();
    SSeries x = SSeries::var(3, VX), y = SSeries::var(3, VY);
    f.x = -(y * Ta) + x * Ra;
    f.y = x * Ta + y * Ra;
    f.z = Za;
    return f;
}

RotationalNormalForm takens_normal_form(const VectorField3& xi, const Scalar& c, int ell) {
    RotationalNormalForm nf;
    nf.ell = ell;
    nf.phi = VectorField3::zero(); // components of phi stored as series below
    nf.phi.x = SSeries::var(3, VX);
    nf.phi.y = SSeries::var(3, VY);
    nf.phi.z = SSeries::var(3, VZ);

    // Fast path: already rotationally symmetric.
    {
        SSeries x = SSeries::var(3, VX), y = SSeries::var(3, VY);
        SSeries tamb = x * xi.y - y * xi.x; // = u * T(u,v)
        SSeries ramb = x * xi.x + y * xi.y; // = u * R(u,v)
        auto tc = uv_collapse(tamb), rc = uv_collapse(ramb), zc = uv_collapse(xi.z);
        if (tc && rc && zc && tc->ord_var(VU) >= 1 && (rc->is_zero() || rc->ord_var(VU) >= 1)) {
            nf.T = tc->shift_var(VU, -1);
            nf.R = rc->is_zero() ? SSeries::zero(2) : rc->shift_var(VU, -1);
            nf.Z = *zc;
            nf.identity_phi = true;
            nf.exact = true;
            return nf;
        }
    }

    VectorField3 cur = xi.jet(ell);
    for (int d = 2; d <= ell; ++d) {
        VectorField3 part = degree_part(cur, d);
        CMap fw, fz;
        {
            CMap px = complexify(part.x), py = complexify(part.y);
            for (const auto& [m, v] : px) cadd(fw, m, v);
            for (const auto& [m, v] : py) cadd(fw, m, v * CS{Scalar(), Scalar(1)});
            fz = complexify(part.z);
        }
        // generator in complex basis killing the non-resonant part
        CMap gw, gz;
        for (const auto& [m, v] : fw) {
            int p = m.e[0], q = m.e[1], r = m.e[2];
            // ad_L eigenvalue on monomial * d/dw: i(p-q-1) + c r
            Scalar imag{Rat(p - q - 1)};
            Scalar real = c * Scalar(Rat(r));
            if (imag.is_zero() && real.is_zero()) continue; // resonant
            cadd(gw, m, v / CS{real, imag});
        }
        for (const auto& [m, v] : fz) {
            int p = m.e[0], q = m.e[1], r = m.e[2];
            // ad_L eigenvalue on monomial * d/dz: i(p-q) + c (r-1)
            Scalar imag{Rat(p - q)};
            Scalar real = c * Scalar(Rat(r - 1));
            if (imag.is_zero() && real.is_zero()) continue;
            cadd(gz, m, v / CS{real, imag});
        }
        if (gw.empty() && gz.empty()) continue;
        // realify: g_x + i g_y from gw; g_wbar is the conjugate-swap (real map)
        std::array<SSeries, 3> g;
        {
            SSeries gre = realify(gw);
            CMap gwi;
            for (const auto& [m, v] : gw) cadd(gwi, m, v * CS{Scalar(), Scalar(-1)});
            SSeries gim = realify(gwi); // Im part via multiplying by -i and taking Re
            g[0] = gre;
            g[1] = gim;
            g[2] = realify(gz);
        }
        cur = pullback_poly_map(cur, g, ell);
        // accumulate phi := phi o (id + g), truncated at ell+1
        std::vector<SSeries> args;
        for (int i = 0; i < 3; ++i) args.push_back(SSeries::var(3, i) + g[i]);
        nf.phi.x = nf.phi.x.compose(args, ell + 1);
        nf.phi.y = nf.phi.y.compose(args, ell + 1);
        nf.phi.z = nf.phi.z.compose(args, ell + 1);
        nf.identity_phi = false;
    }

    // read off T, R, Z; every surviving monomial must be resonant
    SSeries x = SSeries::var(3, VX), y = SSeries::var(3, VY);
    SSeries tamb = (x * cur.y - y * cur.x).jet(ell + 1);
    SSeries ramb = (x * cur.x + y * cur.y).jet(ell + 1);
    auto tc = uv_collapse(tamb), rc = uv_collapse(ramb), zc = uv_collapse(cur.z);
    if (!tc || !rc || !zc)
        throw std::logic_error("takens_normal_form: non-resonant residue after solve");
    nf.T = tc->shift_var(VU, -1);
    nf.R = rc->is_zero() ? SSeries::zero(2) : rc->shift_var(VU, -1);
    nf.Z = *zc;
    // trustworthy only through weighted order ell
    auto cap = [ell](SSeries& s, int budget) {
        SSeries r(2);
        for (const auto& [m, cc] : s.terms())
            if (2 * m.e[VU] + m.e[VV] <= budget) r.set_coeff(m, cc);
        s = std::move(r);
    };
    cap(nf.T, ell - 1);
    cap(nf.R, ell - 1);
    cap(nf.Z, ell);
    nf.exact = false;
    return nf;
}

VectorField3 truncated_normal_form(const RotationalNormalForm& nf, int ell) {
    if (nf.exact && rotational_field(nf.T, nf.R, nf.Z).deg() <= ell)
        return rotational_field(nf.T, nf.R, nf.Z);
    if (!nf.exact && ell > nf.ell)
        throw std::domain_error("truncated_normal_form: order exceeds computed normal form");
    return rotational_field(nf.T, nf.R, nf.Z, ell);
}

IsolatedCheck isolated_singularity_check(const RotationalNormalForm& nf, int K) {
    // Z(0,v): coefficients of pure v powers
    int limit = nf.exact ? std::max(K, nf.Z.deg_var(VV)) : std::min(K, nf.ell);
    for (int j = 0; j <= limit; ++j) {
        Mono m;
        m.e[VV] = j;
        Scalar cj = nf.Z.coeff(m);
        if (!cj.is_zero()) return {IsolatedCheck::Isolated, j, cj};
    }
    if (nf.exact) return {IsolatedCheck::AxisOfSingularities, -1, Scalar()};
    return {IsolatedCheck::Undetermined, limit, Scalar()};
}

} // namespace hopf3
