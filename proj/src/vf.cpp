#include "hopf3/vf.hpp"

namespace hopf3 {

std::array<std::array<Scalar, 3>, 3> jacobian_origin(const VectorField3& xi) {
    std::array<const SSeries*, 3> comp{&xi.x, &xi.y, &xi.z};
    std::array<std::array<Scalar, 3>, 3> d;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mono m;
            m.e[j] = 1;
            d[i][j] = comp[i]->coeff(m);
        }
    return d;
}

namespace {

// Complex numbers over the scalar tower, for the eigenvector solve.
struct CS {
    Scalar re, im;
    CS() = default;
    CS(Scalar r) : re(std::move(r)) {}
    CS(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    friend CS operator+(const CS& a, const CS& b) { return {a.re + b.re, a.im + b.im}; }
    friend CS operator-(const CS& a, const CS& b) { return {a.re - b.re, a.im - b.im}; }
    friend CS operator*(const CS& a, const CS& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CS inv() const {
        Scalar n = re * re + im * im;
        return {re / n, -(im / n)};
    }
    friend CS operator/(const CS& a, const CS& b) { return a * b.inv(); }
};

Scalar sqrt_scalar(const Rat& q) {
    if (q == 0) return Scalar();
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rat r(rn, rd);
        r.canonicalize();
        return Scalar(r);
    }
    QPoly p{{-q, Rat(0), Rat(1)}}; // x^2 - q
    auto roots = isolate_real_roots(p);
    if (roots.empty()) throw std::logic_error("sqrt_scalar: no real root");
    return Scalar(algebraic_from_root(roots.back())); // roots sorted; largest is +sqrt(q)
}

} // namespace

HopfData detect_hopf(const VectorField3& xi) {
    if (!xi.singular_at_origin()) throw NotHopf("vector field does not vanish at the origin");
    auto d = jacobian_origin(xi);
    // characteristic polynomial l^3 + p2 l^2 + p1 l + p0
    Scalar tr = d[0][0] + d[1][1] + d[2][2];
    Scalar m01 = d[0][0] * d[1][1] - d[0][1] * d[1][0];
    Scalar m02 = d[0][0] * d[2][2] - d[0][2] * d[2][0];
    Scalar m12 = d[1][1] * d[2][2] - d[1][2] * d[2][1];
    Scalar det = d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) -
                 d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0]) +
                 d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
    Scalar p2 = -tr, p1 = m01 + m02 + m12, p0 = -det;
    // spectrum {±bi, c}  <=>  char = (l - c)(l^2 + b^2), b^2 = p1 > 0, c = -p2
    if (!(p0 == p1 * p2))
        throw NotHopf("spectrum is not of the form {±bi, c}");
    if (p1.sign() <= 0)
        throw NotHopf("no purely imaginary pair (b^2 <= 0)");
    if (!p1.is_rational())
        throw NotHopf("unsupported: irrational b^2");
    Scalar c = -p2;
    Scalar b = sqrt_scalar(p1.rational_value());

    HopfData h;
    h.b = b;
    h.c = c;
    h.eigen_case = c.is_zero() ? EigenCase::ZeroHopf : EigenCase::SemiHyperbolic;

    // already in target shape? (linear part -b y, b x, c z)
    bool target = d[0][0].is_zero() && d[0][2].is_zero() && d[1][2].is_zero() &&
                  d[1][1].is_zero() && d[2][0].is_zero() && d[2][1].is_zero() &&
                  d[0][1] == -b && d[1][0] == b && d[2][2] == c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            h.change[i][j] = Scalar(Rat(i == j ? 1 : 0));
            h.change_inv[i][j] = Scalar(Rat(i == j ? 1 : 0));
        }
    if (target) {
        h.identity_change = true;
        return h;
    }
    h.identity_change = false;

    // eigenvector for c: kernel of (D - cI)
    std::array<Scalar, 3> w;
    {
        std::array<std::array<Scalar, 3>, 3> a = d;
        for (int i = 0; i < 3; ++i) a[i][i] = a[i][i] - c;
        // Gaussian elimination; kernel is one-dimensional
        std::array<int, 3> rowperm{0, 1, 2};
        int rank = 0;
        std::array<int, 3> pivcol{-1, -1, -1};
        for (int col = 0; col < 3 && rank < 3; ++col) {
            int piv = -1;
            for (int r = rank; r < 3; ++r)
                if (!a[rowperm[r]][col].is_zero()) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(rowperm[rank], rowperm[piv]);
            for (int r = rank + 1; r < 3; ++r) {
                Scalar f = a[rowperm[r]][col] / a[rowperm[rank]][col];
                for (int cc = col; cc < 3; ++cc)
                    a[rowperm[r]][cc] = a[rowperm[r]][cc] - f * a[rowperm[rank]][cc];
            }
            pivcol[rank] = col;
            ++rank;
        }
        if (rank != 2) throw NotHopf("eigenvalue c is not geometrically simple");
        int freecol = 3 - pivcol[0] - pivcol[1];
        w = {Scalar(), Scalar(), Scalar()};
        w[freecol] = Scalar(1);
        for (int r = 1; r >= 0; --r) {
            Scalar s;
            for (int cc = pivcol[r] + 1; cc < 3; ++cc)
                s = s + a[rowperm[r]][cc] * w[cc];
            w[pivcol[r]] = -(s / a[rowperm[r]][pivcol[r]]);
        }
    }

    // complex eigenvector for ib: kernel of (D - ibI)
    std::array<CS, 3> v;
    {
        std::array<std::array<CS, 3>, 3> a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a[i][j] = CS(d[i][j], i == j ? -b : Scalar());
        std::array<int, 3> rowperm{0, 1, 2};
        int rank = 0;
        std::array<int, 3> pivcol{-1, -1, -1};
        for (int col = 0; col < 3 && rank < 3; ++col) {
            int piv = -1;
            for (int r = rank; r < 3; ++r)
                if (!a[rowperm[r]][col].is_zero()) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(rowperm[rank], rowperm[piv]);
            for (int r = rank + 1; r < 3; ++r) {
                CS f = a[rowperm[r]][col] / a[rowperm[rank]][col];
                for (int cc = col; cc < 3; ++cc)
                    a[rowperm[r]][cc] = a[rowperm[r]][cc] - f * a[rowperm[rank]][cc];
            }
            pivcol[rank] = col;
            ++rank;
        }
        if (rank != 2) throw NotHopf("imaginary pair is not simple");
        int freecol = 3 - pivcol[0] - pivcol[1];
        v = {CS{}, CS{}, CS{}};
        v[freecol] = CS(Scalar(1));
        for (int r = 1; r >= 0; --r) {
            CS s;
            for (int cc = pivcol[r] + 1; cc < 3; ++cc)
                s = s + a[rowperm[r]][cc] * v[cc];
            v[pivcol[r]] = CS{} - s / a[rowperm[r]][pivcol[r]];
        }
    }

    // columns s1 = Im w, s2 = Re w satisfy A s1 = b s2 and A s2 = -b s1
    for (int i = 0; i < 3; ++i) {
        h.change[i][0] = v[i].im;
        h.change[i][1] = v[i].re;
        h.change[i][2] = w[i];
    }
    // invert the 3x3 change (adjugate / determinant)
    {
        auto& s = h.change;
        auto det3 = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                    s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                    s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
        if (det3.is_zero()) throw NotHopf("degenerate eigenbasis");
        auto cof = [&](int i, int j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            return s[r0][c0] * s[r1][c1] - s[r0][c1] * s[r1][c0];
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h.change_inv[i][j] = cof(j, i) / det3;
    }
    return h;
}

VectorField3 normalize_linear(const VectorField3& xi, const HopfData& h) {
    VectorField3 out;
    if (h.identity_change) {
        out = xi;
    } else {
        std::vector<SSeries> args;
        for (int i = 0; i < 3; ++i) {
            SSeries a = SSeries::zero(3);
            for (int j = 0; j < 3; ++j) {
                if (h.change[i][j].is_zero()) continue;
                a = a + SSeries::var(3, j, h.change[i][j]);
            }
            args.push_back(std::move(a));
        }
        int dg = xi.deg();
        std::array<SSeries, 3> comp{xi.x.compose(args, dg), xi.y.compose(args, dg),
                                    xi.z.compose(args, dg)};
        std::array<SSeries*, 3> dst{&out.x, &out.y, &out.z};
        for (int i = 0; i < 3; ++i) {
            SSeries s = SSeries::zero(3);
            for (int j = 0; j < 3; ++j) {
                if (h.change_inv[i][j].is_zero()) continue;
                s = s + h.change_inv[i][j] * comp[j];
            }
            *dst[i] = std::move(s);
        }
    }
    if (!(h.b == Scalar(1))) {
        Scalar binv = Scalar(1) / h.b;
        out.x = binv * out.x;
        out.y = binv * out.y;
        out.z = binv * out.z;
    }
    return out;
}

} // namespace hopf3
