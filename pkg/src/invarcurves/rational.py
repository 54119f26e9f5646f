"""Rational maps on the Riemann sphere with floating complex coefficients.

Polynomials are stored as ascending coefficient arrays; rational maps keep a
coprime numerator/denominator pair with monic denominator.  Exactness is
replaced throughout by explicit tolerances: equality of maps is tested by
evaluation on the unit circle, common factors are removed by an approximate
Euclidean algorithm, and roots carry a residual bound.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as npoly

TAU_GCD = 1e-10      # relative tolerance for approximate common factors
TAU_ROOT = 1e-10     # scaled residual bound for polynomial roots
TAU_CLASS = 1e-9     # classification band around |multiplier| = 1
TAU_IDENTITY = 1e-9  # unit-circle sampling tolerance for map identity
DEGREE_CAP = 4096    # default cap on composition/iteration degree growth

SUPERATTRACTING = "superattracting"
ATTRACTING = "attracting"
REPELLING = "repelling"
NEUTRAL_RATIONAL = "neutral-rational"
NEUTRAL_IRRATIONAL = "neutral-irrational-candidate"

_HUGE = 1e150        # moduli beyond this are treated as the point at infinity


class DegreeCapExceeded(ValueError):
    """Composition or iteration would exceed the configured degree cap."""


class RootConvergenceError(RuntimeError):
    """Simultaneous root iteration failed to reach the residual target."""

    def __init__(self, message, best_roots=None, residuals=None):
        super().__init__(message)
        self.best_roots = best_roots
        self.residuals = residuals


# ---------------------------------------------------------------------------
# Points on the sphere
# ---------------------------------------------------------------------------

class SpherePoint:
    """A point of the Riemann sphere: a finite complex value or infinity."""

    __slots__ = ("value", "is_infinite")

    def __init__(self, value=0j, is_infinite=False):
        if is_infinite:
            self.value = None
            self.is_infinite = True
        else:
            v = complex(value)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)) or abs(v) > _HUGE:
                self.value = None
                self.is_infinite = True
            else:
                self.value = v
                self.is_infinite = False

    @classmethod
    def infinity(cls):
        return cls(is_infinite=True)

    @classmethod
    def of(cls, z):
        """Coerce a complex number or SpherePoint to a SpherePoint."""
        return z if isinstance(z, SpherePoint) else cls(z)

    def embed(self):
        """Coordinates on the unit sphere in R^3 (chordal = euclidean there)."""
        if self.is_infinite:
            return np.array([0.0, 0.0, 1.0])
        n = abs(self.value) ** 2
        return np.array([2 * self.value.real, 2 * self.value.imag, n - 1.0]) / (n + 1.0)

    def __repr__(self):
        return "SpherePoint(inf)" if self.is_infinite else f"SpherePoint({self.value!r})"

    def __eq__(self, other):
        other = SpherePoint.of(other)
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.value == other.value

    def __hash__(self):
        return hash((self.is_infinite, self.value))


INFINITY = SpherePoint.infinity()


def chordal(a, b):
    """Chordal distance on the Riemann sphere (symmetric, <= 2)."""
    pa = SpherePoint.of(a).embed()
    pb = SpherePoint.of(b).embed()
    return float(np.linalg.norm(pa - pb))


def embed_points(values, infinite=None):
    """Vectorized sphere embedding: complex array -> (n, 3) array.

    Non-finite or overly large entries map to the north pole; an optional
    boolean mask forces entries to infinity.
    """
    z = np.asarray(values, dtype=complex)
    bad = ~np.isfinite(z.real) | ~np.isfinite(z.imag)
    if infinite is not None:
        bad = bad | np.asarray(infinite, dtype=bool)
    zs = np.where(bad, 0.0, z)
    big = np.abs(zs) > _HUGE
    zs = np.where(big, 0.0, zs)
    bad = bad | big
    n = np.abs(zs) ** 2
    out = np.empty(z.shape + (3,))
    out[..., 0] = 2 * zs.real / (n + 1)
    out[..., 1] = 2 * zs.imag / (n + 1)
    out[..., 2] = (n - 1) / (n + 1)
    out[bad] = (0.0, 0.0, 1.0)
    return out


def chordal_array(values_a, values_b):
    """Chordal distances between two complex arrays (inf-aware)."""
    return np.linalg.norm(embed_points(values_a) - embed_points(values_b), axis=-1)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _strip_exact_zeros(c):
    n = len(c)
    while n > 1 and c[n - 1] == 0:
        n -= 1
    return c[:n]


class Polynomial:
    """Complex polynomial with ascending coefficients; zero poly is [0]."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        c = np.atleast_1d(np.asarray(coefficients, dtype=complex)).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        self.coefficients = _strip_exact_zeros(c).copy()

    @classmethod
    def monomial(cls, k, coefficient=1.0):
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coefficient
        return cls(c)

    @classmethod
    def from_roots(cls, roots):
        """Monic polynomial with the given root multiset."""
        return cls(npoly.polyfromroots(np.asarray(roots, dtype=complex)))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def is_zero(self):
        return self.degree == 0 and self.coefficients[0] == 0

    @property
    def scale(self):
        """Largest coefficient magnitude."""
        return float(np.max(np.abs(self.coefficients)))

    def __call__(self, z):
        return npoly.polyval(z, self.coefficients)

    def __add__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial(other)
        n = max(len(self.coefficients), len(other.coefficients))
        c = np.zeros(n, dtype=complex)
        c[: len(self.coefficients)] += self.coefficients
        c[: len(other.coefficients)] += other.coefficients
        return Polynomial(c)

    def __neg__(self):
        return Polynomial(-self.coefficients)

    def __sub__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial([0])
            return Polynomial(np.convolve(self.coefficients, other.coefficients))
        return Polynomial(self.coefficients * complex(other))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self):
        if self.degree == 0:
            return Polynomial([0])
        return Polynomial(npoly.polyder(self.coefficients))

    def monic(self):
        lead = self.coefficients[-1]
        if lead == 0:
            raise ValueError("cannot normalize the zero polynomial")
        return Polynomial(self.coefficients / lead)

    def reversed(self):
        """w^deg * p(1/w), on the stored coefficient window."""
        return Polynomial(self.coefficients[::-1])

    def scale_argument(self, c):
        """The polynomial z -> p(c*z)."""
        powers = np.asarray(c, dtype=complex) ** np.arange(len(self.coefficients))
        return Polynomial(self.coefficients * powers)

    def trimmed(self, rtol):
        """Drop trailing coefficients below rtol * scale (junk from arithmetic)."""
        if self.is_zero:
            return self
        tol = rtol * self.scale
        c = self.coefficients
        n = len(c)
        while n > 1 and abs(c[n - 1]) <= tol:
            n -= 1
        return Polynomial(c[:n])

    def allclose(self, other, rtol=1e-10):
        other = other if isinstance(other, Polynomial) else Polynomial(other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: len(self.coefficients)] = self.coefficients
        b[: len(other.coefficients)] = other.coefficients
        s = max(self.scale, other.scale, 1e-300)
        return bool(np.max(np.abs(a - b)) <= rtol * s)

    def __repr__(self):
        return f"Polynomial({np.array2string(self.coefficients, separator=', ')})"


def poly_divmod(a, b):
    """Quotient and remainder of a by b (ascending coefficients)."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q, r = npoly.polydiv(a.coefficients, b.coefficients)
    return Polynomial(q), Polynomial(r)


def approx_gcd(p, q, rtol=TAU_GCD):
    """Approximate monic GCD by the Euclidean algorithm with a relative
    zero test on remainders; returns 1 when no convincing factor exists."""
    if p.is_zero:
        return q.monic() if not q.is_zero else Polynomial([1])
    if q.is_zero:
        return p.monic()
    a, b = (p, q) if p.degree >= q.degree else (q, p)
    a = a.monic()
    b = b.monic()
    while b.degree >= 1:
        _, r = poly_divmod(a, b)
        if r.is_zero or r.scale <= rtol * max(1.0, b.scale):
            candidate = b
            # candidate must divide both inputs within tolerance
            ok = True
            for f in (p, q):
                _, rem = poly_divmod(f, candidate)
                if rem.scale > rtol * max(1.0, f.scale) * 10:
                    ok = False
                    break
            return candidate if ok else Polynomial([1])
        a, b = b, r.monic()
    return Polynomial([1])


# ---------------------------------------------------------------------------
# Root finding (simultaneous Aberth-Ehrlich iteration)
# ---------------------------------------------------------------------------

def poly_roots(p, tol=TAU_ROOT, max_iter=400):
    """All roots of p with multiplicity, by Aberth-Ehrlich iteration.

    Convergence requires the backward-stable residual
    |p(z)| <= tol * scale * max(1, |z|)^deg for every root.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree < 1:
        raise ValueError("need degree >= 1 to extract roots")
    coeffs = p.coefficients.copy()
    # deflate exact roots at the origin
    n_zero = 0
    while n_zero < len(coeffs) - 1 and coeffs[n_zero] == 0:
        n_zero += 1
    coeffs = coeffs[n_zero:]
    n = len(coeffs) - 1
    zero_roots = np.zeros(n_zero, dtype=complex)
    if n == 0:
        return zero_roots
    coeffs = coeffs / np.max(np.abs(coeffs))
    deriv = npoly.polyder(coeffs)
    radius = min(1.0 + float(np.max(np.abs(coeffs[:-1]) / abs(coeffs[-1]))), 4.0)

    best = None
    for attempt in range(3):
        angles = 2 * np.pi * (np.arange(n) / n + 0.376 + 0.21 * attempt)
        z = 0.7 * radius * (1.0 + 0.12 * attempt) * np.exp(1j * angles)
        for _ in range(max_iter):
            pv = npoly.polyval(z, coeffs)
            lim = tol * np.maximum(1.0, np.abs(z)) ** n
            if np.all(np.abs(pv) <= lim):
                return np.concatenate([zero_roots, z])
            pd = npoly.polyval(z, deriv)
            small = np.abs(pd) < 1e-280
            w = pv / np.where(small, 1.0, pd)
            w = np.where(small, 0.05 * (1 + np.abs(z)), w)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - w * s
            denom = np.where(np.abs(denom) < 1e-280, 1.0, denom)
            z = z - w / denom
        resid = np.abs(npoly.polyval(z, coeffs)) / np.maximum(1.0, np.abs(z)) ** n
        if best is None or resid.max() < best[1].max():
            best = (z, resid)
    raise RootConvergenceError(
        f"root iteration stalled (worst scaled residual {best[1].max():.3e})",
        best_roots=np.concatenate([zero_roots, best[0]]),
        residuals=best[1],
    )


# ---------------------------------------------------------------------------
# Rational maps
# ---------------------------------------------------------------------------

class RationalMap:
    """Quotient of coprime polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = Polynomial([1]) if den is None else (
            den if isinstance(den, Polynomial) else Polynomial(den))
        if den.is_zero:
            raise ValueError("denominator is identically zero")
        if reduce and num.degree + den.degree > 0 and not num.is_zero:
            g = approx_gcd(num, den)
            if g.degree >= 1:
                num, _ = poly_divmod(num, g)
                den, _ = poly_divmod(den, g)
        lead = den.coefficients[-1]
        self.num = Polynomial(num.coefficients / lead)
        self.den = Polynomial(den.coefficients / lead)

    @classmethod
    def identity(cls):
        return cls([0, 1])

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def __repr__(self):
        return f"RationalMap(num={self.num!r}, den={self.den!r})"

    # -- evaluation ---------------------------------------------------------

    def __call__(self, z):
        """Evaluate on the sphere; total (poles and infinity included)."""
        pt = SpherePoint.of(z)
        if pt.is_infinite:
            return self._eval_outer_chart(0j, at_infinity=True)
        v = pt.value
        if abs(v) <= 1.0:
            pz = self.num(v)
            qz = self.den(v)
            if qz == 0:
                return INFINITY
            return SpherePoint(pz / qz)
        return self._eval_outer_chart(1.0 / v, at_infinity=False)

    def _eval_outer_chart(self, w, at_infinity):
        """Evaluate p/q at z = 1/w via reversed coefficients (|w| <= 1)."""
        dp, dq = self.num.degree, self.den.degree
        pr = npoly.polyval(w, self.num.coefficients[::-1])
        qr = npoly.polyval(w, self.den.coefficients[::-1])
        k = dp - dq
        if qr == 0:
            return INFINITY
        ratio = pr / qr
        if at_infinity:
            if k > 0:
                return INFINITY if ratio != 0 else SpherePoint(0j)
            if k < 0:
                return SpherePoint(0j)
            return SpherePoint(ratio)
        # finite z with |z| > 1: value = ratio * z^k, guarded against overflow
        if ratio == 0:
            return SpherePoint(0j)
        log_mag = math.log(abs(ratio)) - k * math.log(abs(w))
        if log_mag > 320:
            return INFINITY
        if log_mag < -320:
            return SpherePoint(0j)
        return SpherePoint(ratio * (1.0 / w) ** k)

    def eval_array(self, z):
        """Vectorized evaluation on finite complex input; poles become inf."""
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape, dtype=complex)
        inner = np.abs(z) <= 1.0
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            zi = z[inner]
            p = npoly.polyval(zi, self.num.coefficients)
            q = npoly.polyval(zi, self.den.coefficients)
            vi = p / q
            vi[q == 0] = complex(np.inf, 0.0)
            out[inner] = vi
            zo = z[~inner]
            w = 1.0 / zo
            pr = npoly.polyval(w, self.num.coefficients[::-1])
            qr = npoly.polyval(w, self.den.coefficients[::-1])
            k = self.num.degree - self.den.degree
            vo = (pr / qr) * zo ** k
            vo[qr == 0] = complex(np.inf, 0.0)
            out[~inner] = vo
        return out

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, RationalMap):
            return RationalMap(self.num * other.num, self.den * other.den)
        return RationalMap(self.num * other, self.den, reduce=False)

    __rmul__ = __mul__

    def __pow__(self, n):
        """Pointwise power f(z)^n (not iteration)."""
        if n < 0:
            raise ValueError("negative map power")
        out = RationalMap([1])
        for _ in range(n):
            out = out * self
        return out

    def derivative(self):
        w = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RationalMap(w, self.den * self.den, reduce=False)

    def derivative_at(self, z):
        """f'(z) at finite z, by the quotient rule (no map construction)."""
        z = complex(z)
        p, q = self.num, self.den
        qz = q(z)
        return (p.derivative()(z) * qz - p(z) * q.derivative()(z)) / (qz * qz)

    def conjugate_by_inversion(self):
        """The map w -> 1/f(1/w) (conjugation moving infinity to 0)."""
        dp, dq = self.num.degree, self.den.degree
        rnum = self.den.coefficients[::-1]
        rden = self.num.coefficients[::-1]
        if dp >= dq:
            rnum = np.concatenate([np.zeros(dp - dq, dtype=complex), rnum])
        else:
            rden = np.concatenate([np.zeros(dq - dp, dtype=complex), rden])
        return RationalMap(rnum, rden, reduce=False)

    def precompose_scale(self, c):
        """The map z -> f(c*z)."""
        return RationalMap(self.num.scale_argument(c),
                           self.den.scale_argument(c), reduce=False)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self):
        return {
            "num": [[z.real, z.imag] for z in self.num.coefficients],
            "den": [[z.real, z.imag] for z in self.den.coefficients],
        }

    @classmethod
    def from_json_dict(cls, d):
        num = [complex(re, im) for re, im in d["num"]]
        den = [complex(re, im) for re, im in d["den"]]
        return cls(num, den)


# ---------------------------------------------------------------------------
# Module operations
# ---------------------------------------------------------------------------

def compose(f, g, degree_cap=DEGREE_CAP):
    """The composition f(g(z)) as a rational map."""
    if f.degree * g.degree > degree_cap:
        raise DegreeCapExceeded(
            f"composition degree {f.degree * g.degree} exceeds cap {degree_cap}")
    a, b = g.num, g.den
    d = f.degree
    pc = np.zeros(d + 1, dtype=complex)
    qc = np.zeros(d + 1, dtype=complex)
    pc[: f.num.degree + 1] = f.num.coefficients
    qc[: f.den.degree + 1] = f.den.coefficients
    # sum_k c_k a^k b^(d-k), accumulated Horner-style in a
    num_acc = Polynomial([pc[d]])
    den_acc = Polynomial([qc[d]])
    for k in range(d - 1, -1, -1):
        bpow = b ** (d - k)
        num_acc = num_acc * a + pc[k] * bpow
        den_acc = den_acc * a + qc[k] * bpow
    # composition of coprime maps is coprime; skip the gcd pass
    return RationalMap(num_acc, den_acc, reduce=False)


def iterate(f, n, degree_cap=DEGREE_CAP):
    """The n-fold composition f o f o ... o f, n >= 1."""
    if n < 1:
        raise ValueError("iteration count must be >= 1")
    if f.degree ** n > degree_cap:
        raise DegreeCapExceeded(f"degree {f.degree}^{n} exceeds cap {degree_cap}")
    out = f
    for _ in range(n - 1):
        out = compose(out, f, degree_cap=degree_cap)
    return out


def _circle_values(f, zs):
    """Values of f on unit-circle points, by extended-precision Horner.

    Composed maps carry large cancelling coefficients; plain double Horner
    near a denominator root would swamp the identity tolerance with rounding
    of the *representation*, not of the map.
    """
    z = np.asarray(zs, dtype=np.clongdouble)
    p = np.zeros_like(z)
    for c in f.num.coefficients[::-1]:
        p = p * z + np.clongdouble(c)
    q = np.zeros_like(z)
    for c in f.den.coefficients[::-1]:
        q = q * z + np.clongdouble(c)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.asarray(p / q, dtype=complex)
    v[np.asarray(q == 0)] = complex(np.inf, 0.0)
    return v


def _circle_points(m):
    return np.exp(2j * np.pi * (np.arange(m) / m + 0.2371))


def identity_residual(f, g, n_points=None):
    """Max chordal deviation between two maps on a unit-circle sample."""
    m = n_points or (2 * max(f.degree, g.degree) + 5)
    zs = _circle_points(m)
    return float(np.max(chordal_array(_circle_values(f, zs),
                                      _circle_values(g, zs))))


def maps_equal(f, g, tol=TAU_IDENTITY):
    """Identity test by evaluation at 2*max(deg)+5 unit-circle points."""
    return identity_residual(f, g) <= tol


def chain_identity_residual(left_chain, right_chain, n_points=None, dps=40):
    """Identity residual of two composition chains of rational maps.

    Both chains (outermost map first) are evaluated on the unit-circle
    sample by composing the value pairs (numerator, denominator) in
    arbitrary precision, and compared in the projective form of the chordal
    metric.  Comparing two independently rounded double compositions instead
    would bottom out near weak poles far above the certification tolerance.
    """
    from mpmath import mp, mpc

    chains = (left_chain, right_chain)
    deg = max(int(np.prod([f.degree for f in chain]) or 1) for chain in chains)
    m = n_points or (2 * deg + 5)

    with mp.workdps(dps):
        def value_pair(chain, z):
            # innermost first: homogeneous value (p, q) of the chain at z,
            # f applied to p/q via Horner on [sum c_k p^k q^(d-k)]
            p, q = z, mpc(1)
            for f in reversed(chain):
                d = f.degree
                num_c = list(f.num.coefficients) + [0] * (d - f.num.degree)
                den_c = list(f.den.coefficients) + [0] * (d - f.den.degree)
                qpow = [mpc(1)]
                for _ in range(d):
                    qpow.append(qpow[-1] * q)
                pn = mpc(num_c[d])
                qn = mpc(den_c[d])
                for k in range(d - 1, -1, -1):
                    pn = pn * p + mpc(num_c[k]) * qpow[d - k]
                    qn = qn * p + mpc(den_c[k]) * qpow[d - k]
                p, q = pn, qn
            return p, q

        worst = 0.0
        for k in range(m):
            z = mp.expjpi(2 * (mp.mpf(k) / m + mp.mpf("0.2371")))
            p1, q1 = value_pair(left_chain, z)
            p2, q2 = value_pair(right_chain, z)
            n1 = mp.sqrt(abs(p1) ** 2 + abs(q1) ** 2)
            n2 = mp.sqrt(abs(p2) ** 2 + abs(q2) ** 2)
            if n1 == 0 or n2 == 0:
                raise ArithmeticError("chain evaluation degenerated to 0/0")
            d = 2 * abs(p1 * q2 - p2 * q1) / (n1 * n2)
            worst = max(worst, float(d))
        return worst


def coefficient_residual(f, g):
    """Max coefficientwise deviation of two canonical maps, relative to the
    joint coefficient scale."""
    def padded(p, n):
        c = np.zeros(n, dtype=complex)
        c[: len(p.coefficients)] = p.coefficients
        return c

    n_num = max(f.num.degree, g.num.degree) + 1
    n_den = max(f.den.degree, g.den.degree) + 1
    scale = max(f.num.scale, f.den.scale, g.num.scale, g.den.scale, 1e-300)
    d_num = np.max(np.abs(padded(f.num, n_num) - padded(g.num, n_num)))
    d_den = np.max(np.abs(padded(f.den, n_den) - padded(g.den, n_den)))
    return float(max(d_num, d_den) / scale)


class FixedPointInfo:
    """Location, multiplier and stability class of a fixed point."""

    __slots__ = ("location", "multiplier", "kind", "tol")

    def __init__(self, location, multiplier, kind, tol=TAU_CLASS):
        self.location = SpherePoint.of(location)
        self.multiplier = complex(multiplier)
        self.kind = kind
        self.tol = tol

    def __repr__(self):
        loc = "inf" if self.location.is_infinite else f"{self.location.value:.6g}"
        return f"FixedPointInfo({loc}, multiplier={self.multiplier:.6g}, {self.kind})"


def classify_multiplier(lam, tol=TAU_CLASS):
    m = abs(lam)
    if m < tol:
        return SUPERATTRACTING
    if m > 1.0 + tol:
        return REPELLING
    if m < 1.0 - tol:
        return ATTRACTING
    # neutral: root-of-unity probe distinguishes rational rotation numbers
    for q in range(1, 65):
        if abs(lam ** q - 1.0) <= 1e-8 * q:
            return NEUTRAL_RATIONAL
    return NEUTRAL_IRRATIONAL


def multiplier(f, a, tol_fixed=1e-6):
    """Multiplier of f at the fixed point a (chart w = 1/z at infinity)."""
    pt = SpherePoint.of(a)
    if chordal(f(pt), pt) > tol_fixed:
        raise ValueError("point is not fixed within tolerance")
    if pt.is_infinite:
        return RationalMap.conjugate_by_inversion(f).derivative_at(0j)
    return f.derivative_at(pt.value)


def fixed_points(f, tol=TAU_CLASS):
    """All degree+1 fixed points with multiplicity, classified.

    Finite fixed points are the roots of p(z) - z q(z); infinity is fixed
    exactly when deg p > deg q and carries the remaining multiplicity.
    """
    if f.degree == 0:
        raise ValueError("constant map")
    if maps_equal(f, RationalMap.identity()):
        raise ValueError("identity map fixes everything")
    p, q = f.num, f.den
    eqn = (p - Polynomial([0, 1]) * q).trimmed(1e-13)
    infos = []
    if eqn.degree >= 1:
        for root in poly_roots(eqn):
            lam = f.derivative_at(root)
            infos.append(FixedPointInfo(root, lam, classify_multiplier(lam, tol), tol))
    total = f.degree + 1
    if p.degree > q.degree:
        lam_inf = RationalMap.conjugate_by_inversion(f).derivative_at(0j)
        kind = classify_multiplier(lam_inf, tol)
        for _ in range(total - len(infos)):
            infos.append(FixedPointInfo(INFINITY, lam_inf, kind, tol))
    return infos


def critical_points(f):
    """The 2 deg - 2 critical points with multiplicity (including infinity)."""
    if f.degree < 2:
        raise ValueError("critical points need degree >= 2")
    w = (f.num.derivative() * f.den - f.num * f.den.derivative()).trimmed(1e-13)
    pts = []
    if w.degree >= 1:
        pts = [SpherePoint(r) for r in poly_roots(w)]
    elif w.is_zero:
        raise ValueError("degenerate map: identically critical")
    n_inf = 2 * f.degree - 2 - len(pts)
    pts.extend(INFINITY for _ in range(n_inf))
    return pts
