"""Band-limited function algebra on the unit two-sphere.

Fields live in the orthonormal complex harmonic basis (Condon-Shortley
phase). Synthesis, analysis, and the area-preserving bracket

    {f, g} = df/d(cos theta) dg/dphi - df/dphi dg/d(cos theta)

are exact for band-limited inputs on Gauss-Legendre x uniform-phi grids sized
by the rules in grid_for_band_limit. Nodes never sit on the poles, so the
1/sin(theta) factors that appear in coordinate derivatives stay finite.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np
from scipy.special import roots_legendre

__all__ = [
    "SphereGrid",
    "HarmonicField",
    "Su2Generators",
    "grid_for_band_limit",
    "make_grid",
    "eval_harmonic",
    "synthesize",
    "analyze",
    "bracket",
    "product",
    "integral_of_product",
    "structure_constants",
    "su2_generators",
    "random_real_field",
    "lm_index",
]


def _legendre_tables(l_max, x):
    """Normalized associated Legendre values and x-derivatives.

    Returns (P, dPdx), each shaped (l_max+1, l_max+1, len(x)), indexed
    [l, m, node] for 0 <= m <= l. Normalization is such that
    Y_lm = P[l, m] * exp(i m phi) is orthonormal on the sphere, with the
    Condon-Shortley sign folded in.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    P = np.zeros((l_max + 1, l_max + 1, n))
    sin_theta = np.sqrt(1.0 - x * x)
    P[0, 0] = 1.0 / math.sqrt(4.0 * math.pi)
    for m in range(1, l_max + 1):
        P[m, m] = -math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_theta * P[m - 1, m - 1]
    for m in range(0, l_max):
        P[m + 1, m] = math.sqrt(2.0 * m + 3.0) * x * P[m, m]
    for m in range(0, l_max + 1):
        for l in range(m + 2, l_max + 1):
            a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            P[l, m] = a * (x * P[l - 1, m] - b * P[l - 2, m])
    dPdx = np.zeros_like(P)
    denom = x * x - 1.0
    for m in range(0, l_max + 1):
        for l in range(m, l_max + 1):
            if l == 0:
                continue
            c = math.sqrt((l * l - m * m) * (2.0 * l + 1.0) / (2.0 * l - 1.0))
            upper = l * x * P[l, m]
            if l - 1 >= m:
                upper = upper - c * P[l - 1, m]
            dPdx[l, m] = upper / denom
    return P, dPdx


@dataclass(frozen=True)
class SphereGrid:
    """Quadrature grid: Gauss-Legendre in x = cos(theta), uniform in phi.

    Integration is exact for integrands of harmonic band <= 2*band_limit;
    analysis is exact for fields of band <= band_limit.
    """

    band_limit: int
    n_theta: int
    n_phi: int
    x: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)
    dPdx: np.ndarray = field(repr=False)

    @property
    def theta(self):
        return np.arccos(self.x)

    @property
    def sin_theta(self):
        return np.sqrt(1.0 - self.x * self.x)

    @property
    def w2d(self):
        """Quadrature weights on the (theta, phi) product grid; sums to 4 pi."""
        return np.outer(self.w, np.full(self.n_phi, 2.0 * math.pi / self.n_phi))

    @property
    def nodes(self):
        """Flattened (theta, phi) pairs, row-major over (theta, phi)."""
        th = np.repeat(self.theta, self.n_phi)
        ph = np.tile(self.phi, self.n_theta)
        return np.column_stack([th, ph])

    @property
    def weights(self):
        return self.w2d.ravel()


@lru_cache(maxsize=None)
def grid_for_band_limit(band_limit, n_theta=None, n_phi=None):
    """Grid whose analysis is exact for fields of the given band limit.

    Defaults: n_theta = band_limit + 1 (Gauss-Legendre exact to polynomial
    degree 2*band_limit + 1), n_phi = 2*band_limit + 1 (exact Fourier
    integration for azimuthal orders up to 2*band_limit).
    """
    if band_limit < 0:
        raise ValueError("band limit must be nonnegative")
    if n_theta is None:
        n_theta = band_limit + 1
    if n_phi is None:
        n_phi = 2 * band_limit + 1
    if n_theta < band_limit + 1 or n_phi < 2 * band_limit + 1:
        raise ValueError("grid too coarse for band limit")
    x, w = roots_legendre(n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    P, dPdx = _legendre_tables(band_limit, x)
    for arr in (x, w, phi, P, dPdx):
        arr.setflags(write=False)
    return SphereGrid(band_limit, n_theta, n_phi, x, w, phi, P, dPdx)


def make_grid(l_max):
    """Grid exact for integrating triple (and quadruple) products of fields
    with band limit l_max."""
    if l_max <= 0:
        raise ValueError("l_max must be positive")
    return grid_for_band_limit(2 * l_max)


def eval_harmonic(l, m, theta, phi):
    """Orthonormal spherical harmonic Y_lm(theta, phi), Condon-Shortley."""
    if l < 0 or abs(m) > l:
        raise ValueError("need 0 <= |m| <= l")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    x = np.atleast_1d(np.cos(theta)).ravel()
    P, _ = _legendre_tables(l, x)
    val = P[l, abs(m)].reshape(np.cos(theta).shape if theta.shape else ())
    if m < 0:
        val = val * (-1) ** (abs(m) % 2)
    out = val * np.exp(1j * m * phi)
    if out.shape == ():
        return complex(out)
    return out


def _signed_p(grid, l_max, derivative=False):
    """Legendre table extended to negative m columns: index [l, m + l_max]."""
    src = grid.dPdx if derivative else grid.P
    out = np.zeros((l_max + 1, 2 * l_max + 1, grid.n_theta))
    for l in range(l_max + 1):
        for m in range(0, l + 1):
            out[l, l_max + m] = src[l, m]
            if m > 0:
                out[l, l_max - m] = (-1.0) ** m * src[l, m]
    return out


@dataclass(frozen=True)
class HarmonicField:
    """Band-limited function on the sphere stored as harmonic coefficients.

    coeffs has shape (l_max + 1, 2*l_max + 1); column j holds order
    m = j - l_max. Entries with |m| > l are structurally zero.
    """

    l_max: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.l_max + 1, 2 * self.l_max + 1):
            raise ValueError("coefficient array shape does not match l_max")
        for l in range(self.l_max):
            if np.any(c[l, : self.l_max - l]) or np.any(c[l, self.l_max + l + 1 :]):
                raise ValueError("nonzero coefficient with |m| > l")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, l_max):
        return cls(l_max, np.zeros((l_max + 1, 2 * l_max + 1), dtype=complex))

    @classmethod
    def basis(cls, l, m, l_max=None):
        if l_max is None:
            l_max = l
        if l > l_max or abs(m) > l:
            raise ValueError("need |m| <= l <= l_max")
        c = np.zeros((l_max + 1, 2 * l_max + 1), dtype=complex)
        c[l, l_max + m] = 1.0
        return cls(l_max, c)

    def get(self, l, m):
        if l > self.l_max or abs(m) > l:
            return 0j
        return complex(self.coeffs[l, self.l_max + m])

    def pad_to(self, l_max):
        if l_max < self.l_max:
            raise ValueError("pad_to cannot shrink the band limit")
        if l_max == self.l_max:
            return self
        c = np.zeros((l_max + 1, 2 * l_max + 1), dtype=complex)
        off = l_max - self.l_max
        c[: self.l_max + 1, off : off + 2 * self.l_max + 1] = self.coeffs
        return HarmonicField(l_max, c)

    def truncate(self, l_max):
        if l_max >= self.l_max:
            return self.pad_to(l_max)
        off = self.l_max - l_max
        c = self.coeffs[: l_max + 1, off : off + 2 * l_max + 1].copy()
        return HarmonicField(l_max, c)

    def __add__(self, other):
        L = max(self.l_max, other.l_max)
        return HarmonicField(L, self.pad_to(L).coeffs + other.pad_to(L).coeffs)

    def __sub__(self, other):
        L = max(self.l_max, other.l_max)
        return HarmonicField(L, self.pad_to(L).coeffs - other.pad_to(L).coeffs)

    def __neg__(self):
        return HarmonicField(self.l_max, -self.coeffs)

    def __mul__(self, scalar):
        return HarmonicField(self.l_max, self.coeffs * scalar)

    __rmul__ = __mul__

    def _hermitian_exact(self):
        """True when coeffs(l, -m) == (-1)^m conj(coeffs(l, m)) bitwise."""
        c = self.coeffs
        flipped = c[:, ::-1].conj().copy()
        for m in range(1, self.l_max + 1, 2):
            flipped[:, self.l_max + m] *= -1.0
            flipped[:, self.l_max - m] *= -1.0
        return np.array_equal(c, flipped) and np.all(c[:, self.l_max].imag == 0.0)

    def is_real(self, tol=1e-12):
        c = self.coeffs
        for m in range(0, self.l_max + 1):
            a = c[:, self.l_max + m]
            b = c[:, self.l_max - m]
            if np.max(np.abs(b - (-1.0) ** m * a.conj())) > tol:
                return False
        return True

    def values(self, grid):
        return synthesize(self, grid)

    def grad_values(self, grid):
        """Pointwise (df/dx, df/dphi) with x = cos(theta)."""
        return _gradient_values(self, grid)

    def integrate(self):
        """Integral over the sphere: sqrt(4 pi) times the constant mode."""
        val = self.coeffs[0, self.l_max] * math.sqrt(4.0 * math.pi)
        return complex(val)

    def inner(self, other):
        """Hermitian inner product integral f conj(g)."""
        L = max(self.l_max, other.l_max)
        a = self.pad_to(L).coeffs
        b = other.pad_to(L).coeffs
        return complex(np.sum(a * b.conj()))

    def norm(self):
        return math.sqrt(max(self.inner(self).real, 0.0))

    def to_dict(self):
        entries = []
        for l in range(self.l_max + 1):
            for m in range(-l, l + 1):
                z = self.coeffs[l, self.l_max + m]
                if z.real == 0.0 and z.imag == 0.0:
                    continue
                entries.append({"l": l, "m": m, "re": z.real, "im": z.imag})
        return {"l_max": self.l_max, "real": self.is_real(), "coeffs": entries}

    @classmethod
    def from_dict(cls, payload):
        l_max = int(payload["l_max"])
        f = np.zeros((l_max + 1, 2 * l_max + 1), dtype=complex)
        for entry in payload.get("coeffs", []):
            l, m = int(entry["l"]), int(entry["m"])
            if abs(m) > l or l > l_max:
                raise ValueError("coefficient entry outside the band limit")
            f[l, l_max + m] = float(entry.get("re", 0.0)) + 1j * float(entry.get("im", 0.0))
        return cls(l_max, f)


def synthesize(f, grid):
    """Pointwise values of the field on the grid, shape (n_theta, n_phi).
    Returns a real array when the coefficients are exactly Hermitian."""
    if grid.band_limit < f.l_max:
        raise ValueError("grid too coarse for band limit")
    L = f.l_max
    c = f.coeffs
    if f._hermitian_exact():
        out = np.zeros((grid.n_theta, grid.n_phi))
        for m in range(0, L + 1):
            A = np.tensordot(c[m:, L + m], grid.P[m : L + 1, m], axes=(0, 0))
            block = np.multiply.outer(A, np.exp(1j * m * grid.phi))
            out += (1.0 if m == 0 else 2.0) * block.real
        return out
    Ps = _signed_p(grid, L)
    A = np.einsum("lm,lmt->tm", c, Ps)
    ms = np.arange(-L, L + 1)
    return A @ np.exp(1j * np.outer(ms, grid.phi))


def _gradient_values(f, grid):
    """Pointwise (df/dx, df/dphi) on the grid, x = cos(theta)."""
    if grid.band_limit < f.l_max:
        raise ValueError("grid too coarse for band limit")
    L = f.l_max
    c = f.coeffs
    if f._hermitian_exact():
        dvx = np.zeros((grid.n_theta, grid.n_phi))
        dvp = np.zeros((grid.n_theta, grid.n_phi))
        for m in range(0, L + 1):
            cm = c[m:, L + m]
            phase = np.exp(1j * m * grid.phi)
            fac = 1.0 if m == 0 else 2.0
            Ax = np.tensordot(cm, grid.dPdx[m : L + 1, m], axes=(0, 0))
            dvx += fac * np.multiply.outer(Ax, phase).real
            if m > 0:
                A = np.tensordot(cm, grid.P[m : L + 1, m], axes=(0, 0))
                dvp += fac * (1j * m * np.multiply.outer(A, phase)).real
        return dvx, dvp
    Ps = _signed_p(grid, L)
    dPs = _signed_p(grid, L, derivative=True)
    ms = np.arange(-L, L + 1)
    phase = np.exp(1j * np.outer(ms, grid.phi))
    Ax = np.einsum("lm,lmt->tm", c, dPs)
    A = np.einsum("lm,lmt->tm", c, Ps)
    return Ax @ phase, (A * (1j * ms)) @ phase


def analyze(values, l_max, grid):
    """Project grid values onto harmonics up to l_max by quadrature."""
    values = np.asarray(values)
    if values.shape != (grid.n_theta, grid.n_phi):
        raise ValueError("value array does not match the grid")
    if grid.band_limit < l_max:
        raise ValueError("grid too coarse for band limit")
    L = l_max
    scale = 2.0 * math.pi / grid.n_phi
    coeffs = np.zeros((L + 1, 2 * L + 1), dtype=complex)
    if not np.iscomplexobj(values):
        for m in range(0, L + 1):
            phase = np.exp(-1j * m * grid.phi)
            Fm = values @ phase * scale
            col = np.tensordot(grid.P[m : L + 1, m] * grid.w, Fm, axes=(1, 0))
            coeffs[m:, L + m] = col
            if m > 0:
                coeffs[m:, L - m] = (-1.0) ** m * col.conj()
    else:
        Ps = _signed_p(grid, L)
        ms = np.arange(-L, L + 1)
        phase = np.exp(-1j * np.outer(grid.phi, ms))
        Fm = values @ phase * scale
        coeffs = np.einsum("lmt,t,tm->lm", Ps, grid.w, Fm)
    return HarmonicField(L, coeffs)


def bracket(f, g):
    """Area-preserving bracket {f, g}; result band limit f.l_max + g.l_max."""
    L = f.l_max + g.l_max
    grid = grid_for_band_limit(L)
    fx, fp = f.grad_values(grid)
    gx, gp = g.grad_values(grid)
    vals = fx * gp - fp * gx
    return analyze(vals, L, grid)


def product(f, g):
    """Pointwise product re-analyzed at the combined band limit."""
    L = f.l_max + g.l_max
    grid = grid_for_band_limit(L)
    vals = synthesize(f, grid) * synthesize(g, grid)
    return analyze(vals, L, grid)


def integral_of_product(f, g):
    """integral f g dOmega (no conjugation), exact from coefficients."""
    L = max(f.l_max, g.l_max)
    a = f.pad_to(L).coeffs
    b = g.pad_to(L).coeffs
    total = 0j
    for m in range(-L, L + 1):
        sign = (-1.0) ** m
        total += sign * np.sum(a[:, L + m] * b[:, L - m])
    return complex(total)


def lm_index(l, m):
    """Flat index of the (l, m) pair: l^2 + l + m."""
    return l * l + l + m


def structure_constants(l_max):
    """f_abc = integral {Y_a, Y_b} conj(Y_c) for all triples within l_max.

    Returned tensor is indexed by lm_index and exactly antisymmetric in the
    first two slots (filled from the a < b computation).
    """
    if l_max <= 0:
        raise ValueError("l_max must be positive")
    N = (l_max + 1) ** 2
    out = np.zeros((N, N, N), dtype=complex)
    pairs = [(l, m) for l in range(l_max + 1) for m in range(-l, l + 1)]
    for ia, (la, ma) in enumerate(pairs):
        if la == 0:
            continue
        for ib in range(ia + 1, N):
            lb, mb = pairs[ib]
            br = bracket(HarmonicField.basis(la, ma), HarmonicField.basis(lb, mb))
            for ic, (lc, mc) in enumerate(pairs):
                val = br.get(lc, mc)
                out[ia, ib, ic] = val
                out[ib, ia, ic] = -val
    return out


@dataclass(frozen=True)
class Su2Generators:
    """Three l = 1 fields closing under the bracket with one real constant."""

    t1: HarmonicField
    t2: HarmonicField
    t3: HarmonicField
    c: float
    closure_residual: float
    basis: str
    printed_residual: float
    substituted: bool

    def as_tuple(self):
        return (self.t1, self.t2, self.t3)


def _closure_residual(ts):
    """Best single real constant and the worst-pair residual for the triple."""
    cycles = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    brs = [bracket(ts[a], ts[b]) for a, b, _ in cycles]
    projections = []
    for (a, b, c), br in zip(cycles, brs):
        tc = ts[c]
        projections.append(br.inner(tc) / tc.inner(tc).real)
    c_shared = float(np.mean([p.real for p in projections]))
    residual = 0.0
    for (a, b, c), br in zip(cycles, brs):
        diff = br - c_shared * ts[c].pad_to(br.l_max)
        residual = max(residual, diff.norm())
    return c_shared, residual


def su2_generators():
    """l = 1 generator triple with a measured closure constant.

    The first candidate basis is (Y11 + i Y1-1)/sqrt(2),
    (Y11 - i Y1-1)/sqrt(2), Y10. Its pairwise bracket constants differ in
    phase, so no single real constant closes it; when its residual exceeds
    1e-10 the standard real combinations are substituted and the swap is
    reported through the `basis`/`substituted` fields.
    """
    y11 = HarmonicField.basis(1, 1)
    y1m1 = HarmonicField.basis(1, -1)
    y10 = HarmonicField.basis(1, 0)
    s = 1.0 / math.sqrt(2.0)
    printed = (s * (y11 + 1j * y1m1), s * (y11 - 1j * y1m1), y10)
    c_printed, r_printed = _closure_residual(printed)
    if r_printed < 1e-10:
        return Su2Generators(*printed, c=c_printed, closure_residual=r_printed,
                             basis="as_given", printed_residual=r_printed,
                             substituted=False)
    real_basis = (s * (y1m1 - y11), s * 1j * (y1m1 + y11), y10)
    c_real, r_real = _closure_residual(real_basis)
    return Su2Generators(*real_basis, c=c_real, closure_residual=r_real,
                         basis="real_combination", printed_residual=r_printed,
                         substituted=True)


def random_real_field(l_max, rng, amplitude=1.0, decay=0.6):
    """Random real band-limited field with geometrically decaying spectrum."""
    c = np.zeros((l_max + 1, 2 * l_max + 1), dtype=complex)
    for l in range(l_max + 1):
        scale = amplitude * decay**l
        c[l, l_max] = scale * rng.standard_normal()
        for m in range(1, l + 1):
            z = scale * (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
            c[l, l_max + m] = z
            c[l, l_max - m] = (-1.0) ** m * z.conjugate()
    return HarmonicField(l_max, c)
