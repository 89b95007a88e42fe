"""Deterministic rational sampling.

All randomness in the package flows through ``sample_rational``, a pure
function of (seed, index) built on the splitmix64 mixer, so every experiment
is replayable bit-for-bit on any platform.  No ambient entropy anywhere.
"""

from fractions import Fraction

from wonderland.linalg import Matrix

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4B7C15


def _mix(z):
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def raw64(seed, index):
    """The index-th 64-bit word of the stream with the given seed."""
    return _mix((seed + (index + 1) * _GOLDEN) & _MASK)


def subseed(seed, label_index):
    """Derive an independent stream seed (used to give each check its own
    stream so sweeps can run in any order)."""
    return raw64(seed, (label_index << 1) | 1)


def sample_rational(seed, index, bound):
    """Deterministic rational p/q with |p| <= bound and 1 <= q <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    u = raw64(seed, 2 * index)
    v = raw64(seed, 2 * index + 1)
    p = u % (2 * bound + 1) - bound
    q = v % bound + 1
    return Fraction(p, q)


class RationalStream:
    """Sequential view over sample_rational(seed, 0), (seed, 1), ...

    Construction order fixes everything; two streams with the same seed
    produce the same values regardless of scheduling.
    """

    def __init__(self, seed, bound=9):
        self.seed = seed
        self.bound = bound
        self.index = 0

    def take(self, bound=None):
        x = sample_rational(self.seed, self.index, bound or self.bound)
        self.index += 1
        return x

    def take_nonzero(self, bound=None):
        while True:
            x = self.take(bound)
            if x != 0:
                return x

    def vector(self, n, bound=None):
        return [self.take(bound) for _ in range(n)]

    def nonzero_vector(self, n, bound=None):
        while True:
            v = self.vector(n, bound)
            if any(x != 0 for x in v):
                return v

    def matrix(self, rows, cols, bound=None):
        return Matrix([[self.take(bound) for _ in range(cols)] for _ in range(rows)])

    def sl2(self, bound=None):
        """A generic exact SL2 element: lower * upper * diag(t, 1/t)."""
        return self.sl(2, bound)

    def sl(self, n, bound=None):
        """A generic determinant-one n x n matrix: unit lower and upper
        triangular factors times a diagonal with reciprocal last entry."""
        lower = Matrix.identity(n)
        upper = Matrix.identity(n)
        for i in range(n):
            for j in range(i):
                lower.data[i][j] = self.take(bound)
                upper.data[j][i] = self.take(bound)
        diag = Matrix.identity(n)
        prod = Fraction(1)
        for k in range(n - 1):
            t = self.take_nonzero(bound)
            diag.data[k][k] = t
            prod *= t
        diag.data[n - 1][n - 1] = 1 / prod
        return lower * upper * diag

    def invertible2(self, bound=None):
        while True:
            m = self.matrix(2, 2, bound)
            if m.det() != 0:
                return m

    def rank_one2(self, bound=None):
        """A nonzero 2x2 matrix u v^T of rank exactly one."""
        u = self.nonzero_vector(2, bound)
        v = self.nonzero_vector(2, bound)
        return Matrix([[u[0] * v[0], u[0] * v[1]], [u[1] * v[0], u[1] * v[1]]])
