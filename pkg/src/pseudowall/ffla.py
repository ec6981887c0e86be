"""Exact linear algebra over small finite fields F_q, q = p^k <= 16.

Field elements are stored as small integers ``0 <= a < q``: the base-p
digits of ``a`` are the coefficients of a polynomial in the generator
(lowest degree first).  All arithmetic goes through precomputed tables,
except for prime fields where plain ``% p`` arithmetic is used.

Matrices are numpy integer arrays.  Vectors are rows; a matrix ``A`` of
shape ``(m, n)`` acts on column vectors, so the image of a subspace with
basis rows ``X`` is spanned by the rows of ``X @ A.T``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CapacityError, PreconditionError

DTYPE = np.int64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    while len(a) >= len(m):
        lead = a[-1]
        if lead:
            shift = len(a) - len(m)
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _monic_polys(p: int, deg: int):
    for coeffs in itertools.product(range(p), repeat=deg):
        yield list(coeffs) + [1]


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial factorization: no monic factor of degree 1..deg/2."""
    m = [c % p for c in modulus]
    deg = len(m) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not any(_poly_mod(m, f, p)):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k."""
    if k == 1:
        return (0, 1)
    for f in _monic_polys(p, k):
        if f[0] != 0 and is_irreducible(tuple(f), p):
            return tuple(f)
    raise PreconditionError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """F_q with q = p^k, presented as F_p[x]/(modulus).

    ``modulus`` lists coefficients lowest degree first and must be monic.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise PreconditionError(f"p={self.p} is not prime")
        if self.k < 1:
            raise PreconditionError("extension degree must be >= 1")
        if self.p**self.k > 16:
            raise CapacityError(f"field F_{self.p}^{self.k} exceeds q <= 16")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.k))
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise PreconditionError(f"modulus {mod} is not monic of degree {self.k}")
        if self.k > 1 and not is_irreducible(mod, self.p):
            raise PreconditionError(f"modulus {mod} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.k


class GF:
    """Arithmetic for one :class:`FieldSpec`.  Obtain instances via :func:`gf`."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.k, self.q = spec.p, spec.k, spec.q
        self.prime = spec.k == 1
        q, p = self.q, self.p
        digits = np.array([[(a // p**i) % p for i in range(self.k)] for a in range(q)])
        weights = p ** np.arange(self.k)
        add = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_t = (add * weights).sum(-1).astype(DTYPE)
        neg = (-digits) % p
        self.neg_t = (neg * weights).sum(-1).astype(DTYPE)
        mul = np.zeros((q, q), dtype=DTYPE)
        for a in range(q):
            for b in range(q):
                prod = [0] * (2 * self.k)
                for i in range(self.k):
                    for j in range(self.k):
                        prod[i + j] += int(digits[a, i]) * int(digits[b, j])
                red = _poly_mod(prod, list(spec.modulus), p) if self.k > 1 else [prod[0] % p]
                red = red + [0] * (self.k - len(red))
                mul[a, b] = sum(c * p**i for i, c in enumerate(red))
        self.mul_t = mul
        inv = np.zeros(q, dtype=DTYPE)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_t = inv

    # elementwise -----------------------------------------------------------
    def add(self, a, b):
        if self.prime:
            return (np.asarray(a, DTYPE) + b) % self.p
        return self.add_t[a, b]

    def neg(self, a):
        if self.prime:
            return (-np.asarray(a, DTYPE)) % self.p
        return self.neg_t[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.prime:
            return (np.asarray(a, DTYPE) * b) % self.p
        return self.mul_t[a, b]

    def inv(self, a):
        return self.inv_t[a]

    # matrices ---------------------------------------------------------------
    def asarray(self, m) -> np.ndarray:
        arr = np.asarray(m, dtype=DTYPE)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            if self.prime:
                return arr % self.p
            raise PreconditionError("matrix entries out of field range")
        return arr

    def zeros(self, r: int, c: int) -> np.ndarray:
        return np.zeros((r, c), dtype=DTYPE)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=DTYPE)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.prime:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=DTYPE)
        for j in range(a.shape[1]):
            out = self.add_t[out, self.mul_t[a[:, j][:, None], b[j][None, :]]]
        return out

    def madd(self, a, b):
        return self.add(a, b)

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return self.mul(c, a)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.prime:
            return np.kron(a, b) % self.p
        prod = self.mul_t[a[:, None, :, None], b[None, :, None, :]]
        return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
        a = np.array(m, dtype=DTYPE, copy=True)
        rows, cols = a.shape if a.ndim == 2 else (0, 0)
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + nz[0]
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            lead = a[r, c]
            if lead != 1:
                a[r] = self.mul(self.inv(lead), a[r])
            col = a[:, c].copy()
            col[r] = 0
            nzr = np.nonzero(col)[0]
            if nzr.size:
                a[nzr] = self.sub(a[nzr], self.mul(col[nzr][:, None], a[r][None, :]))
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def nullspace(self, m: np.ndarray) -> np.ndarray:
        """Basis rows (in RREF) of the right kernel {x : m x = 0}."""
        cols = m.shape[1]
        if m.shape[0] == 0:
            return self.eye(cols)
        r, piv = self.rref(m)
        free = [c for c in range(cols) if c not in set(piv)]
        basis = np.zeros((len(free), cols), dtype=DTYPE)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for row, pc in enumerate(piv):
                basis[i, pc] = self.neg(r[row, f])
        if len(free):
            basis, _ = self.rref(basis)
        return basis

    def inverse(self, m: np.ndarray) -> np.ndarray:
        n = m.shape[0]
        aug = np.concatenate([m, self.eye(n)], axis=1)
        r, piv = self.rref(aug)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise PreconditionError("matrix is singular")
        return r[:n, n:]

    def coordinate_matrix(self, rows: np.ndarray) -> np.ndarray:
        """For independent ``rows`` (r x n) return C (n x r) such that
        ``x @ C`` gives the coefficients of any x in their span."""
        r, n = rows.shape
        if r == 0:
            return np.zeros((n, 0), dtype=DTYPE)
        red, piv = self.rref(np.concatenate([rows, self.eye(r)], axis=1))
        if len(piv) < r or piv[r - 1] >= n:
            raise PreconditionError("rows are linearly dependent")
        c = np.zeros((n, r), dtype=DTYPE)
        for j, pc in enumerate(piv[:r]):
            c[pc] = red[j, n:]
        return c

    def is_invertible(self, m: np.ndarray) -> bool:
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        """Encode row vectors as integers base q (first coordinate most significant)."""
        n = vecs.shape[-1]
        w = self.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return vecs @ w

    def all_combinations(self, basis: np.ndarray) -> np.ndarray:
        """Every F_q-linear combination of the rows of ``basis``."""
        k, n = basis.shape
        if k == 0:
            return np.zeros((1, n), dtype=DTYPE)
        coeffs = _all_vectors(self.q, k)
        if self.prime:
            return (coeffs @ basis) % self.p
        return self.matmul(coeffs, basis)


@functools.lru_cache(maxsize=None)
def _all_vectors(q: int, k: int) -> np.ndarray:
    idx = np.arange(q**k, dtype=DTYPE)
    if k == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    return np.stack([(idx // q ** (k - 1 - i)) % q for i in range(k)], axis=1)


@functools.lru_cache(maxsize=None)
def gf(spec: FieldSpec) -> GF:
    return GF(spec)


def _rows(vecs, n: int) -> np.ndarray:
    vecs = np.asarray(vecs, dtype=DTYPE)
    if vecs.ndim == 1:
        vecs = vecs[None, :] if vecs.size or n == 0 else vecs.reshape(0, n)
    return vecs.reshape(vecs.shape[0], n)


# Subspaces ------------------------------------------------------------------

MASK_LIMIT = 1 << 14


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_q^n, held as its (unique) RREF basis."""

    field: GF
    n: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    @classmethod
    def from_rows(cls, field: GF, n: int, rows) -> "Subspace":
        rows = _rows(rows, n)
        if rows.shape[0] == 0 or n == 0:
            return cls(field, n, np.zeros((0, n), dtype=DTYPE), ())
        r, piv = field.rref(rows)
        r.setflags(write=False)
        return cls(field, n, r, tuple(piv))

    @classmethod
    def zero(cls, field: GF, n: int) -> "Subspace":
        return cls(field, n, np.zeros((0, n), dtype=DTYPE), ())

    @classmethod
    def whole(cls, field: GF, n: int) -> "Subspace":
        return cls.from_rows(field, n, np.eye(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @functools.cached_property
    def key(self) -> tuple:
        return (self.n, self.basis.tobytes())

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim}, basis={self.basis.tolist()})"

    def residual(self, vecs: np.ndarray) -> np.ndarray:
        """Reduce rows of ``vecs`` modulo this subspace (zero iff contained)."""
        vecs = _rows(vecs, self.n)
        if self.dim == 0:
            return vecs
        f = self.field
        coefs = vecs[:, list(self.pivots)]
        return f.sub(vecs, f.matmul(coefs, self.basis))

    def contains_vectors(self, vecs) -> bool:
        return not np.any(self.residual(vecs))

    def contains(self, other: "Subspace") -> bool:
        return other.dim <= self.dim and self.contains_vectors(other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(self.field, self.n, np.concatenate([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        # x = a B1 = b B2  <=>  [a | -b] [B1; B2] = 0
        f = self.field
        stacked = np.concatenate([self.basis, other.basis]).T
        ker = f.nullspace(stacked)
        vecs = f.matmul(ker[:, : self.dim], self.basis)
        return Subspace.from_rows(f, self.n, vecs)

    def image(self, matrix: np.ndarray) -> "Subspace":
        """Image under ``matrix`` acting on column vectors."""
        return Subspace.from_rows(
            self.field, matrix.shape[0], self.field.matmul(self.basis, matrix.T)
        )

    def is_invariant(self, matrix: np.ndarray) -> bool:
        return self.contains_vectors(self.field.matmul(self.basis, matrix.T))

    def coordinates(self, vecs: np.ndarray) -> np.ndarray:
        """Coefficients of rows of ``vecs`` in the RREF basis (vecs must lie inside)."""
        return _rows(vecs, self.n)[:, list(self.pivots)]

    @functools.cached_property
    def mask(self) -> int | None:
        """Bitmask of the element set (bit v set iff vector with code v is in
        the subspace); ``None`` when q^n is too large."""
        if self.field.q**self.n > MASK_LIMIT:
            return None
        codes = self.field.encode(self.field.all_combinations(self.basis))
        m = 0
        for c in codes.tolist():
            m |= 1 << c
        return m


def rref_rank_kernel(m, field: GF) -> tuple[int, Subspace]:
    """Rank of ``m`` and its right null space."""
    m = field.asarray(m)
    cols = m.shape[1]
    rank = field.rank(m) if m.shape[0] else 0
    ker = Subspace.from_rows(field, cols, field.nullspace(m))
    return rank, ker


def _pattern_batch(field: GF, n: int, pivots: tuple[int, ...]) -> np.ndarray:
    """All RREF matrices with the given pivot columns, shape (count, k, n)."""
    k = len(pivots)
    pivset = set(pivots)
    free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivset]
    fills = _all_vectors(field.q, len(free))
    out = np.zeros((fills.shape[0], k, n), dtype=DTYPE)
    for r, c in enumerate(pivots):
        out[:, r, c] = 1
    for j, (r, c) in enumerate(free):
        out[:, r, c] = fills[:, j]
    return out


def enumerate_subspaces(
    n: int,
    field: GF,
    actions=(),
    max_elements: int = 256,
) -> list[Subspace]:
    """All subspaces of F_q^n invariant under every matrix in ``actions``.

    Enumerates RREF pivot patterns; results are canonical and sorted by
    (dimension, RREF bytes).
    """
    if field.q**n > max_elements:
        raise CapacityError(
            f"subspace enumeration of F_{field.q}^{n} exceeds {max_elements} elements"
        )
    actions = [field.asarray(a) for a in actions]
    for a in actions:
        if a.shape != (n, n):
            raise PreconditionError(f"action of shape {a.shape} on F_q^{n}")
    result: list[Subspace] = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            batch = _pattern_batch(field, n, pivots)
            keep = np.ones(batch.shape[0], dtype=bool)
            if k and actions:
                for a in actions:
                    imgs = _batch_matmul(field, batch, a.T)
                    coefs = imgs[:, :, list(pivots)]
                    res = field.sub(imgs, _batch_matmul_left(field, coefs, batch))
                    keep &= ~res.reshape(res.shape[0], -1).any(axis=1)
            for b in batch[keep]:
                b.setflags(write=False)
                result.append(Subspace(field, n, b, pivots))
    result.sort(key=lambda s: (s.dim, s.basis.tobytes()))
    return result


def _batch_matmul(field: GF, batch: np.ndarray, m: np.ndarray) -> np.ndarray:
    if field.prime:
        return (batch @ m) % field.p
    return np.stack([field.matmul(b, m) for b in batch]) if len(batch) else batch


def _batch_matmul_left(field: GF, coefs: np.ndarray, batch: np.ndarray) -> np.ndarray:
    if field.prime:
        return (coefs @ batch) % field.p
    return np.stack([field.matmul(c, b) for c, b in zip(coefs, batch)]) if len(batch) else batch


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# Integer matrices ------------------------------------------------------------


def smith_normal_form(m) -> tuple[list[int], tuple[np.ndarray, np.ndarray]]:
    """Smith normal form of an integer matrix.

    Returns the diagonal ``d_1 | d_2 | ...`` (length ``min(rows, cols)``,
    nonnegative) and unimodular ``(S, T)`` with ``S @ m @ T`` diagonal.
    """
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    arr = np.asarray(m, dtype=object)
    rows, cols = arr.shape
    if rows == 0 or cols == 0:
        return [], (np.eye(rows, dtype=object), np.eye(cols, dtype=object))
    d, s, t = smith_normal_decomp(Matrix(arr.tolist()), domain=ZZ)
    diag = [int(d[i, i]) for i in range(min(rows, cols))]
    s = np.array(s.tolist(), dtype=object)
    t = np.array(t.tolist(), dtype=object)
    for i, v in enumerate(diag):
        if v < 0:
            diag[i] = -v
            s[i] = -s[i]
    return diag, (s, t)


def smith_invariants(m) -> list[int]:
    """Nonzero invariant factors of an integer matrix.

    Unit entries are pivoted away first with unimodular row and column
    operations on a sparse copy; only the leftover block goes through a
    dense Smith normal form.
    """
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as snf

    arr = np.asarray(m, dtype=object)
    rows = [{j: int(v) for j, v in enumerate(r) if v} for r in arr]
    rows = [r for r in rows if r]
    ones = 0
    while True:
        hit = None
        for i, r in enumerate(rows):
            for j, v in r.items():
                if v in (1, -1):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        piv = rows.pop(i)
        sign = piv[j]
        nxt = []
        for r in rows:
            c = r.get(j)
            if c:
                f = c * sign
                for k, v in piv.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            if r:
                nxt.append(r)
        rows = nxt
        ones += 1
    rest: list[int] = []
    if rows:
        cols = sorted({k for r in rows for k in r})
        pos = {k: n for n, k in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rows]
        for a, r in enumerate(rows):
            for k, v in r.items():
                dense[a][pos[k]] = v
        d = snf(Matrix(dense), domain=ZZ)
        rest = [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i]]
    return [1] * ones + sorted(rest)
