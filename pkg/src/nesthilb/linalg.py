"""Exact linear algebra over the rationals and over prime fields.

Two backends share one matrix interface:

* rationals -- rows stored as sparse ``{col: mpq}`` dicts (gmpy2 fractions),
  eliminated with ordinary fraction arithmetic.  The ideals showing up in
  practice are monomial or binomial to a large extent, so sparse rows keep
  the rational path fast without any modular tricks.
* GF(p) -- dense numpy int64 arrays with entries reduced to [0, p),
  eliminated by vectorised Gauss-Jordan steps.

Everything is deterministic and exact: reduced row echelon forms are canonical
for the row space and kernels are returned in reduced echelon form.  The only
floating point anywhere is the float64 BLAS multiply used as an exact integer
carrier for GF(p) products, chunked so every intermediate stays below 2^53.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency in practice
    from fractions import Fraction as mpq


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``p is None`` means QQ, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or self.p >= (1 << 62):
                raise LinalgError(f"modulus out of range: {self.p}")
            if not _is_prime(self.p):
                raise LinalgError(f"modulus must be prime: {self.p}")

    @staticmethod
    def rational() -> "FieldSpec":
        return FieldSpec(None)

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec(p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("rational", "qq", "q"):
            return FieldSpec.rational()
        if t.startswith("prime:"):
            return FieldSpec.prime(int(t.split(":", 1)[1]))
        if t.startswith("f") and t[1:].isdigit():
            return FieldSpec.prime(int(t[1:]))
        raise LinalgError(f"cannot parse field spec {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def label(self) -> str:
        return "rational" if self.p is None else f"F{self.p}"


DEFAULT_PRIME = 32003

QQ = FieldSpec.rational()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Mat:
    """Immutable-by-convention exact matrix over a :class:`FieldSpec`.

    Rational data lives in ``self.rows`` (list of ``{col: mpq}``), prime-field
    data in ``self.arr`` (2-d int64 ndarray).  Do not mutate after handing a
    matrix to other code.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "arr")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows=None, arr=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self.arr = arr

    # ---------------------------------------------------------------- builders

    @staticmethod
    def zeros(field: FieldSpec, nrows: int, ncols: int) -> "Mat":
        if field.is_rational:
            return Mat(field, nrows, ncols, rows=[{} for _ in range(nrows)])
        return Mat(field, nrows, ncols, arr=np.zeros((nrows, ncols), dtype=np.int64))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        if field.is_rational:
            return Mat(field, n, n, rows=[{i: mpq(1)} for i in range(n)])
        return Mat(field, n, n, arr=np.eye(n, dtype=np.int64))

    @staticmethod
    def from_rows(field: FieldSpec, data: Sequence[Sequence], ncols: int | None = None) -> "Mat":
        """Build from dense row lists of ints / fractions."""
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        if field.is_rational:
            rows = []
            for r in data:
                d = {}
                for j, v in enumerate(r):
                    q = mpq(v)
                    if q != 0:
                        d[j] = q
                rows.append(d)
            return Mat(field, nrows, ncols, rows=rows)
        p = field.p
        arr = np.zeros((nrows, ncols), dtype=np.int64)
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                arr[i, j] = int(v) % p
        return Mat(field, nrows, ncols, arr=arr)

    @staticmethod
    def from_entries(field: FieldSpec, nrows: int, ncols: int,
                     entries: Iterable[tuple[int, int, object]]) -> "Mat":
        m = Mat.zeros(field, nrows, ncols)
        if field.is_rational:
            for i, j, v in entries:
                q = mpq(v)
                if q != 0:
                    m.rows[i][j] = m.rows[i].get(j, mpq(0)) + q
                    if m.rows[i][j] == 0:
                        del m.rows[i][j]
        else:
            p = field.p
            for i, j, v in entries:
                m.arr[i, j] = (m.arr[i, j] + int(v)) % p
        return m

    @staticmethod
    def vstack(field: FieldSpec, mats: Sequence["Mat"], ncols: int) -> "Mat":
        if field.is_rational:
            rows = []
            for m in mats:
                rows.extend(dict(r) for r in m.rows)
            return Mat(field, len(rows), ncols, rows=rows)
        arrs = [m.arr for m in mats if m.nrows]
        if not arrs:
            return Mat.zeros(field, 0, ncols)
        return Mat(field, sum(a.shape[0] for a in arrs), ncols, arr=np.vstack(arrs))

    @staticmethod
    def hstack(field: FieldSpec, mats: Sequence["Mat"]) -> "Mat":
        nrows = mats[0].nrows
        if field.is_rational:
            rows = [{} for _ in range(nrows)]
            off = 0
            for m in mats:
                for i, r in enumerate(m.rows):
                    for j, v in r.items():
                        rows[i][off + j] = v
                off += m.ncols
            return Mat(field, nrows, off, rows=rows)
        return Mat(field, nrows, sum(m.ncols for m in mats),
                   arr=np.hstack([m.arr for m in mats]))

    # ----------------------------------------------------------------- access

    def copy(self) -> "Mat":
        if self.field.is_rational:
            return Mat(self.field, self.nrows, self.ncols, rows=[dict(r) for r in self.rows])
        return Mat(self.field, self.nrows, self.ncols, arr=self.arr.copy())

    def take_rows(self, idx: Sequence[int]) -> "Mat":
        if self.field.is_rational:
            return Mat(self.field, len(idx), self.ncols,
                       rows=[dict(self.rows[i]) for i in idx])
        return Mat(self.field, len(idx), self.ncols, arr=self.arr[list(idx)].copy())

    def take_cols(self, idx: Sequence[int]) -> "Mat":
        if self.field.is_rational:
            pos = {c: k for k, c in enumerate(idx)}
            rows = []
            for r in self.rows:
                rows.append({pos[j]: v for j, v in r.items() if j in pos})
            return Mat(self.field, self.nrows, len(idx), rows=rows)
        return Mat(self.field, self.nrows, len(idx), arr=self.arr[:, list(idx)].copy())

    def transpose(self) -> "Mat":
        if self.field.is_rational:
            rows = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self.rows):
                for j, v in r.items():
                    rows[j][i] = v
            return Mat(self.field, self.ncols, self.nrows, rows=rows)
        return Mat(self.field, self.ncols, self.nrows, arr=self.arr.T.copy())

    def remap_cols(self, dest_width: int, pairs: Sequence[tuple[int, int]]) -> "Mat":
        """New matrix with column src moved to column dest for each pair; other
        destination columns are zero."""
        if self.field.is_rational:
            src2dest = dict(pairs)
            rows = [{src2dest[j]: v for j, v in r.items() if j in src2dest}
                    for r in self.rows]
            return Mat(self.field, self.nrows, dest_width, rows=rows)
        out = np.zeros((self.nrows, dest_width), dtype=np.int64)
        if pairs:
            src, dest = zip(*pairs)
            out[:, list(dest)] = self.arr[:, list(src)]
        return Mat(self.field, self.nrows, dest_width, arr=out)

    def is_zero(self) -> bool:
        if self.field.is_rational:
            return all(not r for r in self.rows)
        return not self.arr.any()

    def to_lists(self) -> list[list]:
        out = []
        if self.field.is_rational:
            for r in self.rows:
                out.append([r.get(j, mpq(0)) for j in range(self.ncols)])
        else:
            out = [[int(v) for v in row] for row in self.arr]
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat) or self.field != other.field:
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        if self.field.is_rational:
            return all(a == b for a, b in zip(self.rows, other.rows))
        return bool(np.array_equal(self.arr, other.arr))

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def __repr__(self):
        return f"Mat({self.field.label}, {self.nrows}x{self.ncols})"

    # ------------------------------------------------------------- arithmetic

    def matmul(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise LinalgError("matmul shape mismatch")
        if self.field.is_rational:
            rows = []
            for r in self.rows:
                acc: dict[int, mpq] = {}
                for k, v in r.items():
                    for j, w in other.rows[k].items():
                        t = acc.get(j, mpq(0)) + v * w
                        if t == 0:
                            acc.pop(j, None)
                        else:
                            acc[j] = t
                rows.append(acc)
            return Mat(self.field, self.nrows, other.ncols, rows=rows)
        p = self.field.p
        a = self.arr
        b = other.arr
        if a.size == 0 or b.size == 0:
            return Mat.zeros(self.field, self.nrows, other.ncols)
        out = _matmul_mod(a, b, p)
        return Mat(self.field, self.nrows, other.ncols, arr=out)

    def sub(self, other: "Mat") -> "Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinalgError("sub shape mismatch")
        if self.field.is_rational:
            rows = []
            for r, s in zip(self.rows, other.rows):
                d = dict(r)
                for j, v in s.items():
                    t = d.get(j, mpq(0)) - v
                    if t == 0:
                        d.pop(j, None)
                    else:
                        d[j] = t
                rows.append(d)
            return Mat(self.field, self.nrows, self.ncols, rows=rows)
        return Mat(self.field, self.nrows, self.ncols,
                   arr=(self.arr - other.arr) % self.field.p)

    # ------------------------------------------------------------ elimination

    def rref(self, pivot_cols_limit: int | None = None) -> tuple["Mat", list[int]]:
        """Reduced row echelon form; pivots searched in columns < limit only."""
        limit = self.ncols if pivot_cols_limit is None else pivot_cols_limit
        if self.field.is_rational:
            rows, piv = _rref_q([dict(r) for r in self.rows], limit)
            return Mat(self.field, len(rows), self.ncols, rows=rows), piv
        arr, piv = _rref_p(self.arr, self.field.p, limit)
        return Mat(self.field, arr.shape[0], self.ncols, arr=arr), piv

    def rref_with_transform(self, pivot_cols_limit: int | None = None
                            ) -> tuple["Mat", list[int], "Mat"]:
        """Return (R, pivots, T) with T @ self row-equivalent data: the first
        len(pivots) rows of T @ self equal R and the remaining rows are zero.
        T is square of size nrows."""
        limit = self.ncols if pivot_cols_limit is None else pivot_cols_limit
        aug = Mat.hstack(self.field, [self, Mat.identity(self.field, self.nrows)])
        red, piv = aug.rref(pivot_cols_limit=limit)
        # rref drops zero rows of the main part only when the transform part is
        # also zero, which cannot happen here; recover full square transform.
        r = len(piv)
        if self.field.is_rational:
            main_rows, t_rows = [], []
            for row in red.rows:
                main_rows.append({j: v for j, v in row.items() if j < self.ncols})
                t_rows.append({j - self.ncols: v for j, v in row.items() if j >= self.ncols})
            # pad (rref of augmented matrix keeps all nonzero rows; rows that are
            # zero in both parts were genuinely zero rows of the input)
            while len(t_rows) < self.nrows:
                main_rows.append({})
                t_rows.append({})
            R = Mat(self.field, r, self.ncols, rows=main_rows[:r])
            Z = Mat(self.field, self.nrows - r, self.ncols, rows=main_rows[r:])
            if not Z.is_zero():
                raise LinalgError("internal: transform reduction left nonzero tail")
            T = Mat(self.field, self.nrows, self.nrows, rows=t_rows)
            return R, piv, T
        main = red.arr[:, :self.ncols]
        tpart = red.arr[:, self.ncols:]
        pad = self.nrows - red.arr.shape[0]
        if pad:
            main = np.vstack([main, np.zeros((pad, self.ncols), dtype=np.int64)])
            tpart = np.vstack([tpart, np.zeros((pad, self.nrows), dtype=np.int64)])
        if main[r:].any():
            raise LinalgError("internal: transform reduction left nonzero tail")
        R = Mat(self.field, r, self.ncols, arr=main[:r].copy())
        T = Mat(self.field, self.nrows, self.nrows, arr=tpart.copy())
        return R, piv, T

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Mat":
        """Rows = reduced-echelon basis of the right kernel {v : self @ v = 0}."""
        red, piv = self.rref()
        n = self.ncols
        pivset = set(piv)
        free = [j for j in range(n) if j not in pivset]
        if self.field.is_rational:
            rows = []
            for f in free:
                v = {f: mpq(1)}
                for i, pc in enumerate(piv):
                    c = red.rows[i].get(f)
                    if c is not None:
                        v[pc] = -c
                rows.append(v)
            ker = Mat(self.field, len(rows), n, rows=rows)
        else:
            out = np.zeros((len(free), n), dtype=np.int64)
            p = self.field.p
            for k, f in enumerate(free):
                out[k, f] = 1
                if piv:
                    out[k, piv] = (-red.arr[:len(piv), f]) % p
            ker = Mat(self.field, len(free), n, arr=out)
        return ker.rref()[0]

    def solve(self, b: Sequence) -> list | None:
        """Particular solution of self @ x = b (free variables zero), or None."""
        if len(b) != self.nrows:
            raise LinalgError("rhs length mismatch")
        col = Mat.from_rows(self.field, [[v] for v in b], 1)
        aug = Mat.hstack(self.field, [self, col])
        red, piv = aug.rref(pivot_cols_limit=self.ncols)
        # inconsistent iff some reduced row is 0...0 | nonzero
        if self.field.is_rational:
            for r in red.rows:
                main = any(j < self.ncols for j in r)
                if not main and self.ncols in r:
                    return None
            x = [mpq(0)] * self.ncols
            for i, pc in enumerate(piv):
                x[pc] = red.rows[i].get(self.ncols, mpq(0))
            return x
        for i in range(red.arr.shape[0]):
            if not red.arr[i, :self.ncols].any() and red.arr[i, self.ncols]:
                return None
        x = [0] * self.ncols
        for i, pc in enumerate(piv):
            x[pc] = int(red.arr[i, self.ncols])
        return x


# ------------------------------------------------------------------ QQ kernel


def _rref_q(rows: list[dict], limit: int) -> tuple[list[dict], list[int]]:
    """Sparse fraction RREF.  Zero rows are dropped; pivots ascend."""

    def lead(r):
        return min((j for j in r if j < limit), default=None)

    pending = [r for r in rows if r]
    done: list[tuple[int, dict]] = []  # (pivot col, row)
    buckets: dict[int, list[dict]] = {}
    overflow: list[dict] = []  # rows with no entry < limit but nonzero beyond
    for r in pending:
        lc = lead(r)
        if lc is None:
            overflow.append(r)
        else:
            buckets.setdefault(lc, []).append(r)
    while buckets:
        c = min(buckets)
        group = buckets.pop(c)
        pivot = group[0]
        inv = pivot[c]
        if inv != 1:
            pivot = {j: v / inv for j, v in pivot.items()}
        done.append((c, pivot))
        for r in group[1:]:
            f = r[c]
            for j, v in pivot.items():
                t = r.get(j, mpq(0)) - f * v
                if t == 0:
                    r.pop(j, None)
                else:
                    r[j] = t
            lc = lead(r)
            if lc is not None:
                buckets.setdefault(lc, []).append(r)
            elif r:
                overflow.append(r)
    # back substitution for reduced form
    done.sort(key=lambda t: t[0])
    pivots = [c for c, _ in done]
    out = [r for _, r in done]
    for i in range(len(out) - 1, -1, -1):
        for k in range(i):
            f = out[k].get(pivots[i])
            if f is None:
                continue
            r = out[k]
            for j, v in out[i].items():
                t = r.get(j, mpq(0)) - f * v
                if t == 0:
                    r.pop(j, None)
                else:
                    r[j] = t
    # rows whose support lies entirely beyond the pivot limit are appended
    # untouched below the echelon block (relevant only for augmented solves)
    out.extend(overflow)
    return out, pivots


# ---------------------------------------------------------------- GF(p) kernel


def _rref_p(arr: np.ndarray, p: int, limit: int) -> tuple[np.ndarray, list[int]]:
    a = np.mod(arr, p).astype(np.int64, copy=True)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(min(limit, n)):
        if r == m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        rest = a[:, c].copy()
        rest[r] = 0
        nzr = np.nonzero(rest)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(rest[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    # move zero rows (within the pivot range) to the bottom, keep others
    if r < m:
        tail = a[r:]
        nonzero_tail = tail[np.any(tail, axis=1)]
        a = np.vstack([a[:r], nonzero_tail]) if nonzero_tail.size else a[:r]
    return a, pivots


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p via float64 BLAS in chunks small enough to be exact."""
    # entries < p, products < p^2; float64 is exact up to 2^53, so chunks of
    # the inner dimension up to 2^53 / p^2 accumulate exactly.
    chunk = max(1, (1 << 53) // (p * p))
    k = a.shape[1]
    if k <= chunk:
        out = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return out % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, chunk):
        e = min(k, s + chunk)
        part = np.rint(a[:, s:e].astype(np.float64) @ b[s:e].astype(np.float64)).astype(np.int64)
        acc = (acc + part) % p
    return acc


# ------------------------------------------------- block reshaping helpers


def right_mul_vecrows(p: Mat, rows_inner: int, cols_inner: int, b: Mat) -> Mat:
    """Rows of p are vec(L) for L of shape (rows_inner, cols_inner); return the
    matrix whose rows are vec(L @ b)."""
    q = p.nrows
    out_cols = rows_inner * b.ncols
    if p.field.is_rational:
        rows = []
        for r in p.rows:
            acc: dict[int, object] = {}
            for flat, v in r.items():
                a, c = divmod(flat, cols_inner)
                for c2, w in b.rows[c].items():
                    key = a * b.ncols + c2
                    t = acc.get(key, 0) + v * w
                    if t == 0:
                        acc.pop(key, None)
                    else:
                        acc[key] = t
            rows.append(acc)
        return Mat(p.field, q, out_cols, rows=rows)
    if q == 0 or out_cols == 0 or cols_inner == 0:
        return Mat.zeros(p.field, q, out_cols)
    x = p.arr.reshape(q * rows_inner, cols_inner)
    y = _matmul_mod(x, b.arr, p.field.p)
    return Mat(p.field, q, out_cols, arr=y.reshape(q, out_cols))


def left_mul_vecrows(p: Mat, rows_inner: int, cols_inner: int, t: Mat) -> Mat:
    """Rows of p are vec(G) for G of shape (rows_inner, cols_inner); return the
    matrix whose rows are vec(t @ G)."""
    q = p.nrows
    out_cols = t.nrows * cols_inner
    if p.field.is_rational:
        tcols: list[list[tuple[int, object]]] = [[] for _ in range(rows_inner)]
        for a2, r in enumerate(t.rows):
            for a, v in r.items():
                tcols[a].append((a2, v))
        rows = []
        for r in p.rows:
            acc: dict[int, object] = {}
            for flat, v in r.items():
                a, c = divmod(flat, cols_inner)
                for a2, w in tcols[a]:
                    key = a2 * cols_inner + c
                    s = acc.get(key, 0) + w * v
                    if s == 0:
                        acc.pop(key, None)
                    else:
                        acc[key] = s
            rows.append(acc)
        return Mat(p.field, q, out_cols, rows=rows)
    if q == 0 or out_cols == 0 or rows_inner == 0:
        return Mat.zeros(p.field, q, out_cols)
    x = p.arr.reshape(q, rows_inner, cols_inner).transpose(1, 0, 2) \
        .reshape(rows_inner, q * cols_inner)
    y = _matmul_mod(t.arr, x, p.field.p)
    out = y.reshape(t.nrows, q, cols_inner).transpose(1, 0, 2).reshape(q, out_cols)
    return Mat(p.field, q, out_cols, arr=np.ascontiguousarray(out))


# ------------------------------------------------------------- module-level ops


def rank(m: Mat) -> int:
    """Exact rank over the matrix's field."""
    return m.rank()


def kernel_basis(m: Mat) -> Mat:
    """Canonical (reduced echelon) basis of the right kernel, as rows."""
    return m.kernel_basis()


def solve(m: Mat, b: Sequence) -> list | None:
    """Particular solution with free variables set to zero, or None."""
    return m.solve(b)
