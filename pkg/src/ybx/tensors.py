"""Exact arithmetic on Mat_n (x) Mat_n and Mat_n (x) Mat_n (x) Mat_n.

Tensors are stored densely (entry (i,j,k,l) is the coefficient of
e_ij (x) e_kl), which is fine for the sizes this package targets (n <= ~8,
so at most n^6 = 262144 scalars for a triple tensor).  The algebra products
iterate over nonzero entries only, so sparse inputs multiply fast despite
the dense storage.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import BackendMismatchError, PrimeField, PrimeFieldElement


class Tensor2:
    __slots__ = ("n", "ring", "data")

    def __init__(self, n, ring, data=None):
        self.n = n
        self.ring = ring
        self.data = data if data is not None else [ring.zero] * (n ** 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, n, ring):
        return cls(n, ring)

    @classmethod
    def unit(cls, n, ring):
        """1 (x) 1."""
        t = cls(n, ring)
        for i in range(n):
            for k in range(n):
                t[i, i, k, k] = ring.one
        return t

    @classmethod
    def basis(cls, n, ring, i, j, k, l):
        """e_ij (x) e_kl."""
        t = cls(n, ring)
        t[i, j, k, l] = ring.one
        return t

    # -- indexing ----------------------------------------------------------

    def _flat(self, i, j, k, l):
        n = self.n
        return ((i * n + j) * n + k) * n + l

    def __getitem__(self, idx):
        return self.data[self._flat(*idx)]

    def __setitem__(self, idx, value):
        self.data[self._flat(*idx)] = value

    def items(self):
        """Yield ((i,j,k,l), value) over nonzero entries."""
        n = self.n
        for flat, v in enumerate(self.data):
            if v:
                l = flat % n
                k = (flat // n) % n
                j = (flat // (n * n)) % n
                i = flat // (n * n * n)
                yield (i, j, k, l), v

    def nnz(self) -> int:
        return sum(1 for v in self.data if v)

    def is_zero(self) -> bool:
        return not any(self.data)

    # -- linear structure ----------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise BackendMismatchError("tensor size mismatch")
        if self.ring != other.ring:
            raise BackendMismatchError("tensor backend mismatch")

    def __add__(self, other):
        self._check(other)
        return Tensor2(self.n, self.ring, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check(other)
        return Tensor2(self.n, self.ring, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return Tensor2(self.n, self.ring, [-a for a in self.data])

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.n == other.n and self.data == other.data

    __hash__ = None

    def scale(self, c):
        return Tensor2(self.n, self.ring, [c * a if a else a for a in self.data])

    # -- algebra product ------------------------------------------------------

    def __mul__(self, other):
        """Componentwise algebra product (a (x) b)(c (x) d) = ac (x) bd."""
        self._check(other)
        n = self.n
        rows = {}
        for (x, j, y, l), v in other.items():
            rows.setdefault((x, y), []).append((j, l, v))
        out = Tensor2(n, self.ring)
        data = out.data
        for (i, x, k, y), va in self.items():
            for j, l, vb in rows.get((x, y), ()):
                f = ((i * n + j) * n + k) * n + l
                data[f] = data[f] + va * vb
        return out

    # -- structural maps ------------------------------------------------------

    def flip(self):
        """Transposition of tensor factors: sum a (x) b -> sum b (x) a."""
        out = Tensor2(self.n, self.ring)
        for (i, j, k, l), v in self.items():
            out[k, l, i, j] = v
        return out

    def transpose(self):
        """Factorwise matrix transpose: sum a (x) b -> sum a^t (x) b^t."""
        out = Tensor2(self.n, self.ring)
        for (i, j, k, l), v in self.items():
            out[j, i, l, k] = v
        return out

    def project_sl(self):
        """Apply pr (x) pr, pr(X) = X - (tr X / n) 1, in both slots."""
        n = self.n
        ring = self.ring
        inv_n = ring.one / ring.of_int(n)
        # partial traces
        out = Tensor2(n, ring, list(self.data))
        # subtract (tr_1 part) (x) id/n and id/n (x) (tr_2 part), add back the double trace
        tr1 = [[ring.zero] * n for _ in range(n)]  # tr over slot 1 -> matrix in slot 2
        tr2 = [[ring.zero] * n for _ in range(n)]  # tr over slot 2 -> matrix in slot 1
        full = ring.zero
        for (i, j, k, l), v in self.items():
            if i == j:
                tr1[k][l] = tr1[k][l] + v
            if k == l:
                tr2[i][j] = tr2[i][j] + v
            if i == j and k == l:
                full = full + v
        for i in range(n):
            for k in range(n):
                for l in range(n):
                    if tr1[k][l]:
                        out[i, i, k, l] = out[i, i, k, l] - inv_n * tr1[k][l]
                    if tr2[k][l]:
                        out[k, l, i, i] = out[k, l, i, i] - inv_n * tr2[k][l]
        if full:
            c = inv_n * inv_n * full
            for i in range(n):
                for k in range(n):
                    out[i, i, k, k] = out[i, i, k, k] + c
        return out

    # -- nondegeneracy ---------------------------------------------------------

    def as_matrix(self):
        """Reshape to the n^2 x n^2 matrix M[(i,j),(k,l)] = t[i,j,k,l]."""
        n = self.n
        return [
            [self.data[((i * n + j) * n + k) * n + l] for k in range(n) for l in range(n)]
            for i in range(n)
            for j in range(n)
        ]

    def tensor_rank(self):
        """(determinant of the reshaped matrix, invertible flag)."""
        det = exact_determinant(self.as_matrix(), self.ring)
        return det, bool(det)

    # -- serialization -----------------------------------------------------------

    def to_sparse_json(self):
        out = []
        for (i, j, k, l), v in self.items():
            if isinstance(v, Fraction):
                c = "%d/%d" % (v.numerator, v.denominator)
            elif isinstance(v, PrimeFieldElement):
                c = str(v.v)
            else:
                c = str(v)
            out.append({"i": i, "j": j, "k": k, "l": l, "c": c})
        return out

    def __repr__(self):
        return "Tensor2(n=%d, nnz=%d)" % (self.n, self.nnz())


def transposition_p(n, ring) -> Tensor2:
    """P = sum e_ij (x) e_ji, the transposition operator P(x (x) y) = y (x) x."""
    t = Tensor2(n, ring)
    for i in range(n):
        for j in range(n):
            t[i, j, j, i] = ring.one
    return t


class Tensor3:
    __slots__ = ("n", "ring", "data")

    def __init__(self, n, ring, data=None):
        self.n = n
        self.ring = ring
        self.data = data if data is not None else [ring.zero] * (n ** 6)

    @classmethod
    def unit(cls, n, ring):
        t = cls(n, ring)
        for i in range(n):
            for k in range(n):
                for p in range(n):
                    t[i, i, k, k, p, p] = ring.one
        return t

    def _flat(self, i, j, k, l, p, q):
        n = self.n
        return ((((i * n + j) * n + k) * n + l) * n + p) * n + q

    def __getitem__(self, idx):
        return self.data[self._flat(*idx)]

    def __setitem__(self, idx, value):
        self.data[self._flat(*idx)] = value

    def items(self):
        n = self.n
        for flat, v in enumerate(self.data):
            if v:
                q = flat % n
                p = (flat // n) % n
                l = (flat // n ** 2) % n
                k = (flat // n ** 3) % n
                j = (flat // n ** 4) % n
                i = flat // n ** 5
                yield (i, j, k, l, p, q), v

    def nnz(self) -> int:
        return sum(1 for v in self.data if v)

    def is_zero(self) -> bool:
        return not any(self.data)

    def _check(self, other):
        if self.n != other.n:
            raise BackendMismatchError("tensor size mismatch")
        if self.ring != other.ring:
            raise BackendMismatchError("tensor backend mismatch")

    def __add__(self, other):
        self._check(other)
        return Tensor3(self.n, self.ring, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check(other)
        return Tensor3(self.n, self.ring, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return Tensor3(self.n, self.ring, [-a for a in self.data])

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.n == other.n and self.data == other.data

    __hash__ = None

    def __mul__(self, other):
        self._check(other)
        n = self.n
        rows = {}
        for (x, j, y, l, z, q), v in other.items():
            rows.setdefault((x, y, z), []).append(((j * n + l) * n + q, v))
        out = Tensor3(n, self.ring)
        data = out.data
        fast = isinstance(self.ring, PrimeField)
        if fast:
            p = self.ring.p
            acc = {}
            for (i, x, k, y, pp, z), va in self.items():
                va_v = va.v
                for cols, vb in rows.get((x, y, z), ()):
                    jj = cols // (n * n)
                    ll = (cols // n) % n
                    qq = cols % n
                    f = ((((i * n + jj) * n + k) * n + ll) * n + pp) * n + qq
                    acc[f] = (acc.get(f, 0) + va_v * vb.v) % p
            field = self.ring
            for f, v in acc.items():
                if v:
                    data[f] = PrimeFieldElement(v, field)
            return out
        for (i, x, k, y, pp, z), va in self.items():
            for cols, vb in rows.get((x, y, z), ()):
                jj = cols // (n * n)
                ll = (cols // n) % n
                qq = cols % n
                f = ((((i * n + jj) * n + k) * n + ll) * n + pp) * n + qq
                data[f] = data[f] + va * vb
        return out

    def __repr__(self):
        return "Tensor3(n=%d, nnz=%d)" % (self.n, self.nnz())


def embed_triple(t: Tensor2, slot: int) -> Tensor3:
    """Embed a Tensor2 into the triple algebra, identity in the omitted slot.

    ``slot`` is one of 12, 13, 23.
    """
    n = t.n
    out = Tensor3(n, t.ring)
    if slot == 12:
        for (i, j, k, l), v in t.items():
            for p in range(n):
                out[i, j, k, l, p, p] = v
    elif slot == 13:
        for (i, j, k, l), v in t.items():
            for p in range(n):
                out[i, j, p, p, k, l] = v
    elif slot == 23:
        for (i, j, k, l), v in t.items():
            for p in range(n):
                out[p, p, i, j, k, l] = v
    else:
        raise ValueError("slot must be 12, 13 or 23, got %r" % slot)
    return out


# products of identity-padded tensors collapse to one-index contractions of
# the underlying Tensor2s; for each ordered slot pair this table records the
# contracted position of each factor and where its remaining indices land in
# the 6-index output
_PAIR_RULES = {
    (12, 13): (1, (0, 2, 3), 0, (1, 4, 5)),
    (13, 12): (1, (0, 4, 5), 0, (1, 2, 3)),
    (12, 23): (3, (0, 1, 2), 0, (3, 4, 5)),
    (23, 12): (1, (2, 4, 5), 2, (0, 1, 3)),
    (13, 23): (3, (0, 1, 4), 2, (2, 3, 5)),
    (23, 13): (3, (2, 3, 4), 2, (0, 1, 5)),
}


def _accumulate_pair(acc, sign, a: Tensor2, sa: int, b: Tensor2, sb: int, fast_p):
    """acc[flat6] += sign * (a^sa . b^sb) using the collapsed contraction."""
    n = a.n
    a_cpos, a_slots, b_cpos, b_slots = _PAIR_RULES[(sa, sb)]
    a_weights = tuple(n ** (5 - s) for s in a_slots)
    b_weights = tuple(n ** (5 - s) for s in b_slots)
    by_key = {}
    for idx, v in b.items():
        rest = [idx[t] for t in range(4) if t != b_cpos]
        off = rest[0] * b_weights[0] + rest[1] * b_weights[1] + rest[2] * b_weights[2]
        by_key.setdefault(idx[b_cpos], []).append((off, v.v if fast_p else v))
    get = by_key.get
    for idx, v in a.items():
        matches = get(idx[a_cpos])
        if not matches:
            continue
        rest = [idx[t] for t in range(4) if t != a_cpos]
        base = rest[0] * a_weights[0] + rest[1] * a_weights[1] + rest[2] * a_weights[2]
        va = (v.v if fast_p else v) if sign > 0 else -(v.v if fast_p else v)
        for off, vb in matches:
            flat = base + off
            prev = acc.get(flat)
            term = va * vb
            acc[flat] = term if prev is None else prev + term


def _materialize(acc, n, ring, fast_p) -> Tensor3:
    out = Tensor3(n, ring)
    data = out.data
    if fast_p:
        p = ring.p
        for flat, v in acc.items():
            v %= p
            if v:
                data[flat] = PrimeFieldElement(v, ring)
    else:
        for flat, v in acc.items():
            if v:
                data[flat] = v
    return out


def pair_embed_product(a: Tensor2, sa: int, b: Tensor2, sb: int) -> Tensor3:
    """a^sa . b^sb for distinct slots; equals
    embed_triple(a, sa) * embed_triple(b, sb)."""
    if (sa, sb) not in _PAIR_RULES:
        raise ValueError("unsupported slot pair (%r, %r)" % (sa, sb))
    fast_p = isinstance(a.ring, PrimeField)
    acc = {}
    _accumulate_pair(acc, 1, a, sa, b, sb, fast_p)
    return _materialize(acc, a.n, a.ring, fast_p)


def aybe_combine(r_a, r_b, r_c, r_d, r_e, r_f) -> Tensor3:
    """r_a^12 r_b^13 - r_c^23 r_d^12 + r_e^13 r_f^23 for six evaluated tensors
    (the triple-space product being the componentwise algebra product)."""
    fast_p = isinstance(r_a.ring, PrimeField)
    acc = {}
    _accumulate_pair(acc, 1, r_a, 12, r_b, 13, fast_p)
    _accumulate_pair(acc, -1, r_c, 23, r_d, 12, fast_p)
    _accumulate_pair(acc, 1, r_e, 13, r_f, 23, fast_p)
    return _materialize(acc, r_a.n, r_a.ring, fast_p)


def cybe_residual(x: Tensor2, y: Tensor2, z: Tensor2) -> Tensor3:
    """[x^12, y^13] + [x^12, z^23] + [y^13, z^23]."""
    fast_p = isinstance(x.ring, PrimeField)
    acc = {}
    _accumulate_pair(acc, 1, x, 12, y, 13, fast_p)
    _accumulate_pair(acc, -1, y, 13, x, 12, fast_p)
    _accumulate_pair(acc, 1, x, 12, z, 23, fast_p)
    _accumulate_pair(acc, -1, z, 23, x, 12, fast_p)
    _accumulate_pair(acc, 1, y, 13, z, 23, fast_p)
    _accumulate_pair(acc, -1, z, 23, y, 13, fast_p)
    return _materialize(acc, x.n, x.ring, fast_p)


# -- exact linear algebra -----------------------------------------------------


def exact_determinant(matrix, ring):
    """Determinant over the scalar backend.

    Rationals go through fraction-free Bareiss elimination on a
    denominator-cleared integer matrix; prime fields use ordinary Gaussian
    elimination.
    """
    m = len(matrix)
    if m == 0:
        return ring.one
    if isinstance(ring, PrimeField):
        p = ring.p
        a = [[int(x) % p for x in row] for row in matrix]
        det = 1
        for col in range(m):
            piv = next((r for r in range(col, m) if a[r][col]), None)
            if piv is None:
                return ring.zero
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col] % p
            inv = pow(a[col][col], -1, p)
            for r in range(col + 1, m):
                if a[r][col]:
                    factor = a[r][col] * inv % p
                    a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[col])]
        return ring.of_int(det)
    # rational backend: clear denominators row by row, then integer Bareiss
    scale = Fraction(1)
    a = []
    for row in matrix:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        scale *= lcm
        a.append([int(x * lcm) for x in row])
    det_int = _bareiss(a)
    return Fraction(det_int) / scale


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bareiss(a):
    """Fraction-free determinant of an integer matrix (destroys a)."""
    m = len(a)
    sign = 1
    prev = 1
    for col in range(m - 1):
        piv = next((r for r in range(col, m) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, m):
            for c in range(col + 1, m):
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = a[col][col]
    return sign * a[m - 1][m - 1]


def matrix_inverse(matrix, ring):
    """Gauss-Jordan inverse over the field; raises ZeroDivisionError if singular."""
    m = len(matrix)
    a = [list(row) + [ring.one if i == j else ring.zero for j in range(m)]
         for i, row in enumerate(matrix)]
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = ring.one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[m:] for row in a]


def kron2(phi, psi, ring) -> Tensor2:
    """phi (x) psi as a Tensor2 (entries phi[i][j] * psi[k][l])."""
    n = len(phi)
    t = Tensor2(n, ring)
    for i in range(n):
        for j in range(n):
            if not phi[i][j]:
                continue
            for k in range(n):
                for l in range(n):
                    if psi[k][l]:
                        t[i, j, k, l] = phi[i][j] * psi[k][l]
    return t
