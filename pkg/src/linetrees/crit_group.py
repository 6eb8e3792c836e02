"""Laplacians, exact integer Smith normal form, and the critical groups of
the de Bruijn and Kautz families.

The Laplacian used here is L(G) = A(G) - D(G) with A the adjacency matrix
(counting multiplicities, self-loops included) and D = diag(outdeg); a
self-loop adds one to both and cancels on the diagonal.  The sandpile group
with sink r is the cokernel of the reduced Laplacian (row and column of r
deleted); its order is the number of spanning trees rooted at r.  On a
balanced (indeg = outdeg) strongly connected graph the choice of sink does
not matter and the common group is the critical group.

Smith normal form is computed over the integers with exact arithmetic:
repeated smallest-pivot elimination, then a divisibility-chain fix-up.
The invariant factors determine the cokernel as a direct sum of cyclic
groups, reported in invariant-factor form d1 | d2 | ... (unit factors
dropped, zero factors counted as free rank).

Closed forms implemented for the two families (m >= 2):

  K(DB_n(m))    = (Z_{m^n})^(m-2)  (+)  sum_{i=1}^{n-1} (Z_{m^i})^(m^(n-1-i) (m-1)^2)
  K(Kautz_n(m)) = (Z_{m+1})^(m-1) (+) (Z_{m^(n-1)})^(m^2-2)
                  (+) sum_{i=1}^{n-2} (Z_{m^i})^(m^(n-2-i) (m-1)^2 (m+1))

with orders m^(m^n - n - 1) and (m+1)^(m-1) m^(m^n + m^(n-1) - m - n).
The tree counts behind those orders are kappa(DB_n(m)) = m^(m^n - 1) and
kappa(Kautz_n(m)) = (m+1)^m m^((m^(n-1) - 1)(m+1)).  A published variant of
the Kautz tree count carries the exponent (m^n - 1)(m+1) instead; that form
is inconsistent with the group order above (divide by |V|) and with direct
counting -- kappa(Kautz_2(2)) is 72, not 9 * 2^9 -- so the corrected
exponent is the one implemented and tested here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .digraph import DiGraph, detect_family, is_eulerian, is_strongly_connected
from .errors import GraphError

Matrix = list[list[int]]


def laplacian(g: DiGraph) -> Matrix:
    """A(G) - D(G); row v is the net chip movement of firing v."""
    lap = [[0] * g.n for _ in range(g.n)]
    for s, t in g.edges:
        lap[s][t] += 1
        lap[s][s] -= 1
    return lap


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = len(b[0])
    inner = len(b)
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for row in a]


@dataclass
class SmithResult:
    diagonal: list[int]          # full diagonal, zeros included, d1 | d2 | ...
    left: Matrix | None          # U with U * M * V diagonal, det +-1
    right: Matrix | None

    def nonzero_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(matrix: Sequence[Sequence[int]],
                      transforms: bool = False) -> SmithResult:
    """Exact Smith normal form of an integer matrix.

    Smallest-nonzero-entry pivoting with immediate remainder swaps keeps
    intermediate entries tame at the matrix sizes used here.  When
    `transforms` is set, unimodular U and V with U*M*V = diag are returned.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    d = [list(row) for row in matrix]
    for row in d:
        if len(row) != cols:
            raise ValueError("matrix rows must have equal length")
    u = identity_matrix(rows) if transforms else None
    v = identity_matrix(cols) if transforms else None

    def row_op(i, j, q):  # row_j -= q * row_i
        dj, di = d[j], d[i]
        for c in range(cols):
            dj[c] -= q * di[c]
        if u is not None:
            uj, ui = u[j], u[i]
            for c in range(rows):
                uj[c] -= q * ui[c]

    def col_op(i, j, q):  # col_j -= q * col_i
        for row in d:
            row[j] -= q * row[i]
        if v is not None:
            for row in v:
                row[j] -= q * row[i]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    for t in range(min(rows, cols)):
        # locate the smallest nonzero entry of the trailing submatrix
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            # clear column t below the pivot
            restart = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_op(t, i, q)
                    if d[i][t]:
                        row_swap(t, i)  # remainder is a smaller pivot
                        restart = True
                        break
            if restart:
                continue
            # clear row t to the right of the pivot
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_op(t, j, q)
                    if d[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            break
        if d[t][t] < 0:
            negate_row(t)

    diag = [d[i][i] for i in range(min(rows, cols))]

    # enforce the divisibility chain d1 | d2 | ... with 2x2 unimodular fixes
    k = len(diag)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = diag[i], diag[i + 1]
            if a == 0 and b != 0:
                row_swap(i, i + 1)
                col_swap(i, i + 1)
                diag[i], diag[i + 1] = b, a
                changed = True
            elif a != 0 and b % a != 0:
                g, x, y = _xgcd(a, b)
                lcm = a // g * b
                if u is not None:
                    bu, au = b // g, a // g
                    ri, rj = u[i], u[i + 1]
                    u[i] = [x * p + y * q for p, q in zip(ri, rj)]
                    u[i + 1] = [-bu * p + au * q for p, q in zip(ri, rj)]
                    xa, yb = x * a // g, y * b // g
                    for row in v:
                        p, q = row[i], row[i + 1]
                        row[i] = p + q
                        row[i + 1] = -yb * p + xa * q
                diag[i], diag[i + 1] = g, lcm
                d[i][i], d[i + 1][i + 1] = g, lcm
                changed = True
    for i in range(min(rows, cols)):
        d[i][i] = diag[i]

    return SmithResult(diag, u, v)


# --- finite abelian groups ---------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Invariant-factor form: d1 | d2 | ..., each >= 2, plus a free rank."""
    invariant_factors: tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a chain: {a} | {b} fails")
        if any(f < 2 for f in self.invariant_factors):
            raise ValueError("unit factors are dropped, not stored")

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        result = 1
        for f in self.invariant_factors:
            result *= f
        return result

    def __str__(self) -> str:
        parts = [f"Z_{f}" for f in self.invariant_factors]
        parts.extend("Z" for _ in range(self.free_rank))
        return " + ".join(parts) if parts else "0"


def group_from_diagonal(diagonal: Sequence[int]) -> AbelianGroup:
    factors = tuple(d for d in diagonal if d not in (0, 1))
    free = sum(1 for d in diagonal if d == 0)
    return AbelianGroup(factors, free)


def _factorize(n: int) -> dict[int, int]:
    powers: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            powers[p] = powers.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        powers[n] = powers.get(n, 0) + 1
    return powers


def group_from_cyclic_orders(orders: Sequence[int]) -> AbelianGroup:
    """Normalize a direct sum of cyclic groups to invariant-factor form."""
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        if n < 1:
            raise ValueError("cyclic orders must be positive")
        for p, e in _factorize(n).items():
            by_prime.setdefault(p, []).append(e)
    for exps in by_prime.values():
        exps.sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for slot in range(depth):  # slot 0 collects the largest factor
        f = 1
        for p, exps in by_prime.items():
            if slot < len(exps):
                f *= p ** exps[slot]
        factors.append(f)
    return AbelianGroup(tuple(f for f in reversed(factors) if f > 1), 0)


@dataclass(frozen=True)
class GroupFormula:
    """Direct sum of (Z_modulus)^multiplicity summands, as written."""
    summands: tuple[tuple[int, int], ...]

    def normalize(self) -> AbelianGroup:
        orders = []
        for modulus, mult in self.summands:
            if modulus < 1 or mult < 0:
                raise ValueError("moduli must be >= 1 and multiplicities >= 0")
            orders.extend([modulus] * mult)
        return group_from_cyclic_orders(orders)

    def order(self) -> int:
        result = 1
        for modulus, mult in self.summands:
            result *= modulus ** mult
        return result

    def __str__(self) -> str:
        parts = [f"(Z_{mod})^{mult}" for mod, mult in self.summands if mult > 0 and mod > 1]
        return " + ".join(parts) if parts else "0"


def db_formula(m: int, n: int) -> GroupFormula:
    """Critical group of DB_n(m), as a formula."""
    if m < 2 or n < 1:
        raise GraphError("formula requires m >= 2 and n >= 1")
    summands = [(m ** n, m - 2)]
    summands += [(m ** i, m ** (n - 1 - i) * (m - 1) ** 2) for i in range(1, n)]
    return GroupFormula(tuple(summands))


def kautz_formula(m: int, n: int) -> GroupFormula:
    """Critical group of Kautz_n(m), as a formula."""
    if m < 2 or n < 1:
        raise GraphError("formula requires m >= 2 and n >= 1")
    summands = [(m + 1, m - 1), (m ** (n - 1), m * m - 2)]
    summands += [(m ** i, m ** (n - 2 - i) * (m - 1) ** 2 * (m + 1)) for i in range(1, n - 1)]
    return GroupFormula(tuple(summands))


def group_order_db(m: int, n: int) -> int:
    if m < 2 or n < 1:
        raise GraphError("order formula requires m >= 2 and n >= 1")
    return m ** (m ** n - n - 1)


def group_order_kautz(m: int, n: int) -> int:
    if m < 2 or n < 1:
        raise GraphError("order formula requires m >= 2 and n >= 1")
    return (m + 1) ** (m - 1) * m ** (m ** n + m ** (n - 1) - m - n)


def tree_count_db(m: int, n: int) -> int:
    """kappa(DB_n(m)) = m^(m^n - 1)."""
    return m ** (m ** n - 1)


def tree_count_kautz(m: int, n: int) -> int:
    """kappa(Kautz_n(m)) = (m+1)^m m^((m^(n-1)-1)(m+1)); see the module notes."""
    return (m + 1) ** m * m ** ((m ** (n - 1) - 1) * (m + 1))


# --- sandpile / critical groups ----------------------------------------------

def _reduced_laplacian(g: DiGraph, sink: int) -> Matrix:
    lap = laplacian(g)
    return [[-lap[i][j] for j in range(g.n) if j != sink]
            for i in range(g.n) if i != sink]


def sandpile_group(g: DiGraph, sink: int) -> AbelianGroup:
    """Cokernel of the reduced Laplacian; order = trees rooted at the sink."""
    if not (0 <= sink < g.n):
        raise GraphError("sink out of range")
    if not is_strongly_connected(g):
        raise GraphError("sandpile group requires a strongly connected graph")
    snf = smith_normal_form(_reduced_laplacian(g, sink))
    group = group_from_diagonal(snf.diagonal)
    if group.free_rank:
        raise GraphError("reduced Laplacian is singular")  # unreachable when strongly connected
    return group


def critical_group(g: DiGraph, check_all_sinks: bool = False) -> AbelianGroup:
    """Sink-independent sandpile group of a balanced strongly connected graph."""
    if not is_eulerian(g):
        raise GraphError("critical group requires indeg = outdeg everywhere")
    if not is_strongly_connected(g):
        raise GraphError("critical group requires strong connectivity")
    group = sandpile_group(g, 0)
    if check_all_sinks:
        for sink in range(1, g.n):
            if sandpile_group(g, sink) != group:
                raise AssertionError(f"sink {sink} gives a different group")
    return group


def mult_by_k(group: AbelianGroup, k: int) -> AbelianGroup:
    """The subgroup k*K: each Z_d becomes Z_(d / gcd(d, k))."""
    if group.free_rank:
        raise ValueError("mult_by_k is defined for finite groups")
    orders = [d // gcd(d, k) for d in group.invariant_factors]
    return group_from_cyclic_orders([d for d in orders if d > 1])


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def sylow(group: AbelianGroup, p: int) -> AbelianGroup:
    """The Sylow-p subgroup: p-power part of each invariant factor."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if group.free_rank:
        raise ValueError("sylow is defined for finite groups")
    orders = []
    for d in group.invariant_factors:
        part = 1
        while d % p == 0:
            part *= p
            d //= p
        if part > 1:
            orders.append(part)
    return group_from_cyclic_orders(orders)


@dataclass
class DivisibilityReport:
    family: str
    m: int
    n: int
    class_count: int
    diagonal: list[int]
    holds: bool

    def to_json_dict(self) -> dict:
        return {"family": self.family, "m": self.m, "n": self.n,
                "class_count": self.class_count,
                "invariant_factors": [str(d) for d in self.diagonal],
                "holds": self.holds}


def check_divbym(g: DiGraph) -> DivisibilityReport:
    """Invariant-factor split of the full Laplacian of a family graph.

    For debruijn(m, n) or kautz(m, n) with n >= 2, the first c = |V|/m
    invariant factors must be coprime to m and the remaining |V| - c
    divisible by m (the trailing 0 counts as divisible).
    """
    family, m, length = detect_family(g)
    if length < 2:
        raise GraphError("divisibility split needs string length >= 2")
    c = g.n // m
    diag = smith_normal_form(laplacian(g)).diagonal
    holds = (all(gcd(d, m) == 1 for d in diag[:c])
             and all(d % m == 0 for d in diag[c:]))
    return DivisibilityReport(family, m, length, c, diag, holds)
