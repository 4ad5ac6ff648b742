"""Seifert surfaces of closed braids and their Alexander polynomials.

Seifert's algorithm on the closed-braid diagram of a word in B_n produces
n parallel disks joined by one half-twisted band per letter.  First
homology is generated by one cycle for each pair of consecutive bands in
the same column; Seifert linking numbers of those cycles against their
positive pushoffs fill an integer matrix V with

    Alexander polynomial  =  det(V^T - t V)   up to units +-t^k.

The same polynomial is computed independently from the reduced Burau
representation, and the two routes are required to agree on every strict
word; that cross-check pins every sign convention used below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import Braidword, NonStrictWordError, is_strict
from .laurent import (
    LaurentPoly,
    ONE,
    T,
    ZERO,
    determinant,
    identity_matrix,
    matmul,
)


class OracleMismatchError(RuntimeError):
    """The Seifert-matrix route and the Burau route disagree; implementation bug."""


@dataclass(frozen=True)
class HandleDecomposition:
    """n disks (0-handles) plus one band (1-handle) per letter, in word order."""

    disks: int
    bands: tuple[tuple[int, int], ...]  # (column, sign)

    @property
    def chi(self) -> int:
        return self.disks - len(self.bands)


@dataclass(frozen=True)
class SeifertMatrix:
    entries: tuple[tuple[int, ...], ...]
    chi: int
    h1: int
    boundary_components: int | None
    connected: bool

    def __post_init__(self):
        if len(self.entries) != self.h1:
            raise ValueError("matrix size must equal h1")
        if any(len(row) != self.h1 for row in self.entries):
            raise ValueError("matrix must be square")
        if self.connected and self.h1 != 1 - self.chi:
            raise ValueError("connected surface must satisfy h1 = 1 - chi")

    @staticmethod
    def from_rows(
        rows: list[list[int]] | tuple[tuple[int, ...], ...],
        chi: int,
        boundary_components: int | None = None,
        connected: bool = True,
    ) -> "SeifertMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        return SeifertMatrix(entries, chi, len(entries), boundary_components, connected)


def seifert_from_braid(b: Braidword) -> HandleDecomposition:
    """One disk per strand, one band per letter, in word order."""
    return HandleDecomposition(b.strands, tuple(b.letters))


def braid_permutation(hd: HandleDecomposition) -> tuple[int, ...]:
    """Underlying permutation of strand labels (signs are irrelevant)."""
    perm = list(range(hd.disks))
    for col, _sign in hd.bands:
        perm[col - 1], perm[col] = perm[col], perm[col - 1]
    return tuple(perm)


def boundary_components(hd: HandleDecomposition) -> int:
    """Component count of the closure = cycle count of the braid permutation."""
    perm = braid_permutation(hd)
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return cycles


def seifert_matrix_from_braid(b: Braidword) -> SeifertMatrix:
    """Seifert matrix of the Seifert-algorithm surface of a strict word.

    Basis: for each column i, one cycle per consecutive (non-cyclic) pair of
    same-column bands, ordered by column and then by position.  Entries:

    * a cycle through bands of signs e, f has self-linking -(e + f)/2;
    * cycles sharing a band of sign e get (V[x,y], V[y,x]) = (1,0) for
      e = +1 and (0,-1) for e = -1, x the earlier cycle;
    * a column-i cycle spanning positions (a,b) and a column-(i+1) cycle
      spanning (c,d) interact only when the spans interleave, and only the
      column-i pushoff links: V[x,y] = +1 if a < c < b < d, -1 if
      c < a < d < b (the sign is a basis convention; the vanishing of
      V[y,x] makes the matrix block upper triangular in column order).

    Every choice here is pinned by exhaustive agreement of
    det(V^T - tV) with the Burau route.
    """
    if not is_strict(b):
        raise NonStrictWordError("Seifert matrix needs a strict word (connected surface)")
    n, k = b.strands, len(b.letters)
    positions: dict[int, list[int]] = {i: [] for i in range(1, n)}
    for pos, (idx, _sign) in enumerate(b.letters):
        positions[idx].append(pos)
    sign_at = {pos: sign for pos, (_idx, sign) in enumerate(b.letters)}

    gens: list[tuple[int, int, int]] = []  # (column, first band, second band)
    for i in range(1, n):
        occ = positions[i]
        gens.extend((i, occ[j], occ[j + 1]) for j in range(len(occ) - 1))
    h1 = len(gens)
    assert h1 == k - n + 1

    v = [[0] * h1 for _ in range(h1)]
    for x, (ci, a, bb) in enumerate(gens):
        v[x][x] = -(sign_at[a] + sign_at[bb]) // 2
        for y in range(x + 1, h1):
            cj, c, d = gens[y]
            if ci == cj:
                if c == bb:  # consecutive cycles sharing the middle band
                    if sign_at[bb] == 1:
                        v[x][y] = 1
                    else:
                        v[y][x] = -1
            elif cj == ci + 1:
                if a < c < bb < d:
                    v[x][y] = 1
                elif c < a < d < bb:
                    v[x][y] = -1
    hd = seifert_from_braid(b)
    return SeifertMatrix.from_rows(
        v, chi=n - k, boundary_components=boundary_components(hd), connected=True
    )


def alexander_from_seifert(v: SeifertMatrix) -> LaurentPoly:
    """Normalized det(V^T - t*V); the 0x0 matrix gives 1 (disk/unknot)."""
    m = v.h1
    if m == 0:
        return ONE
    rows = [
        [
            LaurentPoly.const(v.entries[j][i]) - T.scale(v.entries[i][j])
            for j in range(m)
        ]
        for i in range(m)
    ]
    return determinant(rows).normalize()


def _reduced_burau_letter(n: int, idx: int, sign: int) -> list[list[LaurentPoly]]:
    """Reduced Burau matrix of s_idx^sign acting on the quotient basis
    e_1..e_{n-1} of C^n modulo the fixed vector (1,...,1)."""
    m = n - 1
    mat = identity_matrix(m)

    def col(j: int, images: dict[int, LaurentPoly]) -> None:
        for i in range(m):
            mat[i][j] = images.get(i, ZERO)

    i = idx - 1  # 0-based basis slot of e_idx
    if sign == 1:
        if idx < n - 1:
            col(i, {i: ONE - T, i + 1: ONE})
            col(i + 1, {i: T})
        else:
            # e_n is -(e_1 + ... + e_{n-1}) in the quotient.
            images = {j: -ONE for j in range(m)}
            images[i] = (ONE - T) - ONE
            col(i, images)
    else:
        tinv = LaurentPoly.t_power(-1)
        if idx < n - 1:
            col(i, {i + 1: tinv})
            col(i + 1, {i: ONE, i + 1: ONE - tinv})
        else:
            col(i, {j: -tinv for j in range(m)})
    return mat


def reduced_burau(b: Braidword) -> list[list[LaurentPoly]]:
    mat = identity_matrix(b.strands - 1)
    for idx, sign in b.letters:
        mat = matmul(mat, _reduced_burau_letter(b.strands, idx, sign))
    return mat


def alexander_via_burau(b: Braidword) -> LaurentPoly:
    """Normalized Alexander polynomial of the closure via the reduced Burau
    representation: det(I - Burau(word)) * (1 - t) / (1 - t^n), exactly."""
    if not is_strict(b):
        raise NonStrictWordError("Burau route needs a strict word")
    n = b.strands
    m = n - 1
    burau = reduced_burau(b)
    ident = identity_matrix(m)
    diff = [[ident[i][j] - burau[i][j] for j in range(m)] for i in range(m)]
    det = determinant(diff)
    if det.is_zero:
        return ZERO
    numerator = det * (ONE - T)
    denominator = ONE - LaurentPoly.t_power(n)
    try:
        quotient = numerator.divide_exact(denominator)
    except ArithmeticError as exc:
        raise OracleMismatchError(
            f"Burau determinant not divisible by 1 - t^{n}: implementation bug"
        ) from exc
    return quotient.normalize()


def alexander_cross_checked(b: Braidword) -> LaurentPoly:
    """Alexander polynomial with both routes run and compared."""
    via_matrix = alexander_from_seifert(seifert_matrix_from_braid(b))
    via_burau = alexander_via_burau(b)
    if via_matrix != via_burau:
        raise OracleMismatchError(
            f"Seifert route {via_matrix.to_text()} != Burau route {via_burau.to_text()}"
            f" for word {b}"
        )
    return via_matrix
