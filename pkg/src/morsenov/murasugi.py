"""Murasugi sums as an expression algebra over Seifert matrices.

Expression trees are built from braid-surface leaves, annuli A(K, n)
(Seifert matrix [n], companion knot K optional), and disks, combined by
2n-gonal plumbing nodes and handle-twisting nodes.  Evaluation propagates
the combinatorial shadow of the sum: the block-triangular Seifert matrix,
Euler characteristic, freeness and fiberedness tri-states, and upper
bounds (sometimes exact values, always with a provenance tag) for the
Morse-Novikov number of the boundary link.

Facts used for propagation, with the tags that cite them:

* plumbing adds Morse-Novikov upper bounds (critical points of the two
  maps survive a Murasugi sum unchanged);
* a Murasugi sum is free iff both summands are free (the complement
  fundamental group is the free product of the summands');
* closures of homogeneous braids fiber (Stallings), Hopf bands fiber,
  and plumbings of fibered surfaces fiber (Gabai) - the last is an
  external assumption and is tagged as such;
* the 2-component unlink, bounded by the untwisted annulus A(O, 0), has
  Morse-Novikov number exactly 2, as does the boundary of A(O, n) for
  every n != +-1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from .braid import Braidword, inhomogeneity, is_strict, NonStrictWordError
from .surface import (
    SeifertMatrix,
    boundary_components,
    seifert_from_braid,
    seifert_matrix_from_braid,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"

TAG_UNLINK = "MN(2-component unlink) = 2; untwisted annulus A(O,0)"
TAG_HOPF = "Hopf band is a fiber surface of the (2,2)-torus link"
TAG_ANNULUS = "MN(boundary of A(O,n)) = 2 for every n != +-1"
TAG_KNOTTED_ANNULUS = "knotted annulus A(K,n): not free; MN = 2 (doubling construction)"
TAG_DISK = "disk bounds the unknot; fibered"
TAG_HOMOGENEOUS = "homogeneous braid closure is fibered (Stallings)"
TAG_INHOMOGENEITY = "MN(closure) <= 2 * braidword inhomogeneity"
TAG_SUBADDITIVE = "MN is subadditive over Murasugi sums"
TAG_FIBERED_SUM = "plumbing of fibered surfaces is fibered (Gabai; external assumption)"
TAG_FIBERED_MN0 = "fibered link: MN = 0"
TAG_FREE_SUM = "Murasugi sum is free iff both summands are free"
TAG_TWIST_FREE = "twisting a handle preserves freeness (twist along a meridian disk)"
TAG_FREE_BOUND = "free surface with h1 = m bounds a Morse map with 2m critical points"
TAG_TWIST_KNOT = "twist knot: MN = 2 unless fibered (trefoils, figure-8)"
TAG_DOUBLED = "doubled knot D(K,n,-+1): MN = 2, minimal non-free Morse map"


class ExpressionError(ValueError):
    """Ill-formed surface expression (bad shapes, bad indices, bad gon)."""


class UnsupportedTwistError(ValueError):
    """Twisting a surface not known to be free: no sound MN bound exists here."""


@dataclass(frozen=True)
class LeafDisk:
    pass


@dataclass(frozen=True)
class LeafAnnulus:
    twists: int
    companion: SeifertMatrix | None = None  # Seifert matrix of the companion knot K

    def knotted(self) -> bool:
        return self.companion is not None and self.companion.h1 > 0


@dataclass(frozen=True)
class LeafBraid:
    word: Braidword


@dataclass(frozen=True)
class Plumb:
    left: "SurfaceExpr"
    right: "SurfaceExpr"
    gon: int  # 2n-gon; 2 = connected sum, 4 = annulus plumbing
    interaction: tuple[tuple[int, ...], ...]  # h1(left) x h1(right) block B


@dataclass(frozen=True)
class Twist:
    child: "SurfaceExpr"
    generator_index: int
    turns: int


SurfaceExpr = Union[LeafDisk, LeafAnnulus, LeafBraid, Plumb, Twist]


@dataclass(frozen=True)
class SeifertMatrixBundle:
    matrix: SeifertMatrix
    chi: int
    h1: int
    boundary_components: int | None
    free: str
    fibered: str
    mn_upper: int
    mn_exact: int | None
    provenance: tuple[str, ...]

    def __post_init__(self):
        if self.matrix.connected and self.h1 != 1 - self.chi:
            raise ValueError("connected bundle must satisfy h1 = 1 - chi")
        if self.mn_upper < 0 or self.mn_upper % 2 != 0:
            raise ValueError("mn_upper must be a nonnegative even integer")
        if self.mn_exact is not None:
            if self.mn_exact % 2 != 0 or not 0 <= self.mn_exact <= self.mn_upper:
                raise ValueError("mn_exact must be even and <= mn_upper")
            if not self.provenance:
                raise ValueError("an exact MN value needs a provenance tag")
        if self.fibered == YES and self.mn_exact != 0:
            raise ValueError("fibered implies mn_exact = 0")


def propagate_free(left: str, right: str) -> str:
    """Tri-state freeness of a Murasugi sum: free iff both summands free."""
    if left == NO or right == NO:
        return NO
    if left == YES and right == YES:
        return YES
    return UNKNOWN


def propagate_mn(
    left: SeifertMatrixBundle, right: SeifertMatrixBundle
) -> tuple[int, int | None]:
    """(mn_upper, mn_exact) of a plumb node from its children.

    The bound adds.  Exactness propagates only through fiberedness of both
    children; other exact values come from leaf- or constructor-level tags.
    """
    mn_upper = left.mn_upper + right.mn_upper
    mn_exact = 0 if (left.fibered == YES and right.fibered == YES) else None
    return mn_upper, mn_exact


def plumb_matrices(
    v0: SeifertMatrix, v1: SeifertMatrix, interaction: tuple[tuple[int, ...], ...]
) -> SeifertMatrix:
    """Block matrix [[V0, B], [0, V1]] of a Murasugi sum; chi = chi0 + chi1 - 1."""
    b = tuple(tuple(int(x) for x in row) for row in interaction)
    if len(b) != v0.h1 or any(len(row) != v1.h1 for row in b):
        raise ExpressionError(
            f"interaction block must be {v0.h1} x {v1.h1}, got "
            f"{len(b)} x {len(b[0]) if b else 0}"
        )
    top = [list(row0) + list(brow) for row0, brow in zip(v0.entries, b)]
    bottom = [[0] * v0.h1 + list(row1) for row1 in v1.entries]
    return SeifertMatrix.from_rows(
        top + bottom,
        chi=v0.chi + v1.chi - 1,
        boundary_components=None,
        connected=v0.connected and v1.connected,
    )


def twist_matrix(v: SeifertMatrix, s: int, turns: int) -> SeifertMatrix:
    """Add ``turns`` full twists to the handle carrying basis element s:
    V' = V + turns * E_ss.  Caller guarantees the cycle runs through the
    twisted handle exactly once."""
    if not 0 <= s < v.h1:
        raise ExpressionError(f"basis index {s} out of range [0, {v.h1})")
    rows = [list(row) for row in v.entries]
    rows[s][s] += turns
    return SeifertMatrix.from_rows(
        rows, chi=v.chi, boundary_components=v.boundary_components, connected=v.connected
    )


def _annulus_bundle(twists: int, companion: SeifertMatrix | None) -> SeifertMatrixBundle:
    matrix = SeifertMatrix.from_rows([[twists]], chi=0, boundary_components=2)
    knotted = companion is not None and companion.h1 > 0
    if knotted:
        return SeifertMatrixBundle(
            matrix, 0, 1, 2, free=NO, fibered=NO, mn_upper=2, mn_exact=2,
            provenance=(TAG_KNOTTED_ANNULUS,),
        )
    if twists in (-1, 1):
        return SeifertMatrixBundle(
            matrix, 0, 1, 2, free=YES, fibered=YES, mn_upper=0, mn_exact=0,
            provenance=(TAG_HOPF, TAG_FIBERED_MN0),
        )
    tag = TAG_UNLINK if twists == 0 else TAG_ANNULUS
    return SeifertMatrixBundle(
        matrix, 0, 1, 2, free=YES, fibered=NO, mn_upper=2, mn_exact=2,
        provenance=(tag,),
    )


def _braid_bundle(word: Braidword) -> SeifertMatrixBundle:
    matrix = seifert_matrix_from_braid(word)
    inhom = inhomogeneity(word)
    bdry = boundary_components(seifert_from_braid(word))
    if inhom == 0:
        return SeifertMatrixBundle(
            matrix, matrix.chi, matrix.h1, bdry, free=YES, fibered=YES,
            mn_upper=0, mn_exact=0, provenance=(TAG_HOMOGENEOUS, TAG_FIBERED_MN0),
        )
    return SeifertMatrixBundle(
        matrix, matrix.chi, matrix.h1, bdry, free=UNKNOWN, fibered=UNKNOWN,
        mn_upper=2 * inhom, mn_exact=None, provenance=(TAG_INHOMOGENEITY,),
    )


_DISK_BUNDLE = SeifertMatrixBundle(
    SeifertMatrix.from_rows([], chi=1, boundary_components=1),
    1, 0, 1, free=YES, fibered=YES, mn_upper=0, mn_exact=0,
    provenance=(TAG_DISK, TAG_FIBERED_MN0),
)


def _unwrap_annulus(expr: SurfaceExpr) -> LeafAnnulus | None:
    """The annulus leaf under a chain of Twist nodes, if that is the shape."""
    total = 0
    while isinstance(expr, Twist):
        total += expr.turns
        expr = expr.child
    if isinstance(expr, LeafAnnulus):
        return LeafAnnulus(expr.twists + total, expr.companion)
    return None


def eval_expr(expr: SurfaceExpr) -> SeifertMatrixBundle:
    """Bottom-up evaluation of a surface expression."""
    if isinstance(expr, LeafDisk):
        return _DISK_BUNDLE
    if isinstance(expr, LeafAnnulus):
        return _annulus_bundle(expr.twists, expr.companion)
    if isinstance(expr, LeafBraid):
        return _braid_bundle(expr.word)
    if isinstance(expr, Plumb):
        left = eval_expr(expr.left)
        right = eval_expr(expr.right)
        if expr.gon < 2 or expr.gon % 2 != 0:
            raise ExpressionError(f"gon must be a positive even integer, got {expr.gon}")
        if expr.gon == 2 and any(x != 0 for row in expr.interaction for x in row):
            raise ExpressionError("a 2-gonal sum (connected sum) has zero interaction")
        matrix = plumb_matrices(left.matrix, right.matrix, expr.interaction)
        mn_upper, mn_exact = propagate_mn(left, right)
        fibered = YES if (left.fibered == YES and right.fibered == YES) else UNKNOWN
        tags = tuple(dict.fromkeys(left.provenance + right.provenance)) + (TAG_SUBADDITIVE,)
        if fibered == YES:
            tags = tags + (TAG_FIBERED_SUM, TAG_FIBERED_MN0)
        return SeifertMatrixBundle(
            matrix, matrix.chi, matrix.h1, None,
            free=propagate_free(left.free, right.free),
            fibered=fibered, mn_upper=mn_upper, mn_exact=mn_exact, provenance=tags,
        )
    if isinstance(expr, Twist):
        child = eval_expr(expr.child)
        matrix = twist_matrix(child.matrix, expr.generator_index, expr.turns)
        if expr.turns == 0:
            return child
        as_annulus = _unwrap_annulus(expr)
        if as_annulus is not None:
            return _annulus_bundle(as_annulus.twists, as_annulus.companion)
        if child.free != YES:
            raise UnsupportedTwistError(
                "twisting a surface not known to be free leaves no sound MN bound"
            )
        tags = tuple(dict.fromkeys(child.provenance)) + (TAG_TWIST_FREE, TAG_FREE_BOUND)
        return SeifertMatrixBundle(
            matrix, child.chi, child.h1, child.boundary_components,
            free=YES, fibered=UNKNOWN, mn_upper=2 * child.h1, mn_exact=None,
            provenance=tags,
        )
    raise ExpressionError(f"not a surface expression: {expr!r}")


def twist_knot(n: int, hopf_sign: int) -> tuple[SurfaceExpr, SeifertMatrixBundle]:
    """Genus-1 surface A(O,n) * A(O,hopf_sign) and its bundle.

    The boundary has MN = 2 except for n in {-1, +1}, where the surface is
    a fiber surface (trefoils and the figure-8 knot) and MN = 0.
    """
    if hopf_sign not in (-1, 1):
        raise ExpressionError("hopf_sign must be -1 or +1")
    expr = Plumb(LeafAnnulus(n), LeafAnnulus(hopf_sign), gon=4, interaction=((1,),))
    bundle = eval_expr(expr)
    bundle = replace(bundle, boundary_components=1)
    if n not in (-1, 1):
        bundle = replace(
            bundle, mn_exact=2, provenance=bundle.provenance + (TAG_TWIST_KNOT,)
        )
    return expr, bundle


def doubled_knot(
    companion: SeifertMatrix, n: int, hopf_sign: int
) -> tuple[SurfaceExpr, SeifertMatrixBundle]:
    """Doubled knot D(K,n,hopf_sign) = boundary of A(K,n) * A(O,hopf_sign).

    MN = 2, realized by a minimal, non-free Morse map.  The companion only
    affects metadata: the annulus A(K,n) keeps Seifert matrix [n].
    """
    if hopf_sign not in (-1, 1):
        raise ExpressionError("hopf_sign must be -1 or +1")
    expr = Plumb(
        LeafAnnulus(n, companion), LeafAnnulus(hopf_sign), gon=4, interaction=((1,),)
    )
    bundle = eval_expr(expr)
    bundle = replace(
        bundle,
        boundary_components=1,
        mn_exact=2,
        provenance=bundle.provenance + (TAG_DOUBLED,),
    )
    return expr, bundle


def deplumb_braid_surface(b: Braidword) -> tuple[dict[int, tuple[int, ...]], int]:
    """Strip untwisted-annulus plumbings off a braid surface, column by column.

    Each column's signs form a cyclic word; while a cyclically adjacent
    (+, -) pair exists, the first one in word order is removed and counts
    one A(O, 0) plumbing.  Returns the residual homogeneous sign words and
    the total number of removals, which always equals the inhomogeneity.
    """
    if not is_strict(b):
        raise NonStrictWordError("deplumbing needs a strict word")
    residual: dict[int, tuple[int, ...]] = {}
    removed = 0
    for col in range(1, b.strands):
        signs = [s for i, s in b.letters if i == col]
        while True:
            k = len(signs)
            pair = next(
                (j for j in range(k) if signs[j] == 1 and signs[(j + 1) % k] == -1),
                None,
            )
            if pair is None:
                break
            drop = {pair, (pair + 1) % k}
            signs = [s for j, s in enumerate(signs) if j not in drop]
            removed += 1
        residual[col] = tuple(signs)
    return residual, removed


def expr_to_json_obj(expr: SurfaceExpr) -> dict:
    if isinstance(expr, LeafDisk):
        return {"disk": {}}
    if isinstance(expr, LeafAnnulus):
        obj: dict = {"n": expr.twists}
        if expr.companion is not None:
            obj["companion"] = [list(row) for row in expr.companion.entries]
        return {"annulus": obj}
    if isinstance(expr, LeafBraid):
        return {"braid": {"strands": expr.word.strands, "word": expr.word.to_ints()}}
    if isinstance(expr, Plumb):
        return {
            "plumb": {
                "gon": expr.gon,
                "B": [list(row) for row in expr.interaction],
                "left": expr_to_json_obj(expr.left),
                "right": expr_to_json_obj(expr.right),
            }
        }
    if isinstance(expr, Twist):
        return {
            "twist": {
                "child": expr_to_json_obj(expr.child),
                "index": expr.generator_index,
                "turns": expr.turns,
            }
        }
    raise ExpressionError(f"not a surface expression: {expr!r}")


def expr_from_json_obj(obj: dict) -> SurfaceExpr:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ExpressionError(f"expected a one-key expression object, got {obj!r}")
    (kind, body), = obj.items()
    if kind == "disk":
        return LeafDisk()
    if kind == "annulus":
        companion = None
        if "companion" in body:
            rows = [[int(x) for x in row] for row in body["companion"]]
            size = len(rows)
            companion = SeifertMatrix.from_rows(rows, chi=1 - size)
        return LeafAnnulus(int(body["n"]), companion)
    if kind == "braid":
        return LeafBraid(Braidword.from_ints(int(body["strands"]), list(body["word"])))
    if kind == "plumb":
        return Plumb(
            left=expr_from_json_obj(body["left"]),
            right=expr_from_json_obj(body["right"]),
            gon=int(body.get("gon", 4)),
            interaction=tuple(tuple(int(x) for x in row) for row in body["B"]),
        )
    if kind == "twist":
        return Twist(
            child=expr_from_json_obj(body["child"]),
            generator_index=int(body["index"]),
            turns=int(body["turns"]),
        )
    raise ExpressionError(f"unknown expression kind {kind!r}")


def bundle_to_json_obj(bundle: SeifertMatrixBundle) -> dict:
    return {
        "matrix": [list(row) for row in bundle.matrix.entries],
        "chi": bundle.chi,
        "h1": bundle.h1,
        "boundary_components": bundle.boundary_components,
        "connected": bundle.matrix.connected,
        "free": bundle.free,
        "fibered": bundle.fibered,
        "mn_upper": bundle.mn_upper,
        "mn_exact": bundle.mn_exact,
        "provenance": list(bundle.provenance),
    }
