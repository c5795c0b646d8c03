"""Green's relations, quotients, factor decompositions, cosets and diamonds.

All functions are pure over immutable SkewLattice values. Class ids are
assigned by smallest contained element so reports and tests are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import InternalInconsistencyError, CayleyPair, SkewLattice, validate


class NotACongruenceError(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"partition is not a congruence, witness {witness}")


@dataclass(frozen=True)
class Partition:
    """Equivalence classes over 0..n-1, ids ordered by smallest member."""

    class_of: tuple
    classes: tuple  # tuple of frozensets

    @classmethod
    def from_pairs(cls, n: int, related) -> "Partition":
        """Build from a predicate related(x, y) assumed to be an equivalence."""
        seen = {}
        classes = []
        class_of = [-1] * n
        for x in range(n):
            if class_of[x] >= 0:
                continue
            members = frozenset(y for y in range(n) if related(x, y))
            cid = len(classes)
            classes.append(members)
            for y in members:
                class_of[y] = cid
        del seen
        return cls(tuple(class_of), tuple(classes))

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)), tuple(frozenset({x}) for x in range(n)))

    @property
    def size(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class QuotientAlgebra:
    base: SkewLattice
    partition: Partition
    algebra: SkewLattice  # operation tables on class ids


@dataclass(frozen=True)
class Coset:
    upper_class: int
    lower_class: int
    direction: str  # "of-upper-in-lower" | "of-lower-in-upper"
    elements: frozenset


@dataclass(frozen=True)
class SkewDiamond:
    J: int
    A: int
    B: int
    M: int


def green_relations(S: SkewLattice):
    """Return (L, R, D) partitions computed from the meet band.

    Cross-asserts the meet/join coincidences (D_meet = D_join,
    R_meet = L_join, R_join = L_meet); these are theorems, so a failure
    raises InternalInconsistencyError.
    """
    m, j, n = S.pair.meet, S.pair.join, S.n

    def build(t, rel):
        return Partition.from_pairs(n, lambda x, y: rel(t, x, y))

    def l_rel(t, x, y):
        return t[x][y] == x and t[y][x] == y

    def r_rel(t, x, y):
        return t[x][y] == y and t[y][x] == x

    def d_rel(t, x, y):
        return t[t[x][y]][x] == x and t[t[y][x]][y] == y

    L = build(m, l_rel)
    R = build(m, r_rel)
    D = build(m, d_rel)
    if build(j, d_rel).class_of != D.class_of:
        raise InternalInconsistencyError("meet and join D relations differ")
    if build(j, l_rel).class_of != R.class_of:
        raise InternalInconsistencyError("R of meet differs from L of join")
    if build(j, r_rel).class_of != L.class_of:
        raise InternalInconsistencyError("L of meet differs from R of join")
    return L, R, D


def is_left_handed(S: SkewLattice) -> bool:
    """x^y^x = x^y everywhere; cross-asserted against L = D."""
    m = S.pair.meet
    ok = all(m[m[x][y]][x] == m[x][y] for x in S.elements() for y in S.elements())
    L, _, D = green_relations(S)
    if ok != (L.class_of == D.class_of):
        raise InternalInconsistencyError("left-handed identity disagrees with L=D")
    return ok


def is_right_handed(S: SkewLattice) -> bool:
    """x^y^x = y^x everywhere; cross-asserted against R = D."""
    m = S.pair.meet
    ok = all(m[m[x][y]][x] == m[y][x] for x in S.elements() for y in S.elements())
    _, R, D = green_relations(S)
    if ok != (R.class_of == D.class_of):
        raise InternalInconsistencyError("right-handed identity disagrees with R=D")
    return ok


def is_congruence(S: SkewLattice, P: Partition):
    """Return None if P is a congruence for both operations, else a witness."""
    cls = P.class_of
    for x in range(S.n):
        for y in range(S.n):
            if cls[x] != cls[y]:
                continue
            for c in range(S.n):
                for t in (S.pair.meet, S.pair.join):
                    if cls[t[x][c]] != cls[t[y][c]] or cls[t[c][x]] != cls[t[c][y]]:
                        return (x, y, c)
    return None


def quotient(S: SkewLattice, P: Partition) -> QuotientAlgebra:
    witness = is_congruence(S, P)
    if witness is not None:
        raise NotACongruenceError(witness)
    reps = [min(c) for c in P.classes]
    k = len(reps)
    meet = [[P.class_of[S.meet(reps[a], reps[b])] for b in range(k)] for a in range(k)]
    join = [[P.class_of[S.join(reps[a], reps[b])] for b in range(k)] for a in range(k)]
    q = validate(CayleyPair.from_tables(meet, join))
    return QuotientAlgebra(S, P, q)


def is_lattice(S: SkewLattice) -> bool:
    m, j = S.pair.meet, S.pair.join
    return all(
        m[x][y] == m[y][x] and j[x][y] == j[y][x] for x in S.elements() for y in S.elements()
    )


def maximal_lattice_image(S: SkewLattice) -> QuotientAlgebra:
    """S/D; always a lattice (asserted)."""
    _, _, D = green_relations(S)
    q = quotient(S, D)
    if not is_lattice(q.algebra):
        raise InternalInconsistencyError("S/D is not a lattice")
    return q


def factors(S: SkewLattice):
    """Left and right factors (S/R, S/L), with the fiber-product check.

    The map x -> ([x]_R, [x]_L) must be injective and its image must be
    exactly the pullback over S/D; anything else is a library bug.
    """
    L, R, D = green_relations(S)
    left = quotient(S, R)
    right = quotient(S, L)
    if not is_left_handed(left.algebra):
        raise InternalInconsistencyError("S/R is not left handed")
    if not is_right_handed(right.algebra):
        raise InternalInconsistencyError("S/L is not right handed")
    image = {(R.class_of[x], L.class_of[x]) for x in S.elements()}
    if len(image) != S.n:
        raise InternalInconsistencyError("x -> ([x]_R, [x]_L) is not injective")
    d_of_r = {R.class_of[x]: D.class_of[x] for x in S.elements()}
    d_of_l = {L.class_of[x]: D.class_of[x] for x in S.elements()}
    pullback = {
        (a, b)
        for a in range(R.size)
        for b in range(L.size)
        if d_of_r[a] == d_of_l[b]
    }
    if image != pullback:
        raise InternalInconsistencyError("fiber-product reconstruction failed")
    return left, right


def class_order(S: SkewLattice, D: Partition):
    """Return leq matrix on D-class ids, per the order of S/D."""
    k = D.size
    reps = [min(c) for c in D.classes]
    m = S.pair.meet
    leq = [[False] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            x, y = reps[a], reps[b]
            leq[a][b] = m[m[x][y]][x] == x  # x preceq y lifts to class order
    return [tuple(row) for row in leq]


def cosets(S: SkewLattice, A: int, B: int, direction: str, D: Partition = None) -> list:
    """Cosets between comparable D-classes A > B.

    direction "of-upper-in-lower": subsets a ^ b ^ a' of B for b in B;
    direction "of-lower-in-upper": subsets b v a v b' of A for a in A.
    The returned cosets partition the target class (asserted).
    """
    if D is None:
        _, _, D = green_relations(S)
    ord_ = class_order(S, D)
    if not (ord_[B][A] and A != B):
        raise ValueError(f"classes {A} > {B} are not strictly comparable")
    m, j = S.pair.meet, S.pair.join
    upper = sorted(D.classes[A])
    lower = sorted(D.classes[B])
    out = []
    seen = set()
    if direction == "of-upper-in-lower":
        for b in lower:
            cs = frozenset(m[m[a][b]][a2] for a in upper for a2 in upper)
            if cs not in seen:
                seen.add(cs)
                out.append(Coset(A, B, direction, cs))
        target = set(lower)
    elif direction == "of-lower-in-upper":
        for a in upper:
            cs = frozenset(j[j[b][a]][b2] for b in lower for b2 in lower)
            if cs not in seen:
                seen.add(cs)
                out.append(Coset(A, B, direction, cs))
        target = set(upper)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    covered = set()
    for c in out:
        if covered & c.elements:
            raise InternalInconsistencyError("cosets overlap")
        covered |= c.elements
    if covered != target:
        raise InternalInconsistencyError("cosets do not cover the target class")
    out.sort(key=lambda c: min(c.elements))
    return out


def coset_bijection(S: SkewLattice, coset_upper: Coset, coset_lower: Coset) -> dict:
    """The order bijection: x in the upper coset maps to the unique y <= x."""
    from .core import orders

    leq = orders(S).leq
    mapping = {}
    for x in sorted(coset_upper.elements):
        below = [y for y in sorted(coset_lower.elements) if leq[y][x]]
        if len(below) != 1:
            raise InternalInconsistencyError(
                f"element {x} has {len(below)} images in the lower coset"
            )
        mapping[x] = below[0]
    if len(set(mapping.values())) != len(coset_lower.elements):
        raise InternalInconsistencyError("coset map is not a bijection")
    return mapping


def skew_diamonds(S: SkewLattice, D: Partition = None) -> list:
    """All class quadruples {J > A,B > M} with M = A^B and J = AvB."""
    if D is None:
        _, _, D = green_relations(S)
    reps = [min(c) for c in D.classes]
    k = D.size
    m, j = S.pair.meet, S.pair.join
    ord_ = class_order(S, D)
    out = []
    for a in range(k):
        for b in range(a + 1, k):
            M = D.class_of[m[reps[a]][reps[b]]]
            J = D.class_of[j[reps[a]][reps[b]]]
            if len({a, b, M, J}) != 4:
                continue
            if ord_[M][a] and ord_[M][b] and ord_[a][J] and ord_[b][J]:
                out.append(SkewDiamond(J=J, A=a, B=b, M=M))
    out.sort(key=lambda d: (d.J, d.A, d.B, d.M))
    return out


def structure_report(S: SkewLattice) -> str:
    """Plain-text structure report with stable ordering."""
    L, R, D = green_relations(S)
    ord_ = class_order(S, D)
    lines = [f"n: {S.n}"]
    lines.append(f"left-handed: {is_left_handed(S)}")
    lines.append(f"right-handed: {is_right_handed(S)}")
    for cid, cls in enumerate(D.classes):
        lines.append(f"D-class {cid}: {{{', '.join(str(x) for x in sorted(cls))}}}")
    edges = []
    k = D.size
    for a in range(k):
        for b in range(k):
            if a == b or not ord_[a][b]:
                continue
            # Hasse edge: no class strictly between
            if not any(c not in (a, b) and ord_[a][c] and ord_[c][b] for c in range(k)):
                edges.append((a, b))
    for a, b in sorted(edges):
        lines.append(f"S/D edge: {a} < {b}")
    return "\n".join(lines) + "\n"
