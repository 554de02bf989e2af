"""Dimer models: polygonal decompositions of surfaces carried by a quiver.

Storage conventions
-------------------
A face is stored as its boundary *word* in display order (the exact form the
words take inside potentials).  The directed traversal cycle of a face is the
reversed word sequence; it must be a composable cycle in the quiver.  Signs
split faces into positive and negative; every arrow lies in exactly one face
of each sign and the Euler count V - E + F = 2 - 2g fixes the genus.

The zig ray of an arrow steps to the traversal successor in its positive face,
then the successor in the negative face of the new arrow, alternating.  Zigzag
cycles are the closed orbits (even positions are zig slots); they index the
vertices of the dual dimer.  The dual keeps positive face words and reverses
negative ones, which makes the construction an involution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .quiver import AlgebraElement, Path, Quiver
from .potential import CyclicPotential, cyclic_derivative, normal_form

SIGN_POS = "+"
SIGN_NEG = "-"


@dataclass(frozen=True)
class Face:
    sign: str
    word: tuple  # arrow ids in display order

    def traversal(self):
        return tuple(reversed(self.word))


@dataclass
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return "%s: %s" % (self.kind, self.detail)


@dataclass
class ValidationReport:
    ok: bool
    genus: object  # int or None when undetermined
    violations: list

    def __bool__(self):
        return self.ok


class ZigzagCycle:
    """Cyclic arrow sequence; even positions are zig slots, odd are zag."""

    def __init__(self, arrows):
        arrows = tuple(arrows)
        if len(arrows) % 2 != 0:
            raise ValueError("zigzag cycles alternate faces, so they have even length")
        self.arrows = self._canonical(arrows)

    @staticmethod
    def _canonical(arrows):
        n = len(arrows)
        best = arrows
        for i in range(2, n, 2):  # even rotations preserve zig/zag parity
            rot = arrows[i:] + arrows[:i]
            if rot < best:
                best = rot
        return best

    def zigs(self):
        return self.arrows[0::2]

    def zags(self):
        return self.arrows[1::2]

    def __eq__(self, other):
        return isinstance(other, ZigzagCycle) and self.arrows == other.arrows

    def __hash__(self):
        return hash(self.arrows)

    def __repr__(self):
        return "Z(%s)" % ".".join(str(a) for a in self.arrows)


class Dimer:
    def __init__(self, quiver, faces, declared_genus=None,
                 spacetime_override=None, worldsheet_override=None):
        self.quiver = quiver
        self.faces = [Face(sign, tuple(word)) for sign, word in faces]
        self.declared_genus = declared_genus
        # optional fixture data: explicit potentials with user-audited words
        # (list of (coeff:int, word tuple)); used for non-dimer decompositions
        # and for examples whose published orientation differs from the
        # computed default.
        self.spacetime_override = spacetime_override
        self.worldsheet_override = worldsheet_override
        self.fmap = None  # optional arrow -> group element decoration

    # -- validation ---------------------------------------------------------

    def euler_genus(self):
        chi = len(self.quiver.vertices) - len(self.quiver.arrows) + len(self.faces)
        if (2 - chi) % 2 != 0:
            return None
        g = (2 - chi) // 2
        return g if g >= 0 else None

    def validate(self):
        violations = []
        q = self.quiver
        for f in self.faces:
            if not f.word:
                violations.append(Violation("empty-face", "face with no arrows"))
                continue
            trav = f.traversal()
            for aid in trav:
                if aid not in q.arrows:
                    violations.append(Violation("unknown-arrow", "face uses %r" % (aid,)))
                    break
            else:
                for a, b in zip(trav, trav[1:] + trav[:1]):
                    if q.head(a) != q.tail(b):
                        violations.append(
                            Violation(
                                "non-cycle-face",
                                "face %s: %r does not continue into %r" % (f.word, a, b),
                            )
                        )
                        break
        counts = {aid: {SIGN_POS: 0, SIGN_NEG: 0} for aid in q.arrows}
        for f in self.faces:
            for aid in f.word:
                if aid in counts:
                    counts[aid][f.sign] += 1
        for aid, c in sorted(counts.items(), key=lambda kv: str(kv[0])):
            if c[SIGN_POS] != 1:
                violations.append(
                    Violation("face-cover", "arrow %r lacks a unique positive face (%d)" % (aid, c[SIGN_POS]))
                )
            if c[SIGN_NEG] != 1:
                violations.append(
                    Violation("face-cover", "arrow %r lacks a unique negative face (%d)" % (aid, c[SIGN_NEG]))
                )
        genus = self.euler_genus()
        if genus is None:
            violations.append(Violation("euler", "V - E + F is not of the form 2 - 2g"))
        elif self.declared_genus is not None and genus != self.declared_genus:
            violations.append(
                Violation("euler", "declared genus %s but Euler count gives %s" % (self.declared_genus, genus))
            )
        return ValidationReport(ok=not violations, genus=genus, violations=violations)

    # -- combinatorics ------------------------------------------------------

    def successor_maps(self):
        succ_pos, succ_neg = {}, {}
        for f in self.faces:
            trav = f.traversal()
            target = succ_pos if f.sign == SIGN_POS else succ_neg
            for a, b in zip(trav, trav[1:] + trav[:1]):
                target[a] = b
        return succ_pos, succ_neg

    def zig_ray(self, arrow, steps, zig_first=True):
        """The first `steps` arrows of the zig (or zag) ray at `arrow`."""
        succ_pos, succ_neg = self.successor_maps()
        ray = [arrow]
        cur = arrow
        for i in range(steps):
            use_pos = (i % 2 == 0) if zig_first else (i % 2 == 1)
            cur = (succ_pos if use_pos else succ_neg)[cur]
            ray.append(cur)
        return ray

    def zigzag_cycles(self):
        succ_pos, succ_neg = self.successor_maps()
        seen = set()  # (arrow, parity) slots
        cycles = []
        for start in sorted(self.quiver.arrows, key=str):
            if (start, 0) in seen:
                continue
            seq = []
            cur, parity = start, 0
            while True:
                if (cur, parity) in seen:
                    raise ValueError("inconsistent face data: zigzag walk revisits a slot")
                seen.add((cur, parity))
                seq.append(cur)
                cur = (succ_pos if parity == 0 else succ_neg)[cur]
                parity ^= 1
                if cur == start and parity == 0:
                    break
            cycles.append(ZigzagCycle(seq))
        slots = sum(len(c.arrows) for c in cycles)
        if slots != 2 * len(self.quiver.arrows):
            raise ValueError("zigzag cycles do not cover every arrow slot exactly once")
        return cycles

    def zig_cycle_of(self, arrow):
        for c in self.zigzag_cycles():
            if arrow in c.zigs():
                return c
        raise KeyError(arrow)

    def zag_cycle_of(self, arrow):
        for c in self.zigzag_cycles():
            if arrow in c.zags():
                return c
        raise KeyError(arrow)

    # -- duality ------------------------------------------------------------

    def dual(self):
        cycles = self.zigzag_cycles()
        names = {}
        for i, c in enumerate(cycles):
            names[c] = "Z%d" % i
        zig_of, zag_of = {}, {}
        for c in cycles:
            for a in c.zigs():
                zig_of[a] = names[c]
            for a in c.zags():
                zag_of[a] = names[c]
        arrows = [(aid, zag_of[aid], zig_of[aid]) for aid in sorted(self.quiver.arrows, key=str)]
        dq = Quiver(
            vertices=[names[c] for c in cycles],
            arrows=arrows,
            parities=dict(self.quiver.parities),
            degrees=dict(self.quiver.degrees),
        )
        faces = []
        for f in self.faces:
            if f.sign == SIGN_POS:
                faces.append((SIGN_POS, f.word))
            else:
                faces.append((SIGN_NEG, tuple(reversed(f.word))))
        return Dimer(dq, faces)

    # -- potentials ---------------------------------------------------------

    def spacetime_potential(self, ring=None):
        """Phi = sum of positive face words minus negative face words."""
        from .scalars import RATIONALS

        ring = ring or RATIONALS
        if self.spacetime_override is not None:
            phi = CyclicPotential(self.quiver, ring)
            for coeff, word in self.spacetime_override:
                phi.add_term(self.quiver.path(word), ring.coerce(coeff))
            return phi
        phi = CyclicPotential(self.quiver, ring)
        for f in self.faces:
            c = ring.one() if f.sign == SIGN_POS else ring.neg(ring.one())
            phi.add_term(self.quiver.path(f.word), c)
        return phi

    def relations(self, ring=None, cap=12):
        phi = self.spacetime_potential(ring)
        return [
            cyclic_derivative(phi, a).truncate(cap) for a in self.quiver.arrow_order
        ]

    def _face_through_pair(self, a, b, sign):
        """The face of given sign whose traversal steps a -> b."""
        for f in self.faces:
            if f.sign != sign:
                continue
            trav = f.traversal()
            for u, v in zip(trav, trav[1:] + trav[:1]):
                if u == a and v == b:
                    return f
        return None

    def faces_through(self, arrow):
        pos = neg = None
        for f in self.faces:
            if arrow in f.word:
                if f.sign == SIGN_POS:
                    pos = f
                else:
                    neg = f
        return pos, neg

    def _based_rotations(self, face, vertex):
        """Rotations of the face word that are loops based at `vertex`."""
        word = face.word
        n = len(word)
        out = []
        for k in range(n):
            rot = word[k:] + word[:k]
            # display word (w_1..w_n) is based at the tail of its last letter
            if self.quiver.tail(rot[-1]) == vertex:
                out.append(rot)
        return out

    def worldsheet_potential(self, minima=None, ring=None, cap=12):
        """W = sum over quiver vertices of one boundary word based there.

        The vertices of the dimer carrying the potential correspond to the
        Lagrangian branches; W_v is the boundary word of a face met by the
        branch, read from the minimum, i.e. a rotation of the face word that
        forms a loop at v.  minima maps a vertex to (sign, anchor_arrow) to
        pick the face and the starting letter; the default scans positive
        faces first and takes the lexicographically first based rotation.
        """
        from .scalars import RATIONALS

        ring = ring or RATIONALS
        if self.worldsheet_override is not None and minima is None:
            out = AlgebraElement.zero(self.quiver, ring, cap)
            for coeff, word in self.worldsheet_override:
                out = out + AlgebraElement.from_word(
                    self.quiver, ring, word, coeff=ring.coerce(coeff), cap=cap
                )
            return out
        minima = minima or {}
        out = AlgebraElement.zero(self.quiver, ring, cap)
        for v in self.quiver.vertices:
            if v in minima:
                sign, anchor = minima[v]
                rotation = None
                for f in self.faces:
                    if f.sign != sign or anchor not in f.word:
                        continue
                    for rot in self._based_rotations(f, v):
                        if rot[0] == anchor:
                            rotation = rot
                            break
                    if rotation:
                        break
                if rotation is None:
                    raise ValueError(
                        "no %s face word through %r starts a loop at %r" % (sign, anchor, v)
                    )
            else:
                candidates = []
                for f in self.faces:
                    for rot in self._based_rotations(f, v):
                        candidates.append((0 if f.sign == SIGN_POS else 1, rot))
                if not candidates:
                    raise ValueError("no face word is based at vertex %r" % (v,))
                candidates.sort()
                rotation = candidates[0][1]
            out = out + AlgebraElement.from_word(self.quiver, ring, rotation, cap=cap)
        return out

    # -- perfect matchings --------------------------------------------------

    def perfect_matchings(self, cap=100000):
        """All arrow subsets meeting every face word exactly once (backtracking)."""
        arrows = sorted(self.quiver.arrows, key=str)
        face_sets = [set(f.word) for f in self.faces]
        matchings = []
        truncated = False

        def extend(idx, chosen, hits):
            nonlocal truncated
            if len(matchings) >= cap:
                truncated = True
                return
            if idx == len(arrows):
                if all(h == 1 for h in hits):
                    matchings.append(frozenset(chosen))
                return
            a = arrows[idx]
            # option 1: include a
            new_hits = list(hits)
            ok = True
            for i, fs in enumerate(face_sets):
                if a in fs:
                    new_hits[i] += 1
                    if new_hits[i] > 1:
                        ok = False
            if ok:
                extend(idx + 1, chosen + [a], new_hits)
            # option 2: skip a, unless some face would become unfillable
            remaining = set(arrows[idx + 1 :])
            feasible = True
            for i, fs in enumerate(face_sets):
                if hits[i] == 0 and a in fs and not (fs & remaining):
                    feasible = False
            if feasible:
                extend(idx + 1, chosen, hits)

        extend(0, [], [0] * len(face_sets))
        return matchings, truncated

    def grade_by_matching(self, matching):
        """deg(a) = 2 on matched arrows, 0 otherwise."""
        rep = self.validate()
        for f in self.faces:
            if sum(1 for a in f.word if a in matching) != 1:
                raise ValueError("not a perfect matching: face %s" % (f.word,))
        return {a: (2 if a in matching else 0) for a in self.quiver.arrows}

    # -- zigzag consistency --------------------------------------------------

    def zigzag_consistent(self, depth=50):
        return zigzag_consistent(self, depth)

    def __eq__(self, other):
        return (
            isinstance(other, Dimer)
            and self.quiver == other.quiver
            and sorted((f.sign, f.word) for f in self.faces)
            == sorted((f.sign, f.word) for f in other.faces)
        )


def dimer_isomorphic(d1, d2):
    """Isomorphism that preserves arrow ids (vertices may be renamed);
    faces must match as sign + cyclic word classes."""
    if sorted(d1.quiver.arrows, key=str) != sorted(d2.quiver.arrows, key=str):
        return False
    vmap = {}
    for aid in d1.quiver.arrows:
        for u, v in ((d1.quiver.tail(aid), d2.quiver.tail(aid)),
                     (d1.quiver.head(aid), d2.quiver.head(aid))):
            if vmap.get(u, v) != v:
                return False
            vmap[u] = v
    if len(set(vmap.values())) != len(vmap):
        return False

    def face_classes(d):
        out = []
        for f in d.faces:
            n = len(f.word)
            rots = [f.word[i:] + f.word[:i] for i in range(n)]
            out.append((f.sign, min(rots)))
        return sorted(out)

    return face_classes(d1) == face_classes(d2)


# ---------------------------------------------------------------------------
# Zigzag consistency via homology of the surface
# ---------------------------------------------------------------------------


@dataclass
class ConsistencyVerdict:
    status: str                   # CONSISTENT | CONSISTENT-UP-TO-<d> | INCONSISTENT | INCONCLUSIVE
    method: str
    witness: object = None

    def __bool__(self):
        return self.status.startswith("CONSISTENT")


def _diagonalize_left(rows):
    """Diagonalize an integer matrix by unimodular row ops (tracked) and
    column ops (untracked): returns (diag, U, rank) with U*M*V diagonal.

    Membership x in colspan_Z(M) is then: y = U x has y_i divisible by
    diag[i] for i < rank and y_i = 0 for i >= rank.
    """
    A = [list(r) for r in rows]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    t = 0
    diag = []
    while t < min(nr, nc):
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        A[t], A[bi] = A[bi], A[t]
        U[t], U[bi] = U[bi], U[t]
        for i in range(nr):
            A[i][t], A[i][bj] = A[i][bj], A[i][t]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        for j in range(nc):
                            A[i][j] -= q * A[t][j]
                        for j in range(nr):
                            U[i][j] -= q * U[t][j]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        U[t], U[i] = U[i], U[t]
                        dirty = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for i in range(nr):
                            A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        for i in range(nr):
                            A[i][t], A[i][j] = A[i][j], A[i][t]
                        dirty = True
        diag.append(abs(A[t][t]))
        t += 1
    return diag, U, t


class _Lattice:
    """Integer column span of a fixed matrix, with fast membership tests."""

    def __init__(self, columns, dim):
        rows = [[c[i] for c in columns] for i in range(dim)] if columns else [[] for _ in range(dim)]
        self.dim = dim
        if columns:
            self.diag, self.U, self.rank = _diagonalize_left(rows)
        else:
            self.diag, self.U, self.rank = [], [[1 if i == j else 0 for j in range(dim)] for i in range(dim)], 0

    def transform(self, vec):
        return [sum(self.U[i][j] * vec[j] for j in range(self.dim)) for i in range(self.dim)]

    def contains(self, vec):
        y = self.transform(vec)
        for i in range(self.dim):
            if i < self.rank:
                if self.diag[i] == 0 or y[i] % self.diag[i] != 0:
                    return False
            elif y[i] != 0:
                return False
        return True


class _Homology:
    """Integer 1-chain bookkeeping for a dimer surface."""

    def __init__(self, dimer):
        self.dimer = dimer
        self.arrows = sorted(dimer.quiver.arrows, key=str)
        self.index = {a: i for i, a in enumerate(self.arrows)}
        self.boundaries = []
        for f in dimer.faces:
            vec = [0] * len(self.arrows)
            for a in f.traversal():
                vec[self.index[a]] += 1
            self.boundaries.append(vec)
        self.lattice = _Lattice(self.boundaries, len(self.arrows))

    def chain(self, arrows):
        vec = [0] * len(self.arrows)
        for a in arrows:
            vec[self.index[a]] += 1
        return vec

    def null_homologous(self, chain):
        return self.lattice.contains(chain)


def zigzag_consistent(dimer, depth=50):
    """Zig and zag rays of every arrow meet only at the arrow itself.

    Genus 1: decided exactly through homology winding (deck group is abelian,
    so lift equality is homology equality).  Genus 0: universal cover equals
    the surface, so a repeated arrow is a genuine meeting.  Higher genus:
    bounded unwinding; homology distinguishes lifts but cannot certify a
    meeting, so an ambiguous coincidence yields INCONCLUSIVE.
    """
    rep = dimer.validate()
    if not rep.ok:
        raise ValueError("cannot analyse an invalid dimer: %s" % rep.violations)
    if depth == 0:
        return ConsistencyVerdict(status="CONSISTENT-UP-TO-0", method="trivial")
    genus = rep.genus
    hom = _Homology(dimer)
    succ_pos, succ_neg = dimer.successor_maps()

    def ray(arrow, zig_first, steps):
        """List of (arrow, cumulative chain) for positions 0..steps."""
        out = [(arrow, [0] * len(hom.arrows))]
        cur = arrow
        acc = [0] * len(hom.arrows)
        for i in range(steps):
            acc = list(acc)
            acc[hom.index[cur]] += 1
            use_pos = (i % 2 == 0) if zig_first else (i % 2 == 1)
            cur = (succ_pos if use_pos else succ_neg)[cur]
            out.append((cur, acc))
        return out

    if genus == 0:
        for e in sorted(dimer.quiver.arrows, key=str):
            steps = 4 * len(dimer.quiver.arrows) + 2
            zig = ray(e, True, steps)
            zag = ray(e, False, steps)
            for i, (a1, _) in enumerate(zig):
                for j, (a2, _) in enumerate(zag):
                    if (i, j) == (0, 0):
                        continue
                    if a1 == a2:
                        return ConsistencyVerdict(
                            status="INCONSISTENT", method="genus-0 cover",
                            witness=(e, a1, i, j),
                        )
        return ConsistencyVerdict(status="CONSISTENT", method="genus-0 cover")

    if genus == 1:
        verdict, unresolved = _torus_exact(dimer, hom, ray)
        if verdict is not None:
            return verdict
        if unresolved:
            return ConsistencyVerdict(status="INCONCLUSIVE", method="torus lattice scan overflow")
        return ConsistencyVerdict(status="CONSISTENT", method="torus homology winding")

    # genus >= 2: bounded unwinding with homology certificates
    ambiguous = None
    for e in sorted(dimer.quiver.arrows, key=str):
        zig = ray(e, True, depth)
        zag = ray(e, False, depth)
        for i, (a1, c1) in enumerate(zig):
            for j, (a2, c2) in enumerate(zag):
                if (i, j) == (0, 0) or a1 != a2:
                    continue
                diff = [u - v for u, v in zip(c1, c2)]
                if hom.null_homologous(diff):
                    ambiguous = (e, a1, i, j)
    if ambiguous is not None:
        return ConsistencyVerdict(
            status="INCONCLUSIVE", method="bounded unwinding (homology cannot certify a meeting)",
            witness=ambiguous,
        )
    return ConsistencyVerdict(status="CONSISTENT-UP-TO-%d" % depth, method="bounded unwinding")


def _torus_exact(dimer, hom, ray):
    """Exact consistency decision on a genus-1 dimer.

    Returns (verdict_or_None, unresolved_flag); rays are periodic, so lift
    meetings reduce to a two-variable Diophantine problem per arrow pair.
    """
    unresolved = False
    for e in sorted(dimer.quiver.arrows, key=str):
        pz = _ray_period(dimer, e, True)
        pg = _ray_period(dimer, e, False)
        zig = ray(e, True, pz)
        zag = ray(e, False, pg)
        v_zig = zig[pz][1]
        v_zag = zag[pg][1]
        for i, (a1, c1) in enumerate(zig[:pz]):
            for j, (a2, c2) in enumerate(zag[:pg]):
                if a1 != a2:
                    continue
                hit = _torus_meeting_exists(hom, c1, c2, v_zig, v_zag, i == 0 and j == 0)
                if hit is None:
                    unresolved = True
                elif hit:
                    return (
                        ConsistencyVerdict(
                            status="INCONSISTENT",
                            method="torus homology winding",
                            witness=(e, a1, i, j),
                        ),
                        False,
                    )
    return None, unresolved


def _ray_period(dimer, arrow, zig_first):
    succ_pos, succ_neg = dimer.successor_maps()
    cur = arrow
    i = 0
    while True:
        use_pos = (i % 2 == 0) if zig_first else (i % 2 == 1)
        cur = (succ_pos if use_pos else succ_neg)[cur]
        i += 1
        if cur == arrow and i % 2 == 0:
            return i


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _torus_meeting_exists(hom, c1, c2, v_zig, v_zag, is_base_pair):
    """Decide whether delta0 + k*v_zig - m*v_zag lies in the boundary lattice
    for some integers k, m >= 0 (excluding k = m = 0 for the base pair).

    Exact: transform by the lattice's left unimodular matrix, then the
    condition splits into congruences (diagonal rows) and equalities
    (remaining rows), a two-variable linear Diophantine problem.
    """
    lat = hom.lattice
    delta0 = [u - v for u, v in zip(c1, c2)]
    a = lat.transform(delta0)
    b = lat.transform(v_zig)
    c = lat.transform(v_zag)
    dim, rank, diag = lat.dim, lat.rank, lat.diag

    def admissible(k, m):
        if k < 0 or m < 0:
            return False
        if is_base_pair and k == 0 and m == 0:
            return False
        for i in range(dim):
            val = a[i] + k * b[i] - m * c[i]
            if i < rank:
                if val % diag[i] != 0:
                    return False
            elif val != 0:
                return False
        return True

    period = 1
    for i in range(rank):
        period = period * diag[i] // _gcd(period, diag[i])
    period = max(period, 1)
    if period > 10000:
        return None  # give up on the exact scan; caller falls back

    eqs = []
    for i in range(rank, dim):
        alpha, beta, gamma = b[i], -c[i], -a[i]
        if alpha == 0 and beta == 0:
            if gamma != 0:
                return False
            continue
        eqs.append((alpha, beta, gamma))

    if not eqs:
        # congruences are periodic with the lcm period in each variable, so a
        # closed box of side period+1 sees a representative of every orbit
        for k in range(period + 1):
            for m in range(period + 1):
                if admissible(k, m):
                    return True
        return False

    # try to find two independent equations
    base_eq = eqs[0]
    independent = None
    for e in eqs[1:]:
        det = base_eq[0] * e[1] - base_eq[1] * e[0]
        if det != 0:
            independent = (e, det)
            break
    if independent is not None:
        e, det = independent
        num_k = base_eq[2] * e[1] - base_eq[1] * e[2]
        num_m = base_eq[0] * e[2] - base_eq[2] * e[0]
        if num_k % det or num_m % det:
            return False
        k, m = num_k // det, num_m // det
        return admissible(k, m)

    # all equations parallel: a line of solutions
    alpha, beta, gamma = base_eq
    g = _gcd(alpha, beta)
    if gamma % g != 0:
        return False
    for e in eqs[1:]:
        # parallel row (e0, e1, e2) is consistent iff it is a multiple of base
        if e[0] * gamma != alpha * e[2] or e[1] * gamma != beta * e[2]:
            return False
    # particular solution of alpha k + beta m = gamma via extended gcd
    k0, m0 = _diophantine_particular(alpha, beta, gamma)
    dk, dm = beta // g, -alpha // g
    # scan t over one congruence period inside the k,m >= 0 window (and one
    # extra period on each unbounded side)
    ts = _line_parameter_window(k0, m0, dk, dm, period)
    for t in ts:
        if admissible(k0 + t * dk, m0 + t * dm):
            return True
    return False


def _diophantine_particular(alpha, beta, gamma):
    """One integer solution of alpha*k + beta*m = gamma (gcd divides gamma)."""
    old_r, r = alpha, beta
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    scale = gamma // old_r
    return old_s * scale, old_t * scale


def _line_parameter_window(k0, m0, dk, dm, period):
    """Parameter values t to test on the solution line (k0+t*dk, m0+t*dm)."""
    bounds = []
    for x0, dx in ((k0, dk), (m0, dm)):
        if dx == 0:
            if x0 < 0:
                return []
        elif dx > 0:
            bounds.append(("lo", -(x0 // dx)))  # t >= ceil(-x0/dx)
        else:
            bounds.append(("hi", x0 // (-dx)))  # t <= floor(x0/-dx)
    lo = None
    hi = None
    for kind, v in bounds:
        if kind == "lo":
            lo = v if lo is None else max(lo, v)
        else:
            hi = v if hi is None else min(hi, v)
    if lo is not None and hi is not None:
        if lo > hi:
            return []
        span = min(hi - lo + 1, 2 * period + 1)
        return range(lo, lo + span)
    if lo is not None:
        return range(lo, lo + 2 * period + 1)
    if hi is not None:
        return range(hi - 2 * period, hi + 1)
    return range(-period, period + 1)


# ---------------------------------------------------------------------------
# Quivers from surface triangulations
# ---------------------------------------------------------------------------


def quiver_from_triangulation(triangles, pole_terms=None, ring=None, cap=12):
    """Quiver and potential from an ideal triangulation.

    triangles: list of clockwise-ordered edge triples; one quiver vertex per
    triangulation edge, one arrow per clockwise-consecutive edge pair, and a
    3-cycle T(f) per triangle.  pole_terms supplies the user-provided loop
    corrections: a list of (word, count, area) with word a display list of
    arrow ids; the potential is sum T(f) - sum count * q^area * C(p).
    Self-folded triangles (a repeated edge inside one triple) are rejected.
    """
    from .scalars import RATIONALS, QSeriesRing

    pole_terms = pole_terms or []
    edges = []
    for tri in triangles:
        if len(tri) != 3:
            raise ValueError("triangle %r does not have three edges" % (tri,))
        if len(set(tri)) != 3:
            raise ValueError("self-folded triangle %r is unsupported" % (tri,))
        for e in tri:
            if e not in edges:
                edges.append(e)
    arrows = []
    tri_words = []
    for idx, tri in enumerate(triangles):
        ids = []
        for k in range(3):
            src, dst = tri[k], tri[(k + 1) % 3]
            aid = "t%d_%s_%s" % (idx, src, dst)
            arrows.append((aid, src, dst))
            ids.append(aid)
        # traversal ids[0] -> ids[1] -> ids[2]; display word reverses
        tri_words.append(tuple(reversed(ids)))
    quiver = Quiver(vertices=edges, arrows=arrows)
    if ring is None:
        ring = QSeriesRing(30) if pole_terms else RATIONALS
    phi = CyclicPotential(quiver, ring)
    for word in tri_words:
        phi.add_term(quiver.path(word), ring.one())
    for word, count, area in pole_terms:
        coeff = ring.q(area, c=-Fraction(count)) if hasattr(ring, "q") else ring.coerce(-count)
        phi.add_term(quiver.path(tuple(word)), coeff)
    return quiver, phi


# ---------------------------------------------------------------------------
# Dimer file format
# ---------------------------------------------------------------------------
#
# Line-oriented text, '#' comments, sections in any order:
#   vertex <name>
#   arrow <id> <tail> <head> [odd|even] [degree]
#   face <+|-> <word>            word = dot-joined display order
#   genus <g>
#   fmap <arrow> <group element>   (decorated quivers; see groups module)
#   spacetime <+|-> <word>         (optional fixture override)
#   worldsheet <+|-> <word>        (optional fixture override)


def dimer_to_text(d):
    lines = []
    for v in d.quiver.vertices:
        lines.append("vertex %s" % v)
    for aid in d.quiver.arrow_order:
        tail, head = d.quiver.arrows[aid]
        bits = ["arrow", str(aid), str(tail), str(head)]
        if aid in d.quiver.parities:
            bits.append(d.quiver.parities[aid])
        lines.append(" ".join(bits))
    for f in d.faces:
        lines.append("face %s %s" % (f.sign, ".".join(str(a) for a in f.word)))
    if d.declared_genus is not None:
        lines.append("genus %d" % d.declared_genus)
    for label, data in (("spacetime", d.spacetime_override), ("worldsheet", d.worldsheet_override)):
        if data is not None:
            for coeff, word in data:
                sign = "+" if coeff > 0 else "-"
                lines.append("%s %s %s" % (label, sign, ".".join(word)))
    return "\n".join(lines) + "\n"


def dimer_from_text(text):
    vertices = []
    arrows = []
    parities = {}
    faces = []
    genus = None
    fmap = {}
    spacetime = []
    worldsheet = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        bits = line.split()
        kind = bits[0]
        try:
            if kind == "vertex":
                vertices.append(bits[1])
            elif kind == "arrow":
                aid, tail, head = bits[1], bits[2], bits[3]
                arrows.append((aid, tail, head))
                if len(bits) > 4:
                    if bits[4] not in ("odd", "even"):
                        raise ValueError("bad parity %r" % bits[4])
                    parities[aid] = bits[4]
            elif kind == "face":
                sign = bits[1]
                if sign not in (SIGN_POS, SIGN_NEG):
                    raise ValueError("bad face sign %r" % sign)
                faces.append((sign, tuple(bits[2].split("."))))
            elif kind == "genus":
                genus = int(bits[1])
            elif kind == "fmap":
                fmap[bits[1]] = bits[2]
            elif kind == "spacetime":
                spacetime.append((1 if bits[1] == "+" else -1, tuple(bits[2].split("."))))
            elif kind == "worldsheet":
                worldsheet.append((1 if bits[1] == "+" else -1, tuple(bits[2].split("."))))
            else:
                raise ValueError("unknown directive %r" % kind)
        except (IndexError, ValueError) as exc:
            raise DimerParseError(lineno, raw, str(exc)) from None
    quiver = Quiver(vertices=vertices, arrows=arrows, parities=parities)
    d = Dimer(
        quiver,
        faces,
        declared_genus=genus,
        spacetime_override=spacetime or None,
        worldsheet_override=worldsheet or None,
    )
    d.fmap = fmap or None
    return d


class DimerParseError(Exception):
    def __init__(self, lineno, line, message):
        self.lineno = lineno
        self.line = line
        super().__init__("line %d: %s (%r)" % (lineno, message, line))


def load_dimer(path):
    with open(path, "r", encoding="utf-8") as fh:
        return dimer_from_text(fh.read())


def save_dimer(d, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dimer_to_text(d))
