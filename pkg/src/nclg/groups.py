"""Finite group decorations of quivers: smash products, path lifting, the
formal dual group quotient, and character actions.

A decoration assigns a group element to every arrow; a path maps to the
product of its arrows' elements (first-traversed first).  Lifting a path at
g walks the traversal and multiplies decorations on the right, so the lifted
arrow over a carries the group label of its tail fibre.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import AlgebraElement, Path, Quiver
from .potential import CyclicPotential


class GroupTable:
    """Finite group as an explicit multiplication table."""

    def __init__(self, elements, table):
        self.elements = list(elements)
        n = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != n:
            raise ValueError("duplicate element names")
        self.table = [list(row) for row in table]
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be %dx%d" % (n, n))
        for row in self.table:
            for entry in row:
                if entry not in self.index:
                    raise ValueError("unknown element %r in table" % (entry,))
        self.identity = self._find_identity()
        self.inverse = {}
        for a in self.elements:
            for b in self.elements:
                if self.mul(a, b) == self.identity and self.mul(b, a) == self.identity:
                    self.inverse[a] = b
                    break
            else:
                raise ValueError("element %r has no inverse" % (a,))
        self._check_associativity()

    def _find_identity(self):
        for e in self.elements:
            if all(self.mul(e, a) == a and self.mul(a, e) == a for a in self.elements):
                return e
        raise ValueError("multiplication table has no identity")

    def _check_associativity(self):
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise ValueError(
                            "table is not associative at (%r, %r, %r)" % (a, b, c)
                        )

    def mul(self, a, b):
        return self.table[self.index[a]][self.index[b]]

    def inv(self, a):
        return self.inverse[a]

    def is_abelian(self):
        return all(
            self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements
        )

    def __len__(self):
        return len(self.elements)

    @staticmethod
    def cyclic(n, prefix="g"):
        names = ["%s%d" % (prefix, k) for k in range(n)]
        table = [[names[(i + j) % n] for j in range(n)] for i in range(n)]
        return GroupTable(names, table)

    @staticmethod
    def symmetric3():
        """S3 as permutations of {1,2,3} in cycle-name form."""
        import itertools

        perms = list(itertools.permutations((1, 2, 3)))
        names = {p: "s" + "".join(map(str, p)) for p in perms}

        def compose(p, q):  # apply q first, then p
            return tuple(p[q[i] - 1] for i in range(3))

        elements = [names[p] for p in perms]
        table = [[names[compose(p, q)] for q in perms] for p in perms]
        return GroupTable(elements, table)


def group_to_text(g):
    lines = ["elements " + " ".join(g.elements)]
    for row in g.table:
        lines.append("row " + " ".join(row))
    return "\n".join(lines) + "\n"


def group_from_text(text):
    elements = None
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        bits = line.split()
        if bits[0] == "elements":
            elements = bits[1:]
        elif bits[0] == "row":
            rows.append(bits[1:])
        else:
            raise ValueError("unknown directive %r in group file" % bits[0])
    if elements is None:
        raise ValueError("group file lacks an elements line")
    return GroupTable(elements, rows)


def load_group(path):
    with open(path, "r", encoding="utf-8") as fh:
        return group_from_text(fh.read())


@dataclass
class DecoratedQuiver:
    quiver: Quiver
    group: GroupTable
    fmap: dict  # arrow -> group element

    def __post_init__(self):
        for aid in self.quiver.arrows:
            if aid not in self.fmap:
                raise ValueError("arrow %r lacks a group decoration" % (aid,))
        for aid, g in self.fmap.items():
            if g not in self.group.index:
                raise ValueError("decoration %r of %r is not a group element" % (g, aid))

    def path_image(self, path):
        """Product of decorations along the traversal (first arrow first)."""
        acc = self.group.identity
        for aid in path.arrows:
            acc = self.group.mul(acc, self.fmap[aid])
        return acc


class NotADualActionError(Exception):
    def __init__(self, relation, images):
        self.relation = relation
        self.images = images
        super().__init__(
            "relation terms map to distinct group elements %s; "
            "no formal dual action" % sorted(set(map(str, images)))
        )


def lifted_vertex(v, g):
    return "%s^%s" % (v, g)


def lifted_arrow(aid, g):
    return "%s^%s" % (aid, g)


def smash_product(dq):
    """Q # G: vertices v^g; an arrow x^{g}: u^{g} -> v^{g * f(x)} per g."""
    q, G = dq.quiver, dq.group
    vertices = [lifted_vertex(v, g) for v in q.vertices for g in G.elements]
    arrows = []
    for aid in q.arrow_order:
        tail, head = q.arrows[aid]
        for g in G.elements:
            arrows.append(
                (lifted_arrow(aid, g), lifted_vertex(tail, g),
                 lifted_vertex(head, G.mul(g, dq.fmap[aid])))
            )
    return Quiver(vertices=vertices, arrows=arrows)


def lift_path(dq, smash, path, g):
    """Canonical lift of a path starting the decoration bookkeeping at g."""
    if not path.arrows:
        return Path(lifted_vertex(path.source, g), ())
    lifted = []
    cur = g
    for aid in path.arrows:
        lifted.append(lifted_arrow(aid, cur))
        cur = dq.group.mul(cur, dq.fmap[aid])
    return Path(lifted_vertex(path.source, g), tuple(lifted))


def forget_path(smash_path):
    """Strip group labels; inverse of lift_path followed by the base anchor."""
    arrows = tuple(a.rsplit("^", 1)[0] for a in smash_path.arrows)
    source = smash_path.source.rsplit("^", 1)[0]
    return Path(source, arrows)


def lift_element(dq, smash, elem, g, ring=None, cap=12):
    from .scalars import RATIONALS

    ring = ring or elem.ring
    out = AlgebraElement.zero(smash, ring, cap)
    for p, c in elem.terms.items():
        out = out + AlgebraElement.from_path(smash, ring, lift_path(dq, smash, p, g), coeff=c, cap=cap)
    return out


def relation_image(dq, relation):
    """The single group element a dual-action relation maps to."""
    images = [dq.path_image(p) for p in relation.terms]
    if len(set(images)) > 1:
        raise NotADualActionError(relation, images)
    return images[0]


def formal_quotient(dq, relations, w, cap=12):
    """(Q#G, lifted relations at every g, W-hat = sum of lifts of W).

    Every relation must have all terms with one decoration image; W must be
    invariant (every term maps to the identity).
    """
    G = dq.group
    for rel in relations:
        relation_image(dq, rel)  # raises when mixed
    for p in w.terms:
        if dq.path_image(p) != G.identity:
            raise NotADualActionError(w, [dq.path_image(p)])
    smash = smash_product(dq)
    lifted_relations = []
    for rel in relations:
        for g in G.elements:
            lifted_relations.append(lift_element(dq, smash, rel, g, cap=cap))
    w_hat = AlgebraElement.zero(smash, w.ring, cap)
    for g in G.elements:
        w_hat = w_hat + lift_element(dq, smash, w, g, cap=cap)
    return smash, lifted_relations, w_hat


def character_action(dq, chi, elem):
    """Scale each word by the product of chi over its arrows' decorations.

    chi maps group elements to complex numbers and must be a homomorphism.
    """
    G = dq.group
    for a in G.elements:
        for b in G.elements:
            lhs = chi[G.mul(a, b)]
            rhs = chi[a] * chi[b]
            if abs(lhs - rhs) > 1e-12:
                raise ValueError("chi is not a homomorphism at (%r, %r)" % (a, b))
    out = {}
    ring = elem.ring
    for p, c in elem.terms.items():
        scale = 1 + 0j
        for aid in p.arrows:
            scale *= chi[dq.fmap[aid]]
        out[p] = ring.mul(c, ring.coerce(scale)) if not ring.exact else _scale_exact(ring, c, scale)
    return AlgebraElement(elem.quiver, ring, out, elem.cap)


def _scale_exact(ring, c, scale):
    from fractions import Fraction

    if abs(scale.imag) > 1e-12:
        raise ValueError("character value %r is not rational; use a complex ring" % (scale,))
    return ring.mul(c, ring.coerce(Fraction(scale.real).limit_denominator(10**9)))


def twisted_degree_check(dq, alpha, degrees):
    """Congruence deg x = alpha_{f(x)} mod 2 for supplied grading data.

    alpha maps group elements to rationals; degrees maps arrows to rationals.
    Returns the list of violating arrows.
    """
    from fractions import Fraction

    bad = []
    for aid, g in dq.fmap.items():
        if aid not in degrees or g not in alpha:
            continue
        if (Fraction(degrees[aid]) - Fraction(alpha[g])) % 2 != 0:
            bad.append(aid)
    return bad
