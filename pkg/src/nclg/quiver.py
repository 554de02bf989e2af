"""Quivers, paths, and the degree-truncated path algebra.

Word convention (fixed throughout the package): a word is displayed
left-to-right but traversed right-to-left, i.e. in the word ``x.y`` the arrow
``y`` is applied first and ``x`` second, so ``x.y`` is a path from the tail of
``y`` to the head of ``x``.  Internally a Path stores its arrows in traversal
order (first-applied first) anchored at the source vertex; rendering reverses.

The algebra product ``a * b`` is operator composition: ``b`` acts first, the
result displays as the concatenation [a][b].
"""

from __future__ import annotations

from .scalars import RATIONALS


class Quiver:
    """Finite directed graph with optional arrow parity and rational degree.

    arrows: dict id -> (tail, head) plus optional parity ('even'|'odd') and
    degree metadata.  arrow_order fixes the deterministic monomial order used
    by reduction systems (defaults to sorted ids).
    """

    def __init__(self, vertices, arrows, parities=None, degrees=None, arrow_order=None):
        self.vertices = list(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        self.arrows = {}
        for aid, tail, head in arrows:
            if aid in self.arrows:
                raise ValueError("duplicate arrow id %r" % aid)
            if tail not in vset or head not in vset:
                raise ValueError("arrow %r has endpoint outside the vertex set" % aid)
            self.arrows[aid] = (tail, head)
        self.parities = dict(parities or {})
        for aid in self.parities:
            if aid not in self.arrows:
                raise ValueError("parity given for unknown arrow %r" % aid)
        self.degrees = dict(degrees or {})
        if arrow_order is None:
            self.arrow_order = sorted(self.arrows)
        else:
            if sorted(arrow_order) != sorted(self.arrows):
                raise ValueError("arrow_order must list every arrow exactly once")
            self.arrow_order = list(arrow_order)
        self._rank = {a: i for i, a in enumerate(self.arrow_order)}

    def tail(self, aid):
        return self.arrows[aid][0]

    def head(self, aid):
        return self.arrows[aid][1]

    def parity(self, aid):
        return self.parities.get(aid, "odd")

    def trivial_path(self, v):
        if v not in set(self.vertices):
            raise ValueError("unknown vertex %r" % v)
        return Path(v, ())

    def arrow_path(self, aid):
        return Path(self.tail(aid), (aid,))

    def path(self, word):
        """Build a path from a display word (list of arrow ids, leftmost last-applied)."""
        seq = tuple(reversed(tuple(word)))
        if not seq:
            raise ValueError("empty word needs a vertex; use trivial_path")
        src = self.tail(seq[0])
        p = Path(src, seq)
        if not self.is_path(p):
            raise ValueError("word %r is not composable" % (list(word),))
        return p

    def parse_word(self, text):
        """Parse a dot-separated display word like 'x.y.z.w'."""
        return self.path(text.split("."))

    def is_path(self, p):
        if p.arrows == ():
            return p.source in set(self.vertices)
        if self.tail(p.arrows[0]) != p.source:
            return False
        for a, b in zip(p.arrows, p.arrows[1:]):
            if self.head(a) != self.tail(b):
                return False
        return True

    def path_head(self, p):
        return self.head(p.arrows[-1]) if p.arrows else p.source

    def path_tail(self, p):
        return p.source

    def order_key(self, p):
        """Graded-lexicographic monomial order key (word length, then arrow ranks)."""
        return (len(p.arrows), tuple(self._rank[a] for a in p.arrows))

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
            and self.parities == other.parities
        )

    def __repr__(self):
        return "Quiver(%d vertices, %d arrows)" % (len(self.vertices), len(self.arrows))


class Path:
    """Immutable path: source vertex plus arrow ids in traversal order."""

    __slots__ = ("source", "arrows")

    def __init__(self, source, arrows):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "arrows", tuple(arrows))

    def __setattr__(self, *a):
        raise AttributeError("Path is immutable")

    def __len__(self):
        return len(self.arrows)

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.source == other.source
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.source, self.arrows))

    def display(self):
        """Arrow ids in display (printed) order."""
        return tuple(reversed(self.arrows))

    def __repr__(self):
        if not self.arrows:
            return "e[%s]" % self.source
        return ".".join(str(a) for a in self.display())


def compose_paths(quiver, p, q):
    """Concatenate p then q (q after p); returns None for non-composable pairs.

    The zero of the path algebra is represented by None here, matching the
    convention that non-composable concatenations vanish.
    """
    if q.arrows == ():
        return p if quiver.path_head(p) == q.source else None
    if p.arrows == ():
        return q if quiver.path_tail(q) == p.source else None
    if quiver.path_head(p) != quiver.path_tail(q):
        return None
    return Path(p.source, p.arrows + q.arrows)


class AlgebraElement:
    """Finite scalar combination of paths, truncated at word-degree cap D."""

    __slots__ = ("quiver", "ring", "terms", "cap")

    def __init__(self, quiver, ring, terms=None, cap=12):
        self.quiver = quiver
        self.ring = ring
        self.cap = cap
        clean = {}
        for p, c in (terms or {}).items():
            if len(p.arrows) <= cap and not ring.is_zero(c):
                clean[p] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(quiver, ring, cap=12):
        return AlgebraElement(quiver, ring, {}, cap)

    @staticmethod
    def unit(quiver, ring, cap=12):
        one = ring.one()
        return AlgebraElement(
            quiver, ring, {Path(v, ()): one for v in quiver.vertices}, cap
        )

    @staticmethod
    def from_path(quiver, ring, path, coeff=None, cap=12):
        c = ring.one() if coeff is None else coeff
        return AlgebraElement(quiver, ring, {path: c}, cap)

    @staticmethod
    def from_word(quiver, ring, word, coeff=None, cap=12):
        return AlgebraElement.from_path(quiver, ring, quiver.path(word), coeff, cap)

    # -- ring operations ----------------------------------------------------
    def _check(self, other):
        if other.quiver is not self.quiver and other.quiver != self.quiver:
            raise ValueError("mismatched quivers")
        if other.ring is not self.ring:
            raise ValueError("mismatched scalar rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = self.ring.add(out.get(p, self.ring.zero()), c)
            if self.ring.is_zero(s):
                out.pop(p, None)
            else:
                out[p] = s
        return AlgebraElement(self.quiver, self.ring, out, min(self.cap, other.cap))

    def __neg__(self):
        return AlgebraElement(
            self.quiver,
            self.ring,
            {p: self.ring.neg(c) for p, c in self.terms.items()},
            self.cap,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Operator composition: other acts first; words concatenate [self][other]."""
        self._check(other)
        ring = self.ring
        out = {}
        cap = min(self.cap, other.cap)
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                if len(p.arrows) + len(q.arrows) > cap:
                    continue
                r = compose_paths(self.quiver, q, p)
                if r is None:
                    continue
                c = ring.mul(cp, cq)
                s = ring.add(out.get(r, ring.zero()), c)
                if ring.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        return AlgebraElement(self.quiver, self.ring, out, cap)

    def scale(self, c):
        if self.ring.is_zero(c):
            return AlgebraElement.zero(self.quiver, self.ring, self.cap)
        return AlgebraElement(
            self.quiver,
            self.ring,
            {p: self.ring.mul(c, v) for p, v in self.terms.items()},
            self.cap,
        )

    def truncate(self, cap):
        return AlgebraElement(self.quiver, self.ring, self.terms, min(self.cap, cap))

    def is_zero(self):
        return not self.terms

    def word_degree(self):
        return max((len(p.arrows) for p in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pc: (self.quiver.order_key(pc[0]), pc[0].source))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        diff = self - other
        return diff.is_zero()

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p, c in self.sorted_terms():
            bits.append("(%s)*%r" % (self.ring.to_str(c), p))
        return " + ".join(bits)


def algebra_mul(a, b):
    """Bilinear extension of path concatenation; b acts first."""
    return a * b


def truncate(a, cap):
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    return a.truncate(cap)
