"""Cyclic potentials, cyclic derivatives, and degree-bounded rewriting.

The reduction system implements a Mora-style completion of a two-sided ideal
in the path algebra, truncated at word degree D.  The monomial order is graded
(word length) then lexicographic in the quiver's fixed arrow order, applied to
the traversal sequence.  Centrality and normal-form verdicts are certified
only up to D and are reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .quiver import AlgebraElement, Path


class CyclicPotential:
    """Formal sum of cyclic words; keys are lexicographically minimal rotations
    of the traversal sequence (with the rotated source vertex)."""

    def __init__(self, quiver, ring, terms=None):
        self.quiver = quiver
        self.ring = ring
        self.terms = {}
        for p, c in (terms or {}).items():
            self.add_term(p, c)

    def canonical(self, path):
        if not self.quiver.is_path(path):
            raise ValueError("potential term %r is not a path" % (path,))
        if self.quiver.path_head(path) != self.quiver.path_tail(path):
            raise ValueError("potential term %r is not a cyclic path" % (path,))
        if not path.arrows:
            return path
        seq = path.arrows
        best = None
        for i in range(len(seq)):
            rot = seq[i:] + seq[:i]
            if best is None or rot < best:
                best = rot
        return Path(self.quiver.tail(best[0]), best)

    def add_term(self, path, coeff):
        key = self.canonical(path)
        cur = self.terms.get(key, self.ring.zero())
        s = self.ring.add(cur, coeff)
        if self.ring.is_zero(s):
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other):
        out = CyclicPotential(self.quiver, self.ring, dict(self.terms))
        for p, c in other.terms.items():
            out.add_term(p, c)
        return out

    def __neg__(self):
        return CyclicPotential(
            self.quiver, self.ring, {p: self.ring.neg(c) for p, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CyclicPotential(
            self.quiver, self.ring, {p: self.ring.mul(c, v) for p, v in self.terms.items()}
        )

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, CyclicPotential) and (self - other).is_zero()

    def homogeneous_parts(self):
        parts = {}
        for p, c in self.terms.items():
            parts.setdefault(len(p.arrows), {})[p] = c
        return {
            k: CyclicPotential(self.quiver, self.ring, t) for k, t in sorted(parts.items())
        }

    def word_degree(self):
        return max((len(p.arrows) for p in self.terms), default=0)

    def as_element(self, cap=12):
        return AlgebraElement(self.quiver, self.ring, dict(self.terms), cap)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms, key=self.quiver.order_key):
            bits.append("(%s)*%r" % (self.ring.to_str(self.terms[p]), p))
        return " + ".join(bits)


def cyclic_derivative(potential, arrow):
    """d/d x_arrow of a cyclic potential: for each occurrence of the arrow,
    rotate the cycle to start just after it and drop the occurrence."""
    quiver = potential.quiver
    if arrow not in quiver.arrows:
        raise ValueError("unknown arrow %r" % arrow)
    ring = potential.ring
    out = {}
    maxlen = potential.word_degree()
    for p, c in potential.terms.items():
        seq = p.arrows
        for i, a in enumerate(seq):
            if a != arrow:
                continue
            rot = seq[i + 1 :] + seq[:i]
            if rot:
                q = Path(quiver.tail(rot[0]), rot)
            else:
                q = Path(quiver.head(arrow), ())
            cur = out.get(q, ring.zero())
            s = ring.add(cur, c)
            if ring.is_zero(s):
                out.pop(q, None)
            else:
                out[q] = s
    return AlgebraElement(quiver, ring, out, cap=max(12, maxlen))


def euler_identity_check(potential):
    """Check sum_e x_e * dPhi/dx_e = k * Phi per homogeneous degree k.

    Returns (ok, residuals) where residuals maps degree -> residual potential.
    """
    quiver = potential.quiver
    ring = potential.ring
    results = {}
    ok = True
    for deg, part in potential.homogeneous_parts().items():
        cap = deg + 1
        total = AlgebraElement.zero(quiver, ring, cap)
        for a in quiver.arrow_order:
            d = cyclic_derivative(part, a).truncate(cap)
            xe = AlgebraElement.from_path(quiver, ring, quiver.arrow_path(a), cap=cap)
            total = total + xe * d
        expected = CyclicPotential(quiver, ring)
        k = ring.coerce(deg)
        for p, c in part.terms.items():
            expected.add_term(p, ring.mul(k, c))
        got = CyclicPotential(quiver, ring)
        for p, c in total.terms.items():
            got.add_term(p, c)
        residual = got - expected
        results[deg] = residual
        if not residual.is_zero():
            ok = False
    return ok, results


# ---------------------------------------------------------------------------
# Reduction systems
# ---------------------------------------------------------------------------


@dataclass
class Rule:
    lead: tuple          # traversal sequence of the leading word
    source: object       # source vertex of the leading word
    rhs: dict            # Path -> coeff; lead rewrites to sum of these


@dataclass
class ReductionSystem:
    quiver: object
    ring: object
    cap: int
    rules: list = field(default_factory=list)
    complete: bool = True
    relations: list = field(default_factory=list)
    _by_first: dict = field(default_factory=dict)
    _nf_cache: dict = field(default_factory=dict)

    def rebuild_index(self):
        self._by_first = {}
        for i, r in enumerate(self.rules):
            self._by_first.setdefault(r.lead[0], []).append(i)
        self._nf_cache = {}

    def find_reduction(self, seq):
        """Leftmost, then longest-lead match of a rule lead inside seq."""
        for pos in range(len(seq)):
            candidates = self._by_first.get(seq[pos])
            if not candidates:
                continue
            best = None
            for i in candidates:
                lead = self.rules[i].lead
                if len(lead) <= len(seq) - pos and seq[pos : pos + len(lead)] == lead:
                    if best is None or len(lead) > len(self.rules[best].lead):
                        best = i
            if best is not None:
                return pos, best
        return None

    def leading_words(self):
        return [Path(r.source, r.lead) for r in self.rules]


def _substituted_words(system, path, pos, rule):
    """One rewriting step: replace rule.lead at pos inside path.

    Returns list of (child_path, coeff); words beyond the cap are dropped.
    """
    quiver, ring = system.quiver, system.ring
    pre = path.arrows[:pos]
    post = path.arrows[pos + len(rule.lead) :]
    out = []
    for q, c in rule.rhs.items():
        seq = pre + q.arrows + post
        if len(seq) > system.cap:
            continue
        if seq:
            cand = Path(quiver.tail(seq[0]), seq)
            if not quiver.is_path(cand):
                continue
        else:
            cand = q  # lead replaced by a trivial path, nothing else around it
        out.append((cand, c))
    return out


def _word_normal_form(path, system):
    """Normal form of a single word as a dict Path -> coeff (memoized, iterative)."""
    cache = system._nf_cache
    got = cache.get(path)
    if got is not None:
        return got
    ring = system.ring
    stack = [path]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        hit = system.find_reduction(cur.arrows)
        if hit is None:
            cache[cur] = {cur: ring.one()}
            stack.pop()
            continue
        pos, ridx = hit
        children = _substituted_words(system, cur, pos, system.rules[ridx])
        missing = [ch for ch, _ in children if ch not in cache]
        if missing:
            stack.extend(missing)
            continue
        out = {}
        for ch, c in children:
            for r, cr in cache[ch].items():
                s = ring.add(out.get(r, ring.zero()), ring.mul(c, cr))
                if ring.is_zero(s):
                    out.pop(r, None)
                else:
                    out[r] = s
        cache[cur] = out
        stack.pop()
    return cache[path]


def normal_form(elem, system):
    """Reduce an AlgebraElement modulo the system; linear and idempotent."""
    ring = system.ring
    out = {}
    for p, c in elem.terms.items():
        if len(p.arrows) > system.cap:
            continue
        for q, cq in _word_normal_form(p, system).items():
            s = ring.add(out.get(q, ring.zero()), ring.mul(c, cq))
            if ring.is_zero(s):
                out.pop(q, None)
            else:
                out[q] = s
    return AlgebraElement(system.quiver, ring, out, min(elem.cap, system.cap))


def _leading(elem, quiver):
    best = None
    for p, c in elem.terms.items():
        if best is None or quiver.order_key(p) > quiver.order_key(best[0]):
            best = (p, c)
    return best


def _make_rule(elem, quiver, ring):
    lead, c = _leading(elem, quiver)
    inv = ring.invert(c)
    rhs = {}
    for p, cp in elem.terms.items():
        if p == lead:
            continue
        rhs[p] = ring.neg(ring.mul(inv, cp))
    return Rule(lead=lead.arrows, source=lead.source, rhs=rhs)


def _rule_element(rule, quiver, ring, cap):
    terms = {Path(rule.source, rule.lead): ring.one()}
    for p, c in rule.rhs.items():
        cur = terms.get(p, ring.zero())
        terms[p] = ring.add(cur, ring.neg(c))
    return AlgebraElement(quiver, ring, terms, cap)


class CompletionOverflow(Exception):
    """Raised when completion exceeds the configured rule cap."""

    def __init__(self, system):
        self.system = system
        super().__init__("reduction-system completion exceeded the rule cap")


def build_reduction_system(relations, cap, rule_cap=4000, raise_on_overflow=False):
    """Degree-<=cap completion of the two-sided ideal generated by relations.

    Overlap and inclusion ambiguities between leading words are resolved until
    no new rule of word degree <= cap arises; only ambiguity words of length
    <= cap matter for normal forms below the truncation degree.  Deterministic
    given the quiver's arrow order.  On hitting rule_cap the partial system is
    flagged complete=False (or CompletionOverflow is raised).
    """
    relations = [r for r in relations if not r.is_zero()]
    if not relations:
        raise ValueError("no nonzero relations given")
    quiver = relations[0].quiver
    ring = relations[0].ring
    system = ReductionSystem(quiver=quiver, ring=ring, cap=cap, relations=list(relations))
    system.rebuild_index()

    def add_rule(elem):
        red = normal_form(elem.truncate(cap), system)
        if red.is_zero():
            return False
        lead, _ = _leading(red, quiver)
        if len(lead.arrows) > cap:
            return False
        system.rules.append(_make_rule(red, quiver, ring))
        system.rules.sort(
            key=lambda r: (len(r.lead), tuple(quiver._rank[a] for a in r.lead))
        )
        system.rebuild_index()
        _interreduce(system)
        return True

    for rel in sorted(relations, key=lambda e: quiver.order_key(_leading(e, quiver)[0])):
        add_rule(rel)
        if len(system.rules) > rule_cap:
            system.complete = False
            if raise_on_overflow:
                raise CompletionOverflow(system)
            return system

    while True:
        new_rule_added = False
        n = len(system.rules)
        for i in range(n):
            for j in range(n):
                if i >= len(system.rules) or j >= len(system.rules):
                    break
                for spoly in _ambiguities(system, i, j):
                    if spoly.is_zero():
                        continue
                    if add_rule(spoly):
                        new_rule_added = True
                        if len(system.rules) > rule_cap:
                            system.complete = False
                            if raise_on_overflow:
                                raise CompletionOverflow(system)
                            return system
                if new_rule_added:
                    break
            if new_rule_added:
                break
        if not new_rule_added:
            break
    return system


def _interreduce(system):
    """Reduce every rule by the others; drop rules that collapse."""
    quiver, ring = system.quiver, system.ring
    stable = False
    while not stable:
        stable = True
        for i in range(len(system.rules)):
            rule = system.rules[i]
            others = ReductionSystem(
                quiver=quiver,
                ring=ring,
                cap=system.cap,
                rules=[r for k, r in enumerate(system.rules) if k != i],
            )
            others.rebuild_index()
            red = normal_form(_rule_element(rule, quiver, ring, system.cap), others)
            if red.is_zero():
                del system.rules[i]
                system.rebuild_index()
                stable = False
                break
            new_rule = _make_rule(red, quiver, ring)
            if new_rule.lead != rule.lead or new_rule.rhs != rule.rhs:
                system.rules[i] = new_rule
                system.rebuild_index()
                if new_rule.lead != rule.lead:
                    stable = False
                    break


def _ambiguities(system, i, j):
    """S-polynomials from overlap (suffix/prefix) and inclusion ambiguities."""
    r1, r2 = system.rules[i], system.rules[j]
    w1, w2 = r1.lead, r2.lead
    out = []
    for k in range(1, min(len(w1), len(w2))):
        if w1[len(w1) - k :] == w2[:k]:
            seq = w1 + w2[k:]
            if len(seq) > system.cap:
                continue
            left = _partial_rewrite(system, r1.source, seq, 0, r1)
            right = _partial_rewrite(system, r1.source, seq, len(w1) - k, r2)
            out.append(left - right)
    if i != j and len(w2) < len(w1):
        for pos in range(0, len(w1) - len(w2) + 1):
            if w1[pos : pos + len(w2)] == w2:
                left = _partial_rewrite(system, r1.source, w1, 0, r1)
                right = _partial_rewrite(system, r1.source, w1, pos, r2)
                out.append(left - right)
    return out


def _partial_rewrite(system, source, seq, pos, rule):
    quiver, ring = system.quiver, system.ring
    base = Path(source, seq)
    terms = {}
    for cand, c in _substituted_words(system, base, pos, rule):
        cur = terms.get(cand, ring.zero())
        s = ring.add(cur, c)
        if ring.is_zero(s):
            terms.pop(cand, None)
        else:
            terms[cand] = s
    return AlgebraElement(quiver, ring, terms, system.cap)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass
class CentralityVerdict:
    status: str            # 'CENTRAL-UP-TO-<D>' | 'NOT-CENTRAL' | 'INCONCLUSIVE'
    degree: int
    witness_arrow: object = None
    residual: object = None
    residual_norm: float = 0.0

    def __bool__(self):
        return self.status.startswith("CENTRAL")


def is_central(w, system, cap=None):
    """Check NF(w*x_e - x_e*w) = 0 for every arrow, up to degree cap."""
    cap = system.cap if cap is None else min(cap, system.cap)
    if not system.complete:
        return CentralityVerdict(status="INCONCLUSIVE", degree=cap)
    quiver, ring = system.quiver, system.ring
    w = w.truncate(cap)
    for a in quiver.arrow_order:
        xe = AlgebraElement.from_path(quiver, ring, quiver.arrow_path(a), cap=cap)
        comm = (w * xe - xe * w).truncate(cap)
        red = normal_form(comm, system)
        if not red.is_zero():
            worst = max(abs(complex(c)) for c in red.terms.values()) if not ring.exact else None
            return CentralityVerdict(
                status="NOT-CENTRAL",
                degree=cap,
                witness_arrow=a,
                residual=red,
                residual_norm=worst or 0.0,
            )
    return CentralityVerdict(status="CENTRAL-UP-TO-%d" % cap, degree=cap)
