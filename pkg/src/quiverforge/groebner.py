"""
Effort-bounded rewriting basis for two-sided ideals of path algebras.

Buchberger-style completion on overlaps of leading words, with every S-element
carrying a sugar degree (the weighted length of the products it came from).
Overlaps whose sugar exceeds the effort degree, or whose word is longer than a
length cap, are skipped, so the result is a finite, partial basis.  Reduction by
it is always sound: each rewriting step subtracts an element of the ideal.
"""

import heapq
from itertools import count


class _Rule:
    __slots__ = ("lm", "h", "t", "terms", "sugar", "alive")

    def __init__(self, lm, h, t, terms, sugar):
        self.lm = lm
        self.h = h
        self.t = t
        self.terms = terms          # word -> coeff, monic at lm
        self.sugar = sugar
        self.alive = True


class TruncatedBasis:

    def __init__(self, alg, effort, length_cap=None):
        self.alg = alg
        self.effort = effort
        self.length_cap = length_cap if length_cap is not None else 2 * effort + 2
        self.rules = []
        self.index = {}
        self.lengths = set()
        self.dead = set()
        self.stats = {"pairs": 0, "skipped": 0, "zero": 0}
        self._complete()

    # helpers

    def _key(self, w):
        return self.alg.key(w)

    def _visits(self, h, t, w):
        if not self.dead:
            return False
        if h in self.dead or t in self.dead:
            return True
        arrows = self.alg.quiver.arrows
        return any(arrows[a].tail in self.dead for a in w)

    def _find(self, w):
        index = self.index
        n = len(w)
        for i in range(n):
            for L in self.lengths:
                if i + L <= n:
                    r = index.get(w[i:i + L])
                    if r is not None:
                        return r, i
        return None

    def reduce_terms(self, h, t, terms):
        """Full reduction of one (head, tail) component given as word -> coeff."""
        key = self._key
        work = dict(terms)
        heap = [(_neg(key(w)), w) for w in work]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None or c == 0:
                continue
            if self._visits(h, t, w):
                continue
            hit = self._find(w) if w else None
            if hit is None:
                out[w] = c
                continue
            rule, i = hit
            left, right = w[:i], w[i + len(rule.lm):]
            for gw, gc in rule.terms.items():
                if gw == rule.lm:
                    continue
                nw = left + gw + right
                v = work.get(nw)
                if v is None:
                    work[nw] = -c * gc
                    heapq.heappush(heap, (_neg(key(nw)), nw))
                else:
                    v = v - c * gc
                    work[nw] = v
        return out

    def reduce(self, f):
        from .algebra import Element
        out = {}
        for (h, t), comp in f.components().items():
            terms = {m[2]: c for m, c in comp.terms.items()}
            for w, c in self.reduce_terms(h, t, terms).items():
                if c != 0:
                    out[(h, t, w)] = c
        return Element._raw(self.alg, out)

    # completion

    def _complete(self):
        alg = self.alg
        queue = []
        tick = count()
        for r in alg.relations:
            for (h, t), comp in r.components().items():
                terms = {m[2]: c for m, c in comp.terms.items()}
                sugar = max(alg.word_weight(w) for w in terms)
                heapq.heappush(queue, (sugar, next(tick), "poly", (h, t, terms)))
        while queue:
            sugar, _, kind, data = heapq.heappop(queue)
            if kind == "pair":
                a, b, left, right = data
                if not (a.alive and b.alive):
                    continue
                self.stats["pairs"] += 1
                terms = {}
                for w, c in a.terms.items():
                    terms[w + right] = c
                for w, c in b.terms.items():
                    nw = left + w
                    terms[nw] = terms.get(nw, 0) - c
                h, t = a.h, b.t
            else:
                h, t, terms = data
            red = self.reduce_terms(h, t, {w: c for w, c in terms.items() if c != 0})
            red = {w: c for w, c in red.items() if c != 0}
            if not red:
                self.stats["zero"] += 1
                continue
            self._add(h, t, red, sugar, queue, tick)

    def _add(self, h, t, terms, sugar, queue, tick):
        key = self._key
        lm = max(terms, key=key)
        lc = terms[lm]
        terms = {w: c / lc if not isinstance(c, int) or not isinstance(lc, int) else _frac(c, lc)
                 for w, c in terms.items()}
        rule = _Rule(lm, h, t, terms, sugar)
        if not lm:
            # an idempotent lies in the ideal: every path through h vanishes
            self.dead.add(h)
            for old in self.rules:
                if old.alive and (old.h in self.dead or old.t in self.dead
                                  or self._visits(old.h, old.t, old.lm)):
                    old.alive = False
                    self.index.pop(old.lm, None)
            self.rules.append(rule)
            return
        # older rules whose leading word contains lm are superseded
        for old in self.rules:
            if old.alive and len(old.lm) >= len(lm) and _contains(old.lm, lm):
                old.alive = False
                self.index.pop(old.lm, None)
                heapq.heappush(queue, (old.sugar, next(tick), "poly", (old.h, old.t, dict(old.terms))))
        self.rules.append(rule)
        self.index[lm] = rule
        self.lengths = {len(r.lm) for r in self.rules if r.alive and r.lm}
        for other in self.rules:
            if not other.alive:
                continue
            self._pairs(rule, other, queue, tick)
            if other is not rule:
                self._pairs(other, rule, queue, tick)

    def _pairs(self, a, b, queue, tick):
        """Overlaps where a suffix of lm(a) equals a prefix of lm(b)."""
        A, B = a.lm, b.lm
        ww = self.alg.word_weight
        for ov in range(1, min(len(A), len(B))):
            if A[-ov:] != B[:ov]:
                continue
            left = A[:len(A) - ov]
            right = B[ov:]
            sugar = max(a.sugar + ww(right), ww(left) + b.sugar)
            if sugar > self.effort or len(left) + len(B) > self.length_cap:
                self.stats["skipped"] += 1
                continue
            heapq.heappush(queue, (sugar, next(tick), "pair", (a, b, left, right)))

    def alive_rules(self):
        return [r for r in self.rules if r.alive]

    @property
    def complete(self):
        """True when no overlap was skipped, so reduction decides membership."""
        return self.stats["skipped"] == 0


def _contains(word, sub):
    n, m = len(word), len(sub)
    for i in range(n - m + 1):
        if word[i:i + m] == sub:
            return True
    return False


def _neg(k):
    w, n, ranks = k
    return (-w, -n, tuple(-r for r in ranks))


def _frac(a, b):
    from fractions import Fraction
    return Fraction(a, b)
