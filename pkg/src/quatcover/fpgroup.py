"""Words, presentations, Todd-Coxeter coset enumeration and permutation-group
arithmetic.

Generators are numbered from 1; a letter ``g > 0`` is a generator and ``-g``
its inverse.  Permutations are tuples acting on ``0..n-1``; products compose
left to right, so ``(p * q)(i) = q(p(i))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm

DEFAULT_MAX_COSETS = 100_000
DEFAULT_ELEMENT_CAP = 20_000


class FpGroupError(Exception):
    pass


class CosetLimitError(FpGroupError):
    """Coset enumeration exceeded its budget; the group may be infinite."""


class ElementCapError(FpGroupError):
    """A subgroup closure exceeded the configured element cap."""


# ---------------------------------------------------------------------------
# Words and presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if any(a == 0 for a in self.letters):
            raise ValueError("letters must be nonzero signed generator indices")

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-a for a in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def free_reduce(self) -> "Word":
        out: list[int] = []
        for a in self.letters:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
        return Word(tuple(out))

    def max_index(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def substitute(self, images: "list[Word] | tuple[Word, ...]") -> "Word":
        """Replace generator i by images[i-1] (inverses map to inverse words)."""
        out: list[int] = []
        for a in self.letters:
            w = images[abs(a) - 1]
            out.extend(w.letters if a > 0 else w.inverse().letters)
        return Word(tuple(out)).free_reduce()


X = Word((1,))
Y = Word((2,))


@dataclass(frozen=True)
class Presentation:
    num_gens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        for r in self.relators:
            if r.max_index() > self.num_gens:
                raise ValueError("relator uses an undeclared generator")


_GEN_NAMES = "xyzw"


def parse_word(text: str, num_gens: int = 2) -> Word:
    """Parse the CLI word grammar.

    word    := factor+
    factor  := (letter | '(' word ')') exponent?
    letter  := one of x, y (uppercase = inverse)
    exponent:= optional '-' followed by digits

    Examples: ``x4`` = x^4, ``XyXy`` = x^-1 y x^-1 y, ``(xy)4`` = (xy)^4.
    The bare string ``1`` denotes the empty word.
    """
    pos = 0
    text = text.replace(" ", "")
    if text == "1":
        return Word(())

    def parse_seq(stop_at_paren: bool) -> Word:
        nonlocal pos
        out = Word()
        while pos < len(text):
            ch = text[pos]
            if ch == ")":
                if not stop_at_paren:
                    raise ValueError(f"unbalanced ')' at {pos}")
                return out
            if ch == "(":
                pos += 1
                inner = parse_seq(True)
                if pos >= len(text) or text[pos] != ")":
                    raise ValueError("missing ')'")
                pos += 1
                out = out * (inner ** _parse_exp())
            elif ch.lower() in _GEN_NAMES[:num_gens]:
                idx = _GEN_NAMES.index(ch.lower()) + 1
                letter = idx if ch.islower() else -idx
                pos += 1
                out = out * (Word((letter,)) ** _parse_exp())
            else:
                raise ValueError(f"unexpected character {ch!r} at {pos}")
        if stop_at_paren:
            raise ValueError("missing ')'")
        return out

    def _parse_exp() -> int:
        nonlocal pos
        m = re.match(r"-?\d+", text[pos:])
        if not m:
            return 1
        pos += m.end()
        return int(m.group())

    return parse_seq(False)


def parse_presentation(text: str, num_gens: int = 2) -> Presentation:
    """Parse a comma-separated relator list, e.g. ``(xy)4,xYxy,yXyx``."""
    relators = tuple(parse_word(part, num_gens) for part in text.split(",") if part.strip())
    return Presentation(num_gens, relators)


def format_word(w: Word) -> str:
    return "".join(_GEN_NAMES[abs(a) - 1].upper() if a < 0 else _GEN_NAMES[a - 1]
                   for a in w.letters) or "1"


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration (HLT with coincidence handling)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetTable:
    num_gens: int
    action: tuple[tuple[int, ...], ...]  # action[coset][column]

    @property
    def num_cosets(self) -> int:
        return len(self.action)

    def generator_permutation(self, gen: int) -> tuple[int, ...]:
        col = 2 * (gen - 1)
        return tuple(row[col] for row in self.action)


def _column(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def todd_coxeter(p: Presentation, subgroup_gens=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of <subgroup_gens> in the group presented by p.

    HLT-style relator tracing; cosets are numbered in first-definition order
    and the returned table is standardized, so output is deterministic.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    ncols = 2 * p.num_gens
    rels = [tuple(_column(a) for a in r.free_reduce().letters) for r in p.relators]
    rels = [r for r in rels if r]
    subs = [tuple(_column(a) for a in w.free_reduce().letters) for w in subgroup_gens]

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def rep(k: int) -> int:
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def define(a: int, c: int) -> int:
        if len(table) >= max_cosets:
            raise CosetLimitError(f"coset limit {max_cosets} exceeded")
        b = len(table)
        table.append([None] * ncols)
        parent.append(b)
        table[a][c] = b
        table[b][c ^ 1] = a
        return b

    def merge(a: int, b: int, queue: list[int]):
        a, b = rep(a), rep(b)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for c in range(ncols):
                f = row[c]
                if f is None:
                    continue
                table[f][c ^ 1] = None
                mu, nu = rep(e), rep(f)
                if table[mu][c] is not None:
                    merge(nu, table[mu][c], queue)
                elif table[nu][c ^ 1] is not None:
                    merge(mu, table[nu][c ^ 1], queue)
                else:
                    table[mu][c] = nu
                    table[nu][c ^ 1] = mu

    def scan_and_fill(a: int, word):
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i:
                prv = table[b][word[j] ^ 1]
                if prv is None:
                    break
                b, j = prv, j - 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    for w in subs:
        scan_and_fill(0, w)
    while True:
        a = 0
        while a < len(table):
            if parent[a] != a:
                a += 1
                continue
            for w in rels:
                scan_and_fill(a, w)
                if parent[a] != a:
                    break
            if parent[a] == a:
                for c in range(ncols):
                    if table[a][c] is None:
                        define(a, c)
            a += 1
        # verification pass; coincidences may in rare cases leave work behind
        complete = all(parent[a] != a or all(e is not None for e in table[a])
                       for a in range(len(table)))
        if complete:
            break

    # compress and standardize: BFS from coset 0 in column order
    live = [a for a in range(len(table)) if parent[a] == a]
    order: list[int] = [rep(0)]
    number = {rep(0): 0}
    qi = 0
    while qi < len(order):
        a = order[qi]
        qi += 1
        for c in range(ncols):
            b = rep(table[a][c])
            if b not in number:
                number[b] = len(order)
                order.append(b)
    if len(order) != len(live):
        raise FpGroupError("coset table is not transitive")  # pragma: no cover
    action = tuple(tuple(number[rep(table[a][c])] for c in range(ncols)) for a in order)
    return CosetTable(p.num_gens, action)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def pmul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def porder(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    result = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        result = lcm(result, length)
    return result


def evaluate_word(w: Word, gen_images) -> Perm:
    if not gen_images:
        raise ValueError("need at least one image to fix the degree")
    n = len(gen_images[0])
    out = identity_perm(n)
    for a in w.letters:
        img = gen_images[abs(a) - 1]
        out = pmul(out, img if a > 0 else pinv(img))
    return out


def commutator(a: Perm, b: Perm) -> Perm:
    return pmul(pmul(pinv(a), pinv(b)), pmul(a, b))


def conjugate(a: Perm, g: Perm) -> Perm:
    return pmul(pmul(pinv(g), a), g)


# ---------------------------------------------------------------------------
# Permutation groups (explicit element sets; desk-scale targets only)
# ---------------------------------------------------------------------------

class PermGroup:
    def __init__(self, degree: int, generators, element_cap: int = DEFAULT_ELEMENT_CAP,
                 known_order: int | None = None):
        self.degree = degree
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
        self.element_cap = element_cap
        self._known_order = known_order
        self._elements: list[Perm] | None = None
        self._element_set: frozenset[Perm] | None = None

    @property
    def elements(self) -> list[Perm]:
        """All elements in deterministic BFS order."""
        if self._elements is None:
            ident = identity_perm(self.degree)
            seen = {ident}
            queue = [ident]
            qi = 0
            while qi < len(queue):
                g = queue[qi]
                qi += 1
                for s in self.generators:
                    h = pmul(g, s)
                    if h not in seen:
                        if len(seen) >= self.element_cap:
                            raise ElementCapError(
                                f"group exceeds element cap {self.element_cap}")
                        seen.add(h)
                        queue.append(h)
            self._elements = queue
            self._element_set = frozenset(seen)
        return self._elements

    @property
    def element_set(self) -> frozenset[Perm]:
        self.elements
        return self._element_set  # type: ignore[return-value]

    @property
    def order(self) -> int:
        if self._known_order is not None:
            return self._known_order
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.element_set

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(pmul(a, b) == pmul(b, a) for i, a in enumerate(gens) for b in gens[i:])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.element_set <= other.element_set

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.degree == other.degree \
            and self.element_set == other.element_set

    def __hash__(self):
        return hash((self.degree, self.element_set))


def subgroup_generated(degree: int, elements, element_cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    gens = [tuple(e) for e in elements if tuple(e) != identity_perm(degree)]
    return PermGroup(degree, gens, element_cap)


def regular_representation(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS):
    """The regular permutation action of the group presented by p.

    Returns (PermGroup, generator permutations); the degree equals the group
    order.
    """
    ct = todd_coxeter(p, (), max_cosets)
    gens = tuple(ct.generator_permutation(g + 1) for g in range(p.num_gens))
    return PermGroup(ct.num_cosets, gens, known_order=ct.num_cosets), gens


def normal_closure(G: PermGroup, seeds) -> PermGroup:
    """Smallest normal subgroup of G containing the seeds."""
    ident = identity_perm(G.degree)
    conj = {tuple(s) for s in seeds if tuple(s) != ident}
    queue = list(conj)
    qi = 0
    while qi < len(queue):
        s = queue[qi]
        qi += 1
        for g in G.generators:
            c = conjugate(s, g)
            if c not in conj:
                conj.add(c)
                queue.append(c)
    return subgroup_generated(G.degree, sorted(conj), G.element_cap)


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    """G = G1 >= G2 >= ... with G_{n+1} = <[G_n, G]>, until the series is stable."""
    series = [G]
    ident = identity_perm(G.degree)
    level_words = list(G.generators)  # simple commutators of the current depth
    while True:
        next_words = [commutator(a, b) for a in level_words for b in G.generators]
        next_words = [w for w in next_words if w != ident]
        term = normal_closure(G, next_words)
        if term.element_set == series[-1].element_set:
            break
        series.append(term)
        level_words = next_words
        if term.order == 1:
            break
    return series


def nilpotency_class(G: PermGroup) -> int | None:
    """Nilpotency class, or None if the lower central series stabilizes above 1."""
    series = lower_central_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


# ---------------------------------------------------------------------------
# Morphisms, generating pairs, automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MorphismReport:
    kind: str  # not_hom | hom_onto_subgroup | epimorphism | automorphism
    image_order: int = 0
    failed_relator: Word | None = None

    @property
    def is_hom(self) -> bool:
        return self.kind != "not_hom"


def extends_to_morphism(p: Presentation, images, target: PermGroup,
                        source_order: int | None = None) -> MorphismReport:
    """Classify the assignment generator_i -> images[i] against the target group.

    A surjective endomorphism of a finite group is an automorphism, so the
    assignment is an automorphism exactly when it is an epimorphism and the
    source group has the same order as the target.
    """
    images = [tuple(im) for im in images]
    ident = identity_perm(target.degree)
    for r in p.relators:
        if evaluate_word(r, images) != ident:
            return MorphismReport("not_hom", failed_relator=r)
    img = subgroup_generated(target.degree, images, target.element_cap)
    if img.order < target.order:
        return MorphismReport("hom_onto_subgroup", image_order=img.order)
    if source_order is None:
        source_order = todd_coxeter(p).num_cosets
    if source_order == target.order:
        return MorphismReport("automorphism", image_order=img.order)
    return MorphismReport("epimorphism", image_order=img.order)


GENPAIR_ORDER_CAP = 200


def _index_tables(G: PermGroup):
    """Element list, index lookup, multiplication and inverse tables."""
    elems = G.elements
    index = {e: i for i, e in enumerate(elems)}
    mult = [[index[pmul(a, b)] for b in elems] for a in elems]
    inv = [index[pinv(a)] for a in elems]
    return elems, index, mult, inv


def iter_generating_pairs(G: PermGroup):
    if G.order > GENPAIR_ORDER_CAP:
        raise ElementCapError(f"order {G.order} exceeds generating-pair cap")
    elems, _, mult, _ = _index_tables(G)
    n = len(elems)
    for i in range(n):
        for j in range(n):
            closure = {0, i, j}
            queue = [0, i, j]
            qi = 0
            while qi < len(queue) and len(closure) < n:
                a = queue[qi]
                qi += 1
                for b in (i, j):
                    c = mult[a][b]
                    if c not in closure:
                        closure.add(c)
                        queue.append(c)
            if len(closure) == n:
                yield elems[i], elems[j]


def generating_pairs(G: PermGroup) -> int:
    return sum(1 for _ in iter_generating_pairs(G))


def automorphism_count(G: PermGroup, p: Presentation) -> int:
    """Number of generating pairs that extend to automorphisms of G.

    Aut(G) acts semi-regularly on generating pairs, so this equals |Aut(G)|
    when p presents G on its first two generators.
    """
    ident = identity_perm(G.degree)
    count = 0
    for a, b in iter_generating_pairs(G):
        if all(evaluate_word(r, (a, b)) == ident for r in p.relators):
            count += 1
    return count


def homomorphism_map(G: PermGroup, gens, images) -> dict[Perm, Perm]:
    """The full element map of the homomorphism sending gens[i] -> images[i].

    Assumes the assignment is a homomorphism; elements of G are expressed as
    BFS words in the given generators.
    """
    gens = [tuple(g) for g in gens]
    images = [tuple(im) for im in images]
    ident = identity_perm(G.degree)
    mapped = {ident: identity_perm(len(images[0]))}
    queue = [ident]
    qi = 0
    while qi < len(queue):
        g = queue[qi]
        qi += 1
        for s, t in zip(gens, images):
            h = pmul(g, s)
            if h not in mapped:
                mapped[h] = pmul(mapped[g], t)
                queue.append(h)
    return mapped


def isomorphic_by_generator_search(p: Presentation, source_order: int,
                                   target: PermGroup) -> bool:
    """Brute-force isomorphism test: search generator images in the target.

    Guided only by element orders; adequate for the desk-scale groups here.
    """
    if source_order != target.order:
        return False
    ident = identity_perm(target.degree)
    elems = target.elements
    for a in elems:
        for b in elems:
            if all(evaluate_word(r, (a, b)) == ident for r in p.relators):
                if subgroup_generated(target.degree, (a, b), target.element_cap).order \
                        == target.order:
                    return True
    return False


def abelian_invariants(G: PermGroup) -> tuple[int, ...]:
    """Invariant factor chain of an abelian permutation group.

    Determined from element-order statistics prime by prime; raises for
    non-abelian input.
    """
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    orders = [porder(g) for g in G.elements]
    n = G.order
    primes = set()
    for o in orders:
        k = o
        for q in range(2, k + 1):
            if q * q > k:
                if k > 1:
                    primes.add(k)
                break
            while k % q == 0:
                primes.add(q)
                k //= q
    partitions: dict[int, list[int]] = {}
    for q in sorted(primes):
        # the count of elements with order dividing q^k is q^(sum min(lam_i, k)),
        # so successive exponent differences give the number of parts lam_i >= k
        lam: list[int] = []
        k = 1
        prev_exp = 0
        while True:
            cnt = sum(1 for o in orders if (q ** k) % o == 0)
            exp = _ilog(cnt, q)
            step = exp - prev_exp
            if step == 0:
                break
            lam.append(step)
            prev_exp = exp
            k += 1
        partition = []
        for k_idx, cnt_ge in enumerate(lam, start=1):
            nxt = lam[k_idx] if k_idx < len(lam) else 0
            partition.extend([k_idx] * (cnt_ge - nxt))
        partition.sort(reverse=True)
        if partition:
            partitions[q] = partition
    depth = max((len(v) for v in partitions.values()), default=0)
    factors = []
    for i in range(depth):
        f = 1
        for q, partition in partitions.items():
            if i < len(partition):
                f *= q ** partition[i]
        factors.append(f)
    factors.sort()
    assert n == 1 or _prod(factors) == n
    return tuple(factors)


def _ilog(n: int, q: int) -> int:
    e = 0
    while n % q == 0 and n > 1:
        n //= q
        e += 1
    return e


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
