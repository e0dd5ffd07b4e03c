"""Finite groups (and loops) as dense multiplication tables.

Elements are integer indices 0..n-1 with the identity canonically at 0.
All algebra is table lookups; this is meant for small groups (|G| <= ~120),
which is all the rest of the package ever needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    MissingInverse,
    NoIdentity,
    NotAbelian,
    NotAssociative,
    NotNormal,
    NotPGroup,
    OrderBoundExceeded,
    PrimeDoesNotDivideOrder,
    TableNotLatin,
)

#: Sentinel prime returned by ``p_group_prime`` for the trivial group,
#: which is a p-group for every prime at once.  1 is not a prime, so the
#: value cannot collide with a genuine answer.
TRIVIAL_P = 1

DEFAULT_SUBGROUP_ORDER_BOUND = 64


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group (or loop) given by its multiplication table."""

    order: int
    mul: tuple  # tuple of tuples, mul[a][b]
    inv: tuple
    is_associative: bool = True
    labels: Optional[tuple] = None
    name: str = "G"

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            n += 1
        return n

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.order)
            for b in range(self.order)
        )

    def conjugate(self, g: int, x: int) -> int:
        return self.mul[self.mul[g][x]][self.inv[g]]

    def __repr__(self):
        kind = "group" if self.is_associative else "loop"
        return f"<{kind} {self.name} of order {self.order}>"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple  # sorted element indices
    is_normal: bool

    @property
    def order(self) -> int:
        return len(self.members)

    def index_in_parent(self) -> int:
        return self.parent.order // len(self.members)


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple  # map[a] in target for a in source
    surjective: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "surjective", len(set(self.map)) == self.target.order
        )

    def check(self) -> bool:
        src, tgt, f = self.source, self.target, self.map
        if f[0] != 0:
            return False
        return all(
            f[src.mul[a][b]] == tgt.mul[f[a]][f[b]]
            for a in range(src.order)
            for b in range(src.order)
        )

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def __call__(self, a: int) -> int:
        return self.map[a]


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _validate_table(mul, order, *, loop_mode, name):
    universe = set(range(order))
    for row in mul:
        if set(row) != universe:
            raise TableNotLatin(f"{name}: row is not a permutation of 0..{order-1}")
    for j in range(order):
        if {mul[i][j] for i in range(order)} != universe:
            raise TableNotLatin(f"{name}: column {j} is not a permutation")
    # locate a two-sided identity
    identity = None
    for e in range(order):
        if all(mul[e][x] == x and mul[x][e] == x for x in range(order)):
            identity = e
            break
    if identity is None:
        raise NoIdentity(f"{name}: no two-sided identity")
    return identity


def _relabel(mul, identity, labels):
    """Permute element indices so that the identity sits at index 0."""
    order = len(mul)
    perm = [identity] + [x for x in range(order) if x != identity]
    pos = {old: new for new, old in enumerate(perm)}
    new_mul = tuple(
        tuple(pos[mul[perm[a]][perm[b]]] for b in range(order)) for a in range(order)
    )
    new_labels = tuple(labels[perm[a]] for a in range(order)) if labels else None
    return new_mul, new_labels


def from_table(raw: Sequence[Sequence[int]], *, loop_mode=False,
               labels=None, name="G") -> FiniteGroup:
    order = len(raw)
    if order < 1 or any(len(row) != order for row in raw):
        raise TableNotLatin(f"{name}: table is not square")
    mul = tuple(tuple(int(x) for x in row) for row in raw)
    identity = _validate_table(mul, order, loop_mode=loop_mode, name=name)
    if identity != 0:
        mul, labels = _relabel(mul, identity, labels)
    inv = []
    for x in range(order):
        y = next((y for y in range(order)
                  if mul[x][y] == 0 and mul[y][x] == 0), None)
        if y is None:
            raise MissingInverse(f"{name}: element {x} has no two-sided inverse")
        inv.append(y)
    associative = all(
        mul[mul[a][b]][c] == mul[a][mul[b][c]]
        for a in range(order) for b in range(order) for c in range(order)
    )
    if not associative and not loop_mode:
        raise NotAssociative(f"{name}: table is not associative (use loop mode?)")
    return FiniteGroup(order=order, mul=mul, inv=tuple(inv),
                       is_associative=associative,
                       labels=tuple(labels) if labels else None, name=name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteGroup(order=n, mul=mul, inv=inv, name=f"Z{n}")


def trivial() -> FiniteGroup:
    return FiniteGroup(order=1, mul=((0,),), inv=(0,), name="1")


def _perm_compose(p, q):
    """(p*q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def _perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _perm_label(p):
    """Cycle notation on points 1..n."""
    n = len(p)
    seen, parts = set(), []
    for start in range(n):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(x + 1)
            x = p[x]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "e"


def _group_from_perms(perms, name):
    perms = sorted(perms)
    assert perms[0] == tuple(range(len(perms[0])))  # identity is lex-first
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(
        tuple(index[_perm_compose(a, b)] for b in perms) for a in perms
    )
    inv = tuple(index[_perm_inverse(a)] for a in perms)
    labels = tuple(_perm_label(p) for p in perms)
    return FiniteGroup(order=len(perms), mul=mul, inv=inv,
                       labels=labels, name=name), perms


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    group, _ = _group_from_perms(itertools.permutations(range(n)), f"S{n}")
    return group


def permutation_elements(n: int):
    """The element order used by ``symmetric(n)``: permutations in lex order."""
    return sorted(itertools.permutations(range(n)))


def _perm_sign(p):
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    perms = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    group, _ = _group_from_perms(perms, f"A{n}")
    return group


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, acting on order/2 points."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    n = order // 2
    rotations = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    reflections = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    perms = set(rotations) | set(reflections)
    group, _ = _group_from_perms(perms, f"D{order}")
    return group


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    if not (a.is_associative and b.is_associative):
        raise NotAssociative("direct products are only defined for groups")
    n, m = a.order, b.order
    mul = tuple(
        tuple(a.mul[x // m][y // m] * m + b.mul[x % m][y % m] for y in range(n * m))
        for x in range(n * m)
    )
    inv = tuple(a.inv[x // m] * m + b.inv[x % m] for x in range(n * m))
    labels = None
    if a.labels or b.labels:
        labels = tuple(
            f"({a.label(x // m)},{b.label(x % m)})" for x in range(n * m)
        )
    return FiniteGroup(order=n * m, mul=mul, inv=inv, labels=labels,
                       name=f"{a.name}x{b.name}")


def loop5() -> FiniteGroup:
    """The smallest loop that is not a group (order 5, two-sided inverses)."""
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    return from_table(table, loop_mode=True,
                      labels=("1", "a", "b", "c", "d"), name="L5")


def make_group(kind: str, *args) -> FiniteGroup:
    """String-keyed constructor used by file loaders and the CLI."""
    if kind == "cyclic":
        return cyclic(*args)
    if kind == "symmetric":
        return symmetric(*args)
    if kind == "alternating":
        return alternating(*args)
    if kind == "dihedral":
        return dihedral(*args)
    if kind == "trivial":
        return trivial()
    if kind == "direct_product":
        return direct_product(*args)
    if kind == "from_table":
        return from_table(*args)
    raise ValueError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# subgroup machinery
# ---------------------------------------------------------------------------

def _require_group(g: FiniteGroup, what: str):
    if not g.is_associative:
        raise NotAssociative(f"{what} requires an associative group")


def closure(g: FiniteGroup, gens: Iterable[int]) -> frozenset:
    elems = {0}
    frontier = [0]
    for x in gens:
        if x not in elems:
            elems.add(x)
            frontier.append(x)
    while frontier:
        new = []
        snapshot = list(elems)
        for a in snapshot:
            for b in frontier:
                for c in (g.mul[a][b], g.mul[b][a]):
                    if c not in elems:
                        elems.add(c)
                        new.append(c)
        frontier = new
    return frozenset(elems)


def subgroup_generated(g: FiniteGroup, gens: Sequence[int]) -> Subgroup:
    _require_group(g, "subgroup_generated")
    members = tuple(sorted(closure(g, gens)))
    return Subgroup(parent=g, members=members,
                    is_normal=_is_normal(g, frozenset(members)))


def _is_normal(g: FiniteGroup, members: frozenset) -> bool:
    return all(
        g.conjugate(x, s) in members for x in range(g.order) for s in members
    )


def all_subgroups(g: FiniteGroup, *, order_bound=DEFAULT_SUBGROUP_ORDER_BOUND):
    """Every subgroup, by closure of generated subsets with memoization."""
    _require_group(g, "subgroup enumeration")
    if g.order > order_bound:
        raise OrderBoundExceeded(
            f"|G| = {g.order} exceeds the subgroup enumeration bound {order_bound}"
        )
    found = {frozenset({0})}
    queue = [frozenset({0})]
    while queue:
        base = queue.pop()
        for x in range(1, g.order):
            if x in base:
                continue
            ext = closure(g, set(base) | {x})
            if ext not in found:
                found.add(ext)
                queue.append(ext)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def normal_subgroups(g: FiniteGroup, *, order_bound=DEFAULT_SUBGROUP_ORDER_BOUND):
    subs = []
    for members in all_subgroups(g, order_bound=order_bound):
        if _is_normal(g, members):
            subs.append(Subgroup(parent=g, members=tuple(sorted(members)),
                                 is_normal=True))
    return subs


def subgroup_as_group(sub: Subgroup) -> FiniteGroup:
    """The subgroup as a standalone group; element i is sub.members[i]."""
    g = sub.parent
    members = sub.members
    pos = {m: i for i, m in enumerate(members)}
    mul = tuple(
        tuple(pos[g.mul[a][b]] for b in members) for a in members
    )
    inv = tuple(pos[g.inv[a]] for a in members)
    labels = tuple(g.label(a) for a in members) if g.labels else None
    return FiniteGroup(order=len(members), mul=mul, inv=inv, labels=labels,
                       name=f"{g.name}|{{{','.join(map(str, members))}}}")


def quotient(g: FiniteGroup, n: Subgroup):
    """Quotient group, coset representatives, and the projection map.

    Returns (quotient, reps, proj) where reps[q] is the chosen representative
    of coset q (identity coset -> identity; otherwise smallest element index)
    and proj is the surjective homomorphism G -> G/N.
    """
    _require_group(g, "quotient")
    if n.parent is not g and n.parent != g:
        raise NotNormal("subgroup belongs to a different group")
    members = frozenset(n.members)
    if not _is_normal(g, members):
        raise NotNormal("subgroup is not normal")
    cosets = {}
    for x in range(g.order):
        cos = frozenset(g.mul[x][m] for m in members)
        key = min(cos)
        cosets.setdefault(key, cos)
    # identity coset first, then by smallest representative
    keys = sorted(cosets, key=lambda k: (k != 0, k))
    index = {}
    for qi, key in enumerate(keys):
        for x in cosets[key]:
            index[x] = qi
    reps = tuple(keys)
    q_order = len(keys)
    q_mul = tuple(
        tuple(index[g.mul[reps[a]][reps[b]]] for b in range(q_order))
        for a in range(q_order)
    )
    q_inv = tuple(index[g.inv[reps[a]]] for a in range(q_order))
    quot = FiniteGroup(order=q_order, mul=q_mul, inv=q_inv,
                       name=f"{g.name}/N{len(members)}")
    proj = Homomorphism(source=g, target=quot,
                        map=tuple(index[x] for x in range(g.order)))
    return quot, reps, proj


def _prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_group_prime(g: FiniteGroup) -> Optional[int]:
    """The prime p with |G| = p^k, TRIVIAL_P for the trivial group, else None."""
    if g.order == 1:
        return TRIVIAL_P
    factors = _prime_factors(g.order)
    return factors[0] if len(factors) == 1 else None


def sylow_subgroup(g: FiniteGroup, q: int,
                   *, order_bound=DEFAULT_SUBGROUP_ORDER_BOUND) -> Subgroup:
    _require_group(g, "sylow_subgroup")
    if g.order % q != 0:
        raise PrimeDoesNotDivideOrder(f"{q} does not divide |G| = {g.order}")
    target = 1
    n = g.order
    while n % q == 0:
        target *= q
        n //= q
    for members in all_subgroups(g, order_bound=order_bound):
        if len(members) == target:
            return Subgroup(parent=g, members=tuple(sorted(members)),
                            is_normal=_is_normal(g, members))
    raise AssertionError("Sylow subgroup must exist")  # unreachable for groups


def maximal_normal_index_p(g: FiniteGroup, p: int,
                           *, order_bound=DEFAULT_SUBGROUP_ORDER_BOUND) -> Subgroup:
    """The index-p normal subgroup with lexicographically smallest members."""
    want = g.order // p
    candidates = [s for s in normal_subgroups(g, order_bound=order_bound)
                  if len(s.members) == want]
    if not candidates:
        raise NotPGroup(f"{g.name} has no normal subgroup of index {p}")
    return min(candidates, key=lambda s: s.members)


def composition_series_p(g: FiniteGroup,
                         *, order_bound=DEFAULT_SUBGROUP_ORDER_BOUND):
    """G = G_0 > G_1 > ... > 1 with factors of order p; members in G-indices."""
    p = p_group_prime(g)
    if p is None:
        raise NotPGroup(f"|{g.name}| = {g.order} is not a prime power")
    chain = [Subgroup(parent=g, members=tuple(range(g.order)), is_normal=True)]
    if g.order == 1:
        return chain
    current_members = tuple(range(g.order))
    while len(current_members) > 1:
        sub = Subgroup(parent=g, members=current_members,
                       is_normal=_is_normal(g, frozenset(current_members)))
        inner = subgroup_as_group(sub)
        step = maximal_normal_index_p(inner, p, order_bound=order_bound)
        current_members = tuple(sorted(sub.members[i] for i in step.members))
        chain.append(Subgroup(parent=g, members=current_members,
                              is_normal=_is_normal(g, frozenset(current_members))))
    return chain


def involutions(g: FiniteGroup):
    return [x for x in range(1, g.order) if g.mul[x][x] == 0]


def involution_generators(g: FiniteGroup) -> Optional[tuple]:
    """A smallest set of involutions generating G, or None."""
    _require_group(g, "involution_generators")
    if g.order == 1:
        return ()
    invs = involutions(g)
    if len(closure(g, invs)) != g.order:
        return None
    for size in range(1, len(invs) + 1):
        for combo in itertools.combinations(invs, size):
            if len(closure(g, combo)) == g.order:
                return combo
    return None


def require_abelian(g: FiniteGroup):
    if not g.is_abelian():
        raise NotAbelian(f"{g.name} is not abelian")
