"""Finite H-sets, the wreath product G wr H, and indexing of the base K = G^Omega."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple

from . import groups
from .errors import ContextMismatch, ContextTooLarge, NonFaithfulAction
from .groups import FiniteGroup, Subgroup, subgroup_as_group

K_SIZE_HARD_CAP = 2 ** 62
DENSE_TABLE_CAP = 4096


@dataclass(frozen=True)
class GroupAction:
    """A faithful action of h_group on {0..omega_size-1}."""

    h_group: FiniteGroup
    omega_size: int
    act: tuple  # act[h][omega]
    name: str = "action"

    def __post_init__(self):
        h = self.h_group
        m = self.omega_size
        if len(self.act) != h.order or any(len(row) != m for row in self.act):
            raise ValueError("action table has wrong dimensions")
        ident = tuple(range(m))
        if self.act[0] != ident:
            raise ValueError("identity of H must act trivially")
        for a in range(h.order):
            for b in range(h.order):
                composed = tuple(self.act[a][self.act[b][w]] for w in range(m))
                if self.act[h.mul[a][b]] != composed:
                    raise ValueError("action table is not compatible with H")

    def kernel(self) -> tuple:
        ident = tuple(range(self.omega_size))
        return tuple(h for h in range(self.h_group.order) if self.act[h] == ident)

    def is_faithful(self) -> bool:
        return len(self.kernel()) == 1

    def require_faithful(self):
        if not self.is_faithful():
            raise NonFaithfulAction(
                f"action of {self.h_group.name} on {self.omega_size} points "
                "is not faithful"
            )

    def quotient_by_kernel(self) -> "GroupAction":
        """Replace H by H/kernel so that the induced action is faithful."""
        ker = frozenset(self.kernel())
        if len(ker) == 1:
            return self
        sub = Subgroup(parent=self.h_group, members=tuple(sorted(ker)),
                       is_normal=True)
        quot, reps, proj = groups.quotient(self.h_group, sub)
        act = tuple(self.act[reps[q]] for q in range(quot.order))
        return GroupAction(h_group=quot, omega_size=self.omega_size, act=act,
                           name=f"{self.name}/ker")


def cyclic_rotation_action(n: int) -> GroupAction:
    """C_n rotating n positions one step per generator application.

    The table is act[t][w] = (w - t) mod n, which makes a positive spin move
    each switch one position forward (position w then holds the switch that
    was at w - 1 ... equivalently the coordinate at w comes from w + t).
    """
    h = groups.cyclic(n)
    act = tuple(tuple((w - t) % n for w in range(n)) for t in range(n))
    return GroupAction(h_group=h, omega_size=n, act=act, name=f"C{n}-rotation")


def natural_symmetric_action(n: int) -> GroupAction:
    h = groups.symmetric(n)
    perms = groups.permutation_elements(n)
    return GroupAction(h_group=h, omega_size=n, act=tuple(perms),
                       name=f"S{n}-natural")


def dihedral_action(order: int) -> GroupAction:
    """Dihedral group of the given order on order/2 polygon corners."""
    h = groups.dihedral(order)
    n = order // 2
    # dihedral() elements are themselves permutations of the n points, sorted
    # lexicographically; rebuild that list to recover the action table.
    rotations = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    reflections = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    perms = sorted(set(rotations) | set(reflections))
    return GroupAction(h_group=h, omega_size=n, act=tuple(perms),
                       name=f"D{order}-polygon")


def trivial_action() -> GroupAction:
    return GroupAction(h_group=groups.trivial(), omega_size=1, act=((0,),),
                       name="trivial")


def regular_action(h: FiniteGroup) -> GroupAction:
    """H acting on its own |H| elements by left translation."""
    act = tuple(tuple(h.mul[a][w] for w in range(h.order))
                for a in range(h.order))
    return GroupAction(h_group=h, omega_size=h.order, act=act,
                       name=f"{h.name}-regular")


def action_from_permutations(h: FiniteGroup, perms: Sequence[Sequence[int]],
                             name="action", *, allow_non_faithful=False
                             ) -> GroupAction:
    action = GroupAction(h_group=h, omega_size=len(perms[0]),
                         act=tuple(tuple(p) for p in perms), name=name)
    if not allow_non_faithful:
        action.require_faithful()
    return action


@dataclass(frozen=True)
class WreathContext:
    """A full puzzle instance: switches G at |Omega| positions spun by H."""

    g_group: FiniteGroup
    action: GroupAction
    win_set: frozenset = None  # type: ignore[assignment]
    name: str = ""
    allow_non_faithful: bool = False

    def __post_init__(self):
        if self.g_group.order ** self.action.omega_size > K_SIZE_HARD_CAP:
            raise ContextTooLarge("|G|^|Omega| exceeds 2^62")
        if not self.allow_non_faithful:
            self.action.require_faithful()
        if self.win_set is None:
            object.__setattr__(self, "win_set", frozenset({0}))
        else:
            object.__setattr__(self, "win_set", frozenset(self.win_set))
        if not self.win_set or not all(
            0 <= w < self.k_size for w in self.win_set
        ):
            raise ValueError("win_set must be a nonempty subset of K")
        if not self.name:
            object.__setattr__(
                self,
                "name",
                f"{self.g_group.name}wr{self.action.h_group.name}",
            )

    # -- sizes --------------------------------------------------------------

    @property
    def omega_size(self) -> int:
        return self.action.omega_size

    @property
    def h_order(self) -> int:
        return self.action.h_group.order

    @property
    def k_size(self) -> int:
        return self.g_group.order ** self.action.omega_size

    @property
    def loop_mode(self) -> bool:
        return not self.g_group.is_associative

    # -- base-vector indexing (mixed radix, omega = 0 most significant) -----

    def encode(self, coords: Sequence[int]) -> int:
        n = self.g_group.order
        idx = 0
        for c in coords:
            idx = idx * n + c
        return idx

    def decode(self, idx: int) -> Tuple[int, ...]:
        n = self.g_group.order
        out = [0] * self.omega_size
        for w in range(self.omega_size - 1, -1, -1):
            idx, out[w] = divmod(idx, n)
        return tuple(out)

    # -- dense tables for small K -------------------------------------------

    @cached_property
    def _dense(self) -> bool:
        return self.k_size <= DENSE_TABLE_CAP

    @cached_property
    def _k_mul_table(self):
        mul = self.g_group.mul
        coords = [self.decode(i) for i in range(self.k_size)]
        return tuple(
            tuple(self.encode([mul[x][y] for x, y in zip(a, b)]) for b in coords)
            for a in coords
        )

    @cached_property
    def _k_inv_table(self):
        inv = self.g_group.inv
        return tuple(
            self.encode([inv[x] for x in self.decode(i)])
            for i in range(self.k_size)
        )

    @cached_property
    def _k_act_table(self):
        return tuple(
            tuple(self._act_slow(h, i) for i in range(self.k_size))
            for h in range(self.h_order)
        )

    @cached_property
    def orbit_masks(self):
        """orbit_masks[i] = bitmask of the H-orbit of base vector i."""
        act = self._k_act_table
        out = []
        for i in range(self.k_size):
            mask = 0
            for h in range(self.h_order):
                mask |= 1 << act[h][i]
            out.append(mask)
        return tuple(out)

    # -- base arithmetic -----------------------------------------------------

    def k_mul(self, a: int, b: int) -> int:
        if self._dense:
            return self._k_mul_table[a][b]
        mul = self.g_group.mul
        return self.encode(
            [mul[x][y] for x, y in zip(self.decode(a), self.decode(b))]
        )

    def k_inv(self, a: int) -> int:
        if self._dense:
            return self._k_inv_table[a]
        inv = self.g_group.inv
        return self.encode([inv[x] for x in self.decode(a)])

    def _act_slow(self, h: int, a: int) -> int:
        hinv = self.action.h_group.inv[h]
        row = self.action.act[hinv]
        coords = self.decode(a)
        return self.encode([coords[row[w]] for w in range(self.omega_size)])

    def k_act(self, h: int, a: int) -> int:
        """Coordinate w of the result is coordinate act[h^-1][w] of the input."""
        if self._dense:
            return self._k_act_table[h][a]
        return self._act_slow(h, a)

    def require_same(self, other: "WreathContext"):
        if (self.g_group != other.g_group or self.action != other.action
                or self.win_set != other.win_set):
            raise ContextMismatch("operands come from different contexts")


@dataclass(frozen=True)
class WreathElement:
    ctx: WreathContext
    base: int  # base-vector index
    spin: int  # H element index

    def coords(self):
        return self.ctx.decode(self.base)


def wreath_identity(ctx: WreathContext) -> WreathElement:
    return WreathElement(ctx=ctx, base=0, spin=0)


def act_on_base(ctx: WreathContext, h: int, k: int) -> int:
    return ctx.k_act(h, k)


def wreath_multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    a.ctx.require_same(b.ctx)
    ctx = a.ctx
    base = ctx.k_mul(a.base, ctx.k_act(a.spin, b.base))
    spin = ctx.action.h_group.mul[a.spin][b.spin]
    return WreathElement(ctx=ctx, base=base, spin=spin)


def wreath_inverse(a: WreathElement) -> WreathElement:
    ctx = a.ctx
    hinv = ctx.action.h_group.inv[a.spin]
    return WreathElement(ctx=ctx, base=ctx.k_act(hinv, ctx.k_inv(a.base)),
                         spin=hinv)


def projection(a: WreathElement) -> int:
    return a.base
