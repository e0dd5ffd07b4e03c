"""Existence decisions for surjective strategies.

Positive answers come with a verified strategy; negative answers come either
from exhausting the reachable belief graph or from a certificate tree built
out of the reduction theorems (switch quotients, spin subgroups, orbit
restrictions) over small base facts.  Certificates are validated by an
independent checker that re-establishes every hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from . import groups
from .actions import GroupAction, WreathContext
from .errors import BudgetExceeded
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    TRIVIAL_P,
    all_subgroups,
    p_group_prime,
    quotient,
    subgroup_as_group,
)
from .strategies import Strategy, verify
from .synthesis import SearchStats, search_belief_path

EXHAUSTIVE_LEAF_K_CAP = 2 ** 12
DEFAULT_DECISION_BUDGET = 10 ** 7
DEFAULT_CERT_DEPTH = 3


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianClassification:
    """Leaf: elementary abelian p-group switches spun faithfully by a q-group."""

    p_switch: int
    q_spin: int

    def describe(self):
        return f"AbelianClassification(p={self.p_switch}, q={self.q_spin})"


@dataclass(frozen=True)
class ExhaustiveBeliefSearch:
    """Leaf: the reachable belief graph was exhausted without reaching empty."""

    context_label: str
    states_explored: int

    def describe(self):
        return (f"ExhaustiveBeliefSearch({self.context_label}, "
                f"states={self.states_explored})")


@dataclass(frozen=True)
class SwitchQuotient:
    """Reduce the switches through a surjection G -> G/N."""

    phi: Homomorphism
    child: "Certificate"

    def describe(self):
        return f"SwitchQuotient({self.phi.source.name} -> {self.phi.target.name})"


@dataclass(frozen=True)
class SpinSubgroup:
    """Restrict the adversary to an embedded subgroup of H."""

    embedding: Homomorphism  # H0 -> H, injective
    child: "Certificate"

    def describe(self):
        return f"SpinSubgroup({self.embedding.source.name} <= {self.embedding.target.name})"


@dataclass(frozen=True)
class OrbitRestriction:
    """Restrict to the orbit of one position under an embedded subgroup."""

    embedding: Homomorphism  # H0 -> H, injective
    omega: int
    orbit: Tuple[int, ...]
    child: "Certificate"

    def describe(self):
        return (f"OrbitRestriction(omega={self.omega}, "
                f"orbit={{{','.join(map(str, self.orbit))}}}, "
                f"{self.embedding.source.name} <= {self.embedding.target.name})")


Certificate = Union[AbelianClassification, ExhaustiveBeliefSearch,
                    SwitchQuotient, SpinSubgroup, OrbitRestriction]


def render_certificate(cert: Certificate, indent: int = 0) -> str:
    pad = "  " * indent
    line = pad + cert.describe()
    child = getattr(cert, "child", None)
    if child is None:
        return line
    return line + "\n" + render_certificate(child, indent + 1)


@dataclass(frozen=True)
class DecisionResult:
    verdict: str  # "yes" | "no" | "unknown"
    strategy: Optional[Strategy] = None
    certificate: Optional[Certificate] = None
    states_explored: int = 0
    conjectural: bool = False
    message: str = ""

    @property
    def exit_code(self) -> int:
        return {"yes": 0, "no": 3, "unknown": 4}[self.verdict]


# ---------------------------------------------------------------------------
# helper constructions on contexts
# ---------------------------------------------------------------------------

def _restricted_action(action: GroupAction, members: Tuple[int, ...],
                       positions: Tuple[int, ...]) -> GroupAction:
    """The action of a subgroup of H on a sub-orbit of Omega."""
    pos = {w: i for i, w in enumerate(positions)}
    act = tuple(
        tuple(pos[action.act[h][w]] for w in positions) for h in members
    )
    sub = Subgroup(parent=action.h_group, members=members,
                   is_normal=False)
    h0 = subgroup_as_group(sub)
    return GroupAction(h_group=h0, omega_size=len(positions), act=act,
                       name=f"{action.name}|{len(positions)}pts")


def _embedding_hom(h: FiniteGroup, members: Tuple[int, ...]) -> Homomorphism:
    sub = Subgroup(parent=h, members=members, is_normal=False)
    h0 = subgroup_as_group(sub)
    return Homomorphism(source=h0, target=h, map=tuple(members))


def _orbit(action: GroupAction, members: Tuple[int, ...], omega: int
           ) -> Tuple[int, ...]:
    return tuple(sorted({action.act[h][omega] for h in members}))


# ---------------------------------------------------------------------------
# the abelian classification oracle
# ---------------------------------------------------------------------------

def classify_abelian(g: FiniteGroup, action: GroupAction) -> DecisionResult:
    """Verdict for abelian switches: solvable iff G and H share a prime."""
    groups.require_abelian(g)
    action.require_faithful()
    p = p_group_prime(g)
    q = p_group_prime(action.h_group)
    compatible = (
        p is not None and q is not None
        and (p == q or TRIVIAL_P in (p, q))
    )
    if compatible:
        return DecisionResult(verdict="yes",
                              message="both p-groups for one prime")
    cert = AbelianClassification(p_switch=p or 0, q_spin=q or 0)
    return DecisionResult(verdict="no", certificate=cert,
                          message="prime mismatch between switches and spins")


def _is_elementary_abelian(g: FiniteGroup) -> Optional[int]:
    """The prime p if G is a nontrivial vector space over F_p, else None."""
    if g.order == 1 or not g.is_abelian():
        return None
    p = p_group_prime(g)
    if p is None or p == TRIVIAL_P:
        return None
    if all(g.element_order(x) == p for x in range(1, g.order)):
        return p
    return None


# ---------------------------------------------------------------------------
# nonexistence certificates
# ---------------------------------------------------------------------------

@dataclass
class _CertBudget:
    remaining: int

    def spend(self, amount=1):
        self.remaining -= amount
        if self.remaining < 0:
            raise BudgetExceeded("certificate search budget exceeded")


def find_nonexistence_certificate(ctx: WreathContext,
                                  *, budget: int = DEFAULT_DECISION_BUDGET,
                                  depth: int = DEFAULT_CERT_DEPTH
                                  ) -> Optional[Certificate]:
    """Search quotients, orbit restrictions, and spin subgroups for a No proof.

    Only valid for ordinary group contexts with the default winning state.
    """
    if ctx.loop_mode or ctx.win_set != frozenset({0}):
        return None
    tracker = _CertBudget(remaining=budget)
    return _prove_no(ctx.g_group, ctx.action, depth, tracker)


def _prove_no(g: FiniteGroup, action: GroupAction, depth: int,
              budget: _CertBudget) -> Optional[Certificate]:
    budget.spend()
    h = action.h_group

    # base fact: vector-space switches spun faithfully by a q-group, q != p
    p = _is_elementary_abelian(g)
    if p is not None and action.is_faithful():
        q = p_group_prime(h)
        if q not in (None, TRIVIAL_P, p):
            return AbelianClassification(p_switch=p, q_spin=q)

    if depth > 0 and g.is_associative:
        # switch quotients, smallest quotient first
        if g.order <= groups.DEFAULT_SUBGROUP_ORDER_BOUND:
            normals = [s for s in groups.normal_subgroups(g)
                       if 1 < len(s.members) < g.order]
            for n in sorted(normals, key=lambda s: -len(s.members)):
                quot, _reps, proj = quotient(g, n)
                child = _prove_no(quot, action, depth - 1, budget)
                if child is not None:
                    return SwitchQuotient(phi=proj, child=child)

        if h.order <= groups.DEFAULT_SUBGROUP_ORDER_BOUND:
            subs = [tuple(sorted(s)) for s in all_subgroups(h)
                    if 1 < len(s) < h.order]
            subs.sort(key=lambda members: (len(members), members))

            # orbit restrictions: one position's orbit under a proper subgroup
            for members in subs:
                seen_orbits = set()
                for omega in range(action.omega_size):
                    orbit = _orbit(action, members, omega)
                    if orbit in seen_orbits or len(orbit) == action.omega_size:
                        continue
                    seen_orbits.add(orbit)
                    sub_action = _restricted_action(action, members, orbit)
                    child = _prove_no(g, sub_action, depth - 1, budget)
                    if child is not None:
                        return OrbitRestriction(
                            embedding=_embedding_hom(h, members),
                            omega=min(orbit), orbit=orbit, child=child,
                        )

            # spin subgroups on the full position set
            for members in subs:
                positions = tuple(range(action.omega_size))
                sub_action = _restricted_action(action, members, positions)
                child = _prove_no(g, sub_action, depth - 1, budget)
                if child is not None:
                    return SpinSubgroup(embedding=_embedding_hom(h, members),
                                        child=child)

    # last resort: exhaust the belief graph of a small instance
    k_size = g.order ** action.omega_size
    if k_size <= EXHAUSTIVE_LEAF_K_CAP:
        ctx = WreathContext(g_group=g, action=action, allow_non_faithful=True)
        stats = SearchStats()
        try:
            path = search_belief_path(ctx, budget=min(budget.remaining, 10 ** 6),
                                      stats=stats)
        except BudgetExceeded:
            return None
        budget.spend(stats.states_explored)
        if path is None and stats.exhausted:
            return ExhaustiveBeliefSearch(context_label=ctx.name,
                                          states_explored=stats.states_explored)
    return None


# ---------------------------------------------------------------------------
# independent certificate validation
# ---------------------------------------------------------------------------

def validate_certificate(ctx: WreathContext, cert: Certificate,
                         *, search_budget: int = 10 ** 6) -> bool:
    """Re-check every hypothesis of the certificate against the context."""
    if ctx.loop_mode or ctx.win_set != frozenset({0}):
        return False
    return _validate_node(ctx.g_group, ctx.action, cert, search_budget)


def _validate_node(g: FiniteGroup, action: GroupAction, cert: Certificate,
                   search_budget: int) -> bool:
    if isinstance(cert, AbelianClassification):
        p = _is_elementary_abelian(g)
        if p is None or p != cert.p_switch:
            return False
        if not action.is_faithful():
            return False
        q = p_group_prime(action.h_group)
        return q == cert.q_spin and q not in (None, TRIVIAL_P, p)

    if isinstance(cert, ExhaustiveBeliefSearch):
        ctx = WreathContext(g_group=g, action=action, allow_non_faithful=True)
        stats = SearchStats()
        try:
            path = search_belief_path(ctx, budget=search_budget, stats=stats)
        except BudgetExceeded:
            return False
        return path is None and stats.exhausted

    if isinstance(cert, SwitchQuotient):
        phi = cert.phi
        if phi.source != g or not phi.surjective or not phi.check():
            return False
        return _validate_node(phi.target, action, cert.child, search_budget)

    if isinstance(cert, SpinSubgroup):
        emb = cert.embedding
        if emb.target != action.h_group or not emb.is_injective():
            return False
        if not emb.check():
            return False
        members = tuple(emb.map)
        positions = tuple(range(action.omega_size))
        sub_action = _restricted_action(action, tuple(sorted(members)), positions)
        return _validate_node(g, sub_action, cert.child, search_budget)

    if isinstance(cert, OrbitRestriction):
        emb = cert.embedding
        if emb.target != action.h_group or not emb.is_injective():
            return False
        if not emb.check():
            return False
        members = tuple(sorted(emb.map))
        if _orbit(action, members, cert.omega) != cert.orbit:
            return False
        sub_action = _restricted_action(action, members, cert.orbit)
        return _validate_node(g, sub_action, cert.child, search_budget)

    return False


# ---------------------------------------------------------------------------
# the decision engine
# ---------------------------------------------------------------------------

def decide_existence(ctx: WreathContext,
                     *, spin_period: Optional[int] = None,
                     budget: int = DEFAULT_DECISION_BUDGET,
                     try_certificates: bool = True,
                     try_construction: bool = True) -> DecisionResult:
    """Decide whether a surjective strategy exists.

    Certificates are attempted first (they are cheap and have no size cap);
    then constructive fast paths; then reachability over the belief graph.
    Loop-mode verdicts are flagged conjectural.
    """
    conjectural = ctx.loop_mode
    standard = (spin_period is None or spin_period == 1) \
        and ctx.win_set == frozenset({0}) and not ctx.loop_mode

    if standard and try_certificates:
        try:
            cert = find_nonexistence_certificate(ctx, budget=budget)
        except BudgetExceeded:
            cert = None
        if cert is not None:
            return DecisionResult(verdict="no", certificate=cert,
                                  message="nonexistence certificate found")

    if standard and try_construction:
        p = p_group_prime(ctx.g_group)
        q = p_group_prime(ctx.action.h_group)
        if (p is not None and q is not None
                and (p == q or TRIVIAL_P in (p, q))
                and ctx.action.is_faithful()):
            from .synthesis import construct_pgroup

            try:
                strat = construct_pgroup(ctx)
                return DecisionResult(verdict="yes", strategy=strat,
                                      message="p-group construction")
            except Exception:
                pass  # fall through to search

    stats = SearchStats()
    try:
        path = search_belief_path(ctx, budget=budget,
                                  spin_period=spin_period, stats=stats)
    except BudgetExceeded as exc:
        return DecisionResult(verdict="unknown",
                              states_explored=exc.states_explored,
                              conjectural=conjectural,
                              message="belief search budget exceeded")
    if path is not None:
        strat = Strategy(ctx=ctx, moves=path)
        report = verify(ctx, strat, spin_period=spin_period)
        assert report.valid
        return DecisionResult(verdict="yes", strategy=strat,
                              states_explored=stats.states_explored,
                              conjectural=conjectural,
                              message="belief search found a strategy")
    assert stats.exhausted
    cert = ExhaustiveBeliefSearch(context_label=ctx.name,
                                  states_explored=stats.states_explored)
    return DecisionResult(verdict="no", certificate=cert,
                          states_explored=stats.states_explored,
                          conjectural=conjectural,
                          message="belief graph exhausted")


def min_spin_period(ctx: WreathContext, bound: int,
                    *, budget: int = DEFAULT_DECISION_BUDGET) -> Optional[int]:
    """Smallest r <= bound allowing a win when spins happen every r turns."""
    for r in range(1, bound + 1):
        result = decide_existence(ctx, spin_period=r, budget=budget,
                                  try_certificates=(r == 1),
                                  try_construction=(r == 1))
        if result.verdict == "yes":
            return r
        if result.verdict == "unknown":
            raise BudgetExceeded(f"undecided at spin period {r}")
    return None
