"""Rank recovery from the support poset.

The almost-inverses of a prime set D are the primes whose negated class lies
in the nonnegative hull of D's classes; equivalently (and cone-free) the
primes Q such that {Q} together with part of D is principal.  A minimal D
whose almost-inverses cover every prime is an inverse basis; the longest
chain of self-inverse subsets inside it has |D| - rank steps, so the rank of
the class data falls out of pure poset bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable

from .cones import longest_closed_chain, positively_spans_its_span
from .errors import PreconditionError, ResourceLimitError
from .model import Model, PrimeId, Support, enumerate_v, v_membership
from .ratlin import cone_member, linear_rank, vec_neg

DEFAULT_SUBSET_BOUND = 12


@dataclass(frozen=True)
class ReayChain:
    """Strictly increasing chain of self-inverse prime sets, empty set first."""

    subsets: tuple[Support, ...]

    def __post_init__(self) -> None:
        if not self.subsets or self.subsets[0]:
            raise ValueError("a chain starts at the empty set")
        for prev, cur in zip(self.subsets, self.subsets[1:]):
            if not prev < cur:
                raise ValueError("chain subsets must strictly increase")

    @property
    def cardinality(self) -> int:
        return len(self.subsets) - 1

    @property
    def blocks(self) -> tuple[Support, ...]:
        return tuple(
            frozenset(cur - prev)
            for prev, cur in zip(self.subsets, self.subsets[1:])
        )


def inv_enum(
    m: Model, delta: Iterable[PrimeId], bound: int = DEFAULT_SUBSET_BOUND
) -> Support:
    """Almost-inverses of delta by support enumeration alone.

    Q qualifies when {Q} union T is principal for some subset T of delta,
    the empty T included.
    """
    d = m.check_ids(delta)
    if len(d) > bound:
        raise ResourceLimitError(
            f"subset enumeration over {len(d)} primes exceeds the bound {bound}"
        )
    ordered = sorted(d)
    subsets = list(
        chain.from_iterable(combinations(ordered, size) for size in range(len(ordered) + 1))
    )
    out = set()
    for q in m.ids():
        if any(v_membership(m, {q, *t}) for t in subsets):
            out.add(q)
    return frozenset(out)


def inv_cone(m: Model, delta: Iterable[PrimeId]) -> Support:
    """Almost-inverses of delta by cone membership of the negated classes."""
    d = m.check_ids(delta)
    gens = [m.vector(p) for p in sorted(d)]
    return frozenset(
        q for q in m.ids() if cone_member(vec_neg(m.vector(q)), gens)[0]
    )


def is_self_inverse(m: Model, subset: Iterable[PrimeId]) -> bool:
    """Does every member of the subset lie among its own almost-inverses?

    Equivalent to the classes of the subset positively spanning their span.
    """
    s = m.check_ids(subset)
    gens = [m.vector(p) for p in sorted(s)]
    return all(cone_member(vec_neg(m.vector(q)), gens)[0] for q in s)


def _covers_all_primes(m: Model, subset: frozenset) -> bool:
    # Almost-inverses of the subset reach every prime iff the subset's classes
    # positively span the span of all classes.
    vecs = [m.vector(p) for p in sorted(subset)]
    full = linear_rank(m.vectors())
    return linear_rank(vecs) == full and positively_spans_its_span(vecs)


def find_inverse_basis(m: Model) -> Support:
    """Greedy minimal prime set whose almost-inverses are all primes.

    Trial removals run in ascending id order starting from the full prime
    set; a removal sticks whenever the remainder still positively spans the
    span of all classes.
    """
    if not positively_spans_its_span(m.vectors()):
        raise PreconditionError("class vectors do not positively span their span")
    delta = list(m.ids())
    for pid in m.ids():
        trial = frozenset(p for p in delta if p != pid)
        if _covers_all_primes(m, trial):
            delta = sorted(trial)
    return frozenset(delta)


def max_reay_chain(m: Model, delta: Iterable[PrimeId]) -> ReayChain:
    """Longest chain of self-inverse subsets from {} up to an inverse basis."""
    d = m.check_ids(delta)
    if not _covers_all_primes(m, d):
        raise PreconditionError("delta is not an inverse basis (does not cover)")
    for pid in sorted(d):
        if _covers_all_primes(m, d - {pid}):
            raise PreconditionError("delta is not an inverse basis (not minimal)")
    memo: dict[frozenset, bool] = {}

    def closed(subset: frozenset) -> bool:
        got = memo.get(subset)
        if got is None:
            got = is_self_inverse(m, subset)
            memo[subset] = got
        return got

    return ReayChain(longest_closed_chain(sorted(d), closed))


def recover_rank(m: Model) -> int:
    """Rank of the class data from the support poset alone.

    Runs the inverse-basis greedy and the chain search with membership in V
    as the only primitive; the class vectors never enter.  The result is
    |basis| - (longest self-inverse chain length).
    """
    members = enumerate_v(m)
    ids = m.ids()
    bits = {pid: 1 << i for i, pid in enumerate(ids)}
    full = (1 << len(ids)) - 1
    masks = [sum(bits[p] for p in s) for s in members]
    by_prime = {
        pid: [mask for mask in masks if mask & bits[pid]] for pid in ids
    }
    if any(not hits for hits in by_prime.values()):
        # Some prime lies in no member, i.e. its inverse is unreachable; this
        # is the poset form of "not positively spanning".
        raise PreconditionError("class vectors do not positively span their span")

    def covers_all(mask: int) -> bool:
        return all(
            any(hit & ~(mask | bits[pid]) == 0 for hit in by_prime[pid])
            for pid in ids
        )

    delta = full
    for pid in ids:
        trial = delta & ~bits[pid]
        if covers_all(trial):
            delta = trial

    delta_ids = sorted(p for p in ids if delta & bits[p])

    def self_inverse(subset: frozenset) -> bool:
        mask = sum(bits[p] for p in subset)
        return all(
            any(hit & ~mask == 0 for hit in by_prime[pid]) for pid in subset
        )

    chain_sets = longest_closed_chain(delta_ids, self_inverse)
    return len(delta_ids) - (len(chain_sets) - 1)
